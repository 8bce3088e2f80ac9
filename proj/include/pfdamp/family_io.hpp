// family_io.hpp: JSON manifest + per-operator matrix files for PF families
//
//   {
//     "n_modes": 2,
//     "modes": [ {"a": "a1.mat", "b": "b1.mat"}, {"a": "a2.mat", "b": "b2.mat"} ],
//     "metrics": {"s_phi": "s_phi.mat", "s_psi": "s_psi.mat"}      (optional)
//   }
//
// Matrix paths are resolved relative to the manifest's directory.

#pragma once

#include <filesystem>
#include <optional>

#include "pfdamp/pseudofermion.hpp"

namespace pfdamp {

struct FamilyBundle {
    PFFamily family;
    std::optional<MetricPair> metrics;
};

// Throws ParseError on malformed manifests or matrix files.
FamilyBundle read_family_manifest(const std::filesystem::path& manifest, double base_tol = kDefaultTolerance);

// Writes `family.json` plus a<j>.mat / b<j>.mat (and metric files) into `dir`,
// creating it if needed. Returns the manifest path.
std::filesystem::path write_family_manifest(const std::filesystem::path& dir, const PFFamily& family,
                                            const std::optional<MetricPair>& metrics = std::nullopt);

} // namespace pfdamp
