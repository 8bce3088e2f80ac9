// family_io.cpp: PF family manifests

#include "pfdamp/family_io.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "pfdamp/errors.hpp"
#include "pfdamp/matrix_io.hpp"

namespace pfdamp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string require_string(const json& obj, const char* key, const std::string& where, const std::string& source) {
    if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
        throw ParseError(source, 0, "field '" + where + key + "' must be a string path");
    return obj[key].get<std::string>();
}

} // namespace

FamilyBundle read_family_manifest(const fs::path& manifest, double base_tol) {
    const std::string source = manifest.string();
    std::ifstream in(manifest);
    if (!in) throw ParseError(source, 0, "cannot open manifest");

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError(source, 0, "manifest must be a JSON object");
    if (!doc.contains("n_modes") || !doc["n_modes"].is_number_unsigned() || doc["n_modes"].get<std::size_t>() == 0)
        throw ParseError(source, 0, "field 'n_modes' must be a positive integer");
    const auto n_modes = doc["n_modes"].get<std::size_t>();
    if (!doc.contains("modes") || !doc["modes"].is_array() || doc["modes"].size() != n_modes)
        throw ParseError(source, 0, "field 'modes' must list exactly n_modes entries");

    const fs::path base = manifest.parent_path();
    std::vector<PFPair> pairs;
    for (std::size_t j = 0; j < n_modes; ++j) {
        const json& mode = doc["modes"][j];
        const std::string where = "modes[" + std::to_string(j) + "].";
        CMatrix a = read_matrix_file(base / require_string(mode, "a", where, source));
        CMatrix b = read_matrix_file(base / require_string(mode, "b", where, source));
        if (a.dim() != b.dim() || (!pairs.empty() && a.dim() != pairs.front().a.dim()))
            throw ParseError(source, 0, "mode " + std::to_string(j + 1) + ": operator dimensions disagree");
        pairs.push_back({std::move(a), std::move(b)});
    }

    std::optional<MetricPair> metrics;
    if (doc.contains("metrics")) {
        const json& m = doc["metrics"];
        metrics = MetricPair{read_matrix_file(base / require_string(m, "s_phi", "metrics.", source)),
                             read_matrix_file(base / require_string(m, "s_psi", "metrics.", source))};
    }
    return {PFFamily(std::move(pairs), base_tol), std::move(metrics)};
}

fs::path write_family_manifest(const fs::path& dir, const PFFamily& family, const std::optional<MetricPair>& metrics) {
    fs::create_directories(dir);
    json doc;
    doc["n_modes"] = family.n_modes();
    doc["modes"] = json::array();
    for (std::size_t j = 0; j < family.n_modes(); ++j) {
        const std::string a_name = "a" + std::to_string(j + 1) + ".mat";
        const std::string b_name = "b" + std::to_string(j + 1) + ".mat";
        write_matrix_file(dir / a_name, family.a(j));
        write_matrix_file(dir / b_name, family.b(j));
        doc["modes"].push_back({{"a", a_name}, {"b", b_name}});
    }
    if (metrics) {
        write_matrix_file(dir / "s_phi.mat", metrics->s_phi);
        write_matrix_file(dir / "s_psi.mat", metrics->s_psi);
        doc["metrics"] = {{"s_phi", "s_phi.mat"}, {"s_psi", "s_psi.mat"}};
    }
    const fs::path manifest = dir / "family.json";
    std::ofstream out(manifest);
    if (!out) throw std::runtime_error("cannot write " + manifest.string());
    out << doc.dump(2) << '\n';
    return manifest;
}

} // namespace pfdamp
