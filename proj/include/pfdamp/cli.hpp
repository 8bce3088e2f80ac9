// cli.hpp: command-line entry point
//
//   pfdamp [--tol X] [--seed S] verify <manifest>
//   pfdamp evolve <config> [--grid t0,t1,n] [--out file.csv]
//   pfdamp observe <config> --observable <matrix-file|Nk> [--grid t0,t1,n] [--out file.csv]
//   pfdamp report <config>
//   pfdamp export <config> --dir <directory>
//   pfdamp scenario list
//
// Exit codes: 0 success, 1 validation failure, 2 malformed input.

#pragma once

#include <iosfwd>

namespace pfdamp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInput = 2;

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pfdamp
