// matrix_io.hpp: line-oriented text format for CMatrix
//
//   # optional comments start with '#'
//   dim 2
//   1.0+0j   0.5-0.25j
//   0.5+0.25j -1+0j
//
// Entries are written as re{+|-}im j with 17 significant digits, which makes a
// write/read cycle exact for finite doubles.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pfdamp/cmatrix.hpp"

namespace pfdamp {

std::string format_complex(Complex z);
// Parses one `re{+|-}im j` token. Throws std::invalid_argument on malformed or non-finite input.
Complex parse_complex(std::string_view token);

// `source` names the stream in ParseError diagnostics.
CMatrix read_matrix(std::istream& in, const std::string& source = "<stream>");
CMatrix read_matrix_file(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const CMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const CMatrix& m);

} // namespace pfdamp
