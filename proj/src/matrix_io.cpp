// matrix_io.cpp: reader/writer for the `dim d` matrix text format

#include "pfdamp/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pfdamp/errors.hpp"

namespace pfdamp {

namespace {

double parse_double(const char*& p, const char* end) {
    double value = 0.0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc{} || next == p) throw std::invalid_argument("expected a number");
    p = next;
    return value;
}

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

} // namespace

std::string format_complex(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

Complex parse_complex(std::string_view token) {
    const char* p = token.data();
    const char* end = p + token.size();
    const double re = parse_double(p, end);
    if (p == end || (*p != '+' && *p != '-')) throw std::invalid_argument("expected sign of imaginary part in '" + std::string(token) + "'");
    const bool negative = *p == '-';
    ++p;
    if (p != end && (*p == '+' || *p == '-')) throw std::invalid_argument("doubled sign in '" + std::string(token) + "'");
    double im = parse_double(p, end);
    if (negative) im = -im;
    if (p == end || *p != 'j' || p + 1 != end) throw std::invalid_argument("expected trailing 'j' in '" + std::string(token) + "'");
    if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite entry '" + std::string(token) + "'");
    return {re, im};
}

CMatrix read_matrix(std::istream& in, const std::string& source) {
    std::string raw;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<Complex> entries;
    std::size_t rows_read = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream fields(strip_comment(raw));
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (dim == 0) {
            if (tokens.size() != 2 || tokens[0] != "dim") throw ParseError(source, line_no, "expected header 'dim <d>'");
            std::size_t d = 0;
            auto [ptr, ec] = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), d);
            if (ec != std::errc{} || ptr != tokens[1].data() + tokens[1].size() || d == 0 || d > 64)
                throw ParseError(source, line_no, "dimension must be an integer in [1, 64]");
            dim = d;
            continue;
        }
        if (rows_read == dim) throw ParseError(source, line_no, "more than " + std::to_string(dim) + " matrix rows");
        if (tokens.size() != dim) {
            throw ParseError(source, line_no, "row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(dim));
        }
        for (std::size_t c = 0; c < dim; ++c) {
            try {
                entries.push_back(parse_complex(tokens[c]));
            } catch (const std::invalid_argument& e) {
                throw ParseError(source, line_no, "column " + std::to_string(c + 1) + ": " + e.what());
            }
        }
        ++rows_read;
    }
    if (dim == 0) throw ParseError(source, line_no, "missing 'dim' header");
    if (rows_read != dim) throw ParseError(source, line_no, "expected " + std::to_string(dim) + " rows, found " + std::to_string(rows_read));

    CMatrix m(dim);
    std::copy(entries.begin(), entries.end(), m.entries().begin());
    return m;
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    return read_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const CMatrix& m) {
    out << "dim " << m.dim() << '\n';
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) out << ' ';
            out << format_complex(m(r, c));
        }
        out << '\n';
    }
}

void write_matrix_file(const std::filesystem::path& path, const CMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_matrix(out, m);
}

} // namespace pfdamp
