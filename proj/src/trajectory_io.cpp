// trajectory_io.cpp: CSV writers

#include "pfdamp/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pfdamp/errors.hpp"

namespace pfdamp {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_shortest(Complex z) {
    const double im = z.imag();
    std::string s = format_shortest(z.real());
    if (!std::signbit(im)) s += '+';
    return s + format_shortest(im) + 'j';
}

namespace {

void write_comments(std::ostream& out, std::span<const std::string> comments) {
    for (const auto& c : comments) out << (c.starts_with('#') ? "" : "# ") << c << '\n';
}

} // namespace

void write_state_csv(std::ostream& out, const StateTrajectory& traj, std::span<const std::string> comments) {
    write_comments(out, comments);
    const std::size_t d = traj.samples.empty() ? 0 : traj.samples.front().dim();
    out << 't';
    for (std::size_t i = 0; i < d; ++i) out << ",re_" << i << ",im_" << i;
    out << ",norm\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << format_real(traj.times[k]);
        for (const auto& z : traj.samples[k]) out << ',' << format_real(z.real()) << ',' << format_real(z.imag());
        out << ',' << format_real(traj.norms[k]) << '\n';
    }
}

void write_norm_csv(std::ostream& out, const OperatorTrajectory& traj, std::span<const double> bounds,
                    std::span<const std::string> comments) {
    if (bounds.size() != traj.times.size()) throw DimensionError("write_norm_csv: one bound per sample required");
    write_comments(out, comments);
    out << "t,norm,bound\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        out << format_real(traj.times[k]) << ',' << format_real(traj.norms[k]) << ',' << format_real(bounds[k]) << '\n';
}

} // namespace pfdamp
