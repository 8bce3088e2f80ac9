// trajectory_io.hpp: CSV export of trajectories
//
// State series:  t,re_0,im_0,...,re_{d-1},im_{d-1},norm
// Norm series:   t,norm,bound
//
// Every number is printed with 17 significant digits.

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "pfdamp/dynamics.hpp"

namespace pfdamp {

std::string format_real(double x);
// Shortest text that reads back to the same double (std::to_chars).
std::string format_shortest(double x);
// re+imj with shortest components.
std::string format_shortest(Complex z);

// Lines starting with '#' are emitted verbatim before the header.
void write_state_csv(std::ostream& out, const StateTrajectory& traj, std::span<const std::string> comments = {});

// `bounds` must hold one value per sample.
void write_norm_csv(std::ostream& out, const OperatorTrajectory& traj, std::span<const double> bounds,
                    std::span<const std::string> comments = {});

} // namespace pfdamp
