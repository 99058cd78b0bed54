#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "optomech/dynamics.hpp"

namespace optomech {

/// Plain-text matrix: one row per line, entries separated by single spaces,
/// each written with printf "%.16e" (17 significant digits).
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);

/// Complex matrix as two consecutive real blocks, each introduced by a
/// "# real" / "# imag" line.
void write_matrix(std::ostream& os, const Eigen::MatrixXcd& m);

/// Writes drift.txt, input_gain.txt and noise.txt into `directory`.
void dump_system(const std::string& directory, const LinearSystem& ls,
                 const NoiseModel& nm);

}  // namespace optomech
