#include "optomech/matrix_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

std::string format_entry(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << format_entry(m(r, c));
    }
    os << '\n';
  }
}

void write_matrix(std::ostream& os, const Eigen::MatrixXcd& m) {
  os << "# real\n";
  write_matrix(os, Eigen::MatrixXd(m.real()));
  os << "# imag\n";
  write_matrix(os, Eigen::MatrixXd(m.imag()));
}

void dump_system(const std::string& directory, const LinearSystem& ls,
                 const NoiseModel& nm) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  const auto open = [&](const char* name) {
    std::ofstream f(fs::path(directory) / name);
    if (!f) throw Error("cannot write " + (fs::path(directory) / name).string());
    return f;
  };
  auto drift = open("drift.txt");
  write_matrix(drift, ls.drift);
  auto gain = open("input_gain.txt");
  write_matrix(gain, Eigen::MatrixXd(ls.input_gain.asDiagonal()));
  auto noise = open("noise.txt");
  write_matrix(noise, nm.spectral);
}

}  // namespace optomech
