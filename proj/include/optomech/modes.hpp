#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace optomech {

/// One bosonic mode of the linearized model.
struct Mode {
  enum class Kind { pump_minus, pump_plus, probe, mirror };

  Kind kind = Kind::pump_minus;
  std::size_t probe = 0;  // 1-based probe number when kind == probe

  static constexpr Mode pump_minus() { return {Kind::pump_minus, 0}; }
  static constexpr Mode pump_plus() { return {Kind::pump_plus, 0}; }
  static constexpr Mode probe_mode(std::size_t j) { return {Kind::probe, j}; }
  static constexpr Mode mirror() { return {Kind::mirror, 0}; }

  bool is_optical() const noexcept { return kind != Kind::mirror; }

  /// "0m", "0p", "1".."n", "b".
  std::string label() const;
  /// Inverse of label(); throws std::invalid_argument.
  static Mode parse(std::string_view text);

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Quadrature layout of the fluctuation vector:
/// [X_0m, Y_0m, X_0p, Y_0p, X_1, Y_1, ..., X_n, Y_n, X_b, Y_b].
/// Mode k occupies rows 2k (X) and 2k+1 (Y); the mirror is always last.
class ModeIndex {
 public:
  explicit ModeIndex(std::size_t probes = 0) : probes_(probes) {}

  std::size_t probes() const noexcept { return probes_; }
  std::size_t mode_count() const noexcept { return probes_ + 3; }
  std::size_t dimension() const noexcept { return 2 * mode_count(); }
  std::size_t optical_dimension() const noexcept { return dimension() - 2; }

  /// Throws std::out_of_range for a probe number above probes().
  std::size_t slot(Mode m) const;
  std::size_t x(Mode m) const { return 2 * slot(m); }
  std::size_t y(Mode m) const { return 2 * slot(m) + 1; }
  Mode mode_at(std::size_t slot) const;

  std::vector<Mode> optical_modes() const;

 private:
  std::size_t probes_;
};

}  // namespace optomech
