#include "optomech/modes.hpp"

#include <charconv>
#include <stdexcept>

namespace optomech {

std::string Mode::label() const {
  switch (kind) {
    case Kind::pump_minus:
      return "0m";
    case Kind::pump_plus:
      return "0p";
    case Kind::probe:
      return std::to_string(probe);
    case Kind::mirror:
      return "b";
  }
  return "?";
}

Mode Mode::parse(std::string_view text) {
  if (text == "0m") return pump_minus();
  if (text == "0p") return pump_plus();
  if (text == "b") return mirror();
  std::size_t j = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, j);
  if (ec != std::errc{} || ptr != end || j == 0) {
    throw std::invalid_argument("unknown mode label '" + std::string(text) +
                                "' (expected 0m, 0p, b or a probe number)");
  }
  return probe_mode(j);
}

std::size_t ModeIndex::slot(Mode m) const {
  switch (m.kind) {
    case Mode::Kind::pump_minus:
      return 0;
    case Mode::Kind::pump_plus:
      return 1;
    case Mode::Kind::probe:
      if (m.probe < 1 || m.probe > probes_) {
        throw std::out_of_range("probe " + std::to_string(m.probe) +
                                " does not exist (model has " +
                                std::to_string(probes_) + ")");
      }
      return 1 + m.probe;
    case Mode::Kind::mirror:
      return probes_ + 2;
  }
  throw std::out_of_range("bad mode");
}

Mode ModeIndex::mode_at(std::size_t s) const {
  if (s == 0) return Mode::pump_minus();
  if (s == 1) return Mode::pump_plus();
  if (s < probes_ + 2) return Mode::probe_mode(s - 1);
  if (s == probes_ + 2) return Mode::mirror();
  throw std::out_of_range("mode slot out of range");
}

std::vector<Mode> ModeIndex::optical_modes() const {
  std::vector<Mode> out;
  out.reserve(probes_ + 2);
  for (std::size_t s = 0; s < probes_ + 2; ++s) out.push_back(mode_at(s));
  return out;
}

}  // namespace optomech
