#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "optomech/errors.hpp"
#include "optomech/params.hpp"
#include "support.hpp"

using namespace optomech;
using testing::rel_err;

TEST_SUITE("params") {

// Golden values from 40-digit evaluation of the closed forms with CODATA 2018.
TEST_CASE("reference parameters derive to frozen values") {
  const DerivedParams d = derive_params(reference_params(1));
  CHECK(rel_err(d.omega_laser1, 1770349217395538.79) < 1e-14);
  CHECK(rel_err(d.g0, 23.68762130498273881) < 1e-13);
  CHECK(rel_err(d.eta_l1, 1075973569649.98933) < 1e-13);
  CHECK(rel_err(d.eta_l2, 1075973569649.98933) < 1e-13);
  CHECK(rel_err(d.n_thermal, 2083.1619536031490) < 1e-12);
  CHECK(d.q_m == doctest::Approx(1e6));
  REQUIRE(d.g_probe.size() == 1);
  CHECK(d.g_probe[0] == d.g0);
  // P_p = P_l / 50 gives η_p = η_l / √50.
  CHECK(rel_err(d.eta_probe[0], d.eta_l1 / std::sqrt(50.0)) < 1e-14);
}

TEST_CASE("zero temperature has exactly zero occupancy") {
  PhysicalParams p = reference_params();
  p.temperature_K = 0.0;
  CHECK(derive_params(p).n_thermal == 0.0);
  CHECK(thermal_occupancy(p.mech_freq, 0.0) == 0.0);
}

TEST_CASE("doubling the cavity length halves g0") {
  PhysicalParams p = reference_params();
  const double g = derive_params(p).g0;
  p.cavity_length_m *= 2.0;
  CHECK(rel_err(derive_params(p).g0, g / 2.0) < 1e-15);
}

TEST_CASE("zero power gives zero drive and nothing else does") {
  PhysicalParams p = reference_params(2);
  p.pump2_power_W = 0.0;
  p.probe_powers_W[1] = 0.0;
  const DerivedParams d = derive_params(p);
  CHECK(d.eta_l2 == 0.0);
  CHECK(d.eta_probe[1] == 0.0);
  CHECK(d.eta_l1 > 0.0);
  CHECK(d.eta_probe[0] > 0.0);
}

TEST_CASE("hard violations are rejected") {
  const auto rejects = [](auto mutate) {
    PhysicalParams p = reference_params(1);
    mutate(p);
    CHECK_THROWS_AS(validate(p), ParameterError);
    CHECK_THROWS_AS(derive_params(p), ParameterError);
  };
  rejects([](PhysicalParams& p) { p.cavity_length_m = 0.0; });
  rejects([](PhysicalParams& p) { p.mirror_mass_kg = -1.0; });
  rejects([](PhysicalParams& p) { p.mech_freq = 0.0; });
  rejects([](PhysicalParams& p) { p.wavelength_m = 0.0; });
  rejects([](PhysicalParams& p) { p.mech_damping = 0.0; });
  rejects([](PhysicalParams& p) { p.temperature_K = -0.1; });
  rejects([](PhysicalParams& p) { p.cavity_decay = -1.0; });
  rejects([](PhysicalParams& p) { p.pump2_power_W = -1e-3; });
  rejects([](PhysicalParams& p) { p.probe_powers_W[0] = -1e-3; });
  rejects([](PhysicalParams& p) { p.probe_detunings.push_back(0.0); });
  rejects([](PhysicalParams& p) { p.cavity_decay = std::nan(""); });
}

TEST_CASE("regime violations warn without rejecting") {
  CHECK(validate(reference_params(1)).empty());

  const auto warns = [](auto mutate, ParamWarning expected) {
    PhysicalParams p = reference_params(1);
    mutate(p);
    const auto w = validate(p);
    CHECK(std::count(w.begin(), w.end(), expected) == 1);
    CHECK_NOTHROW(derive_params(p));
  };
  warns([](PhysicalParams& p) { p.cavity_decay = p.mech_freq; },
        ParamWarning::unresolved_sideband);
  warns([](PhysicalParams& p) { p.mech_damping = p.mech_freq / 100.0; },
        ParamWarning::low_mechanical_q);
  warns([](PhysicalParams& p) { p.probe_powers_W[0] = 0.25 * p.pump2_power_W; },
        ParamWarning::probe_not_weak);
  CHECK(to_string(ParamWarning::probe_not_weak) == "probe_not_weak");
}

TEST_CASE("derive_params is pure") {
  testing::Gen g(11);
  for (int k = 0; k < 20; ++k) {
    const PhysicalParams p = testing::perturbed_reference(g, 2);
    const DerivedParams a = derive_params(p);
    const DerivedParams b = derive_params(p);
    CHECK(a.g0 == b.g0);
    CHECK(a.eta_l1 == b.eta_l1);
    CHECK(a.eta_probe == b.eta_probe);
    CHECK(a.n_thermal == b.n_thermal);
  }
}

TEST_CASE("property: quadrupling a power doubles its drive rate") {
  testing::Gen g(12);
  for (int k = 0; k < 200; ++k) {
    PhysicalParams p = testing::perturbed_reference(g, 1, 0.5);
    p.pump1_power_W = g.log_uniform(1e-6, 1.0);
    const double eta = derive_params(p).eta_l1;
    p.pump1_power_W *= 4.0;
    CHECK(rel_err(derive_params(p).eta_l1, 2.0 * eta) < 1e-12);
  }
}

TEST_CASE("property: occupancy rises with T and falls with omega_m") {
  testing::Gen g(13);
  for (int k = 0; k < 200; ++k) {
    const double w = kTwoPi * g.log_uniform(1e3, 1e9);
    const double t1 = g.log_uniform(1e-4, 1e3);
    const double t2 = t1 * g.uniform(1.001, 3.0);
    CHECK(thermal_occupancy(w, t2) > thermal_occupancy(w, t1));
    CHECK(thermal_occupancy(w * 1.5, t1) < thermal_occupancy(w, t1));
    CHECK(thermal_occupancy(w, t1) >= 0.0);
  }
}

TEST_CASE("high-temperature occupancy approaches kT/hbar omega - 1/2") {
  const double w = kTwoPi * 1e6;
  const double t = 300.0;
  const double x = kCodata2018.hbar * w / (kCodata2018.k_B * t);
  CHECK(std::abs(thermal_occupancy(w, t) - (1.0 / x - 0.5)) < 1e-3);
}

}
