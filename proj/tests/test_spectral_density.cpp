#include <doctest.h>

#include "zeno/spectral_density.hpp"

#include <cmath>

using namespace zeno;

TEST_SUITE("spectral_density") {

TEST_CASE("defaults") {
  const auto sd = SpectralDensityParams::defaults();
  CHECK(sd.kappa == doctest::Approx(energy_to_angular(100.0)));
  CHECK(sd.omega_c_rel == doctest::Approx(mev_to_angular(10.0)));
  CHECK(sd.gamma_b == doctest::Approx(1.0 / 500.0));
  CHECK(4 * sd.g * sd.g / sd.kappa == doctest::Approx(1.0 / 20.0).epsilon(1e-14));
}

TEST_CASE("cavity Lorentzian") {
  const auto sd = SpectralDensityParams::defaults();
  CHECK(std::abs(gamma_cav(sd, sd.omega_c_rel) - 0.025) < 1e-14);
  CHECK(gamma_cav(sd, sd.omega_c_rel + sd.kappa / 2) == doctest::Approx(0.0125).epsilon(1e-13));
  CHECK(gamma_cav(sd, sd.omega_c_rel - sd.kappa / 2) == doctest::Approx(0.0125).epsilon(1e-13));
  auto doubled = sd;
  doubled.g *= 2;
  for (double d : {-0.3, 0.0, 0.02, 1.0})
    CHECK(gamma_cav(doubled, sd.omega_c_rel + d) ==
          doctest::Approx(4 * gamma_cav(sd, sd.omega_c_rel + d)).epsilon(1e-14));
  for (double d : {0.01, 0.1, 0.7})
    CHECK(gamma_cav(sd, sd.omega_c_rel + d) == gamma_cav(sd, sd.omega_c_rel - d));
}

TEST_CASE("piecewise density") {
  const auto sd = SpectralDensityParams::defaults();
  CHECK(gamma_total(sd, 0.0) == doctest::Approx(0.002).epsilon(1e-15));
  CHECK(gamma_total(sd, sd.omega_c_rel) == doctest::Approx(0.025).epsilon(1e-14));
  const double edge = sd.omega_c_rel + sd.xi / 2;
  CHECK(gamma_total(sd, edge) == gamma_cav(sd, edge));
  CHECK(gamma_total(sd, std::nextafter(edge, 1e9)) == sd.gamma_b);
  for (double w = -20.0; w < 40.0; w += 0.013) CHECK(gamma_total(sd, w) > 0.0);
}

TEST_CASE("driven pe decay rate") {
  const auto sd = SpectralDensityParams::defaults();
  const double g0 = pe_decay_rate(sd, sd.omega_c_rel, 0.0);
  CHECK(std::abs(g0 - 0.05) < 1e-12);
  CHECK(g0 == 2 * gamma_total(sd, sd.omega_c_rel));
  CHECK(std::abs(pe_decay_rate(sd, sd.omega_c_rel, sd.kappa) / g0 - 0.5) < 1e-12);
  CHECK(pe_decay_rate(sd, sd.omega_c_rel, 1.2 * sd.xi) == doctest::Approx(2 * sd.gamma_b));

  // monotone non-increasing on [0, xi) with a resonant cavity
  double prev = g0;
  for (int i = 1; i < 2000; ++i) {
    const double om = sd.xi * i / 2000.0;
    const double g = pe_decay_rate(sd, sd.omega_c_rel, om);
    CHECK(g <= prev);
    prev = g;
  }
  CHECK(pe_decay_rate(flat_rate(0.3), 1.0, 0.5) == doctest::Approx(0.6));
  CHECK(pe_decay_rate(rate_function(sd), sd.omega_c_rel, 0.1) ==
        pe_decay_rate(sd, sd.omega_c_rel, 0.1));
}

}  // TEST_SUITE
