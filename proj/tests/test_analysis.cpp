#include <doctest.h>

#include "zeno/analysis.hpp"
#include "zeno/liouvillian.hpp"

#include <cmath>

using namespace zeno;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> x;
  const auto n = std::size_t(std::llround((hi - lo) / step));
  for (std::size_t i = 0; i <= n; ++i) x.push_back(lo + double(i) * step);
  return x;
}

double lorentzian(double x, double center, double width) {
  const double hw = 0.5 * width;
  return hw * hw / ((x - center) * (x - center) + hw * hw);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("single synthetic line") {
  const auto x = grid(-40.0, 40.0, 0.1);
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * lorentzian(v, 1.234, 5.0));
  const auto peaks = find_peaks(x, y);
  REQUIRE(peaks.size() == 1);
  CHECK(std::abs(peaks[0].center - 1.234) < 0.05);
  CHECK(peaks[0].height == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(std::abs(fwhm(x, y, peaks[0]) - 5.0) < 0.2);
}

TEST_CASE("width recovery across scales") {
  const double step = 0.1;
  const auto x = grid(-400.0, 400.0, step);
  for (double w : {1.0, 2.5, 7.0, 15.0, 33.0, 50.0}) {
    std::vector<double> y;
    for (double v : x) y.push_back(lorentzian(v, 0.37, w));
    const auto peaks = find_peaks(x, y);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(fwhm(x, y, peaks[0]) - w) <= 2 * step);
  }
}

TEST_CASE("resolution-convolved line") {
  // Lorentzian of width G sampled, then convolved numerically with a
  // normalized spectrometer Lorentzian of half-width nu.
  const double G = 6.0, nu = 1.5, step = 0.05;
  const auto x = grid(-300.0, 300.0, step);
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      y[i] += lorentzian(x[j], 0.0, G) * nu / M_PI / ((x[i] - x[j]) * (x[i] - x[j]) + nu * nu) * step;
  const auto peaks = find_peaks(x, y);
  REQUIRE(peaks.size() == 1);
  CHECK(fwhm(x, y, peaks[0]) == doctest::Approx(G + 2 * nu).epsilon(0.01));
}

TEST_CASE("doublet and unresolved doublet") {
  const auto x = grid(-150.0, 150.0, 0.1);
  std::vector<double> y;
  for (double v : x) y.push_back(lorentzian(v, -50.0, 10.0) + lorentzian(v, 50.0, 10.0));
  const auto peaks = find_peaks(x, y);
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(std::abs(peaks[0].center - peaks[1].center) - 100.0) <= 0.1);

  std::vector<double> close;
  for (double v : x) close.push_back(lorentzian(v, -3.0, 10.0) + lorentzian(v, 3.0, 10.0));
  const auto merged = find_peaks(x, close);
  if (merged.size() == 2) {
    CHECK_THROWS_AS(fwhm(x, close, merged[0], merged), PeakError);
  } else {
    CHECK(merged.size() == 1);
  }
  // artificially shifted neighbour inside the half width
  Peak a = peaks[0], ghost = peaks[0];
  ghost.index = a.index + 1;
  ghost.center = a.center + 0.5;
  const Peak both[] = {a, ghost};
  try {
    fwhm(x, y, a, both);
    FAIL("expected an unresolved error");
  } catch (const PeakError& e) {
    CHECK(e.kind() == PeakError::Kind::Unresolved);
  }
}

TEST_CASE("flat and truncated windows") {
  const auto x = grid(0.0, 10.0, 0.1);
  const std::vector<double> flat(x.size(), 2.0);
  CHECK(find_peaks(x, flat).empty());
  CHECK_THROWS_AS(find_peaks(std::vector<double>(5, 0.0), std::vector<double>(5, 0.0)),
                  std::invalid_argument);

  std::vector<double> y;
  for (double v : x) y.push_back(lorentzian(v, 5.0, 40.0));
  const auto peaks = find_peaks(x, y);
  REQUIRE(peaks.size() == 1);
  try {
    fwhm(x, y, peaks[0]);
    FAIL("expected a window error");
  } catch (const PeakError& e) {
    CHECK(e.kind() == PeakError::Kind::WindowTooNarrow);
  }
}

TEST_CASE("delay metric") {
  const auto t = grid(0.0, 100.0, 0.5);
  std::vector<double> step;
  for (double v : t) step.push_back(v < 37.0 ? 0.0 : 1.0);
  CHECK(*delay_metric(t, step) == doctest::Approx(37.0).epsilon(0.5 / 37.0));
  std::vector<double> dead(t.size(), 0.0);
  dead[10] = 1.0;
  CHECK_FALSE(delay_metric(t, dead).has_value());
}

TEST_CASE("fast decay shrinks the delay to the spectrometer fill time") {
  // Strong flat decay: emission is over long before the filter settles.
  SystemParams p;
  p.omega_drive = energy_to_angular(100.0);
  const Liouvillian L = build_liouvillian(p, flat_rate(5.0));
  const TimeGrid g = spectral_grid(20.0, 0.1, kTimeResolvedNu);
  const Trajectory traj = propagate(L, p.initial_state, g);
  const auto kernel = g1_kernel(L, traj, DetectionOperator::from(p));
  const auto eg = eg_window(p.omega_drive, kTimeResolvedNu, 401).points();
  const auto times = g.points();
  const auto R = time_dependent_spectrum(kernel, kTimeResolvedNu, eg, times);
  const auto d = delay_metric(times, window_integrated_signal(R));
  REQUIRE(d.has_value());
  CHECK(*d < 2.0 / kTimeResolvedNu);
}

TEST_CASE("spectral grid") {
  const TimeGrid g = spectral_grid(100.0, 0.5, 0.5);
  CHECK(g.step() <= 0.2 + 1e-12);
  CHECK(g.t_end == 100.0);
  CHECK(spectral_grid(3000.0, 0.5, 1e-4).step() == doctest::Approx(0.5));
}

TEST_CASE("undriven line width") {
  RunConfig config;
  SweepOptions opts;
  opts.with_delay = false;
  opts.workers = 1;
  const SweepPoint pt = analyze_drive(config, 0.0, opts);
  REQUIRE(pt.status == "single");
  const auto sd = config.spectral_density();
  const double nu = config.nu(SpectrumMode::Integrated);
  // pe coherence decays at (Gamma_pe + 2 Gamma_B) / 2; the line FWHM is twice that plus 2 nu
  const double expected = angular_to_energy(pe_decay_rate(sd, sd.omega_c_rel, 0.0) + 2 * sd.gamma_b + 2 * nu);
  CHECK(pt.fwhm_lower_uev == doctest::Approx(expected).epsilon(0.01));
  CHECK(std::isnan(pt.separation_uev));
  CHECK(pt.gamma_pe == doctest::Approx(0.05));
}

TEST_CASE("sweep records failures and keeps order") {
  RunConfig config;
  SweepOptions opts;
  opts.with_delay = false;
  const std::vector<double> omegas{50.0, 5000.0};
  const auto res = linewidth_sweep(omegas, config, opts);
  REQUIRE(res.points.size() == 2);
  CHECK(res.points[0].ok());
  CHECK(res.points[0].status == "doublet");
  CHECK_FALSE(res.points[1].ok());
  CHECK(res.points[1].status.rfind("error: ", 0) == 0);
  CHECK(res.omega_values() == omegas);
}

}  // TEST_SUITE
