#include <doctest.h>

#include "zeno/analysis.hpp"
#include "zeno/spectra.hpp"

#include <cmath>
#include <random>

using namespace zeno;

namespace {

SystemParams driven(double omega_uev) {
  SystemParams p;
  p.omega_drive = energy_to_angular(omega_uev);
  return p;
}

// One decaying mode with a Purcell-like population weight.
CorrelationKernel synthetic_kernel(double gamma, double omega0, const TimeGrid& grid) {
  CorrelationKernel k;
  k.s_grid = grid;
  k.lambdas = Vector9c::Constant(Complex(-1.0, 0.0));
  k.lambdas(0) = Complex(-gamma / 2, -omega0);
  k.weights = Eigen::MatrixXcd::Zero(Eigen::Index(grid.n_points), 9);
  for (std::size_t i = 0; i < grid.n_points; ++i)
    k.weights(Eigen::Index(i), 0) = gamma * std::exp(-gamma * grid.at(i));
  return k;
}

double measured_fwhm(const std::vector<double>& x, const std::vector<double>& y) {
  const auto peaks = find_peaks(x, y);
  REQUIRE(peaks.size() == 1);
  return fwhm(x, y, peaks[0]);
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("detection operator") {
  const auto det = DetectionOperator::from_weights({0.3, 0.4}, {-1.0, 2.0});
  CHECK((det.e_raise - det.e_lower.adjoint()).norm() == 0.0);
  CHECK(det.e_lower(kG, kE) == Complex(0.3, 0.4));
  CHECK(det.e_lower(kE, kP) == Complex(-1.0, 2.0));
}

TEST_CASE("kernel at zero delay") {
  const auto sd = SpectralDensityParams::defaults();
  const SystemParams p = driven(100.0);
  const Liouvillian L = build_liouvillian(p, sd);
  const Trajectory traj = propagate(L, p.initial_state, TimeGrid{0.0, 100.0, 201});

  const auto unit = g1_kernel(L, traj, DetectionOperator::from(p));
  CHECK(std::abs(unit.g1(0, 0.0) - 1.0) < 1e-12);

  const Complex alpha(0.6, -0.2), beta(-0.3, 0.9);
  const auto kernel = g1_kernel(L, traj, DetectionOperator::from_weights(alpha, beta));
  for (std::size_t i = 0; i < traj.states.size(); i += 7) {
    const double expected = std::norm(alpha) * traj.states[i].population(kE) +
                            std::norm(beta) * traj.states[i].population(kP);
    CHECK(std::abs(kernel.g1(i, 0.0) - expected) < 1e-8);
  }
  CHECK(kernel.lambdas.real().maxCoeff() <= 1e-10);
}

TEST_CASE("undriven pe coherence decay") {
  const auto sd = SpectralDensityParams::defaults();
  const SystemParams p = driven(0.0);
  const Liouvillian L = build_liouvillian(p, sd);
  const Trajectory traj = propagate(L, p.initial_state, TimeGrid{0.0, 50.0, 51});
  const auto kernel = g1_kernel(L, traj, DetectionOperator::from_weights(0.0, 1.0));
  // p decays at Gamma_pe, e at twice the background rate
  const double rate = 0.5 * (pe_decay_rate(sd, p.delta, 0.0) + 2 * sd.gamma_b);
  const std::vector<double> taus{0.0, 3.0, 17.0, 60.0};
  for (std::size_t i : {0u, 10u, 40u}) {
    const auto direct = g1_direct(L, traj, DetectionOperator::from_weights(0.0, 1.0),
                                  traj.grid.at(i), taus);
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const double expected = traj.states[i].population(kP) * std::exp(-rate * taus[j]);
      CHECK(std::abs(kernel.g1(i, taus[j])) == doctest::Approx(expected).epsilon(1e-10));
      CHECK(std::abs(direct[j]) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("kernel matches the direct oracle and its conjugate construction") {
  const auto sd = SpectralDensityParams::defaults();
  SystemParams p = driven(50.0);
  p.dephasing = PhononDephasing{};
  const Liouvillian L = build_liouvillian(p, sd);
  const Trajectory traj = propagate(L, p.initial_state, TimeGrid{0.0, 40.0, 81});
  const auto det = DetectionOperator::from(p);
  const auto kernel = g1_kernel(L, traj, det);
  std::vector<double> taus;
  for (int j = 0; j <= 40; ++j) taus.push_back(2.5 * j);
  for (std::size_t i : {0u, 20u, 80u}) {
    const auto direct = g1_direct(L, traj, det, traj.grid.at(i), taus);
    // conj g1 = Tr[E^dag e^{L tau}(E rho)]
    const Vector9c mirrored_start = vec(Matrix3c(det.e_lower * traj.states[i].matrix()));
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const Complex k = kernel.g1(i, taus[j]);
      CHECK(std::abs(k - direct[j]) < 1e-8);
      const Matrix3c mirrored = unvec(L.evolve_eigen(mirrored_start, taus[j]));
      const Complex conj = (det.e_raise * mirrored).trace();
      CHECK(std::abs(k - std::conj(conj)) <= 1e-10 * std::max(1.0, std::abs(k)) + 1e-12);
    }
  }
  CHECK_THROWS_AS(g1_direct(L, traj, det, 0.25, taus), NumericalError);
}

TEST_CASE("single-mode line shape") {
  const double gamma = 0.05, nu = 0.05, omega0 = 0.3;
  const TimeGrid grid{0.0, 700.0, 7001};
  const auto kernel = synthetic_kernel(gamma, omega0, grid);
  std::vector<double> domega;
  for (int i = 0; i <= 2000; ++i) domega.push_back(omega0 - 0.5 + 1e-3 * i);
  const SpectrumGrid S = time_integrated_spectrum(kernel, nu, domega, 700.0);
  CHECK(S.warnings.empty());
  const double w = measured_fwhm(domega, S.row(0));
  CHECK(w == doctest::Approx(gamma + 2 * nu).epsilon(2e-3 / (gamma + 2 * nu)));
  const auto peaks = find_peaks(domega, S.row(0));
  CHECK(peaks[0].center == doctest::Approx(omega0).epsilon(1e-3));
}

TEST_CASE("resolution broadens lines monotonically") {
  const double gamma = 0.05;
  const TimeGrid grid{0.0, 500.0, 5001};
  const auto kernel = synthetic_kernel(gamma, 0.0, grid);
  std::vector<double> domega;
  for (int i = 0; i <= 2000; ++i) domega.push_back(-1.0 + 1e-3 * i);
  double prev = 0.0;
  for (double nu : {0.02, 0.05, 0.1, 0.2}) {
    const double w = measured_fwhm(domega, time_integrated_spectrum(kernel, nu, domega, 500.0).row(0));
    CHECK(w >= 2 * nu);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("time-dependent spectrum basics") {
  const auto sd = SpectralDensityParams::defaults();
  const SystemParams p = driven(100.0);
  const Liouvillian L = build_liouvillian(p, sd);
  const Trajectory traj = propagate(L, p.initial_state, TimeGrid{0.0, 100.0, 1001});
  const auto kernel = g1_kernel(L, traj, DetectionOperator::from(p));
  const double nu = 0.5;
  for (const auto& w : {eg_window(p.omega_drive, nu, 301), pe_window(p.delta, p.omega_drive, nu, 301)}) {
    const auto domega = w.points();
    const SpectrumGrid R0 = time_dependent_spectrum(kernel, nu, domega, 0.0);
    CHECK(R0.values.cwiseAbs().maxCoeff() == 0.0);
    const auto times = TimeGrid{0.0, 100.0, 101}.points();
    const SpectrumGrid R = time_dependent_spectrum(kernel, nu, domega, times);
    CHECK(R.min_value() >= -1e-12 * R.max_value());
    SpectrumOptions serial{1}, parallel{4};
    const auto a = time_dependent_spectrum(kernel, nu, domega, times, serial);
    const auto b = time_dependent_spectrum(kernel, nu, domega, times, parallel);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  }
  const double late[] = {150.0};
  CHECK_THROWS_AS(time_dependent_spectrum(kernel, nu, eg_window(p.omega_drive, nu, 31).points(), late),
                  NumericalError);
  CHECK_THROWS_AS(time_dependent_spectrum(kernel, -1.0, eg_window(p.omega_drive, nu, 31).points(), 1.0),
                  NumericalError);
}

TEST_CASE("integrated spectrum guards") {
  const TimeGrid coarse{0.0, 100.0, 11};
  const auto kernel = synthetic_kernel(0.05, 0.0, coarse);
  const std::vector<double> domega{-0.1, 0.0, 0.1};
  CHECK_THROWS_AS(time_integrated_spectrum(kernel, 0.5, domega, 100.0), NumericalError);
  const auto ok = time_integrated_spectrum(kernel, 0.001, domega, 100.0);
  CHECK_FALSE(ok.warnings.empty());
  CHECK(max_grid_spacing(0.5) == doctest::Approx(0.2));
}

TEST_CASE("default windows") {
  const double om = energy_to_angular(100.0), nu = energy_to_angular(0.3);
  const auto eg = eg_window(om, nu);
  CHECK(eg.n_points == 2001);
  CHECK(eg.hi == doctest::Approx(3 * om + 20 * nu));
  CHECK(eg.lo == -eg.hi);
  const auto pe = pe_window(mev_to_angular(10.0), om, nu);
  CHECK(pe.lo == doctest::Approx(mev_to_angular(10.0) - om - 20 * nu));
  const auto pts = pe.points();
  CHECK(pts.back() == pe.hi);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
}

}  // TEST_SUITE
