#pragma once

// Two-time field correlations through the quantum regression theorem and
// the spectrometer-filtered (physical) spectrum.
//
// The correlator is the normally ordered
//   g1(s, tau) = Tr[E e^{L tau}(rho(s) E^dag)],   E = alpha sigma_eg + beta sigma_pe,
// so g1(s, 0) = |alpha|^2 rho_ee + |beta|^2 rho_pp. It carries e^{-i w tau}
// for a line at rotating-frame frequency w; the filter therefore uses
// e^{(nu + i dw) tau}, which puts that line at dw = +w.

#include "zeno/core.hpp"
#include "zeno/liouvillian.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace zeno {

struct DetectionOperator {
  Matrix3c e_lower;
  Matrix3c e_raise;

  static DetectionOperator from_weights(Complex alpha, Complex beta);
  static DetectionOperator from(const SystemParams& p) {
    return from_weights(p.collection_alpha, p.collection_beta);
  }
};

// g1(s_i, tau) = sum_k weights(i, k) exp(lambda_k tau), exact in tau.
struct CorrelationKernel {
  TimeGrid s_grid;
  Vector9c lambdas;
  Eigen::MatrixXcd weights;  // s points x modes

  Complex g1(std::size_t s_index, double tau) const;
};

// Needs a usable eigen cache; otherwise throws NumericalError telling the
// caller to use g1_direct.
CorrelationKernel g1_kernel(const Liouvillian& L, const Trajectory& traj,
                            const DetectionOperator& det);

// Direct route: evolve rho(s) E^dag with the adaptive ODE integrator and
// trace against E. s must be a point of the trajectory grid.
std::vector<Complex> g1_direct(const Liouvillian& L, const Trajectory& traj,
                               const DetectionOperator& det, double s,
                               std::span<const double> tau_grid);

struct FrequencyWindow {
  std::string id;
  double lo = 0.0;  // ps^-1, relative to the laser
  double hi = 0.0;
  std::size_t n_points = 2001;

  std::vector<double> points() const;
  double spacing() const { return (hi - lo) / double(n_points - 1); }
};

// Default windows around the eg lines (0) and the pe doublet (Delta).
FrequencyWindow eg_window(double omega_drive, double nu, std::size_t n = 2001);
FrequencyWindow pe_window(double delta, double omega_drive, double nu, std::size_t n = 2001);

struct SpectrumGrid {
  std::string window_id;
  std::vector<double> domega;  // ps^-1
  std::vector<double> times;   // R: evaluation times; S: {T}
  Eigen::MatrixXd values;      // times x domega
  double nu = 0.0;
  bool integrated = false;
  std::vector<std::string> warnings;
  nlohmann::json metadata = nlohmann::json::object();

  // R(dw, t) row as a span-friendly vector
  std::vector<double> row(std::size_t i) const;
  double max_value() const { return values.size() ? values.maxCoeff() : 0.0; }
  double min_value() const { return values.size() ? values.minCoeff() : 0.0; }
};

struct SpectrumOptions {
  std::size_t workers = 0;  // 0 = all cores
};

// R(dw, t) at the given times (each within the kernel grid).
SpectrumGrid time_dependent_spectrum(const CorrelationKernel& kernel, double nu,
                                     std::span<const double> domega,
                                     std::span<const double> times,
                                     const SpectrumOptions& opts = {});

inline SpectrumGrid time_dependent_spectrum(const CorrelationKernel& kernel, double nu,
                                            std::span<const double> domega, double t,
                                            const SpectrumOptions& opts = {}) {
  const double ts[] = {t};
  return time_dependent_spectrum(kernel, nu, domega, ts, opts);
}

// S(dw) = int_0^T R(dw, t) dt by the trapezoid rule on the kernel grid.
SpectrumGrid time_integrated_spectrum(const CorrelationKernel& kernel, double nu,
                                      std::span<const double> domega, double T,
                                      const SpectrumOptions& opts = {});

// Largest s-grid spacing acceptable for a spectrometer half-width nu.
inline double max_grid_spacing(double nu) { return 1.0 / (10.0 * nu); }

}  // namespace zeno
