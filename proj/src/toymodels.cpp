#include "zeno/toymodels.hpp"
#include "zeno/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno::toy {

double two_level_survival(double omega_pe, double t) {
  const double c = std::cos(0.5 * omega_pe * t);
  return c * c;
}

double three_level_survival(double omega_pe, double omega_eg, double t) {
  const double rabi_sq = omega_pe * omega_pe + omega_eg * omega_eg;
  if (!(rabi_sq > 0.0)) throw std::invalid_argument("three_level_survival: Omega_R must be > 0");
  const double amplitude =
      (omega_eg * omega_eg + omega_pe * omega_pe * std::cos(0.5 * std::sqrt(rabi_sq) * t)) /
      rabi_sq;
  return amplitude * amplitude;
}

double incoherent_survival(double gamma, double t) { return std::exp(-gamma * t); }

double zeno_measurement_chain(double gamma, double t, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("zeno_measurement_chain: n must be >= 1");
  // Double-double arithmetic keeps the rounding of a million factors below 1e-15.
  const double x = -gamma * t / double(n);
  const double p_hi = std::exp(x);
  const double p_lo = std::expm1(x) - (p_hi - 1.0);
  double s_hi = 1.0, s_lo = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double prod = s_hi * p_hi;
    const double err = std::fma(s_hi, p_hi, -prod) + s_hi * p_lo + s_lo * p_hi;
    s_hi = prod + err;
    s_lo = err - (s_hi - prod);
  }
  return s_hi + s_lo;
}

std::vector<OracleSample> schrodinger_oracle(double omega_pe, double omega_eg,
                                             std::span<const double> times) {
  using State = ode::State<3>;
  const std::complex<double> minus_i(0.0, -1.0);
  const double a = 0.5 * omega_pe, b = 0.5 * omega_eg;
  // amplitudes ordered (p, e, g)
  auto rhs = [&](const State& c, State& dc) {
    dc[0] = minus_i * (a * c[1]);
    dc[1] = minus_i * (a * c[0] + b * c[2]);
    dc[2] = minus_i * (b * c[1]);
  };
  std::vector<OracleSample> out;
  out.reserve(times.size());
  ode::integrate_at<3>(rhs, State{1.0, 0.0, 0.0}, times, 1e-14, kOracleRelTol,
                       [&out](const State& c, double) {
                         out.push_back({std::norm(c[0]),
                                        std::sqrt(std::norm(c[0]) + std::norm(c[1]) +
                                                  std::norm(c[2]))});
                       });
  return out;
}

}  // namespace zeno::toy
