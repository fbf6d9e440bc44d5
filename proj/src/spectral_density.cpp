#include "zeno/spectral_density.hpp"

#include <cmath>

namespace zeno {

SpectralDensityParams SpectralDensityParams::from_peak_lifetime(double kappa,
                                                                double peak_lifetime_ps,
                                                                double omega_c_rel,
                                                                double background_lifetime_ps,
                                                                double xi) {
  SpectralDensityParams sd;
  sd.kappa = kappa;
  sd.g = std::sqrt(kappa / (4.0 * peak_lifetime_ps));
  sd.omega_c_rel = omega_c_rel;
  sd.gamma_b = 1.0 / background_lifetime_ps;
  sd.xi = xi;
  return sd;
}

SpectralDensityParams SpectralDensityParams::defaults() {
  return from_peak_lifetime(mev_to_angular(0.1), 20.0, mev_to_angular(10.0), 500.0,
                            mev_to_angular(2.0));
}

double gamma_cav(const SpectralDensityParams& sd, double omega_rel) {
  const double half_width = 0.5 * sd.kappa;
  const double detuning = omega_rel - sd.omega_c_rel;
  return sd.g * sd.g * half_width / (detuning * detuning + half_width * half_width);
}

double gamma_total(const SpectralDensityParams& sd, double omega_rel) {
  // Closed window: the gap edge belongs to the cavity branch.
  if (std::abs(omega_rel - sd.omega_c_rel) <= 0.5 * sd.xi) return gamma_cav(sd, omega_rel);
  return sd.gamma_b;
}

double pe_decay_rate(const RateFunction& rate, double delta, double omega_drive) {
  return rate(delta + 0.5 * omega_drive) + rate(delta - 0.5 * omega_drive);
}

double pe_decay_rate(const SpectralDensityParams& sd, double delta, double omega_drive) {
  return gamma_total(sd, delta + 0.5 * omega_drive) + gamma_total(sd, delta - 0.5 * omega_drive);
}

}  // namespace zeno
