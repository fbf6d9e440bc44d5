#pragma once

#include "zeno/core.hpp"

#include <functional>

namespace zeno {

// Photonic reservoir: Lorentzian cavity inside a band gap over a flat
// background. Frequencies are measured relative to the |e> -> |g>
// transition (= laser frequency), so the cavity sits at relative
// frequency Delta when resonant with the bare |p> -> |e> line.
struct SpectralDensityParams {
  double g = 0.0;            // emitter-cavity coupling, ps^-1
  double kappa = 0.0;        // cavity FWHM, ps^-1
  double omega_c_rel = 0.0;  // cavity centre, ps^-1
  double gamma_b = 0.0;      // background rate, ps^-1
  double xi = 0.0;           // band-gap width, ps^-1

  // Coupling fixed through the peak lifetime (4 g^2 / kappa)^-1.
  static SpectralDensityParams from_peak_lifetime(double kappa, double peak_lifetime_ps,
                                                  double omega_c_rel, double background_lifetime_ps,
                                                  double xi);
  // kappa = 0.1 meV, 20 ps peak lifetime, 500 ps background, cavity at 10 meV, 2 meV gap.
  static SpectralDensityParams defaults();
};

// Frequency-resolved rate Gamma(omega_rel), ps^-1.
using RateFunction = std::function<double(double)>;

double gamma_cav(const SpectralDensityParams& sd, double omega_rel);
double gamma_total(const SpectralDensityParams& sd, double omega_rel);

// Gamma(Delta + Omega/2) + Gamma(Delta - Omega/2).
double pe_decay_rate(const SpectralDensityParams& sd, double delta, double omega_drive);
double pe_decay_rate(const RateFunction& rate, double delta, double omega_drive);

inline RateFunction rate_function(const SpectralDensityParams& sd) {
  return [sd](double w) { return gamma_total(sd, w); };
}
inline RateFunction flat_rate(double value) {
  return [value](double) { return value; };
}

}  // namespace zeno
