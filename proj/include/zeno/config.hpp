#pragma once

// Run configuration as read from a flat JSON object. Every key is optional;
// unknown keys are rejected.

#include "zeno/core.hpp"
#include "zeno/spectral_density.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace zeno {

enum class SpectrumMode { TimeDependent, Integrated };

// Spectrometer half-width used for time-resolved spectra when none is
// configured: nu^-1 = 2 ps.
inline constexpr double kTimeResolvedNu = 0.5;  // ps^-1
inline constexpr double kHighResolutionNuUeV = 0.3;

struct RunConfig {
  double delta_mev = 10.0;
  double omega_uev = 100.0;
  double kappa_mev = 0.1;
  double gamma_b_inv_ps = 500.0;
  double cavity_peak_inv_ps = 20.0;  // (4 g^2 / kappa)^-1
  double xi_mev = 2.0;
  std::optional<double> cavity_center_mev;  // defaults to delta_mev
  std::string dephasing_mode = "none";      // none | fixed | phonon
  double gamma_uev = 0.0;
  double alpha_ph_ps2 = 0.03;
  double temperature_k = 4.0;
  Complex alpha_col{1.0, 0.0};
  Complex beta_col{1.0, 0.0};
  double t_end_ps = 100.0;
  std::size_t n_time = 201;
  std::optional<double> spectrometer_nu_uev;
  double integration_T_ps = 3000.0;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
  // Fully resolved record (defaults filled in).
  nlohmann::json to_json() const;

  DephasingModel dephasing() const;
  SystemParams system(std::optional<double> omega_uev_override = std::nullopt) const;
  SpectralDensityParams spectral_density() const;
  TimeGrid dynamics_grid() const { return {0.0, t_end_ps, n_time}; }
  // Spectrometer half-width in ps^-1 for the given mode.
  double nu(SpectrumMode mode) const;
};

}  // namespace zeno
