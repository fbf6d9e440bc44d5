#pragma once

// Peak finding, FWHM extraction, the linewidth-versus-drive sweep and the
// emission-delay metric. Peak routines work on plain (x, y) samples in
// whatever unit x carries; the pipeline feeds them ueV axes.

#include "zeno/config.hpp"
#include "zeno/spectra.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno {

struct Peak {
  double center = 0.0;
  double height = 0.0;
  double fwhm = 0.0;  // filled by fwhm()
  double prominence = 0.0;
  std::size_t index = 0;  // grid sample closest to the centre
};

inline constexpr double kDefaultProminenceFraction = 0.05;

// Local maxima with topographic prominence >= fraction * max(y), sorted by
// height (descending). Centres are refined with a 3-point parabola.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y,
                             double min_prominence_fraction = kDefaultProminenceFraction);

class PeakError : public std::runtime_error {
 public:
  enum class Kind { WindowTooNarrow, Unresolved };
  PeakError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Separation of the half-maximum crossings nearest the centre (linear
// interpolation). Throws PeakError::Unresolved when one of `others` sits
// between the centre and a crossing.
double fwhm(std::span<const double> x, std::span<const double> y, const Peak& peak,
            std::span<const Peak> others = {});

// Time at which the signal first reaches half of its final value; empty when
// the final value is negligible.
std::optional<double> delay_metric(std::span<const double> times, std::span<const double> signal);

// Trapezoid over the frequency axis of each R(., t) row.
std::vector<double> window_integrated_signal(const SpectrumGrid& td);

struct SweepPoint {
  double omega_uev = 0.0;
  double gamma_pe = 0.0;  // ps^-1
  double fwhm_lower_uev = 0.0;
  double fwhm_upper_uev = 0.0;
  double separation_uev = 0.0;  // NaN for a single line
  double delay_ps = 0.0;        // NaN when absent
  std::string status;           // "doublet", "single", or "error: ..."

  bool ok() const { return status == "doublet" || status == "single"; }
  double mean_fwhm_uev() const { return 0.5 * (fwhm_lower_uev + fwhm_upper_uev); }
};

struct SweepResult {
  std::vector<SweepPoint> points;  // in input order
  std::vector<double> omega_values() const;
};

struct SweepOptions {
  std::size_t workers = 0;
  std::size_t window_points = 2001;
  double prominence_fraction = kDefaultProminenceFraction;
  bool with_delay = true;
};

// Full pipeline per drive strength: generator, kernel, S(dw) in the pe
// window, peaks and widths; plus the time-resolved delay (nu^-1 = 2 ps).
// Failures are recorded per point.
SweepPoint analyze_drive(const RunConfig& config, double omega_uev, const SweepOptions& opts = {});
SweepResult linewidth_sweep(std::span<const double> omega_list, const RunConfig& config,
                            const SweepOptions& opts = {});

// s-grid over [0, t_end] with spacing <= min(config step, (10 nu)^-1).
TimeGrid spectral_grid(double t_end, double max_step, double nu);

}  // namespace zeno
