#include "zeno/analysis.hpp"
#include "zeno/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zeno {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double prominence_at(std::span<const double> y, std::size_t i) {
  const double h = y[i];
  double left_min = h;
  for (std::size_t j = i; j-- > 0;) {
    if (y[j] > h) break;
    left_min = std::min(left_min, y[j]);
  }
  double right_min = h;
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    if (y[j] > h) break;
    right_min = std::min(right_min, y[j]);
  }
  return h - std::max(left_min, right_min);
}

}  // namespace

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y,
                             double min_prominence_fraction) {
  if (x.size() != y.size()) throw std::invalid_argument("find_peaks: x and y differ in length");
  if (y.size() < 16) throw std::invalid_argument("find_peaks: window needs at least 16 points");
  if (!(min_prominence_fraction > 0.0 && min_prominence_fraction < 1.0))
    throw std::invalid_argument("find_peaks: prominence fraction must lie in (0, 1)");

  const double ymax = *std::max_element(y.begin(), y.end());
  if (!(ymax > 0.0)) return {};
  const double threshold = min_prominence_fraction * ymax;

  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    const double prom = prominence_at(y, i);
    if (prom < threshold) continue;

    Peak p;
    p.index = i;
    p.prominence = prom;
    const double curvature = y[i - 1] - 2.0 * y[i] + y[i + 1];
    double offset = 0.0;
    if (curvature < 0.0) offset = std::clamp(0.5 * (y[i - 1] - y[i + 1]) / curvature, -0.5, 0.5);
    const double dx = offset >= 0.0 ? x[i + 1] - x[i] : x[i] - x[i - 1];
    p.center = x[i] + offset * dx;
    p.height = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * offset;
    peaks.push_back(p);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.height > b.height; });
  return peaks;
}

double fwhm(std::span<const double> x, std::span<const double> y, const Peak& peak,
            std::span<const Peak> others) {
  if (peak.index >= y.size()) throw std::invalid_argument("fwhm: peak index outside window");
  const double half = 0.5 * peak.height;

  auto crossing = [&](int dir) {
    std::size_t j = peak.index;
    while (true) {
      if ((dir < 0 && j == 0) || (dir > 0 && j + 1 == y.size()))
        throw PeakError(PeakError::Kind::WindowTooNarrow,
                        "fwhm: half-maximum crossing lies outside the window");
      const std::size_t k = dir < 0 ? j - 1 : j + 1;
      if (y[k] < half) {
        const double t = (y[j] - half) / (y[j] - y[k]);
        return x[j] + t * (x[k] - x[j]);
      }
      j = k;
    }
  };
  const double left = crossing(-1);
  const double right = crossing(+1);

  for (const Peak& other : others) {
    if (other.index == peak.index) continue;
    if (other.center > left && other.center < right)
      throw PeakError(PeakError::Kind::Unresolved,
                      "fwhm: neighbouring peak inside the half-maximum width (unresolved)");
  }
  return right - left;
}

std::optional<double> delay_metric(std::span<const double> times, std::span<const double> signal) {
  if (times.size() != signal.size() || times.empty())
    throw std::invalid_argument("delay_metric: times and signal differ in length");
  double peak = 0.0;
  for (double s : signal) peak = std::max(peak, std::abs(s));
  const double final_value = signal.back();
  if (!(final_value > 1e-12 * peak)) return std::nullopt;

  const double target = 0.5 * final_value;
  if (signal[0] >= target) return times[0];
  for (std::size_t i = 1; i < signal.size(); ++i) {
    if (signal[i] >= target) {
      const double t = (target - signal[i - 1]) / (signal[i] - signal[i - 1]);
      return times[i - 1] + t * (times[i] - times[i - 1]);
    }
  }
  return times.back();
}

std::vector<double> window_integrated_signal(const SpectrumGrid& td) {
  std::vector<double> out(td.times.size(), 0.0);
  for (std::size_t j = 0; j < td.times.size(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < td.domega.size(); ++i)
      sum += 0.5 * (td.domega[i + 1] - td.domega[i]) *
             (td.values(Eigen::Index(j), Eigen::Index(i)) +
              td.values(Eigen::Index(j), Eigen::Index(i + 1)));
    out[j] = sum;
  }
  return out;
}

std::vector<double> SweepResult::omega_values() const {
  std::vector<double> out;
  for (const auto& p : points) out.push_back(p.omega_uev);
  return out;
}

TimeGrid spectral_grid(double t_end, double max_step, double nu) {
  const double h = std::min(max_step, max_grid_spacing(nu));
  const auto intervals = std::size_t(std::ceil(t_end / h - 1e-9));
  return {0.0, t_end, std::max<std::size_t>(intervals, 1) + 1};
}

SweepPoint analyze_drive(const RunConfig& config, double omega_uev, const SweepOptions& opts) {
  SweepPoint pt;
  pt.omega_uev = omega_uev;
  pt.separation_uev = kNaN;
  pt.delay_ps = kNaN;
  pt.fwhm_lower_uev = kNaN;
  pt.fwhm_upper_uev = kNaN;
  try {
    const SystemParams params = config.system(omega_uev);
    const SpectralDensityParams sd = config.spectral_density();
    pt.gamma_pe = pe_decay_rate(sd, params.delta, params.omega_drive);
    const Liouvillian L = build_liouvillian(params, sd);
    const DetectionOperator det = DetectionOperator::from(params);
    const SpectrumOptions spec_opts{1};

    // Integrated spectrum around the pe doublet.
    const double nu = config.nu(SpectrumMode::Integrated);
    const double T = config.integration_T_ps;
    const TimeGrid grid = spectral_grid(T, config.dynamics_grid().step(), nu);
    const Trajectory traj = propagate(L, params.initial_state, grid);
    const CorrelationKernel kernel = g1_kernel(L, traj, det);
    // Wide enough to hold the half-maximum crossings of an unresolved line.
    const double linewidth = pt.gamma_pe + 2.0 * dephasing_rate(params.dephasing, omega_uev);
    const double half_span = params.omega_drive + 20.0 * nu + 4.0 * linewidth;
    const FrequencyWindow window{"pe", params.delta - half_span, params.delta + half_span,
                                 opts.window_points};
    const auto domega = window.points();
    const SpectrumGrid S = time_integrated_spectrum(kernel, nu, domega, T, spec_opts);

    std::vector<double> x_uev(domega.size());
    for (std::size_t i = 0; i < domega.size(); ++i)
      x_uev[i] = angular_to_energy(domega[i] - params.delta);
    const auto y = S.row(0);
    auto peaks = find_peaks(x_uev, y, opts.prominence_fraction);
    if (peaks.empty()) throw NumericalError("no peak in the pe window");

    if (peaks.size() == 1) {
      const double w = fwhm(x_uev, y, peaks[0]);
      pt.fwhm_lower_uev = pt.fwhm_upper_uev = w;
      pt.status = "single";
    } else {
      std::vector<Peak> doublet(peaks.begin(), peaks.begin() + 2);
      std::sort(doublet.begin(), doublet.end(),
                [](const Peak& a, const Peak& b) { return a.center < b.center; });
      pt.fwhm_lower_uev = fwhm(x_uev, y, doublet[0], doublet);
      pt.fwhm_upper_uev = fwhm(x_uev, y, doublet[1], doublet);
      pt.separation_uev = doublet[1].center - doublet[0].center;
      pt.status = "doublet";
    }

    if (opts.with_delay) {
      const TimeGrid td_grid =
          spectral_grid(config.t_end_ps, config.dynamics_grid().step(), kTimeResolvedNu);
      const Trajectory td_traj = propagate(L, params.initial_state, td_grid);
      const CorrelationKernel td_kernel = g1_kernel(L, td_traj, det);
      const auto eg = eg_window(params.omega_drive, kTimeResolvedNu, 401).points();
      const auto times = td_grid.points();
      const SpectrumGrid R = time_dependent_spectrum(td_kernel, kTimeResolvedNu, eg, times, spec_opts);
      if (auto d = delay_metric(times, window_integrated_signal(R))) pt.delay_ps = *d;
    }
  } catch (const std::exception& e) {
    pt.status = std::string("error: ") + e.what();
  }
  return pt;
}

SweepResult linewidth_sweep(std::span<const double> omega_list, const RunConfig& config,
                            const SweepOptions& opts) {
  SweepResult result;
  result.points.resize(omega_list.size());
  parallel_for_each_index(omega_list.size(), opts.workers, [&](std::size_t i) {
    result.points[i] = analyze_drive(config, omega_list[i], opts);
  });
  return result;
}

}  // namespace zeno
