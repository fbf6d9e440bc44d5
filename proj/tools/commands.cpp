#include "commands.hpp"

#include "zeno/analysis.hpp"
#include "zeno/liouvillian.hpp"
#include "zeno/spectra.hpp"
#include "zeno/toymodels.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <thread>

namespace zeno::cli {

using nlohmann::json;
using io::CsvTable;
using io::format_double;

namespace {

std::string omega_tag(double omega_uev) { return "omega_" + format_double(omega_uev) + "uev"; }

json grid_json(const TimeGrid& g) {
  return {{"t_start_ps", g.t_start}, {"t_end_ps", g.t_end}, {"n_points", g.n_points}};
}

json window_json(const FrequencyWindow& w) {
  return {{"id", w.id},
          {"lo_uev", angular_to_energy(w.lo)},
          {"hi_uev", angular_to_energy(w.hi)},
          {"n_points", w.n_points}};
}

struct Diagnostics {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double max_condition = 0.0;

  void add(const Trajectory& t) {
    max_trace_error = std::max(max_trace_error, t.max_trace_error());
    max_hermiticity_error = std::max(max_hermiticity_error, t.max_hermiticity_error());
    min_eigenvalue = std::min(min_eigenvalue, t.min_eigenvalue());
    max_condition = std::max(max_condition, t.condition);
  }
  json to_json() const {
    return {{"max_trace_error", max_trace_error},
            {"max_hermiticity_error", max_hermiticity_error},
            {"min_state_eigenvalue", std::isfinite(min_eigenvalue) ? min_eigenvalue : 0.0},
            {"max_eigen_condition", max_condition}};
  }
};

json base_record(const RunConfig& config) {
  return {{"parameters", config.to_json()}};
}

std::vector<double> resolve_omegas(const RunConfig& config, std::span<const double> omegas) {
  if (omegas.empty()) return {config.omega_uev};
  return {omegas.begin(), omegas.end()};
}

}  // namespace

std::vector<double> default_rate_omegas() {
  std::vector<double> out;
  for (int i = 0; i <= 100; ++i) out.push_back(5.0 * i);
  return out;
}

std::vector<double> default_sweep_omegas() { return {10, 20, 50, 100, 140, 170}; }

CommandOutput cmd_rates(const RunConfig& config, std::span<const double> omegas) {
  if (omegas.empty()) throw UsageError("rates: the drive-strength grid is empty");
  const SpectralDensityParams sd = config.spectral_density();
  const SystemParams base = config.system();

  CsvTable density({"omega_rel_uev", "detuning_from_cavity_uev", "gamma_per_ps"});
  const FrequencyWindow w{"pe", sd.omega_c_rel - sd.xi, sd.omega_c_rel + sd.xi, 2001};
  for (double omega : w.points())
    density.add_row({angular_to_energy(omega), angular_to_energy(omega - sd.omega_c_rel),
                     gamma_total(sd, omega)});

  const double undriven = pe_decay_rate(sd, base.delta, 0.0);
  CsvTable rates({"omega_uev", "gamma_pe_per_ps", "lifetime_ps", "ratio_to_undriven"});
  for (double om : omegas) {
    const double g = pe_decay_rate(sd, base.delta, energy_to_angular(om));
    rates.add_row({om, g, 1.0 / g, g / undriven});
  }

  CommandOutput out;
  out.files = {{"rates_spectral_density.csv", density.str()},
               {"rates_gamma_pe.csv", rates.str()}};
  out.record = base_record(config);
  out.record["grids"] = {{"spectral_density_window", window_json(w)},
                         {"omega_uev", std::vector<double>(omegas.begin(), omegas.end())}};
  return out;
}

CommandOutput cmd_dynamics(const RunConfig& config, std::span<const double> omegas) {
  const SpectralDensityParams sd = config.spectral_density();
  const TimeGrid grid = config.dynamics_grid();
  CommandOutput out;
  out.record = base_record(config);
  out.record["grids"] = {{"time", grid_json(grid)}};
  Diagnostics diag;

  for (double om : resolve_omegas(config, omegas)) {
    const SystemParams params = config.system(om);
    const Liouvillian L = build_liouvillian(params, sd);
    const Trajectory traj = propagate(L, params.initial_state, grid);
    diag.add(traj);

    CsvTable table({"t_ps", "rho_gg", "rho_ee", "rho_pp", "re_rho_eg", "im_rho_eg", "re_rho_pe",
                    "im_rho_pe", "re_rho_pg", "im_rho_pg", "trace_err", "min_eig"});
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const DensityMatrix& r = traj.states[i];
      table.add_row({grid.at(i), r.population(kG), r.population(kE), r.population(kP),
                     r(kE, kG).real(), r(kE, kG).imag(), r(kP, kE).real(), r(kP, kE).imag(),
                     r(kP, kG).real(), r(kP, kG).imag(), traj.diagnostics[i].trace_error,
                     traj.diagnostics[i].min_eigenvalue});
    }
    out.files.push_back({"dynamics_" + omega_tag(om) + ".csv", table.str()});
  }
  out.record["diagnostics"] = diag.to_json();
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& config, std::span<const double> omegas,
                           SpectrumMode mode, WindowChoice choice, std::size_t workers) {
  const SpectralDensityParams sd = config.spectral_density();
  const bool integrated = mode == SpectrumMode::Integrated;
  const double nu = config.nu(mode);
  const double t_end = integrated ? config.integration_T_ps : config.t_end_ps;
  const TimeGrid grid = spectral_grid(t_end, config.dynamics_grid().step(), nu);
  const SpectrumOptions opts{workers};

  CommandOutput out;
  out.record = base_record(config);
  out.record["mode"] = integrated ? "integrated" : "td";
  out.record["nu_uev"] = angular_to_energy(nu);
  out.record["grids"] = {{"s_grid", grid_json(grid)}};
  if (!integrated) out.record["grids"]["output_times"] = grid_json(config.dynamics_grid());
  Diagnostics diag;
  json warnings = json::array();

  for (double om : resolve_omegas(config, omegas)) {
    const SystemParams params = config.system(om);
    const Liouvillian L = build_liouvillian(params, sd);
    const Trajectory traj = propagate(L, params.initial_state, grid);
    diag.add(traj);
    const CorrelationKernel kernel = g1_kernel(L, traj, DetectionOperator::from(params));

    std::vector<FrequencyWindow> windows;
    if (choice != WindowChoice::Pe) windows.push_back(eg_window(params.omega_drive, nu));
    if (choice != WindowChoice::Eg) windows.push_back(pe_window(params.delta, params.omega_drive, nu));
    const bool tagged = windows.size() > 1;

    std::vector<std::string> columns;
    if (tagged) columns.push_back("window");
    if (!integrated) columns.push_back("t_ps");
    columns.push_back("domega_uev");
    columns.push_back(integrated ? "S" : "R");
    CsvTable table(columns);

    for (const auto& w : windows) {
      out.record["grids"]["windows"][omega_tag(om)][w.id] = window_json(w);
      const auto domega = w.points();
      if (integrated) {
        const SpectrumGrid S = time_integrated_spectrum(kernel, nu, domega, t_end, opts);
        for (const auto& msg : S.warnings) warnings.push_back(msg);
        for (std::size_t i = 0; i < domega.size(); ++i) {
          std::vector<CsvTable::Cell> row;
          if (tagged) row.emplace_back(w.id);
          row.emplace_back(angular_to_energy(domega[i]));
          row.emplace_back(S.values(0, Eigen::Index(i)));
          table.add_row(std::move(row));
        }
      } else {
        const auto times = config.dynamics_grid().points();
        const SpectrumGrid R = time_dependent_spectrum(kernel, nu, domega, times, opts);
        for (std::size_t j = 0; j < times.size(); ++j)
          for (std::size_t i = 0; i < domega.size(); ++i) {
            std::vector<CsvTable::Cell> row;
            if (tagged) row.emplace_back(w.id);
            row.emplace_back(times[j]);
            row.emplace_back(angular_to_energy(domega[i]));
            row.emplace_back(R.values(Eigen::Index(j), Eigen::Index(i)));
            table.add_row(std::move(row));
          }
      }
    }
    out.files.push_back({std::string("spectrum_") + (integrated ? "integrated_" : "td_") +
                             omega_tag(om) + ".csv",
                         table.str()});
  }
  out.record["diagnostics"] = diag.to_json();
  if (!warnings.empty()) out.record["warnings"] = warnings;
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config, std::span<const double> omegas,
                        std::size_t workers) {
  if (omegas.empty()) throw UsageError("sweep: the drive-strength list is empty");
  SweepOptions opts;
  opts.workers = workers;
  const SweepResult result = linewidth_sweep(omegas, config, opts);

  CsvTable table({"omega_uev", "gamma_pe_per_ps", "fwhm_lower_uev", "fwhm_upper_uev",
                  "separation_uev", "delay_ps", "status"});
  bool any_ok = false;
  for (const auto& p : result.points) {
    any_ok = any_ok || p.ok();
    std::string status = p.status;
    std::replace(status.begin(), status.end(), ',', ';');
    table.add_row({p.omega_uev, p.gamma_pe, p.fwhm_lower_uev, p.fwhm_upper_uev, p.separation_uev,
                   p.delay_ps, status});
  }
  CommandOutput out;
  out.files = {{"sweep.csv", table.str()}};
  out.record = base_record(config);
  out.record["nu_uev"] = angular_to_energy(config.nu(SpectrumMode::Integrated));
  out.record["delay_nu_uev"] = angular_to_energy(kTimeResolvedNu);
  out.record["grids"] = {{"omega_uev", std::vector<double>(omegas.begin(), omegas.end())}};
  out.exit_code = any_ok ? kOk : kNumericalError;
  return out;
}

CommandOutput cmd_toy(const RunConfig& config) {
  constexpr double kOmegaPe = 0.01, kOmegaEg = 0.1;  // ps^-1
  const TimeGrid grid{0.0, 1000.0, 1001};
  const auto times = grid.points();

  auto coherent = [&](double omega_eg) {
    CsvTable t({"t_ps", "survival_closed_form", "survival_oracle", "abs_diff"});
    const auto oracle = toy::schrodinger_oracle(kOmegaPe, omega_eg, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double closed = omega_eg == 0.0 ? toy::two_level_survival(kOmegaPe, times[i])
                                            : toy::three_level_survival(kOmegaPe, omega_eg, times[i]);
      t.add_row({times[i], closed, oracle[i].survival, std::abs(closed - oracle[i].survival)});
    }
    return t.str();
  };

  const SystemParams params = config.system();
  const double gamma = pe_decay_rate(config.spectral_density(), params.delta, 0.0);
  constexpr std::uint64_t kMeasurements = 1000;
  CsvTable incoherent({"t_ps", "survival_closed_form", "survival_oracle", "abs_diff"});
  for (double t : times) {
    const double closed = toy::incoherent_survival(gamma, t);
    const double chain = toy::zeno_measurement_chain(gamma, t, kMeasurements);
    incoherent.add_row({t, closed, chain, std::abs(closed - chain)});
  }

  CommandOutput out;
  out.files = {{"toy_two_level.csv", coherent(0.0)},
               {"toy_three_level.csv", coherent(kOmegaEg)},
               {"toy_incoherent.csv", incoherent.str()}};
  out.record = base_record(config);
  out.record["toy"] = {{"omega_pe_per_ps", kOmegaPe},
                       {"omega_eg_per_ps", kOmegaEg},
                       {"gamma_pe_per_ps", gamma},
                       {"measurements", kMeasurements}};
  out.record["grids"] = {{"time", grid_json(grid)}};
  return out;
}

namespace {

std::size_t resolve_workers(int flag) {
  if (flag > 0) return std::size_t(flag);
  if (const char* env = std::getenv("ZENO_TRAP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return std::size_t(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Driven three-level emitter in a structured photonic reservoir"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::vector<double> omegas;
  std::string mode = "integrated";
  std::string window = "both";
  int workers = 0;
  app.add_option("--config", config_path, "JSON config file (flat key/value)");
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--omega-uev", omegas, "drive strength in ueV (repeatable)")->take_all()->allow_extra_args(false);
  app.add_option("--mode", mode, "spectrum mode")->check(CLI::IsMember({"td", "integrated"}));
  app.add_option("--window", window, "spectral window")->check(CLI::IsMember({"eg", "pe", "both"}));
  app.add_option("--workers", workers, "worker threads (default: ZENO_TRAP_WORKERS or all cores)");

  auto* rates = app.add_subcommand("rates", "spectral density and Gamma_pe(Omega)");
  auto* dynamics = app.add_subcommand("dynamics", "density-matrix trajectories");
  auto* spectrum = app.add_subcommand("spectrum", "time-dependent or integrated spectra");
  auto* sweep = app.add_subcommand("sweep", "doublet linewidth versus drive strength");
  auto* toy_cmd = app.add_subcommand("toy", "closed-form toy models against the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    const RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    const std::size_t n_workers = resolve_workers(workers);

    CommandOutput out;
    std::string command;
    if (rates->parsed()) {
      command = "rates";
      const auto grid = omegas.empty() ? default_rate_omegas() : omegas;
      out = cmd_rates(config, grid);
    } else if (dynamics->parsed()) {
      command = "dynamics";
      out = cmd_dynamics(config, omegas);
    } else if (spectrum->parsed()) {
      command = "spectrum";
      const auto m = mode == "td" ? SpectrumMode::TimeDependent : SpectrumMode::Integrated;
      const auto w = window == "eg" ? WindowChoice::Eg
                     : window == "pe" ? WindowChoice::Pe
                                      : WindowChoice::Both;
      out = cmd_spectrum(config, omegas, m, w, n_workers);
    } else if (sweep->parsed()) {
      command = "sweep";
      const auto grid = omegas.empty() ? default_sweep_omegas() : omegas;
      out = cmd_sweep(config, grid, n_workers);
    } else if (toy_cmd->parsed()) {
      command = "toy";
      out = cmd_toy(config);
    }

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& f : out.files) {
      io::write_atomic(dir / f.name, f.contents);
      std::cerr << "wrote " << (dir / f.name).string() << "\n";
    }
    if (out.record.contains("warnings"))
      for (const auto& w : out.record["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    io::write_manifest(dir, command, out.record, out.files);
    return out.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace zeno::cli
