#pragma once

#include "zeno/config.hpp"
#include "zeno/io.hpp"

#include <json.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WindowChoice { Eg, Pe, Both };

struct CommandOutput {
  std::vector<io::OutputFile> files;
  nlohmann::json record = nlohmann::json::object();
  int exit_code = kOk;
};

std::vector<double> default_rate_omegas();
std::vector<double> default_sweep_omegas();

CommandOutput cmd_rates(const RunConfig& config, std::span<const double> omegas);
CommandOutput cmd_dynamics(const RunConfig& config, std::span<const double> omegas);
CommandOutput cmd_spectrum(const RunConfig& config, std::span<const double> omegas,
                           SpectrumMode mode, WindowChoice window, std::size_t workers);
CommandOutput cmd_sweep(const RunConfig& config, std::span<const double> omegas,
                        std::size_t workers);
CommandOutput cmd_toy(const RunConfig& config);

// Entry point shared by the executable and the tests; returns the exit code.
int run(int argc, const char* const* argv);

}  // namespace zeno::cli
