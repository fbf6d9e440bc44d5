#include "zeno/core.hpp"
#include "zeno/spectral_density.hpp"

#include <cmath>
#include <sstream>

namespace zeno {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}
}  // namespace

double dephasing_rate(const DephasingModel& model, double omega_drive_uev) {
  return std::visit(
      Overloaded{
          [](const NoDephasing&) { return 0.0; },
          [](const FixedDephasing& m) { return energy_to_angular(m.gamma_uev); },
          [omega_drive_uev](const PhononDephasing& m) {
            const double thermal =
                constants::kBoltzmannMeVK * m.temperature_k / constants::kHbarMeVps;
            const double omega = energy_to_angular(omega_drive_uev);
            return constants::kPi * m.alpha_ps2 * thermal * omega * omega;
          },
      },
      model);
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix3c herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3c> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(n_points);
  for (std::size_t i = 0; i < n_points; ++i) out[i] = at(i);
  return out;
}

void TimeGrid::check() const {
  if (n_points < 2) throw ConfigError("time grid needs at least 2 points");
  if (!(t_end > t_start) || !std::isfinite(t_start) || !std::isfinite(t_end))
    throw ConfigError("time grid must be strictly increasing");
}

std::vector<std::string> validate(const SystemParams& p, const SpectralDensityParams& sd) {
  std::vector<std::string> out;
  auto fail = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (!std::isfinite(p.omega_drive) || p.omega_drive < 0.0)
    fail("omega_drive: must be finite and >= 0 (got " + fmt_double(p.omega_drive) + ")");
  if (!std::isfinite(p.delta) || p.delta <= 0.0)
    fail("delta: subsystems spectrally overlap, delta must be > 0 (got " + fmt_double(p.delta) +
         ")");
  if (std::norm(p.collection_alpha) + std::norm(p.collection_beta) <= 0.0)
    fail("alpha_col, beta_col: |alpha|^2 + |beta|^2 must be > 0");

  std::visit(Overloaded{
                 [](const NoDephasing&) {},
                 [&](const FixedDephasing& m) {
                   if (!(m.gamma_uev >= 0.0)) fail("gamma_uev: must be >= 0");
                 },
                 [&](const PhononDephasing& m) {
                   if (!(m.alpha_ps2 >= 0.0)) fail("alpha_ph_ps2: must be >= 0");
                   if (!(m.temperature_k > 0.0)) fail("temperature_k: must be > 0");
                 },
             },
             p.dephasing);

  const Matrix3c& rho = p.initial_state.matrix();
  if (p.initial_state.hermiticity_error() > 1e-12) fail("initial_state: not Hermitian");
  if (p.initial_state.trace_error() > 1e-10) fail("initial_state: trace != 1");
  if (!rho.allFinite()) fail("initial_state: non-finite entries");

  if (!(sd.g > 0.0)) fail("g: must be > 0");
  if (!(sd.kappa > 0.0)) fail("kappa: must be > 0");
  if (!(sd.omega_c_rel > 0.0)) fail("omega_c: must be > 0");
  if (!(sd.gamma_b > 0.0)) fail("gamma_b: must be > 0");
  if (!(sd.xi > 0.0)) fail("xi: must be > 0");
  if (!(sd.kappa < sd.xi)) fail("kappa: cavity width must be < gap width xi");

  if (!(p.omega_drive < sd.xi))
    fail("omega_drive: drive exceeds gap (omega must be < xi = " + fmt_double(sd.xi) + " ps^-1)");
  if (!(p.delta > 0.5 * sd.xi))
    fail("delta: subsystems spectrally overlap (delta must be > xi/2 = " +
         fmt_double(0.5 * sd.xi) + " ps^-1)");
  return out;
}

}  // namespace zeno
