#include "zeno/liouvillian.hpp"
#include "zeno/ode.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zeno {

namespace {
const Complex kI{0.0, 1.0};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}
}  // namespace

Matrix9c spre(const Matrix3c& a) {
  return Eigen::kroneckerProduct(Matrix3c::Identity(), a).eval();
}

Matrix9c spost(const Matrix3c& b) {
  return Eigen::kroneckerProduct(b.transpose(), Matrix3c::Identity()).eval();
}

Matrix9c build_dissipator(const Matrix3c& sigma, std::span<const JumpComponent> components) {
  const Matrix3c sigma_dag = sigma.adjoint();
  Matrix9c d = Matrix9c::Zero();
  for (const auto& c : components) {
    if (c.rate < 0.0) throw NumericalError("build_dissipator: negative rate");
    if (c.rate == 0.0) continue;
    const Matrix3c a_dag = c.a_op.adjoint();
    // sigma rho A^dag - rho A^dag sigma - sigma^dag A rho + A rho sigma^dag
    d += c.rate * (spre(sigma) * spost(a_dag) - spost(a_dag * sigma) - spre(sigma_dag * c.a_op) +
                   spre(c.a_op) * spost(sigma_dag));
  }
  return d;
}

Matrix9c build_dephasing(double gamma) {
  const Matrix3c proj = ket_bra(kE, kE);
  return 2.0 * gamma *
         (spre(proj) * spost(proj) - 0.5 * spre(proj) - 0.5 * spost(proj));
}

Liouvillian::Liouvillian(const Matrix9c& matrix) : matrix_(matrix) {
  if (!matrix_.allFinite()) throw NumericalError("Liouvillian: non-finite generator");
  Eigen::ComplexEigenSolver<Matrix9c> es(matrix_);
  if (es.info() != Eigen::Success) {
    eigen_.condition = std::numeric_limits<double>::infinity();
    return;
  }
  eigen_.values = es.eigenvalues();
  eigen_.right = es.eigenvectors();

  Eigen::JacobiSVD<Matrix9c> svd(eigen_.right);
  const auto& sv = svd.singularValues();
  const double smallest = sv.minCoeff();
  eigen_.condition =
      smallest > 0.0 ? sv.maxCoeff() / smallest : std::numeric_limits<double>::infinity();
  if (!std::isfinite(eigen_.condition)) return;

  eigen_.left = eigen_.right.partialPivLu().inverse();
  eigen_usable_ = eigen_.condition <= kConditionThreshold && eigen_.left.allFinite();
}

Vector9c Liouvillian::evolve_eigen(const Vector9c& x, double t) const {
  const Vector9c coeff = eigen_.left * x;
  const Vector9c decay = (eigen_.values * t).array().exp().matrix();
  return eigen_.right * coeff.cwiseProduct(decay);
}

double Liouvillian::trace_defect() const {
  const Vector9c id = vec(Matrix3c::Identity());
  return (id.adjoint() * matrix_).norm();
}

JumpSet jump_components(const SystemParams& params, const RateFunction& rate) {
  JumpSet set;
  set.hs = build_hs(params.delta, params.omega_drive);
  set.pe = decompose(sigma_pe(), set.hs);
  set.eg = decompose(sigma_eg(), set.hs);
  for (auto* group : {&set.pe, &set.eg})
    for (auto& c : *group) c.rate = rate(c.eta_rel);
  return set;
}

Liouvillian build_liouvillian(const SystemParams& params, const RateFunction& rate) {
  const JumpSet jumps = jump_components(params, rate);
  Matrix9c gen = -kI * (spre(jumps.hs.matrix) - spost(jumps.hs.matrix));
  gen += build_dissipator(sigma_pe(), jumps.pe);
  gen += build_dissipator(sigma_eg(), jumps.eg);
  const double gamma = dephasing_rate(params.dephasing, params.omega_drive_uev());
  if (gamma > 0.0) gen += build_dephasing(gamma);
  return Liouvillian(gen);
}

Liouvillian build_liouvillian(const SystemParams& params, const SpectralDensityParams& sd) {
  const auto violations = validate(params, sd);
  if (!violations.empty()) throw ConfigError(join(violations));
  return build_liouvillian(params, rate_function(sd));
}

double analytic_population(const SpectralDensityParams& sd, const SystemParams& params,
                           double t) {
  return std::exp(-pe_decay_rate(sd, params.delta, params.omega_drive) * t);
}

double Trajectory::max_trace_error() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.trace_error);
  return m;
}

double Trajectory::max_hermiticity_error() const {
  double m = 0.0;
  for (const auto& d : diagnostics) m = std::max(m, d.hermiticity_error);
  return m;
}

double Trajectory::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : diagnostics) m = std::min(m, d.min_eigenvalue);
  return m;
}

namespace {

void check_finite(const Matrix3c& rho, std::size_t step, double t, double condition) {
  if (rho.allFinite()) return;
  std::ostringstream os;
  os << "propagation produced a non-finite state at step " << step << " (t = " << t
     << " ps, eigen-condition " << condition << ")";
  throw NumericalError(os.str());
}

}  // namespace

std::vector<Matrix3c> evolve_operator_ode(const Liouvillian& L, const Matrix3c& x0,
                                          std::span<const double> times) {
  ode::State<9> state;
  Eigen::Map<Vector9c>(state.data()) = vec(x0);
  const Matrix9c& gen = L.matrix();
  std::vector<Matrix3c> out;
  out.reserve(times.size());
  ode::integrate_at<9>(
      [&gen](const ode::State<9>& x, ode::State<9>& dx) {
        Eigen::Map<Vector9c>(dx.data()).noalias() = gen * Eigen::Map<const Vector9c>(x.data());
      },
      state, times, kOdeAbsTol, kOdeRelTol,
      [&out](const ode::State<9>& x, double) {
        out.push_back(unvec(Eigen::Map<const Vector9c>(x.data())));
      });
  return out;
}

Trajectory propagate(const Liouvillian& L, const DensityMatrix& rho0, const TimeGrid& grid,
                     PropagationMethod method) {
  grid.check();
  if (!rho0.matrix().allFinite()) throw NumericalError("propagate: non-finite initial state");

  Trajectory traj;
  traj.grid = grid;
  traj.condition = L.eigen().condition;
  if (method == PropagationMethod::Automatic)
    method = L.eigen_usable() ? PropagationMethod::Eigen : PropagationMethod::Ode;
  if (method == PropagationMethod::Eigen && !L.eigen_usable())
    throw NumericalError("propagate: eigenbasis is ill-conditioned; use the ODE path");
  traj.method = method;

  const auto times = grid.points();
  std::vector<Matrix3c> states;
  if (method == PropagationMethod::Eigen) {
    const Vector9c x0 = vec(rho0.matrix());
    states.reserve(times.size());
    for (double t : times) {
      const double elapsed = t - grid.t_start;
      states.push_back(elapsed == 0.0 ? rho0.matrix()
                                      : Matrix3c(unvec(L.evolve_eigen(x0, elapsed))));
    }
  } else {
    states = evolve_operator_ode(L, rho0.matrix(), times);
  }

  traj.states.reserve(states.size());
  traj.diagnostics.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    check_finite(states[i], i, times[i], traj.condition);
    DensityMatrix rho(states[i]);
    traj.diagnostics.push_back(
        {rho.trace_error(), rho.hermiticity_error(), rho.min_eigenvalue()});
    traj.states.push_back(std::move(rho));
  }
  return traj;
}

}  // namespace zeno
