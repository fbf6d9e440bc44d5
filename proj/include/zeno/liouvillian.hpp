#pragma once

// Master-equation generator as a 9x9 superoperator acting on column-stacked
// density matrices: vec(rho) stacks the columns of the (g, e, p) matrix, so
// vec(A X B) = (B^T kron A) vec(X).

#include "zeno/core.hpp"
#include "zeno/dressing.hpp"
#include "zeno/spectral_density.hpp"

#include <optional>
#include <span>
#include <vector>

namespace zeno {

template <typename Derived>
auto vec(const Eigen::MatrixBase<Derived>& m) {
  return m.reshaped().eval();
}

template <typename Derived>
Matrix3<typename Derived::RealScalar> unvec(const Eigen::MatrixBase<Derived>& v) {
  return v.reshaped(3, 3);
}

// X -> A X
Matrix9c spre(const Matrix3c& a);
// X -> X B
Matrix9c spost(const Matrix3c& b);

// Sum over components of Gamma(eta) ([sigma, rho A^dag] - [sigma^dag, A rho]).
// The parent operator sits in the outer commutators, the frequency-resolved
// A(eta) inside; no secular symmetrization.
Matrix9c build_dissipator(const Matrix3c& sigma, std::span<const JumpComponent> components);

// 2 gamma (P rho P - {P, rho}/2), P = |e><e|.
Matrix9c build_dephasing(double gamma);

inline constexpr double kConditionThreshold = 1e8;

struct EigenCache {
  Vector9c values;
  Matrix9c right;  // columns r_k
  Matrix9c left;   // rows l_k^dag, left * right = I
  double condition = 0.0;
};

class Liouvillian {
 public:
  explicit Liouvillian(const Matrix9c& matrix);

  const Matrix9c& matrix() const { return matrix_; }
  const EigenCache& eigen() const { return eigen_; }
  // Eigen path is trusted only below the condition threshold.
  bool eigen_usable() const { return eigen_usable_; }

  // e^{L t} x through the eigen-decomposition.
  Vector9c evolve_eigen(const Vector9c& x, double t) const;

  double trace_defect() const;  // || vec(I)^dag L ||
  double max_real_eigenvalue() const { return eigen_.values.real().maxCoeff(); }

 private:
  Matrix9c matrix_;
  EigenCache eigen_;
  bool eigen_usable_ = false;
};

struct JumpSet {
  SystemHamiltonian hs;
  std::vector<JumpComponent> pe;
  std::vector<JumpComponent> eg;
};

// Dressed decomposition of sigma_pe and sigma_eg with rates Gamma(eta).
JumpSet jump_components(const SystemParams& params, const RateFunction& rate);

// Throws ConfigError listing every violated bound.
Liouvillian build_liouvillian(const SystemParams& params, const SpectralDensityParams& sd);
// Arbitrary rate profile; only the system parameters are checked.
Liouvillian build_liouvillian(const SystemParams& params, const RateFunction& rate);

// Closed form rho_pp(t) = exp(-Gamma_pe t) for an initial |p><p|.
double analytic_population(const SpectralDensityParams& sd, const SystemParams& params, double t);

enum class PropagationMethod { Automatic, Eigen, Ode };

struct StateDiagnostics {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<DensityMatrix> states;
  std::vector<StateDiagnostics> diagnostics;
  PropagationMethod method = PropagationMethod::Eigen;
  double condition = 0.0;

  double max_trace_error() const;
  double max_hermiticity_error() const;
  double min_eigenvalue() const;
};

inline constexpr double kOdeRelTol = 1e-10;
inline constexpr double kOdeAbsTol = 1e-12;

// rho(t) on the grid; rho0 is the state at grid.t_start. Automatic picks
// the eigen path unless the eigenbasis is ill-conditioned.
Trajectory propagate(const Liouvillian& L, const DensityMatrix& rho0, const TimeGrid& grid,
                     PropagationMethod method = PropagationMethod::Automatic);

// Adaptive Runge-Kutta evolution of an arbitrary operator X under L.
std::vector<Matrix3c> evolve_operator_ode(const Liouvillian& L, const Matrix3c& x0,
                                          std::span<const double> times);

}  // namespace zeno
