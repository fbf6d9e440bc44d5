#pragma once

// Shared types for the driven three-level emitter: constants, unit
// conversions, parameter records and the density-matrix state.
//
// Internal units: angular frequencies in ps^-1, times in ps. Energies in
// ueV / meV appear only at I/O boundaries.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace zeno {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix3 = Eigen::Matrix<std::complex<Scalar>, 3, 3>;
template <typename Scalar>
using Vector9 = Eigen::Matrix<std::complex<Scalar>, 9, 1>;
template <typename Scalar>
using Matrix9 = Eigen::Matrix<std::complex<Scalar>, 9, 9>;

using Matrix3c = Matrix3<double>;
using Vector9c = Vector9<double>;
using Matrix9c = Matrix9<double>;

// Basis ordering of every 3x3 operator.
enum Level : Eigen::Index { kG = 0, kE = 1, kP = 2 };

namespace constants {
inline constexpr double kHbarMeVps = 0.6582119569;   // meV ps
inline constexpr double kHbarUeVps = 658.2119569;    // ueV ps
inline constexpr double kBoltzmannMeVK = 0.08617333262;  // meV / K
inline constexpr double kPi = 3.14159265358979323846;
}  // namespace constants

inline constexpr double energy_to_angular(double energy_uev) {
  return energy_uev / constants::kHbarUeVps;
}
inline constexpr double angular_to_energy(double omega_per_ps) {
  return omega_per_ps * constants::kHbarUeVps;
}
inline constexpr double mev_to_angular(double energy_mev) {
  return energy_mev / constants::kHbarMeVps;
}

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// |row><col|
template <typename Scalar = double>
Matrix3<Scalar> ket_bra(Level row, Level col) {
  Matrix3<Scalar> m = Matrix3<Scalar>::Zero();
  m(row, col) = Scalar(1);
  return m;
}

// sigma_eg = |g><e|, sigma_pe = |e><p|.
template <typename Scalar = double>
Matrix3<Scalar> sigma_eg() {
  return ket_bra<Scalar>(kG, kE);
}
template <typename Scalar = double>
Matrix3<Scalar> sigma_pe() {
  return ket_bra<Scalar>(kE, kP);
}

// Pure-dephasing models acting on |e><e|.
struct NoDephasing {};
struct FixedDephasing {
  double gamma_uev = 0.0;
};
struct PhononDephasing {
  double alpha_ps2 = 0.03;
  double temperature_k = 4.0;
};
using DephasingModel = std::variant<NoDephasing, FixedDephasing, PhononDephasing>;

// Dephasing rate in ps^-1. The phonon form is pi * alpha * (kB T / hbar) *
// (Omega / hbar)^2 with every factor an angular frequency.
double dephasing_rate(const DephasingModel& model, double omega_drive_uev);

class DensityMatrix {
 public:
  DensityMatrix() : rho_(Matrix3c::Zero()) { rho_(kP, kP) = 1.0; }
  explicit DensityMatrix(const Matrix3c& rho) : rho_(rho) {}

  static DensityMatrix pure(Level level) {
    return DensityMatrix(ket_bra(level, level));
  }

  const Matrix3c& matrix() const { return rho_; }
  Complex operator()(Level r, Level c) const { return rho_(r, c); }
  double population(Level l) const { return rho_(l, l).real(); }

  double trace_error() const { return std::abs(rho_.trace() - Complex(1.0)); }
  double hermiticity_error() const { return (rho_ - rho_.adjoint()).norm(); }
  // Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  Matrix3c rho_;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 100.0;
  std::size_t n_points = 401;

  double step() const {
    return n_points > 1 ? (t_end - t_start) / double(n_points - 1) : 0.0;
  }
  double at(std::size_t i) const {
    return i + 1 == n_points ? t_end : t_start + double(i) * step();
  }
  std::vector<double> points() const;
  void check() const;
};

// Physical parameters of the driven emitter, stored in internal units.
struct SystemParams {
  double delta = mev_to_angular(10.0);      // level-spacing asymmetry
  double omega_drive = energy_to_angular(100.0);  // Rabi frequency
  DephasingModel dephasing = NoDephasing{};
  Complex collection_alpha{1.0, 0.0};
  Complex collection_beta{1.0, 0.0};
  DensityMatrix initial_state = DensityMatrix::pure(kP);

  double omega_drive_uev() const { return angular_to_energy(omega_drive); }
};

struct SpectralDensityParams;

// Lists every violated invariant; empty means the parameter set is usable.
std::vector<std::string> validate(const SystemParams& params,
                                  const SpectralDensityParams& sd);

}  // namespace zeno
