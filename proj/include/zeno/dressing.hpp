#pragma once

#include "zeno/core.hpp"

#include <vector>

namespace zeno {

// Rotating-frame system Hamiltonian
//   H_S = Delta |p><p| + (Omega/2)(|e><g| + |g><e|)
// with its eigen-decomposition (ascending eigenvalues).
struct SystemHamiltonian {
  Matrix3c matrix;
  Eigen::Vector3d eigenvalues;
  Matrix3c eigenvectors;  // columns
};

SystemHamiltonian build_hs(double delta, double omega_drive);

// One frequency-resolved piece A(eta) of a transition operator. eta_rel is
// measured from omega_e; rate is filled in when the generator is assembled.
struct JumpComponent {
  double eta_rel = 0.0;
  Matrix3c a_op = Matrix3c::Zero();
  double rate = 0.0;
};

inline constexpr double kFrequencyMergeTolerance = 1e-10;  // ps^-1

// Splits sigma into A(eta) = P_a sigma P_b over eigenprojectors of H_S with
// eta = lambda_b - lambda_a. Components closer than the merge tolerance are
// summed, so the result always adds back up to sigma.
std::vector<JumpComponent> decompose(const Matrix3c& sigma, const SystemHamiltonian& hs);

}  // namespace zeno
