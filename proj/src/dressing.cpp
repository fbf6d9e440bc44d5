#include "zeno/dressing.hpp"

#include <algorithm>
#include <cmath>

namespace zeno {

SystemHamiltonian build_hs(double delta, double omega_drive) {
  SystemHamiltonian hs;
  hs.matrix = delta * ket_bra(kP, kP) + 0.5 * omega_drive * (ket_bra(kE, kG) + ket_bra(kG, kE));

  Eigen::SelfAdjointEigenSolver<Matrix3c> es(hs.matrix);
  if (es.info() != Eigen::Success || !hs.matrix.allFinite())
    throw NumericalError("H_S eigen-decomposition failed (non-finite parameters?)");
  hs.eigenvalues = es.eigenvalues();
  hs.eigenvectors = es.eigenvectors();
  return hs;
}

namespace {

struct Eigenspace {
  double value;
  Matrix3c projector;
};

std::vector<Eigenspace> eigenspaces(const SystemHamiltonian& hs) {
  std::vector<Eigenspace> spaces;
  for (Eigen::Index i = 0; i < 3; ++i) {
    const double lambda = hs.eigenvalues(i);
    const auto v = hs.eigenvectors.col(i);
    // eigenvalues are sorted, so a degenerate partner is always the last space
    if (!spaces.empty() && std::abs(spaces.back().value - lambda) < kFrequencyMergeTolerance) {
      spaces.back().projector += v * v.adjoint();
    } else {
      spaces.push_back({lambda, v * v.adjoint()});
    }
  }
  return spaces;
}

}  // namespace

std::vector<JumpComponent> decompose(const Matrix3c& sigma, const SystemHamiltonian& hs) {
  if (!hs.eigenvalues.allFinite() || !hs.eigenvectors.allFinite())
    throw NumericalError("decompose: H_S eigen-decomposition is not finite");

  const auto spaces = eigenspaces(hs);
  const double scale = std::max(sigma.norm(), 1.0);

  std::vector<JumpComponent> out;
  for (const auto& a : spaces) {
    for (const auto& b : spaces) {
      Matrix3c piece = a.projector * sigma * b.projector;
      if (piece.norm() < 1e-14 * scale) continue;
      const double eta = b.value - a.value;
      auto same = std::find_if(out.begin(), out.end(), [eta](const JumpComponent& c) {
        return std::abs(c.eta_rel - eta) < kFrequencyMergeTolerance;
      });
      if (same != out.end()) {
        same->a_op += piece;
      } else {
        out.push_back({eta, piece, 0.0});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const JumpComponent& x, const JumpComponent& y) { return x.eta_rel < y.eta_rel; });
  return out;
}

}  // namespace zeno
