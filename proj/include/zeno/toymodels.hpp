#pragma once

// Closed-form baselines: coherent two- and three-level survival, a fixed
// incoherent decay, and a chain of projective measurements on that decay.

#include <cstdint>
#include <span>
#include <vector>

namespace zeno::toy {

// cos^2(Omega_pe t / 2)
double two_level_survival(double omega_pe, double t);

// [(Omega_eg^2 + Omega_pe^2 cos(Omega_R t / 2)) / Omega_R^2]^2,
// Omega_R^2 = Omega_pe^2 + Omega_eg^2.
double three_level_survival(double omega_pe, double omega_eg, double t);

// exp(-gamma t); a coherent drive on the lower pair plays no role.
double incoherent_survival(double gamma, double t);

// (exp(-gamma t / n))^n by repeated multiplication.
double zeno_measurement_chain(double gamma, double t, std::uint64_t n);

// |<p|psi(t)>|^2 by adaptive integration of the resonant chain
// p <-(Omega_pe/2)-> e <-(Omega_eg/2)-> g starting from |p>.
struct OracleSample {
  double survival;
  double norm;
};
std::vector<OracleSample> schrodinger_oracle(double omega_pe, double omega_eg,
                                             std::span<const double> times);

inline constexpr double kOracleRelTol = 1e-12;

}  // namespace zeno::toy
