#include "zeno/spectra.hpp"
#include "zeno/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zeno {

DetectionOperator DetectionOperator::from_weights(Complex alpha, Complex beta) {
  DetectionOperator det;
  det.e_lower = alpha * sigma_eg() + beta * sigma_pe();
  det.e_raise = det.e_lower.adjoint();
  return det;
}

Complex CorrelationKernel::g1(std::size_t s_index, double tau) const {
  const auto w = weights.row(Eigen::Index(s_index));
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) sum += w(k) * std::exp(lambdas(k) * tau);
  return sum;
}

CorrelationKernel g1_kernel(const Liouvillian& L, const Trajectory& traj,
                            const DetectionOperator& det) {
  if (!L.eigen_usable()) {
    std::ostringstream os;
    os << "g1_kernel: eigenbasis condition " << L.eigen().condition
       << " exceeds threshold; use g1_direct";
    throw NumericalError(os.str());
  }
  const EigenCache& eig = L.eigen();
  CorrelationKernel kernel;
  kernel.s_grid = traj.grid;
  kernel.lambdas = eig.values;

  // Tr[E unvec(r_k)]
  Eigen::Matrix<Complex, 1, 9> readout;
  for (Eigen::Index k = 0; k < 9; ++k)
    readout(k) = (det.e_lower * unvec(eig.right.col(k))).trace();

  kernel.weights.resize(Eigen::Index(traj.states.size()), 9);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const Vector9c conditional = vec(traj.states[i].matrix() * det.e_raise);
    const Vector9c overlap = eig.left * conditional;
    kernel.weights.row(Eigen::Index(i)) = readout.cwiseProduct(overlap.transpose());
  }
  return kernel;
}

std::vector<Complex> g1_direct(const Liouvillian& L, const Trajectory& traj,
                               const DetectionOperator& det, double s,
                               std::span<const double> tau_grid) {
  const TimeGrid& grid = traj.grid;
  const double h = grid.step();
  const double pos = (s - grid.t_start) / h;
  const auto idx = std::size_t(std::llround(pos));
  if (pos < -1e-9 || idx >= traj.states.size() || std::abs(pos - double(idx)) > 1e-9)
    throw NumericalError("g1_direct: s is not a point of the trajectory grid");

  const Matrix3c x0 = traj.states[idx].matrix() * det.e_raise;
  std::vector<Complex> out;
  out.reserve(tau_grid.size());
  for (const Matrix3c& x : evolve_operator_ode(L, x0, tau_grid))
    out.push_back((det.e_lower * x).trace());
  return out;
}

std::vector<double> FrequencyWindow::points() const {
  std::vector<double> out(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    out[i] = i + 1 == n_points ? hi : lo + double(i) * spacing();
  return out;
}

FrequencyWindow eg_window(double omega_drive, double nu, std::size_t n) {
  const double half = 3.0 * omega_drive + 20.0 * nu;
  return {"eg", -half, half, n};
}

FrequencyWindow pe_window(double delta, double omega_drive, double nu, std::size_t n) {
  const double half = omega_drive + 20.0 * nu;
  return {"pe", delta - half, delta + half, n};
}

std::vector<double> SpectrumGrid::row(std::size_t i) const {
  const auto r = values.row(Eigen::Index(i));
  return {r.begin(), r.end()};
}

namespace {

// phi1(x) = (e^x - 1)/x, phi2(x) = (e^x - 1 - x)/x^2
struct Phi {
  Complex exp, phi1, phi2;
};

Phi phi_functions(Complex x) {
  Phi out;
  out.exp = std::exp(x);
  if (std::abs(x) < 0.1) {
    Complex term1 = 1.0, term2 = 0.5, p1 = 0.0, p2 = 0.0;
    for (int k = 0; k < 14; ++k) {
      p1 += term1;
      p2 += term2;
      term1 *= x / double(k + 2);
      term2 *= x / double(k + 3);
    }
    out.phi1 = p1;
    out.phi2 = p2;
  } else {
    out.phi1 = (out.exp - 1.0) / x;
    out.phi2 = (out.exp - 1.0 - x) / (x * x);
  }
  return out;
}

// H_c(t) = int_0^t w(s) e^{c (t - s)} ds with w linear between grid points
// and the exponential integrated exactly.
struct Step {
  Complex decay, a, b;  // H_{n+1} = decay H_n + a w_n + b w_{n+1}
  static Step make(Complex c, double h) {
    const Phi p = phi_functions(c * h);
    return {p.exp, h * (p.phi1 - p.phi2), h * p.phi2};
  }
};

// Evaluation point: grid index n plus a partial step of length frac.
struct Checkpoint {
  std::size_t n;
  double frac;
};

class SpectrumEngine {
 public:
  SpectrumEngine(const CorrelationKernel& kernel, double nu, std::span<const double> times)
      : kernel_(kernel), nu_(nu), h_(kernel.s_grid.step()) {
    if (!(nu > 0.0)) throw NumericalError("spectrum: spectrometer width nu must be > 0");
    if (std::abs(kernel.s_grid.t_start) > 0.0)
      throw NumericalError("spectrum: kernel grid must start at t = 0");
    const std::size_t last = std::size_t(kernel.weights.rows()) - 1;
    if (!std::is_sorted(times.begin(), times.end()))
      throw NumericalError("spectrum: evaluation times must be ascending");
    for (double t : times) {
      if (t < 0.0 || t > kernel.s_grid.t_end * (1.0 + 1e-12))
        throw NumericalError("spectrum: evaluation time outside the kernel grid");
      auto n = std::min(std::size_t(std::floor(t / h_ + 1e-9)), last);
      double frac = std::max(0.0, t - kernel.s_grid.at(n));
      if (n == last) frac = 0.0;
      checkpoints_.push_back({n, frac});
    }
    max_index_ = 0;
    for (const auto& cp : checkpoints_) max_index_ = std::max(max_index_, cp.n);

    const double wmax = kernel.weights.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < kernel.lambdas.size(); ++k) {
      if (kernel.weights.col(k).cwiseAbs().maxCoeff() > 1e-15 * wmax) active_.push_back(k);
    }
    // Filter-only part e^{-2 nu (t - s)}, independent of the detuning.
    background_.assign(active_.size(), std::vector<Complex>(checkpoints_.size()));
    for (std::size_t m = 0; m < active_.size(); ++m) {
      run(Complex(-2.0 * nu_, 0.0), active_[m],
          [&](std::size_t j, Complex value) { background_[m][j] = value; });
    }
  }

  std::vector<double> evaluate(double domega) const {
    std::vector<double> out(checkpoints_.size(), 0.0);
    std::vector<Complex> acc(checkpoints_.size(), 0.0);
    for (std::size_t m = 0; m < active_.size(); ++m) {
      const Eigen::Index k = active_[m];
      const Complex z = Complex(nu_, domega) + kernel_.lambdas(k);
      if (std::abs(z) < 1e-12) {
        // (e^{z u} - 1)/z -> u: derivative of H_c in c at c = -2 nu.
        const double delta = 1e-6;
        const Complex c0(-2.0 * nu_, 0.0);
        run(c0 + delta, k, [&](std::size_t j, Complex v) { acc[j] += v / (2.0 * delta); });
        run(c0 - delta, k, [&](std::size_t j, Complex v) { acc[j] -= v / (2.0 * delta); });
        continue;
      }
      run(z - 2.0 * nu_, k,
          [&](std::size_t j, Complex v) { acc[j] += (v - background_[m][j]) / z; });
    }
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = acc[j].real();
    return out;
  }

 private:
  template <class Emit>
  void run(Complex c, Eigen::Index k, Emit&& emit) const {
    const auto w = kernel_.weights.col(k);
    const Step full = Step::make(c, h_);
    Complex h_acc = 0.0;
    std::size_t j = 0;
    for (std::size_t n = 0; n <= max_index_; ++n) {
      if (n > 0)
        h_acc = full.decay * h_acc + full.a * w(Eigen::Index(n - 1)) + full.b * w(Eigen::Index(n));
      for (; j < checkpoints_.size() && checkpoints_[j].n == n; ++j) {
        const auto& cp = checkpoints_[j];
        if (cp.frac == 0.0) {
          emit(j, h_acc);
          continue;
        }
        const Step part = Step::make(c, cp.frac);
        const Complex w_end =
            w(Eigen::Index(n)) + (w(Eigen::Index(n + 1)) - w(Eigen::Index(n))) * (cp.frac / h_);
        emit(j, part.decay * h_acc + part.a * w(Eigen::Index(n)) + part.b * w_end);
      }
    }
  }

  const CorrelationKernel& kernel_;
  double nu_;
  double h_;
  std::vector<Checkpoint> checkpoints_;
  std::size_t max_index_ = 0;
  std::vector<Eigen::Index> active_;
  std::vector<std::vector<Complex>> background_;
};

}  // namespace

SpectrumGrid time_dependent_spectrum(const CorrelationKernel& kernel, double nu,
                                     std::span<const double> domega,
                                     std::span<const double> times,
                                     const SpectrumOptions& opts) {
  SpectrumEngine engine(kernel, nu, times);
  SpectrumGrid out;
  out.domega.assign(domega.begin(), domega.end());
  out.times.assign(times.begin(), times.end());
  out.nu = nu;
  out.values.resize(Eigen::Index(times.size()), Eigen::Index(domega.size()));
  parallel_for_each_index(domega.size(), opts.workers, [&](std::size_t i) {
    const auto column = engine.evaluate(domega[i]);
    for (std::size_t j = 0; j < column.size(); ++j)
      out.values(Eigen::Index(j), Eigen::Index(i)) = column[j];
  });
  return out;
}

SpectrumGrid time_integrated_spectrum(const CorrelationKernel& kernel, double nu,
                                      std::span<const double> domega, double T,
                                      const SpectrumOptions& opts) {
  const double h = kernel.s_grid.step();
  if (h > max_grid_spacing(nu) * (1.0 + 1e-12))
    throw NumericalError("time_integrated_spectrum: kernel grid spacing exceeds (10 nu)^-1");
  if (!(T > 0.0)) throw NumericalError("time_integrated_spectrum: T must be > 0");

  std::vector<double> times;
  for (std::size_t i = 0; i < std::size_t(kernel.weights.rows()); ++i) {
    const double t = kernel.s_grid.at(i);
    if (t >= T * (1.0 - 1e-12)) break;
    times.push_back(t);
  }
  times.push_back(T);

  SpectrumEngine engine(kernel, nu, times);
  SpectrumGrid out;
  out.domega.assign(domega.begin(), domega.end());
  out.times = {T};
  out.nu = nu;
  out.integrated = true;
  if (T * nu < 10.0) {
    std::ostringstream os;
    os << "integration time T = " << T << " ps is not >> 1/nu = " << 1.0 / nu
       << " ps (T nu = " << T * nu << ")";
    out.warnings.push_back(os.str());
  }
  out.values.resize(1, Eigen::Index(domega.size()));
  parallel_for_each_index(domega.size(), opts.workers, [&](std::size_t i) {
    const auto r = engine.evaluate(domega[i]);
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < r.size(); ++j)
      sum += 0.5 * (times[j + 1] - times[j]) * (r[j] + r[j + 1]);
    out.values(0, Eigen::Index(i)) = sum;
  });
  return out;
}

}  // namespace zeno
