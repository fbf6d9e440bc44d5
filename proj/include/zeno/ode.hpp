#pragma once

// Thin wrapper over Boost.Odeint's dense-output Dormand-Prince 5(4)
// stepper for small complex linear systems.

#include <boost/numeric/odeint.hpp>

#include <array>
#include <complex>
#include <span>

namespace zeno::ode {

template <std::size_t N>
using State = std::array<std::complex<double>, N>;

// Integrates dx/dt = rhs(x) and calls observe(x, t) at every requested time
// (times must be increasing; times[0] is the initial time).
template <std::size_t N, class Rhs, class Observer>
void integrate_at(Rhs&& rhs, State<N> x, std::span<const double> times, double abs_tol,
                  double rel_tol, Observer&& observe) {
  namespace odeint = boost::numeric::odeint;
  if (times.empty()) return;
  auto stepper =
      odeint::make_dense_output(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State<N>>());
  auto system = [&rhs](const State<N>& s, State<N>& ds, double /*t*/) { rhs(s, ds); };
  const double span = times.back() - times.front();
  const double dt0 = span > 0.0 ? span * 1e-4 : 1e-3;
  odeint::integrate_times(stepper, system, x, times.begin(), times.end(), dt0,
                          [&observe](const State<N>& s, double t) { observe(s, t); });
}

}  // namespace zeno::ode
