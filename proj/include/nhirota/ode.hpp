#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <boost/numeric/odeint.hpp>

#include "nhirota/types.hpp"

namespace nh {

struct OdeStats {
    std::size_t accepted = 0;
};

/// Dormand-Prince 5(4) integration of y' = f(x, y) from x0 to x1 (either direction), via Boost.Odeint.
/// Throws NumericalError on a non-finite state, step-size failure, or more than 2e6 steps.
template <std::size_t N, class F>
std::array<cplx, N> dopri5(F&& f, double x0, double x1, std::array<cplx, N> y, double atol, double rtol,
                           OdeStats* stats = nullptr, double h_init = 0.0) {
    namespace ode = boost::numeric::odeint;
    using V = std::array<cplx, N>;
    const double span = x1 - x0;
    if (span == 0.0) return y;
    const double h = (span > 0 ? 1.0 : -1.0) * (h_init > 0.0 ? h_init : std::min(0.05, std::abs(span)));
    auto stepper = ode::make_controlled(atol, rtol, ode::runge_kutta_dopri5<V, double, V, double>());
    auto sys = [&](const V& s, V& ds, double x) { f(x, s, ds); };
    std::size_t steps = 0;
    auto watch = [&](const V& s, double) {
        if (++steps > 2000000) throw NumericalError("dopri5: too many steps");
        for (const cplx& v : s)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalError("dopri5: non-finite state");
    };
    try {
        ode::integrate_adaptive(stepper, sys, y, x0, x1, h, watch);
    } catch (const ode::step_adjustment_error& e) {
        throw NumericalError(std::string("dopri5: ") + e.what());
    }
    watch(y, x1);
    if (stats) stats->accepted += steps;
    return y;
}

}  // namespace nh
