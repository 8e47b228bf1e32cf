#pragma once

#include <boost/numeric/odeint.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace basslab::ode {

using State = std::vector<double>;

struct Tolerance {
    double abs = 1e-12;
    double rel = 1e-10;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks that `grid` is non-empty, finite and non-decreasing.
void check_grid(std::span<const double> grid);

/// Integrates x' = rhs(x, dxdt, t) from x(t0) = x0 and hands the state at
/// every grid time to `observe(index, x)`. Grid times must be >= t0.
///
/// Uses the embedded Runge-Kutta-Fehlberg 7(8) pair with step-size control;
/// the solver lands exactly on each grid time.
template <class Rhs, class Observer>
void integrate_on_grid(Rhs&& rhs, State x0, std::span<const double> grid, Tolerance tol, Observer&& observe,
                       double t0 = 0.0)
{
    namespace odeint = boost::numeric::odeint;
    check_grid(grid);
    if (grid.front() < t0) throw std::invalid_argument("grid starts before the initial time");

    // integrate_times expects strictly increasing times; replay duplicates.
    // Slot 0 is t0 and is observed only for grid entries equal to t0.
    std::vector<double> times{t0};
    std::vector<std::size_t> first_index{0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] > times.back()) {
            times.push_back(grid[i]);
            first_index.push_back(i);
        }
    }
    first_index.push_back(grid.size());
    if (times.size() == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) observe(i, std::as_const(x0));
        return;
    }

    auto stepper = odeint::make_controlled(tol.abs, tol.rel, odeint::runge_kutta_fehlberg78<State>());
    auto system = [&rhs](const State& x, State& dxdt, double t) { rhs(x, dxdt, t); };
    std::size_t slot = 0;
    auto observer = [&](const State& x, double) {
        for (auto i = first_index[slot]; i < first_index[slot + 1]; ++i) observe(i, x);
        ++slot;
    };
    const double dt0 = std::min(0.01, (times.back() - times.front()) / 16.0);
    try {
        odeint::integrate_times(stepper, system, x0, times.begin(), times.end(), dt0, observer,
                                odeint::max_step_checker(100000));
    } catch (const std::exception& e) {
        throw SolverError(std::string("ODE integration failed: ") + e.what());
    }
}

/// Convenience overload collecting the states at each grid time.
template <class Rhs>
std::vector<State> integrate_on_grid(Rhs&& rhs, State x0, std::span<const double> grid, Tolerance tol = {})
{
    std::vector<State> out(grid.size());
    integrate_on_grid(std::forward<Rhs>(rhs), std::move(x0), grid, tol,
                      [&out](std::size_t i, const State& x) { out[i] = x; });
    return out;
}

}  // namespace basslab::ode
