#pragma once

#include "basslab/curve.hpp"
#include "basslab/network.hpp"
#include "basslab/ode.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

/// Exact and semi-analytic adoption curves for one-dimensional networks.
///
/// Notation: S(t; p, q, M) is the probability that a given node of a circle
/// with M nodes has not adopted by time t (identical for one- and two-sided
/// circles), and S_k(t; p, q, M) the probability that k adjacent circle nodes
/// have all not adopted. f_circle = 1 - S.
namespace basslab::analytic {

/// Largest circle for which the exponential-sum closed form is used; beyond it
/// the coefficient recursion cancels catastrophically.
inline constexpr std::size_t kClosedFormMaxSize = 30;
/// q is degenerate for size M when |q - j p| < kDegeneracyTol * max(p, q) for some j < M.
inline constexpr double kDegeneracyTol = 1e-9;
/// Closed form is also refused when sum |A_k| + |B| exceeds this (rounding loss).
inline constexpr double kMaxCoefficientMagnitude = 1e6;

class DegenerateParameters : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Coefficients of S(t;M) = sum_{k=1}^{M-1} A_{k,M} e^{-(kp+q)t} + B_M e^{-Mpt}.
struct CircleCoefficients {
    std::size_t size = 1;
    double p = 0.0;
    double q = 0.0;
    std::vector<double> a;  ///< a[k-1] = A_{k,M}
    double b = 1.0;         ///< B_M
    std::vector<double> c;  ///< c[k-1] = c_k

    double survival(double t) const;
    /// S(0;M); equals 1 up to rounding.
    double sum() const;
    /// sum |A_k| + |B|, a bound on the rounding amplification.
    double magnitude() const;
};

bool is_degenerate(double p, double q, std::size_t size);
/// Throws DegenerateParameters when p <= 0 or q hits a degeneracy.
CircleCoefficients circle_coefficients(double p, double q, std::size_t size);
double survival_circle_closed_form(double t, double p, double q, std::size_t size);

/// S_k(t; M) on a time grid.
struct SurvivalSeries {
    std::size_t block = 1;  ///< k
    std::size_t size = 1;   ///< M
    Sidedness sided = Sidedness::one;
    std::vector<double> time;
    std::vector<double> values;
};

/// Integrates the closed triangular system S_k' = -(kp+q) S_k + q S_{k+1},
/// S_M' = -Mp S_M, S_k(0) = 1. Returns S_1..S_M. Valid for every (p, q).
std::vector<SurvivalSeries> survival_circle_ode(std::span<const double> grid, double p, double q, std::size_t size,
                                                ode::Tolerance tol = {});

/// S(t; M) from the size recursion closed by the shift identities:
/// one-sided  S'(t;m) = -(p+q) S(t;m) + q e^{-pt} S(t;m-1),
/// two-sided  S_2'(t;m) = -(2p+q) S_2(t;m) + q e^{-pt} S_2(t;m-1), then
///            S'(t;M) = -(p+q) S(t;M) + q S_2(t;M).
std::vector<double> survival_circle_recursive(std::span<const double> grid, double p, double q, std::size_t size,
                                              Sidedness sided, ode::Tolerance tol = {});

enum class CircleRoute { closed_form, ode };
/// Closed form when it is defined and well conditioned, otherwise the ODE hierarchy.
CircleRoute choose_circle_route(double p, double q, std::size_t size);
std::vector<double> survival_circle(std::span<const double> grid, double p, double q, std::size_t size);
AdoptionCurve f_circle(std::span<const double> grid, double p, double q, std::size_t size);

/// S(t; p, q, M) evaluable at arbitrary t in [0, t_max]: the closed form when
/// available, otherwise a cubic Hermite interpolant of the ODE solution.
class CircleSurvival {
public:
    CircleSurvival(double p, double q, std::size_t size, double t_max);
    double operator()(double t) const;
    CircleRoute route() const noexcept { return route_; }

private:
    CircleRoute route_;
    CircleCoefficients coefficients_;
    double p_ = 0.0;
    double q_ = 0.0;
    double step_ = 0.0;
    std::vector<double> value_;
    std::vector<double> slope_;
};

/// Infinite-circle limit 1 - exp(-(p+q)t + (q/p)(1 - e^{-pt})).
double f_one_dim_limit(double t, double p, double q);
/// Smallest T with f_one_dim_limit(T) >= level.
double default_horizon(double p, double q, double level = 0.99);
/// 200 uniform points on [0, default_horizon(p, q)].
std::vector<double> default_grid(double p, double q);

/// One-sided line: node j (1-based) adopts like a node of a circle of size j.
AdoptionCurve f_line_one_sided(std::span<const double> grid, double p, double q, std::size_t size);

/// Two-sided line. End nodes behave like a circle of size M with rate q/2;
/// interior nodes follow the scalar evolution equation driven by adjacent-pair
/// survivals S(t;p,q/2,j-1) S(t;p,q/2,M-j+1), integrated jointly with the
/// q/2 circle hierarchies that supply them.
AdoptionCurve f_line_two_sided(std::span<const double> grid, double p, double q, std::size_t size,
                               ode::Tolerance tol = {});

/// Cross-check for an interior node j (1-based, 2 <= j <= M-1) of the
/// two-sided line: Prob(X_j = 0) = e^{-(p+q)t} (1 + (q/2) A_j(t)) with A_j
/// evaluated by adaptive Gauss-Kronrod quadrature.
std::vector<double> two_sided_interior_survival_quadrature(std::span<const double> grid, double p, double q,
                                                           std::size_t size, std::size_t node,
                                                           double abs_tol = 1e-10);

/// One-sided circle of `circle_size` nodes with a one-sided ray of `ray_size` nodes.
AdoptionCurve f_hybrid(std::span<const double> grid, double p, double q, std::size_t circle_size,
                       std::size_t ray_size);

/// |S_k(t;M) - S_1(t;M-k+1) e^{-(k-1)pt}| (one-sided, 2 <= k <= M) or
/// |S_k(t;M) - S_2(t;M-k+2) e^{-(k-2)pt}| (two-sided, 3 <= k <= M) on the grid.
std::vector<double> s_k_shift_residual(std::span<const double> grid, double p, double q, std::size_t k,
                                       std::size_t size, Sidedness sided);

}  // namespace basslab::analytic
