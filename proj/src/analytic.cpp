#include "basslab/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace basslab::analytic {

namespace {

void check_rates(double p, double q)
{
    if (!(p >= 0.0) || !(q >= 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
        throw std::invalid_argument("p and q must be finite and non-negative");
    }
}

void check_size(std::size_t size)
{
    if (size == 0) throw std::invalid_argument("network size must be positive");
}

std::vector<double> complement(std::vector<double> survival)
{
    for (auto& v : survival) v = 1.0 - v;
    return survival;
}

}  // namespace

double CircleCoefficients::survival(double t) const
{
    double s = b * std::exp(-static_cast<double>(size) * p * t);
    for (std::size_t k = 1; k < size; ++k) s += a[k - 1] * std::exp(-(static_cast<double>(k) * p + q) * t);
    return s;
}

double CircleCoefficients::sum() const
{
    double s = b;
    for (double v : a) s += v;
    return s;
}

double CircleCoefficients::magnitude() const
{
    double s = std::abs(b);
    for (double v : a) s += std::abs(v);
    return s;
}

bool is_degenerate(double p, double q, std::size_t size)
{
    if (!(p > 0.0)) return true;
    const double scale = kDegeneracyTol * std::max(p, q);
    for (std::size_t j = 1; j < size; ++j) {
        if (std::abs(q - static_cast<double>(j) * p) < scale) return true;
    }
    return false;
}

CircleCoefficients circle_coefficients(double p, double q, std::size_t size)
{
    check_rates(p, q);
    check_size(size);
    if (is_degenerate(p, q, size)) {
        throw DegenerateParameters("closed form undefined: p = " + std::to_string(p) + ", q = " + std::to_string(q) +
                                   ", M = " + std::to_string(size));
    }
    const std::size_t n = size - 1;
    // ratio[k] = q^k / prod_{j=1}^k (q - j p)
    std::vector<double> ratio(size, 1.0);
    for (std::size_t k = 1; k <= n; ++k) ratio[k] = ratio[k - 1] * q / (q - static_cast<double>(k) * p);
    // w[m] = (-q/p)^m / m!
    std::vector<double> w(size, 1.0);
    for (std::size_t m = 1; m <= n; ++m) w[m] = w[m - 1] * (-q / p) / static_cast<double>(m);

    // d_k = c_{M-k}; the recursion does not depend on M.
    std::vector<double> d(size, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        double v = 1.0 - ratio[k];
        for (std::size_t j = 1; j < k; ++j) v -= w[k - j] * d[j];
        d[k] = v;
    }

    CircleCoefficients out;
    out.size = size;
    out.p = p;
    out.q = q;
    out.b = ratio[n];
    out.c.resize(n);
    out.a.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
        out.c[k - 1] = d[size - k];
        out.a[k - 1] = w[k - 1] * out.c[k - 1];
    }
    return out;
}

double survival_circle_closed_form(double t, double p, double q, std::size_t size)
{
    return circle_coefficients(p, q, size).survival(t);
}

std::vector<SurvivalSeries> survival_circle_ode(std::span<const double> grid, double p, double q, std::size_t size,
                                                ode::Tolerance tol)
{
    check_rates(p, q);
    check_size(size);
    const auto rhs = [p, q, size](const ode::State& x, ode::State& dx, double) {
        for (std::size_t k = 0; k + 1 < size; ++k) {
            dx[k] = -(static_cast<double>(k + 1) * p + q) * x[k] + q * x[k + 1];
        }
        dx[size - 1] = -static_cast<double>(size) * p * x[size - 1];
    };
    std::vector<SurvivalSeries> out(size);
    for (std::size_t k = 0; k < size; ++k) {
        out[k].block = k + 1;
        out[k].size = size;
        out[k].time.assign(grid.begin(), grid.end());
        out[k].values.resize(grid.size());
    }
    ode::integrate_on_grid(rhs, ode::State(size, 1.0), grid, tol, [&](std::size_t g, const ode::State& x) {
        for (std::size_t k = 0; k < size; ++k) out[k].values[g] = x[k];
    });
    return out;
}

std::vector<double> survival_circle_recursive(std::span<const double> grid, double p, double q, std::size_t size,
                                              Sidedness sided, ode::Tolerance tol)
{
    check_rates(p, q);
    check_size(size);
    std::vector<double> out(grid.size());
    if (sided == Sidedness::one || size == 1) {
        // x[m-1] = S(t; m)
        const auto rhs = [p, q, size](const ode::State& x, ode::State& dx, double t) {
            const double decay = std::exp(-p * t);
            dx[0] = -p * x[0];
            for (std::size_t m = 1; m < size; ++m) dx[m] = -(p + q) * x[m] + q * decay * x[m - 1];
        };
        ode::integrate_on_grid(rhs, ode::State(size, 1.0), grid, tol,
                               [&](std::size_t g, const ode::State& x) { out[g] = x[size - 1]; });
        return out;
    }
    // x[0] = S(t; M), x[m-1] = S_2(t; m) for m = 2..M
    const auto rhs = [p, q, size](const ode::State& x, ode::State& dx, double t) {
        const double decay = std::exp(-p * t);
        dx[1] = -2.0 * p * x[1];
        for (std::size_t m = 3; m <= size; ++m) dx[m - 1] = -(2.0 * p + q) * x[m - 1] + q * decay * x[m - 2];
        dx[0] = -(p + q) * x[0] + q * x[size - 1];
    };
    ode::integrate_on_grid(rhs, ode::State(size, 1.0), grid, tol,
                           [&](std::size_t g, const ode::State& x) { out[g] = x[0]; });
    return out;
}

CircleRoute choose_circle_route(double p, double q, std::size_t size)
{
    if (size > kClosedFormMaxSize || is_degenerate(p, q, size)) return CircleRoute::ode;
    if (size == 1) return CircleRoute::closed_form;
    if (circle_coefficients(p, q, size).magnitude() > kMaxCoefficientMagnitude) return CircleRoute::ode;
    return CircleRoute::closed_form;
}

std::vector<double> survival_circle(std::span<const double> grid, double p, double q, std::size_t size)
{
    check_rates(p, q);
    check_size(size);
    if (choose_circle_route(p, q, size) == CircleRoute::ode) {
        return std::move(survival_circle_ode(grid, p, q, size).front().values);
    }
    const auto coeff = circle_coefficients(p, q, size);
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) out[g] = coeff.survival(grid[g]);
    return out;
}

AdoptionCurve f_circle(std::span<const double> grid, double p, double q, std::size_t size)
{
    const auto source =
        choose_circle_route(p, q, size) == CircleRoute::ode ? CurveSource::ode : CurveSource::closed_form;
    auto node = complement(survival_circle(grid, p, q, size));
    std::vector<std::vector<double>> per_node(size, node);
    return curve_from_nodes(grid, std::move(per_node), source);
}

CircleSurvival::CircleSurvival(double p, double q, std::size_t size, double t_max)
    : route_(choose_circle_route(p, q, size)), p_(p), q_(q)
{
    if (route_ == CircleRoute::closed_form) {
        coefficients_ = circle_coefficients(p, q, size);
        return;
    }
    const std::size_t intervals = std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(t_max / 0.01)));
    const auto grid = uniform_grid(t_max, intervals + 1);
    step_ = grid.size() > 1 ? grid[1] : 0.0;
    const auto series = survival_circle_ode(grid, p, q, size, {1e-14, 1e-12});
    value_ = series[0].values;
    slope_.resize(value_.size());
    for (std::size_t g = 0; g < value_.size(); ++g) {
        slope_[g] = size == 1 ? -p * value_[g] : -(p + q) * value_[g] + q * series[1].values[g];
    }
}

double CircleSurvival::operator()(double t) const
{
    if (route_ == CircleRoute::closed_form) return coefficients_.survival(t);
    if (step_ == 0.0) return value_.front();
    const double x = std::clamp(t / step_, 0.0, static_cast<double>(value_.size() - 1));
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= value_.size()) i = value_.size() - 2;
    const double u = x - static_cast<double>(i);
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * value_[i] + h10 * step_ * slope_[i] + h01 * value_[i + 1] + h11 * step_ * slope_[i + 1];
}

double f_one_dim_limit(double t, double p, double q)
{
    check_rates(p, q);
    if (p == 0.0) return 0.0;
    const double exponent = -(p + q) * t - (q / p) * std::expm1(-p * t);
    return -std::expm1(exponent);
}

double default_horizon(double p, double q, double level)
{
    check_rates(p, q);
    if (!(p > 0.0)) throw std::invalid_argument("default horizon needs p > 0");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
    double hi = 1.0;
    while (f_one_dim_limit(hi, p, q) < level) hi *= 2.0;
    auto fn = [&](double t) { return f_one_dim_limit(t, p, q) - level; };
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto bracket = boost::math::tools::bisect(fn, 0.0, hi, tol);
    return bracket.second;
}

std::vector<double> default_grid(double p, double q)
{
    return uniform_grid(default_horizon(p, q), 200);
}

AdoptionCurve f_line_one_sided(std::span<const double> grid, double p, double q, std::size_t size)
{
    check_rates(p, q);
    check_size(size);
    std::vector<std::vector<double>> per_node;
    per_node.reserve(size);
    bool any_ode = false;
    for (std::size_t j = 1; j <= size; ++j) {
        any_ode = any_ode || choose_circle_route(p, q, j) == CircleRoute::ode;
        per_node.push_back(complement(survival_circle(grid, p, q, j)));
    }
    return curve_from_nodes(grid, std::move(per_node), any_ode ? CurveSource::ode : CurveSource::closed_form);
}

AdoptionCurve f_line_two_sided(std::span<const double> grid, double p, double q, std::size_t size,
                               ode::Tolerance tol)
{
    check_rates(p, q);
    check_size(size);
    const double half = q / 2.0;
    // Blocks: S_k(q/2; m) for m = 1..M at offset[m] + k - 1, then y_j for j = 2..h.
    std::vector<std::size_t> offset(size + 1, 0);
    std::size_t n = 0;
    for (std::size_t m = 1; m <= size; ++m) {
        offset[m] = n;
        n += m;
    }
    const std::size_t half_count = (size + 1) / 2;  // nodes 1..h are computed, the rest mirrored
    const std::size_t y0 = n;
    const std::size_t interior = half_count >= 2 ? half_count - 1 : 0;
    n += interior;

    const auto rhs = [&](const ode::State& x, ode::State& dx, double) {
        for (std::size_t m = 1; m <= size; ++m) {
            const std::size_t o = offset[m];
            for (std::size_t k = 1; k < m; ++k) {
                dx[o + k - 1] = -(static_cast<double>(k) * p + half) * x[o + k - 1] + half * x[o + k];
            }
            dx[o + m - 1] = -static_cast<double>(m) * p * x[o + m - 1];
        }
        for (std::size_t j = 2; j <= half_count; ++j) {
            const auto s1 = [&](std::size_t m) { return x[offset[m]]; };
            const double drive = s1(j - 1) * s1(size - j + 1) + s1(j) * s1(size - j);
            const std::size_t idx = y0 + j - 2;
            dx[idx] = -(p + q) * x[idx] + half * drive;
        }
    };

    std::vector<std::vector<double>> per_node(size, std::vector<double>(grid.size()));
    ode::integrate_on_grid(rhs, ode::State(n, 1.0), grid, tol, [&](std::size_t g, const ode::State& x) {
        for (std::size_t j = 1; j <= half_count; ++j) {
            const double survival = j == 1 ? x[offset[size]] : x[y0 + j - 2];
            per_node[j - 1][g] = 1.0 - survival;
            per_node[size - j][g] = 1.0 - survival;
        }
    });
    return curve_from_nodes(grid, std::move(per_node), CurveSource::ode);
}

std::vector<double> two_sided_interior_survival_quadrature(std::span<const double> grid, double p, double q,
                                                           std::size_t size, std::size_t node, double abs_tol)
{
    check_rates(p, q);
    if (size < 3 || node < 2 || node + 1 > size) {
        throw std::invalid_argument("interior node must satisfy 2 <= j <= M-1");
    }
    ode::check_grid(grid);
    const double half = q / 2.0;
    const double t_max = std::max(grid.back(), 0.0);
    std::vector<CircleSurvival> s;
    s.reserve(size + 1);
    s.emplace_back(p, half, 1, t_max);  // unused slot for m = 0
    for (std::size_t m = 1; m <= size; ++m) s.emplace_back(p, half, m, t_max);

    const auto integrand = [&](double tau) {
        const double drive = s[node](tau) * s[size - node](tau) + s[node - 1](tau) * s[size - node + 1](tau);
        return std::exp((p + q) * tau) * drive;
    };

    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    std::vector<double> out(grid.size());
    double acc = 0.0;
    double previous = 0.0;
    const double rel = std::min(1e-12, abs_tol * 1e-2);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double t = grid[g];
        if (t > previous) {
            acc += Kronrod::integrate(integrand, previous, t, 20, rel);
            previous = t;
        }
        out[g] = std::exp(-(p + q) * t) * (1.0 + half * acc);
    }
    return out;
}

AdoptionCurve f_hybrid(std::span<const double> grid, double p, double q, std::size_t circle_size,
                       std::size_t ray_size)
{
    check_rates(p, q);
    check_size(circle_size);
    std::vector<std::vector<double>> per_node;
    per_node.reserve(circle_size + ray_size);
    bool any_ode = choose_circle_route(p, q, circle_size) == CircleRoute::ode;
    const auto circle = complement(survival_circle(grid, p, q, circle_size));
    for (std::size_t i = 0; i < circle_size; ++i) per_node.push_back(circle);
    for (std::size_t k = 1; k <= ray_size; ++k) {
        any_ode = any_ode || choose_circle_route(p, q, circle_size + k) == CircleRoute::ode;
        per_node.push_back(complement(survival_circle(grid, p, q, circle_size + k)));
    }
    return curve_from_nodes(grid, std::move(per_node), any_ode ? CurveSource::ode : CurveSource::closed_form);
}

std::vector<double> s_k_shift_residual(std::span<const double> grid, double p, double q, std::size_t k,
                                       std::size_t size, Sidedness sided)
{
    check_rates(p, q);
    const std::size_t lowest = sided == Sidedness::one ? 2 : 3;
    if (k < lowest || k > size) throw std::invalid_argument("shift identity needs k in range for this sidedness");
    const ode::Tolerance tight{1e-14, 1e-12};
    const auto full = survival_circle_ode(grid, p, q, size, tight);
    const auto& lhs = full[k - 1].values;
    const std::size_t smaller = sided == Sidedness::one ? size - k + 1 : size - k + 2;
    const std::size_t block = sided == Sidedness::one ? 1 : 2;
    const double shift = static_cast<double>(k - block);
    const auto reduced = survival_circle_ode(grid, p, q, smaller, tight);
    const auto& rhs = reduced[block - 1].values;
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out[g] = std::abs(lhs[g] - rhs[g] * std::exp(-shift * p * grid[g]));
    }
    return out;
}

}  // namespace basslab::analytic
