#include "basslab/suites.hpp"

#include "basslab/analytic.hpp"
#include "basslab/diagnostics.hpp"
#include "basslab/oracle.hpp"
#include "basslab/principles.hpp"
#include "basslab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace basslab::suites {

namespace {

double sup_gap(const std::vector<double>& a, const std::vector<double>& b)
{
    double gap = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    return gap;
}

std::vector<double> complement(const std::vector<double>& s)
{
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = 1.0 - s[i];
    return out;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

/// Times in (0, 30].
std::vector<double> positive_grid(std::size_t points)
{
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) g[i] = 30.0 * static_cast<double>(i + 1) / static_cast<double>(points);
    return g;
}

Check at_most(std::string suite, std::string name, double value, double bound)
{
    return {std::move(suite), std::move(name), value <= bound, value, bound, "value <= bound"};
}

Check above(std::string suite, std::string name, double value, double bound = 0.0)
{
    return {std::move(suite), std::move(name), value > bound, value, bound, "value > bound"};
}

std::string tag(double p, double q, std::size_t m)
{
    return "p=" + format_number(p) + " q=" + format_number(q) + " M=" + std::to_string(m);
}

const std::vector<std::pair<double, double>> kRatePairs{{0.01, 0.1}, {0.05, 0.3}, {0.1, 0.45}};

std::vector<Check> circle_suite(const Options&)
{
    std::vector<Check> out;
    const auto grid = uniform_grid(30.0, 200);
    for (auto [p, q] : kRatePairs) {
        for (std::size_t m = 1; m <= 8; ++m) {
            const auto exact = oracle::exact_f(build_circle(m, p, q, Sidedness::one), grid);
            // q = jp makes the closed form undefined; those sizes use the ODE route
            const bool degenerate = analytic::is_degenerate(p, q, m);
            std::vector<double> closed(grid.size());
            if (degenerate) {
                closed = complement(analytic::survival_circle(grid, p, q, m));
            } else {
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    closed[g] = 1.0 - analytic::survival_circle_closed_form(grid[g], p, q, m);
                }
            }
            out.push_back(at_most("circle",
                                  std::string(degenerate ? "oracle vs ODE (degenerate q) " : "oracle vs closed form ") +
                                      tag(p, q, m),
                                  sup_gap(exact.f, closed), 1e-8));
            if (m < 2) continue;
            const auto two = oracle::exact_f(build_circle(m, p, q, Sidedness::two), grid);
            out.push_back(at_most("circle", "one- vs two-sided oracle " + tag(p, q, m), sup_gap(exact.f, two.f), 1e-10));
            const auto r1 = analytic::survival_circle_recursive(grid, p, q, m, Sidedness::one);
            const auto r2 = analytic::survival_circle_recursive(grid, p, q, m, Sidedness::two);
            out.push_back(at_most("circle", "one- vs two-sided ODE " + tag(p, q, m), sup_gap(r1, r2), 1e-10));
        }
    }
    return out;
}

std::vector<Check> line_suite(const Options& o)
{
    std::vector<Check> out;
    const auto grid = uniform_grid(30.0, 200);
    for (std::size_t m = 2; m <= 8; ++m) {
        const auto one = analytic::f_line_one_sided(grid, o.p, o.q, m);
        const auto one_exact = oracle::exact_f(build_line(m, o.p, o.q, Sidedness::one), grid);
        const auto two = analytic::f_line_two_sided(grid, o.p, o.q, m);
        const auto two_exact = oracle::exact_f(build_line(m, o.p, o.q, Sidedness::two), grid);
        double g1 = 0.0, g2 = 0.0, gq = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            g1 = std::max(g1, sup_gap(one.per_node[j], one_exact.per_node[j]));
            g2 = std::max(g2, sup_gap(two.per_node[j], two_exact.per_node[j]));
        }
        for (std::size_t j = 2; j < m; ++j) {
            const auto quad = analytic::two_sided_interior_survival_quadrature(grid, o.p, o.q, m, j);
            gq = std::max(gq, sup_gap(complement(quad), two.per_node[j - 1]));
        }
        const auto t = tag(o.p, o.q, m);
        out.push_back(at_most("line", "one-sided line vs oracle " + t, g1, 1e-8));
        out.push_back(at_most("line", "two-sided line vs oracle " + t, g2, 1e-6));
        if (m >= 3) out.push_back(at_most("line", "interior quadrature vs ODE " + t, gq, 1e-6));
    }
    const auto hybrid = analytic::f_hybrid(grid, o.p, o.q, 4, 3);
    const auto hybrid_exact = oracle::exact_f(build_hybrid_circle_ray(4, 3, o.p, o.q), grid);
    double gh = sup_gap(hybrid.f, hybrid_exact.f);
    for (std::size_t j = 0; j < 7; ++j) gh = std::max(gh, sup_gap(hybrid.per_node[j], hybrid_exact.per_node[j]));
    out.push_back(at_most("line", "hybrid circle 4 + ray 3 vs oracle", gh, 1e-8));
    return out;
}

std::vector<Check> theorem_suite(const Options& o)
{
    std::vector<Check> out;
    const auto grid = positive_grid(60);
    for (std::size_t m = 2; m <= 10; ++m) {
        const auto one = oracle::exact_f(build_line(m, o.p, o.q, Sidedness::one), grid);
        const auto two = oracle::exact_f(build_line(m, o.p, o.q, Sidedness::two), grid);
        const auto circle = oracle::exact_f(build_circle(m, o.p, o.q, Sidedness::one), grid);
        double lo = INFINITY, hi = INFINITY;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            lo = std::min(lo, two.f[g] - one.f[g]);
            hi = std::min(hi, circle.f[g] - two.f[g]);
        }
        out.push_back(above("theorem", "f_line_two - f_line_one M=" + std::to_string(m), lo));
        out.push_back(above("theorem", "f_circle - f_line_two M=" + std::to_string(m), hi));
    }
    return out;
}

std::vector<Check> boundary_suite(const Options& o)
{
    std::vector<Check> out;
    const std::size_t m = 12;
    const std::vector<double> grid{10.0};
    const auto one = analytic::line_survival_oracle(grid, o.p, o.q, m, Sidedness::one);
    const auto two = analytic::line_survival_oracle(grid, o.p, o.q, m, Sidedness::two);
    out.push_back(above("boundary", "Prob(X_1^one=0) - Prob(X_1^two=0)", one.node[0][0] - two.node[0][0]));
    out.push_back(above("boundary", "Prob(X_M^two=0) - Prob(X_M^one=0)", two.node[m - 1][0] - one.node[m - 1][0]));
    for (std::size_t k = 1; k <= m; ++k) {
        out.push_back(above("boundary", "nu(10," + std::to_string(k) + ",12)", analytic::nu(one, two, k)[0]));
    }
    return out;
}

std::vector<Check> appendix_suite(const Options& o)
{
    std::vector<Check> out;
    const auto grid = positive_grid(20);
    for (std::size_t k = 1; k <= 9; ++k) {
        out.push_back(above("appendix", "alpha k=" + std::to_string(k), min_of(analytic::alpha(grid, o.p, o.q, k))));
    }
    for (std::size_t m = 2; m <= 9; ++m) {
        const auto ms = " M=" + std::to_string(m);
        for (std::size_t k = 1; k < m; ++k) {
            out.push_back(above("appendix", "beta k=" + std::to_string(k) + ms,
                                min_of(analytic::beta(grid, o.p, o.q, k, m))));
        }
        for (std::size_t k = 1; k + 2 <= m; ++k) {
            out.push_back(above("appendix", "gamma k=" + std::to_string(k) + ms,
                                min_of(analytic::gamma(grid, o.p, o.q, k, m))));
        }
        const auto two = analytic::line_survival_oracle(grid, o.p, o.q, m, Sidedness::two);
        for (std::size_t k = 1; k <= m; ++k) {
            out.push_back(above("appendix", "nu k=" + std::to_string(k) + ms,
                                min_of(analytic::nu(grid, o.p, o.q, k, two))));
        }
        for (std::size_t k = 2; 2 * k <= m + 1; ++k) {
            out.push_back(above("appendix", "psi k=" + std::to_string(k) + ms,
                                min_of(analytic::psi(grid, o.p, o.q, k, two))));
        }
    }
    return out;
}

std::vector<Check> shift_suite(const Options& o)
{
    std::vector<Check> out;
    const auto grid = uniform_grid(30.0, 200);
    for (std::size_t m = 2; m <= 10; ++m) {
        for (std::size_t k = 2; k <= m; ++k) {
            const auto name = " k=" + std::to_string(k) + " M=" + std::to_string(m);
            auto r = analytic::s_k_shift_residual(grid, o.p, o.q, k, m, Sidedness::one);
            out.push_back(at_most("shift", "one-sided" + name, *std::max_element(r.begin(), r.end()), 1e-8));
            if (k < 3) continue;
            r = analytic::s_k_shift_residual(grid, o.p, o.q, k, m, Sidedness::two);
            out.push_back(at_most("shift", "two-sided" + name, *std::max_element(r.begin(), r.end()), 1e-8));
        }
    }
    return out;
}

struct NamedPair {
    std::string name;
    Network a;
    Network b;
};

std::vector<NamedPair> dominance_pairs(double p, double q)
{
    const std::size_t m = 6;
    auto with_extra = [](const Network& base, Edge extra) {
        std::vector<Edge> edges(base.edges().begin(), base.edges().end());
        edges.push_back(extra);
        return Network(std::vector<double>(base.external_rates().begin(), base.external_rates().end()), edges);
    };
    const auto line_one = build_line(m, p, q, Sidedness::one);
    const auto line_two = build_line(m, p, q, Sidedness::two);
    return {
        {"one-sided line < one-sided circle", line_one, build_circle(m, p, q, Sidedness::one)},
        {"two-sided line < two-sided circle", line_two, build_circle(m, p, q, Sidedness::two)},
        {"one-sided line < one-sided line + 1->4", line_one, with_extra(line_one, {0, 3, q})},
        {"two-sided line < two-sided line + 6->2", line_two, with_extra(line_two, {5, 1, q / 2})},
        {"one-sided circle < one-sided circle + 1->4", build_circle(m, p, q, Sidedness::one),
         with_extra(build_circle(m, p, q, Sidedness::one), {0, 3, q})},
    };
}

std::vector<Check> dominance_suite(const Options& o)
{
    std::vector<Check> out;
    sim::SimConfig config;
    config.horizon = 30.0;
    config.trials = o.trials;
    config.base_seed = o.seed;
    config.threads = o.threads;
    for (const auto& pair : dominance_pairs(o.p, o.q)) {
        const auto report = sim::run_coupled(pair.a, pair.b, config);
        Check c{"dominance", pair.name, report.applicable && report.violation_count == 0,
                static_cast<double>(report.violation_count), 0.0,
                "pathwise violations over " + std::to_string(report.trials) + " coupled trials (" +
                    to_string(report.relation) + ")"};
        out.push_back(c);
    }
    return out;
}

std::vector<Check> indifference_suite(const Options& o)
{
    std::vector<Check> out;
    const auto grid = uniform_grid(30.0, 200);
    for (const auto& preset : principles::figure_presets(o.p, o.q)) {
        const auto report = principles::verify_indifference(preset.network, preset.plan, grid);
        Check c = at_most("indifference", preset.name, report.max_difference, 1e-10);
        c.passed = c.passed && report.plan_valid;
        c.detail = report.plan_valid ? preset.description : "invalid plan";
        out.push_back(c);
    }
    return out;
}

std::vector<Check> montecarlo_suite(const Options& o)
{
    std::vector<Check> out;
    const std::size_t m = 6;
    sim::SimConfig config;
    config.horizon = 30.0;
    config.trials = o.trials;
    config.base_seed = o.seed;
    config.threads = o.threads;
    const auto circle = sim::run_event_driven(build_circle(m, o.p, o.q, Sidedness::one), config);
    const auto analytic_f = analytic::f_circle(circle.time, o.p, o.q, m).f;
    const double max_se = *std::max_element(circle.std_error.begin(), circle.std_error.end());
    out.push_back(at_most("montecarlo", "event-driven circle M=6 vs analytic", sup_gap(circle.f, analytic_f),
                          3.0 * max_se));
    return out;
}

std::vector<Check> conjecture_suite(const Options& o)
{
    std::vector<Check> out;
    sim::SimConfig config;
    config.horizon = analytic::default_horizon(o.p, o.q);
    config.trials = o.trials;
    config.threads = o.threads;
    for (std::size_t dim : {2, 3}) {
        for (bool periodic : {true, false}) {
            config.base_seed = o.seed;
            const auto one = sim::run_event_driven(build_grid(dim, 6, o.p, o.q, Sidedness::one, periodic), config);
            config.base_seed = o.seed + 1;
            const auto two = sim::run_event_driven(build_grid(dim, 6, o.p, o.q, Sidedness::two, periodic), config);
            std::vector<double> z(one.f.size(), 0.0);
            std::size_t widest = 0;
            for (std::size_t g = 0; g < z.size(); ++g) {
                const double se = std::hypot(one.std_error[g], two.std_error[g]);
                z[g] = se > 0.0 ? (two.f[g] - one.f[g]) / se : 0.0;
                if (std::abs(two.f[g] - one.f[g]) > std::abs(two.f[widest] - one.f[widest])) widest = g;
            }
            const auto name = std::string(periodic ? "torus " : "box ") + (dim == 2 ? "6x6" : "6x6x6");
            if (periodic) {
                double worst = 0.0;
                for (double v : z) worst = std::max(worst, std::abs(v));
                out.push_back({"conjecture", name + " one- vs two-sided indistinguishable", worst < 2.0, worst, 2.0,
                               "max |difference| / combined stderr over the grid"});
            } else {
                out.push_back({"conjecture", name + " two-sided faster", z[widest] > 2.0, z[widest], 2.0,
                               "(two - one) / combined stderr at the largest gap"});
            }
        }
    }
    return out;
}

using Runner = std::function<std::vector<Check>(const Options&)>;

const std::vector<std::pair<std::string, Runner>>& registry()
{
    static const std::vector<std::pair<std::string, Runner>> r{
        {"circle", circle_suite},         {"line", line_suite},
        {"theorem", theorem_suite},       {"boundary", boundary_suite},
        {"appendix", appendix_suite},     {"shift", shift_suite},
        {"dominance", dominance_suite},   {"indifference", indifference_suite},
        {"montecarlo", montecarlo_suite}, {"conjecture", conjecture_suite},
    };
    return r;
}

}  // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

std::vector<Check> run(const std::string& suite, const Options& options)
{
    std::vector<Check> out;
    bool found = false;
    for (const auto& [name, runner] : registry()) {
        if (suite != "all" && suite != name) continue;
        found = true;
        auto part = runner(options);
        out.insert(out.end(), part.begin(), part.end());
    }
    if (!found) throw std::invalid_argument("unknown suite '" + suite + "'");
    return out;
}

nlohmann::json to_json(const std::vector<Check>& checks)
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
        list.push_back({{"suite", c.suite},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"value", c.value},
                        {"bound", c.bound},
                        {"detail", c.detail}});
    }
    return {{"passed", all_passed(checks)}, {"checks", list}};
}

bool all_passed(const std::vector<Check>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

}  // namespace basslab::suites
