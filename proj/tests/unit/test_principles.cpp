#include "basslab/analytic.hpp"
#include "basslab/principles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace basslab;
using namespace basslab::principles;

namespace {

const std::vector<double>& grid()
{
    static const auto g = uniform_grid(30.0, 31);
    return g;
}

Network random_network(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> wd(0.02, 0.5);
    std::bernoulli_distribution coin(0.3);
    std::vector<double> p(n);
    for (auto& v : p) v = wd(rng);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && coin(rng)) edges.push_back({i, j, wd(rng)});
    return Network(p, edges);
}

NodeSet random_set(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<std::size_t> size_d(1, n);
    std::vector<std::size_t> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    nodes.resize(size_d(rng));
    return NodeSet(n, nodes);
}

}  // namespace

TEST_CASE("three kinds of non-influential edge")
{
    // Omega = {0}. x=0 -> y=1 (case 1); w=2 -> z=3 where 3 cannot reach Omega (case 2);
    // u=4 -> v=5 where 5 reaches Omega only through 4 (case 3); 6 -> 0 influential.
    const Network net(std::vector<double>(7, 0.1), {{0, 1, 1.0}, {2, 3, 1.0}, {4, 5, 1.0}, {5, 4, 1.0}, {4, 0, 1.0},
                                                    {6, 0, 1.0}, {3, 2, 0.5}});
    const NodeSet omega(7, {0});
    CHECK(classify_edge(net, omega, 0, 1).non_influential_case == 1);
    CHECK(classify_edge(net, omega, 2, 3).non_influential_case == 2);
    CHECK(classify_edge(net, omega, 4, 5).non_influential_case == 3);
    CHECK_FALSE(classify_edge(net, omega, 6, 0).non_influential());
    CHECK_FALSE(classify_edge(net, omega, 5, 4).non_influential());
    CHECK_THROWS_AS(classify_edge(net, omega, 1, 0), std::invalid_argument);
}

TEST_CASE("line examples")
{
    const std::size_t m = 6;
    const auto two = build_line(m, 0.01, 0.1, Sidedness::two);
    const NodeSet last(m, {m - 1});
    for (std::size_t k = 0; k + 2 < m; ++k) CHECK(classify_edge(two, last, k + 1, k).non_influential_case == 3);
    const auto one = build_line(m, 0.01, 0.1, Sidedness::one);
    CHECK(classify_edge(one, NodeSet(m, {2}), 2, 3).non_influential_case == 1);
}

TEST_CASE("every figure preset is a valid indifference transform")
{
    for (const auto& preset : figure_presets()) {
        INFO(preset.name);
        const auto check = check_plan(preset.network, preset.plan);
        CHECK(check.valid);
        auto report = verify_indifference(preset.network, preset.plan, grid());
        CHECK(report.plan_valid);
        CHECK(report.passed());
        CHECK(report.max_difference <= 1e-10);
        CHECK_NOTHROW(apply_transform(preset.network, preset.plan));
    }
}

TEST_CASE("reduced networks match the closed forms")
{
    const double p = 0.01, q = 0.1;
    const auto fig7 = figure_preset("fig7", p, q);
    const auto reduced = apply_transform(fig7.network, fig7.plan);
    CHECK(dominates(reduced, build_circle(6, p, q / 2, Sidedness::one)) == Dominance::equal);

    const auto fig15 = figure_preset("fig15", p, q);
    CHECK(dominates(apply_transform(fig15.network, fig15.plan), build_line(6, p, q / 2, Sidedness::one)) ==
          Dominance::equal);

    const auto fig13 = figure_preset("fig13", p, q);
    const auto s = oracle::survival(fig13.network, fig13.plan.omega, grid());
    const auto circle = analytic::survival_circle(grid(), p, q, 6);
    for (std::size_t g = 0; g < grid().size(); ++g) CHECK(std::abs(s[g] - circle[g]) < 1e-9);
}

TEST_CASE("influential removal is caught")
{
    const auto line = build_line(6, 0.01, 0.1, Sidedness::one);
    const TransformPlan bad{NodeSet(6, {3}), {{2, 3}}, {}};
    CHECK_FALSE(check_plan(line, bad).valid);
    CHECK_THROWS_AS(apply_transform(line, bad), InfluentialEdge);
    const auto report = verify_indifference(line, bad, grid());
    CHECK_FALSE(report.plan_valid);
    CHECK_FALSE(report.passed());
}

TEST_CASE("empty plan and full Omega")
{
    const auto net = build_circle(5, 0.02, 0.3, Sidedness::two);
    const TransformPlan empty{NodeSet(5, {1}), {}, {}};
    CHECK(apply_transform(net, empty) == net);
    const auto all = remove_all_non_influential(net, NodeSet::all(5));
    CHECK(all.remove.size() == net.edges().size());
    const auto report = verify_indifference(net, all, grid());
    CHECK(report.passed());
    const auto s = oracle::survival(net, NodeSet::all(5), grid());
    for (std::size_t g = 0; g < grid().size(); ++g) CHECK(std::abs(s[g] - std::exp(-0.1 * grid()[g])) < 1e-11);
}

TEST_CASE("batch removal of non-influential edges preserves survival on random networks")
{
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + trial % 5;
        const auto net = random_network(rng, n);
        const auto omega = random_set(rng, n);
        const auto plan = remove_all_non_influential(net, omega);
        const auto report = verify_indifference(net, plan, grid());
        CHECK(report.plan_valid);
        CHECK(report.max_difference <= 1e-10);
    }
}

TEST_CASE("classification is invariant under relabeling")
{
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 8;
        const auto net = random_network(rng, n);
        const auto omega = random_set(rng, n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j) p[perm[j]] = net.external_rate(j);
        std::vector<Edge> edges;
        for (const auto& e : net.edges()) edges.push_back({perm[e.source], perm[e.target], e.weight});
        const Network relabeled(p, edges);
        std::vector<std::size_t> mapped;
        for (auto v : omega.nodes()) mapped.push_back(perm[v]);
        const NodeSet omega2(n, mapped);
        for (const auto& e : net.edges()) {
            const auto a = classify_edge(net, omega, e.source, e.target);
            const auto b = classify_edge(relabeled, omega2, perm[e.source], perm[e.target]);
            CHECK(a.verdict == b.verdict);
            CHECK(a.non_influential_case == b.non_influential_case);
        }
    }
}

TEST_CASE("adding edges raises adoption")
{
    const auto line = build_line(6, 0.01, 0.1, Sidedness::two);
    const std::vector<Edge> closure{{0, 5, 0.05}, {5, 0, 0.05}};
    CHECK(corollary_monotonicity(line, closure, grid()).passed);
    CHECK(corollary_monotonicity(line, {}, grid()).passed);
    const auto one = build_line(5, 0.01, 0.1, Sidedness::one);
    const std::vector<Edge> long_range{{0, 4, 0.2}};
    const auto report = corollary_monotonicity(one, long_range, grid());
    CHECK(report.passed);
    CHECK(report.min_gain > 0.0);
    const std::vector<Edge> existing{{0, 1, 0.2}};
    CHECK_THROWS_AS(corollary_monotonicity(one, existing, grid()), std::invalid_argument);
}

TEST_CASE("plan json round trip")
{
    const auto preset = figure_preset("fig4");
    const auto doc = to_json(preset.plan);
    CHECK(doc["omega"][0] == 3);
    const auto back = plan_from_json(doc, preset.network.size());
    CHECK(back.omega == preset.plan.omega);
    CHECK(back.remove.size() == preset.plan.remove.size());
    CHECK(back.add.size() == preset.plan.add.size());
    CHECK_THROWS_AS(figure_preset("fig99"), std::invalid_argument);
}
