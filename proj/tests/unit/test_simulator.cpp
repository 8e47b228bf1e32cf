#include "basslab/analytic.hpp"
#include "basslab/oracle.hpp"
#include "basslab/simulator.hpp"
#include "discrete_chain.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace basslab;
using Catch::Matchers::WithinAbs;

namespace {

sim::SimConfig config(double horizon, std::size_t trials, std::uint64_t seed = 11, std::size_t points = 21)
{
    sim::SimConfig c;
    c.horizon = horizon;
    c.trials = trials;
    c.base_seed = seed;
    c.grid_points = points;
    return c;
}

}  // namespace

TEST_CASE("independent nodes follow the exponential law")
{
    const auto net = build_circle(5, 0.1, 0.0, Sidedness::one);
    const auto curve = sim::run_event_driven(net, config(20.0, 4000));
    REQUIRE(check_curve(curve).empty());
    for (std::size_t g = 0; g < curve.time.size(); ++g) {
        CHECK(std::abs(curve.f[g] - (1 - std::exp(-0.1 * curve.time[g]))) <= 4 * curve.std_error[g] + 1e-12);
    }
}

TEST_CASE("single node mean adoption time")
{
    const Network net({0.25}, {});
    std::mt19937_64 engine(5);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += sim::sample_event_driven(net, 1e9, engine).adoption_time[0];
    const double mean = sum / n;
    CHECK(std::abs(mean - 4.0) < 4 * 4.0 / std::sqrt(n));
}

TEST_CASE("event-driven estimate matches the master equation")
{
    for (const auto& net : {build_line(4, 0.05, 0.4, Sidedness::two), build_hybrid_circle_ray(3, 2, 0.05, 0.3)}) {
        const auto mc = sim::run_event_driven(net, config(20.0, 4000, 3));
        const auto exact = oracle::exact_f(net, mc.time);
        for (std::size_t g = 1; g < mc.time.size(); ++g) {
            CHECK(std::abs(mc.f[g] - exact.f[g]) <= 4 * mc.std_error[g]);
        }
    }
}

TEST_CASE("results do not depend on the thread count")
{
    const auto net = build_circle(6, 0.01, 0.1, Sidedness::two);
    auto c1 = config(30.0, 301);
    c1.threads = 1;
    auto c3 = c1;
    c3.threads = 3;
    const auto a = sim::run_event_driven(net, c1);
    const auto b = sim::run_event_driven(net, c3);
    CHECK(a.f == b.f);
    CHECK(a.std_error == b.std_error);
    c1.scheme = c3.scheme = sim::Scheme::discrete;
    CHECK(sim::run_discrete_curve(net, c1).f == sim::run_discrete_curve(net, c3).f);
    const auto r1 = sim::run_coupled(build_line(6, 0.01, 0.1, Sidedness::one), net, c1);
    const auto r3 = sim::run_coupled(build_line(6, 0.01, 0.1, Sidedness::one), net, c3);
    CHECK(r1.identical_trials == r3.identical_trials);
}

TEST_CASE("single trial is deterministic")
{
    const auto net = build_line(6, 0.01, 0.1, Sidedness::one);
    const auto c = config(30.0, 1, 42);
    CHECK(sim::run_event_driven(net, c).f == sim::run_event_driven(net, c).f);
    const rng::CouplingTape tape(9);
    CHECK(sim::run_discrete(net, 0.05, 30.0, tape).adoption_time ==
          sim::run_discrete(net, 0.05, 30.0, tape).adoption_time);
}

TEST_CASE("a tape of ones never adopts")
{
    const auto net = build_circle(5, 0.1, 0.5, Sidedness::one);
    const auto path = sim::run_discrete(net, 0.1, 50.0, rng::CouplingTape::constant(1.0));
    CHECK(path.adopters_by(50.0) == 0);
    CHECK(path.first_adoption(NodeSet(5, {0, 1})) == sim::kNever);
}

TEST_CASE("tape values are reproducible uniforms")
{
    const rng::CouplingTape tape(123);
    double sum = 0.0;
    for (std::uint64_t n = 0; n < 1000; ++n) {
        for (std::size_t j = 0; j < 10; ++j) {
            const double u = tape(n, j);
            CHECK(u > 0.0);
            CHECK(u <= 1.0);
            CHECK(u == tape(n, j));
            sum += u;
        }
    }
    CHECK(std::abs(sum / 10000 - 0.5) < 0.02);
    CHECK(rng::trial_seed(1, 0) != rng::trial_seed(1, 1));
    CHECK(rng::trial_seed(1, 0) != rng::trial_seed(2, 0));
}

TEST_CASE("step validation")
{
    const auto net = build_circle(4, 0.1, 0.5, Sidedness::one);
    CHECK_THROWS_AS(sim::check_step(net, 2.0), sim::StepTooLarge);
    CHECK(sim::check_step(net, 1.0).coarse);
    CHECK_FALSE(sim::check_step(net, 0.1).coarse);
    CHECK_THAT(sim::check_step(net, sim::default_dt(net)).max_step_probability, WithinAbs(0.01, 1e-15));
    auto c = config(10.0, 10);
    c.dt = 5.0;
    CHECK_THROWS_AS(sim::run_discrete_curve(net, c), sim::StepTooLarge);
    c.trials = 0;
    CHECK_THROWS_AS(sim::validate(c), std::invalid_argument);
}

TEST_CASE("discrete scheme converges at first order")
{
    const auto net = build_line(3, 0.1, 0.6, Sidedness::two);
    const double T = 6.0;
    const double times[] = {T};
    const double exact = oracle::exact_f(net, times).f[0];
    const double dt = 0.2;
    const auto coarse = reference::discrete_chain_f(net, dt, 30).back();
    const auto fine = reference::discrete_chain_f(net, dt / 2, 60).back();
    const double e1 = coarse - exact, e2 = fine - exact;
    CHECK(std::abs(e1 / e2 - 2.0) < 0.2);
    CHECK(std::abs(2 * fine - coarse - exact) < 0.1 * std::abs(e2));

    // the simulator reproduces the exact discrete chain
    auto c = config(T, 4000, 8, 31);
    c.dt = dt;
    const auto mc = sim::run_discrete_curve(net, c);
    const auto chain = reference::discrete_chain_f(net, dt, 30);
    for (std::size_t g = 1; g < mc.time.size(); ++g) CHECK(std::abs(mc.f[g] - chain[g]) <= 4 * mc.std_error[g]);
}

TEST_CASE("coupled runs")
{
    const auto c = config(30.0, 500, 77);
    const auto line = build_line(6, 0.01, 0.1, Sidedness::two);
    const auto circle = build_circle(6, 0.01, 0.1, Sidedness::two);
    const auto dominated = sim::run_coupled(line, circle, c);
    CHECK(dominated.applicable);
    CHECK(dominated.violation_count == 0);
    CHECK(dominated.passed());

    const auto same = sim::run_coupled(circle, circle, c);
    CHECK(same.relation == Dominance::equal);
    CHECK(same.identical_trials == c.trials);

    const auto mixed = sim::run_coupled(build_circle(6, 0.01, 0.1, Sidedness::one), circle, c);
    CHECK_FALSE(mixed.applicable);
    CHECK(sim::to_json(mixed)["status"] == "not applicable");

    // reversed order is not claimed either, and does break pathwise order
    const auto reversed = sim::run_coupled(circle, line, c);
    CHECK_FALSE(reversed.applicable);
    CHECK(reversed.passed());

    CHECK_THROWS_AS(sim::run_coupled(line, build_line(5, 0.01, 0.1, Sidedness::two), c), std::invalid_argument);
}
