#include "basslab/network.hpp"
#include "basslab/network_json.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace basslab;
using Catch::Matchers::WithinAbs;

TEST_CASE("construction validates")
{
    CHECK_THROWS_AS(Network({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Network({0.1, 0.1}, {{0, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Network({0.1, 0.1}, {{0, 2, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Network({0.1, 0.1}, {{0, 1, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Network({0.1, 0.1}, {{0, 1, 1.0}, {0, 1, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(Network({-0.1}, {}), std::invalid_argument);
}

TEST_CASE("one-sided circle")
{
    const auto net = build_circle(5, 0.01, 0.1, Sidedness::one);
    CHECK(net.edges().size() == 5);
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK(net.weight((j + 4) % 5, j) == 0.1);
        CHECK(net.external_rate(j) == 0.01);
        CHECK_THAT(net.max_hazard(j), WithinAbs(0.11, 1e-15));
    }
    CHECK(net.tag().kind == TopologyTag::Kind::circle);
}

TEST_CASE("two-sided circle halves weights and merges at size two")
{
    const auto net = build_circle(5, 0.01, 0.1, Sidedness::two);
    CHECK(net.edges().size() == 10);
    CHECK(net.weight(1, 2) == 0.05);
    CHECK(net.weight(3, 2) == 0.05);
    const auto pair = build_circle(2, 0.01, 0.1, Sidedness::two);
    CHECK(pair.edges().size() == 2);
    CHECK_THAT(pair.weight(0, 1), WithinAbs(0.1, 1e-15));
    CHECK(build_circle(1, 0.01, 0.1, Sidedness::two).edges().empty());
}

TEST_CASE("lines and boxes drop boundary edges without reweighting")
{
    const auto one = build_line(4, 0.01, 0.1, Sidedness::one);
    CHECK(one.edges().size() == 3);
    CHECK(one.incoming_weight(0) == 0.0);
    const auto two = build_line(4, 0.01, 0.1, Sidedness::two);
    CHECK(two.edges().size() == 6);
    CHECK(two.incoming_weight(0) == 0.05);
    CHECK_THAT(two.incoming_weight(1), WithinAbs(0.1, 1e-15));

    const auto box = build_grid(2, 3, 0.01, 0.2, Sidedness::two, false);
    CHECK(box.size() == 9);
    CHECK_THAT(box.incoming_weight(4), WithinAbs(0.2, 1e-15));  // centre
    CHECK_THAT(box.incoming_weight(0), WithinAbs(0.1, 1e-15));  // corner
    CHECK(box.tag().kind == TopologyTag::Kind::box);

    const auto torus = build_grid(3, 3, 0.01, 0.3, Sidedness::one, true);
    CHECK(torus.size() == 27);
    for (std::size_t j = 0; j < torus.size(); ++j) CHECK_THAT(torus.incoming_weight(j), WithinAbs(0.3, 1e-15));
    CHECK(torus.tag().kind == TopologyTag::Kind::torus);
}

TEST_CASE("hybrid circle with ray")
{
    const auto net = build_hybrid_circle_ray(4, 3, 0.01, 0.1);
    CHECK(net.size() == 7);
    CHECK(net.has_edge(3, 0));
    CHECK(net.has_edge(3, 4));
    CHECK(net.has_edge(4, 5));
    CHECK(net.has_edge(5, 6));
    CHECK(net.edges().size() == 7);
}

TEST_CASE("node sets")
{
    NodeSet s(8, {5, 2, 3});
    CHECK(s.nodes()[0] == 2);
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(4));
    CHECK(s.bitmask() == 0b101100);
    CHECK(NodeSet::all(3).size() == 3);
    CHECK(NodeSet::range(8, 2, 4) == NodeSet(8, {2, 3, 4}));
    CHECK_THROWS_AS(NodeSet(4, {}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet(4, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet(4, {4}), std::invalid_argument);
}

TEST_CASE("dominance")
{
    const auto a = build_line(4, 0.01, 0.1, Sidedness::one);
    const auto b = build_circle(4, 0.01, 0.1, Sidedness::one);
    CHECK(dominates(a, a) == Dominance::equal);
    CHECK(dominates(a, b) == Dominance::a_below_b);
    CHECK(dominates(b, a) == Dominance::b_below_a);
    const auto c = build_circle(4, 0.01, 0.1, Sidedness::two);
    CHECK(dominates(b, c) == Dominance::incomparable);
    CHECK(weakly_below(dominates(a, b)));
    CHECK_FALSE(weakly_below(dominates(b, c)));
}

TEST_CASE("json round trip on random networks")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> nd(1, 9);
    std::uniform_real_distribution<double> wd(0.01, 1.0);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = nd(rng);
        std::vector<double> p(n);
        for (auto& v : p) v = wd(rng);
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && coin(rng)) edges.push_back({i, j, wd(rng)});
        const Network net(p, edges);
        const auto back = network_from_json(nlohmann::json::parse(network_to_json(net).dump()));
        CHECK(back == net);
        CHECK(back.tag() == net.tag());
    }
    const auto circle = build_circle(3, 0.01, 0.1, Sidedness::two);
    const auto doc = network_to_json(circle);
    CHECK(doc["edges"][0][0] == 1);
    CHECK(network_from_json(doc).tag() == circle.tag());
}
