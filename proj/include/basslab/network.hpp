#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace basslab {

enum class Sidedness { one, two };

std::string to_string(Sidedness sided);
Sidedness parse_sidedness(const std::string& text);

/// Which builder produced a network. Networks assembled by hand (or edited by
/// an indifference transform) are tagged `general`.
struct TopologyTag {
    enum class Kind { general, circle, line, torus, box, hybrid_circle_ray };

    Kind kind = Kind::general;
    Sidedness sided = Sidedness::one;
    std::size_t dim = 0;
    std::size_t side = 0;
    std::size_t circle_size = 0;
    std::size_t ray_size = 0;

    bool operator==(const TopologyTag&) const = default;
};

std::string to_string(TopologyTag::Kind kind);
TopologyTag::Kind parse_topology_kind(const std::string& text);

/// Directed edge i -> j carrying internal influence q_{i,j} (0-based indices).
struct Edge {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 0.0;

    bool operator==(const Edge&) const = default;
};

struct Neighbor {
    std::size_t node = 0;
    double weight = 0.0;
};

/// Immutable directed weighted graph with per-node external rates p_j.
///
/// Edges are kept sorted by (source, target). Self-edges, duplicate ordered
/// pairs, non-positive weights and negative external rates are rejected at
/// construction, so every Network in circulation satisfies the model's
/// invariants and can be shared freely between threads.
class Network {
public:
    Network(std::vector<double> external_rates, std::vector<Edge> edges, TopologyTag tag = {});

    std::size_t size() const noexcept { return external_rates_.size(); }
    std::span<const double> external_rates() const noexcept { return external_rates_; }
    double external_rate(std::size_t node) const { return external_rates_.at(node); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const TopologyTag& tag() const noexcept { return tag_; }

    /// Edges pointing into `node` (its influencers).
    std::span<const Neighbor> in_neighbors(std::size_t node) const;
    /// Edges leaving `node` (the nodes it influences).
    std::span<const Neighbor> out_neighbors(std::size_t node) const;

    /// q_{i,j}, or 0 when the edge is absent.
    double weight(std::size_t source, std::size_t target) const;
    bool has_edge(std::size_t source, std::size_t target) const;

    /// Total incoming weight of `node`.
    double incoming_weight(std::size_t node) const;
    /// Largest hazard `node` can ever experience: p_j + sum_i q_{i,j}.
    double max_hazard(std::size_t node) const;

    bool operator==(const Network& other) const;

private:
    std::vector<double> external_rates_;
    std::vector<Edge> edges_;
    TopologyTag tag_;
    std::vector<std::size_t> in_offsets_;
    std::vector<Neighbor> in_list_;
    std::vector<std::size_t> out_offsets_;
    std::vector<Neighbor> out_list_;
};

/// Sorted, duplicate-free, non-empty set of node indices in [0, universe).
class NodeSet {
public:
    NodeSet(std::size_t universe, std::vector<std::size_t> nodes);
    NodeSet(std::size_t universe, std::initializer_list<std::size_t> nodes)
        : NodeSet(universe, std::vector<std::size_t>(nodes)) {}

    /// All nodes 0..universe-1.
    static NodeSet all(std::size_t universe);
    /// Nodes first..last inclusive.
    static NodeSet range(std::size_t universe, std::size_t first, std::size_t last);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const std::size_t> nodes() const noexcept { return nodes_; }
    bool contains(std::size_t node) const;
    /// Bit j set iff node j is in the set. Requires universe <= 64.
    std::uint64_t bitmask() const;

    bool operator==(const NodeSet&) const = default;

private:
    std::size_t universe_;
    std::vector<std::size_t> nodes_;
};

// Canonical topologies. Every node gets external rate p. One-sided builders
// use weight q/D from the "left" neighbour in each coordinate, two-sided
// builders use q/(2D) from both neighbours. When wraparound makes the two
// neighbours of a node coincide (circle of size 2), their influences merge
// into a single edge carrying the summed weight.

Network build_circle(std::size_t size, double p, double q, Sidedness sided);
Network build_line(std::size_t size, double p, double q, Sidedness sided);
/// D-dimensional grid with `side` nodes per coordinate; node index is
/// sum_d c_d * side^d (coordinate 0 varies fastest). Non-periodic grids drop
/// the out-of-box edges without reweighting the rest.
Network build_grid(std::size_t dim, std::size_t side, double p, double q, Sidedness sided, bool periodic);
/// One-sided circle of `circle_size` nodes (0..C-1) with a one-sided ray of
/// `ray_size` nodes (C..C+K-1) hanging off circle node C-1. All weights q.
Network build_hybrid_circle_ray(std::size_t circle_size, std::size_t ray_size, double p, double q);

/// Result of comparing two networks parameter by parameter (absent edges
/// count as weight 0). "A below B" is the strict relation A < B; the weak
/// relation A <= B holds for `equal` or `a_below_b`.
enum class Dominance { equal, a_below_b, b_below_a, incomparable };

std::string to_string(Dominance d);
Dominance dominates(const Network& a, const Network& b);
inline bool weakly_below(Dominance d) { return d == Dominance::equal || d == Dominance::a_below_b; }

}  // namespace basslab
