#include "basslab/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace basslab {

std::string to_string(Sidedness sided) { return sided == Sidedness::one ? "one" : "two"; }

Sidedness parse_sidedness(const std::string& text)
{
    if (text == "one") return Sidedness::one;
    if (text == "two") return Sidedness::two;
    throw std::invalid_argument("sidedness must be 'one' or 'two', got '" + text + "'");
}

std::string to_string(TopologyTag::Kind kind)
{
    switch (kind) {
    case TopologyTag::Kind::general: return "general";
    case TopologyTag::Kind::circle: return "circle";
    case TopologyTag::Kind::line: return "line";
    case TopologyTag::Kind::torus: return "torus";
    case TopologyTag::Kind::box: return "box";
    case TopologyTag::Kind::hybrid_circle_ray: return "hybrid_circle_ray";
    }
    return "general";
}

TopologyTag::Kind parse_topology_kind(const std::string& text)
{
    for (auto kind : {TopologyTag::Kind::general, TopologyTag::Kind::circle, TopologyTag::Kind::line,
                      TopologyTag::Kind::torus, TopologyTag::Kind::box, TopologyTag::Kind::hybrid_circle_ray}) {
        if (to_string(kind) == text) return kind;
    }
    throw std::invalid_argument("unknown topology kind '" + text + "'");
}

namespace {

void build_adjacency(std::size_t n, const std::vector<Edge>& edges, bool incoming, std::vector<std::size_t>& offsets,
                     std::vector<Neighbor>& list)
{
    offsets.assign(n + 1, 0);
    for (const auto& e : edges) ++offsets[(incoming ? e.target : e.source) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    list.resize(edges.size());
    auto cursor = offsets;
    // edges are sorted by (source, target), so both lists come out sorted
    for (const auto& e : edges) {
        const auto key = incoming ? e.target : e.source;
        list[cursor[key]++] = Neighbor{incoming ? e.source : e.target, e.weight};
    }
}

}  // namespace

Network::Network(std::vector<double> external_rates, std::vector<Edge> edges, TopologyTag tag)
    : external_rates_(std::move(external_rates)), edges_(std::move(edges)), tag_(tag)
{
    const auto n = external_rates_.size();
    if (n == 0) throw std::invalid_argument("network must have at least one node");
    for (double p : external_rates_) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("external rates must be finite and >= 0");
    }
    for (const auto& e : edges_) {
        if (e.source >= n || e.target >= n) throw std::invalid_argument("edge endpoint out of range");
        if (e.source == e.target) throw std::invalid_argument("self-edges are not allowed");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw std::invalid_argument("edge weights must be > 0");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.source, a.target) < std::pair(b.source, b.target);
    });
    auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.source == b.source && a.target == b.target;
    });
    if (dup != edges_.end()) throw std::invalid_argument("duplicate edge between the same ordered pair");

    build_adjacency(n, edges_, true, in_offsets_, in_list_);
    build_adjacency(n, edges_, false, out_offsets_, out_list_);
}

std::span<const Neighbor> Network::in_neighbors(std::size_t node) const
{
    if (node >= size()) throw std::out_of_range("node index out of range");
    return std::span<const Neighbor>(in_list_).subspan(in_offsets_[node], in_offsets_[node + 1] - in_offsets_[node]);
}

std::span<const Neighbor> Network::out_neighbors(std::size_t node) const
{
    if (node >= size()) throw std::out_of_range("node index out of range");
    return std::span<const Neighbor>(out_list_).subspan(out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]);
}

double Network::weight(std::size_t source, std::size_t target) const
{
    for (const auto& nb : out_neighbors(source)) {
        if (nb.node == target) return nb.weight;
    }
    return 0.0;
}

bool Network::has_edge(std::size_t source, std::size_t target) const { return weight(source, target) > 0.0; }

double Network::incoming_weight(std::size_t node) const
{
    double total = 0.0;
    for (const auto& nb : in_neighbors(node)) total += nb.weight;
    return total;
}

double Network::max_hazard(std::size_t node) const { return external_rate(node) + incoming_weight(node); }

bool Network::operator==(const Network& other) const
{
    return external_rates_ == other.external_rates_ && edges_ == other.edges_ && tag_ == other.tag_;
}

NodeSet::NodeSet(std::size_t universe, std::vector<std::size_t> nodes) : universe_(universe), nodes_(std::move(nodes))
{
    if (nodes_.empty()) throw std::invalid_argument("node set must be non-empty");
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
        throw std::invalid_argument("node set contains duplicates");
    if (nodes_.back() >= universe_) throw std::invalid_argument("node set index out of range");
}

NodeSet NodeSet::all(std::size_t universe) { return range(universe, 0, universe - 1); }

NodeSet NodeSet::range(std::size_t universe, std::size_t first, std::size_t last)
{
    if (universe == 0 || first > last) throw std::invalid_argument("empty node range");
    std::vector<std::size_t> nodes;
    for (auto j = first; j <= last; ++j) nodes.push_back(j);
    return NodeSet(universe, std::move(nodes));
}

bool NodeSet::contains(std::size_t node) const { return std::binary_search(nodes_.begin(), nodes_.end(), node); }

std::uint64_t NodeSet::bitmask() const
{
    if (universe_ > 64) throw std::length_error("bitmask needs universe <= 64");
    std::uint64_t mask = 0;
    for (auto j : nodes_) mask |= std::uint64_t{1} << j;
    return mask;
}

namespace {

void check_rates(double p, double q)
{
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be finite and >= 0");
    if (!(q >= 0.0) || !std::isfinite(q)) throw std::invalid_argument("q must be finite and >= 0");
}

/// Accumulates weights per ordered pair so coinciding neighbours merge.
class EdgeAccumulator {
public:
    void add(std::size_t source, std::size_t target, double weight)
    {
        if (source == target || weight <= 0.0) return;
        weights_[{source, target}] += weight;
    }

    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(weights_.size());
        for (const auto& [key, w] : weights_) out.push_back(Edge{key.first, key.second, w});
        return out;
    }

private:
    std::map<std::pair<std::size_t, std::size_t>, double> weights_;
};

}  // namespace

Network build_grid(std::size_t dim, std::size_t side, double p, double q, Sidedness sided, bool periodic)
{
    if (dim == 0) throw std::invalid_argument("grid dimension must be >= 1");
    if (side == 0) throw std::invalid_argument("grid side must be >= 1");
    check_rates(p, q);

    std::size_t count = 1;
    for (std::size_t d = 0; d < dim; ++d) {
        if (count > (std::size_t{1} << 40) / side) throw std::invalid_argument("grid too large");
        count *= side;
    }
    const double w = sided == Sidedness::one ? q / static_cast<double>(dim) : q / (2.0 * static_cast<double>(dim));

    EdgeAccumulator acc;
    std::vector<std::size_t> coord(dim, 0);
    for (std::size_t node = 0; node < count; ++node) {
        std::size_t stride = 1;
        for (std::size_t d = 0; d < dim; ++d) {
            const auto c = coord[d];
            // left neighbour influences node
            if (c > 0) acc.add(node - stride, node, w);
            else if (periodic) acc.add(node + (side - 1) * stride, node, w);
            if (sided == Sidedness::two) {
                if (c + 1 < side) acc.add(node + stride, node, w);
                else if (periodic) acc.add(node - (side - 1) * stride, node, w);
            }
            stride *= side;
        }
        for (std::size_t d = 0; d < dim; ++d) {
            if (++coord[d] < side) break;
            coord[d] = 0;
        }
    }

    TopologyTag tag;
    tag.sided = sided;
    tag.dim = dim;
    tag.side = side;
    if (dim == 1) tag.kind = periodic ? TopologyTag::Kind::circle : TopologyTag::Kind::line;
    else tag.kind = periodic ? TopologyTag::Kind::torus : TopologyTag::Kind::box;
    return Network(std::vector<double>(count, p), acc.edges(), tag);
}

Network build_circle(std::size_t size, double p, double q, Sidedness sided)
{
    if (size == 0) throw std::invalid_argument("circle size must be >= 1");
    return build_grid(1, size, p, q, sided, true);
}

Network build_line(std::size_t size, double p, double q, Sidedness sided)
{
    if (size == 0) throw std::invalid_argument("line size must be >= 1");
    return build_grid(1, size, p, q, sided, false);
}

Network build_hybrid_circle_ray(std::size_t circle_size, std::size_t ray_size, double p, double q)
{
    if (circle_size == 0 || ray_size == 0) throw std::invalid_argument("hybrid sizes must be >= 1");
    check_rates(p, q);
    const auto n = circle_size + ray_size;
    EdgeAccumulator acc;
    for (std::size_t i = 0; i < circle_size; ++i) acc.add(i, (i + 1) % circle_size, q);
    for (std::size_t i = circle_size - 1; i + 1 < n; ++i) acc.add(i, i + 1, q);

    TopologyTag tag;
    tag.kind = TopologyTag::Kind::hybrid_circle_ray;
    tag.circle_size = circle_size;
    tag.ray_size = ray_size;
    return Network(std::vector<double>(n, p), acc.edges(), tag);
}

std::string to_string(Dominance d)
{
    switch (d) {
    case Dominance::equal: return "equal";
    case Dominance::a_below_b: return "a_below_b";
    case Dominance::b_below_a: return "b_below_a";
    case Dominance::incomparable: return "incomparable";
    }
    return "incomparable";
}

Dominance dominates(const Network& a, const Network& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dominance needs networks of equal size");
    bool a_smaller = false;
    bool b_smaller = false;
    auto compare = [&](double x, double y) {
        if (x < y) a_smaller = true;
        else if (y < x) b_smaller = true;
    };
    for (std::size_t j = 0; j < a.size(); ++j) compare(a.external_rate(j), b.external_rate(j));

    // merge the two sorted edge lists; a missing edge has weight 0
    auto ea = a.edges();
    auto eb = b.edges();
    std::size_t i = 0, k = 0;
    auto key = [](const Edge& e) { return std::pair(e.source, e.target); };
    while (i < ea.size() || k < eb.size()) {
        if (k == eb.size() || (i < ea.size() && key(ea[i]) < key(eb[k]))) compare(ea[i++].weight, 0.0);
        else if (i == ea.size() || key(eb[k]) < key(ea[i])) compare(0.0, eb[k++].weight);
        else compare(ea[i++].weight, eb[k++].weight);
    }

    if (a_smaller && b_smaller) return Dominance::incomparable;
    if (a_smaller) return Dominance::a_below_b;
    if (b_smaller) return Dominance::b_below_a;
    return Dominance::equal;
}

}  // namespace basslab
