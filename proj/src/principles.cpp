#include "basslab/principles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace basslab::principles {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// True when some node of omega is reachable from `start` without visiting `blocked`.
bool reaches(const Network& network, const NodeSet& omega, std::size_t start, std::size_t blocked)
{
    std::vector<char> seen(network.size(), 0);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        if (omega.contains(v)) return true;
        for (const auto& nb : network.out_neighbors(v)) {
            if (nb.node == blocked || seen[nb.node]) continue;
            seen[nb.node] = 1;
            queue.push_back(nb.node);
        }
    }
    return false;
}

std::string edge_label(std::size_t source, std::size_t target)
{
    return std::to_string(source + 1) + "->" + std::to_string(target + 1);
}

EdgeRef ref(std::size_t source_1, std::size_t target_1) { return {source_1 - 1, target_1 - 1}; }
Edge edge(std::size_t source_1, std::size_t target_1, double w) { return {source_1 - 1, target_1 - 1, w}; }

NodeSet one_based(std::size_t universe, std::initializer_list<std::size_t> nodes)
{
    std::vector<std::size_t> v;
    for (auto n : nodes) v.push_back(n - 1);
    return NodeSet(universe, v);
}

}  // namespace

std::string describe(const EdgeClassification& c)
{
    const auto label = edge_label(c.edge.source, c.edge.target);
    if (!c.non_influential()) return label + " influential";
    return label + " non-influential (case " + std::to_string(c.non_influential_case) + ")";
}

EdgeClassification classify_edge(const Network& network, const NodeSet& omega, std::size_t source, std::size_t target)
{
    if (omega.universe() != network.size()) throw std::invalid_argument("node set universe does not match network");
    if (source >= network.size() || target >= network.size() || !network.has_edge(source, target)) {
        throw std::invalid_argument("edge " + edge_label(source, target) + " is not in the network");
    }
    EdgeClassification c;
    c.edge = {source, target, network.weight(source, target)};
    if (omega.contains(source)) {
        c.verdict = Verdict::non_influential;
        c.non_influential_case = 1;
    } else if (!reaches(network, omega, target, kNone)) {
        c.verdict = Verdict::non_influential;
        c.non_influential_case = 2;
    } else if (!reaches(network, omega, target, source)) {
        c.verdict = Verdict::non_influential;
        c.non_influential_case = 3;
    }
    return c;
}

std::vector<EdgeClassification> classify_all(const Network& network, const NodeSet& omega)
{
    std::vector<EdgeClassification> out;
    out.reserve(network.edges().size());
    for (const auto& e : network.edges()) out.push_back(classify_edge(network, omega, e.source, e.target));
    return out;
}

Network apply_unchecked(const Network& network, const TransformPlan& plan)
{
    if (plan.remove.empty() && plan.add.empty()) return network;
    std::vector<Edge> edges(network.edges().begin(), network.edges().end());
    for (const auto& r : plan.remove) {
        auto it = std::find_if(edges.begin(), edges.end(),
                               [&](const Edge& e) { return e.source == r.source && e.target == r.target; });
        if (it == edges.end()) throw std::invalid_argument("cannot remove missing edge " + edge_label(r.source, r.target));
        edges.erase(it);
    }
    edges.insert(edges.end(), plan.add.begin(), plan.add.end());
    return Network(std::vector<double>(network.external_rates().begin(), network.external_rates().end()),
                   std::move(edges));
}

PlanCheck check_plan(const Network& network, const TransformPlan& plan)
{
    PlanCheck check;
    auto fail = [&check](std::string msg) {
        check.valid = false;
        check.problems.push_back(std::move(msg));
    };
    if (plan.omega.universe() != network.size()) {
        fail("node set universe does not match network");
        return check;
    }
    for (const auto& r : plan.remove) {
        if (r.source >= network.size() || r.target >= network.size() || !network.has_edge(r.source, r.target)) {
            fail("removal of missing edge " + edge_label(r.source, r.target));
            continue;
        }
        auto c = classify_edge(network, plan.omega, r.source, r.target);
        if (!c.non_influential()) fail("removal of influential edge " + edge_label(r.source, r.target));
        check.removals.push_back(c);
    }
    if (!check.valid) return check;

    TransformPlan removals_only{plan.omega, plan.remove, {}};
    Network current = apply_unchecked(network, removals_only);
    for (const auto& e : plan.add) {
        TransformPlan one{plan.omega, {}, {e}};
        try {
            current = apply_unchecked(current, one);
        } catch (const std::invalid_argument& err) {
            fail("cannot add edge " + edge_label(e.source, e.target) + ": " + err.what());
            return check;
        }
        auto c = classify_edge(current, plan.omega, e.source, e.target);
        if (!c.non_influential()) fail("addition of influential edge " + edge_label(e.source, e.target));
        check.additions.push_back(c);
    }
    return check;
}

Network apply_transform(const Network& network, const TransformPlan& plan)
{
    const auto check = check_plan(network, plan);
    if (!check.valid) throw InfluentialEdge(check.problems.front());
    return apply_unchecked(network, plan);
}

TransformPlan remove_all_non_influential(const Network& network, const NodeSet& omega)
{
    TransformPlan plan{omega, {}, {}};
    for (const auto& c : classify_all(network, omega)) {
        if (c.non_influential()) plan.remove.push_back({c.edge.source, c.edge.target});
    }
    return plan;
}

IndifferenceReport verify_indifference(const Network& network, const TransformPlan& plan,
                                       std::span<const double> grid, double tol, const oracle::Options& options)
{
    IndifferenceReport report;
    report.tolerance = tol;
    const auto check = check_plan(network, plan);
    report.plan_valid = check.valid;
    report.problems = check.problems;
    const auto after = apply_unchecked(network, plan);
    report.edges_before = network.edges().size();
    report.edges_after = after.edges().size();
    const auto s_before = oracle::survival(network, plan.omega, grid, options);
    const auto s_after = oracle::survival(after, plan.omega, grid, options);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        report.max_difference = std::max(report.max_difference, std::abs(s_before[g] - s_after[g]));
    }
    return report;
}

MonotonicityReport corollary_monotonicity(const Network& base, std::span<const Edge> added,
                                          std::span<const double> grid, const oracle::Options& options)
{
    MonotonicityReport report;
    report.added = added.size();
    for (const auto& e : added) {
        if (!(e.weight > 0.0)) throw std::invalid_argument("added edges need positive weight");
        if (base.has_edge(e.source, e.target)) throw std::invalid_argument("added edge already present");
    }
    TransformPlan plan{NodeSet::all(base.size()), {}, {added.begin(), added.end()}};
    const auto after = apply_unchecked(base, plan);
    const auto f0 = oracle::exact_f(base, grid, options);
    const auto f1 = oracle::exact_f(after, grid, options);
    bool first = true;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double gain = f1.f[g] - f0.f[g];
        report.max_abs_gain = std::max(report.max_abs_gain, std::abs(gain));
        if (grid[g] <= 0.0) continue;
        report.min_gain = first ? gain : std::min(report.min_gain, gain);
        first = false;
    }
    report.passed = added.empty() ? report.max_abs_gain <= 1e-12 : (!first && report.min_gain > 0.0);
    return report;
}

std::vector<std::string> figure_preset_names()
{
    return {"fig3", "fig4", "fig6", "fig7", "fig8", "fig13", "fig14-one", "fig14-two", "fig15"};
}

FigurePreset figure_preset(const std::string& name, double p, double q)
{
    if (name == "fig3") {
        // one-sided circle, Omega = {3,4,5}: drop the chain inside Omega, close 3 -> 6
        const std::size_t m = 8;
        return {name, "one-sided circle M=8, Omega={3,4,5}: S_3 reduces to a circle of size 6",
                build_circle(m, p, q, Sidedness::one),
                {one_based(m, {3, 4, 5}), {ref(3, 4), ref(4, 5)}, {edge(3, 6, q)}}};
    }
    if (name == "fig4") {
        const std::size_t m = 8;
        const double w = q / 2;
        return {name, "two-sided circle M=8, Omega={3,4,5,6}: S_4 reduces to a circle of size 6",
                build_circle(m, p, q, Sidedness::two),
                {one_based(m, {3, 4, 5, 6}),
                 {ref(3, 4), ref(4, 3), ref(4, 5), ref(5, 4), ref(5, 6), ref(6, 5)},
                 {edge(3, 6, w), edge(6, 3, w)}}};
    }
    if (name == "fig6") {
        const std::size_t m = 6;
        return {name, "one-sided line M=6, Omega={3}: node 3 sees a circle of size 3",
                build_line(m, p, q, Sidedness::one), {one_based(m, {3}), {ref(3, 4)}, {edge(3, 1, q)}}};
    }
    if (name == "fig7") {
        const std::size_t m = 6;
        TransformPlan plan{one_based(m, {m}), {}, {edge(m, 1, q / 2)}};
        for (std::size_t k = 1; k < m; ++k) plan.remove.push_back(ref(k + 1, k));
        return {name, "two-sided line M=6, Omega={6}: last node sees a one-sided circle with weight q/2",
                build_line(m, p, q, Sidedness::two), plan};
    }
    if (name == "fig8") {
        const std::size_t m = 7;
        const auto net = build_line(m, p, q, Sidedness::two);
        auto plan = remove_all_non_influential(net, one_based(m, {3, 4}));
        plan.add = {edge(3, 1, q / 2), edge(4, m, q / 2)};
        return {name, "two-sided line M=7, Omega={3,4}: pair survival splits into two circles", net, plan};
    }
    if (name == "fig13") {
        const std::size_t c = 4, k_ray = 3, k = 2;
        const auto net = build_hybrid_circle_ray(c, k_ray, p, q);
        const std::size_t attach = c - 1, node = c + k - 1;  // 0-based
        TransformPlan plan{NodeSet(c + k_ray, {node}), {{attach, 0}, {node, node + 1}}, {{node, 0, q}}};
        return {name, "circle 4 + ray 3, Omega = second ray node: reduces to a circle of size 6", net, plan};
    }
    if (name == "fig14-one" || name == "fig14-two") {
        const std::size_t m = 6;
        const auto sided = name == "fig14-one" ? Sidedness::one : Sidedness::two;
        const auto net = build_line(m, p, q, sided);
        return {name, "line M=6, Omega={1}: delete all non-influential edges", net,
                remove_all_non_influential(net, one_based(m, {1}))};
    }
    if (name == "fig15") {
        const std::size_t m = 6;
        const auto net = build_line(m, p, q, Sidedness::two);
        return {name, "two-sided line M=6, Omega={6}: leaves a one-sided line with weight q/2", net,
                remove_all_non_influential(net, one_based(m, {m}))};
    }
    throw std::invalid_argument("unknown figure preset '" + name + "'");
}

std::vector<FigurePreset> figure_presets(double p, double q)
{
    std::vector<FigurePreset> out;
    for (const auto& name : figure_preset_names()) out.push_back(figure_preset(name, p, q));
    return out;
}

nlohmann::json to_json(const EdgeClassification& c)
{
    return {{"edge", {c.edge.source + 1, c.edge.target + 1, c.edge.weight}},
            {"verdict", c.non_influential() ? "non_influential" : "influential"},
            {"case", c.non_influential_case}};
}

nlohmann::json to_json(const TransformPlan& plan)
{
    nlohmann::json omega = nlohmann::json::array(), remove = nlohmann::json::array(), add = nlohmann::json::array();
    for (auto n : plan.omega.nodes()) omega.push_back(n + 1);
    for (const auto& r : plan.remove) remove.push_back({r.source + 1, r.target + 1});
    for (const auto& e : plan.add) add.push_back({e.source + 1, e.target + 1, e.weight});
    return {{"omega", omega}, {"remove", remove}, {"add", add}};
}

TransformPlan plan_from_json(const nlohmann::json& doc, std::size_t universe)
{
    auto index = [universe](const nlohmann::json& v) {
        const auto i = v.get<std::size_t>();
        if (i == 0 || i > universe) throw std::invalid_argument("node index out of range in plan");
        return i - 1;
    };
    std::vector<std::size_t> omega;
    for (const auto& v : doc.at("omega")) omega.push_back(index(v));
    TransformPlan plan{NodeSet(universe, omega), {}, {}};
    if (doc.contains("remove")) {
        for (const auto& r : doc["remove"]) plan.remove.push_back({index(r.at(0)), index(r.at(1))});
    }
    if (doc.contains("add")) {
        for (const auto& a : doc["add"]) plan.add.push_back({index(a.at(0)), index(a.at(1)), a.at(2).get<double>()});
    }
    return plan;
}

nlohmann::json to_json(const IndifferenceReport& report)
{
    return {{"name", report.name},
            {"passed", report.passed()},
            {"plan_valid", report.plan_valid},
            {"problems", report.problems},
            {"max_difference", report.max_difference},
            {"tolerance", report.tolerance},
            {"edges_before", report.edges_before},
            {"edges_after", report.edges_after}};
}

nlohmann::json to_json(const MonotonicityReport& report)
{
    return {{"added", report.added},
            {"min_gain", report.min_gain},
            {"max_abs_gain", report.max_abs_gain},
            {"passed", report.passed}};
}

}  // namespace basslab::principles
