#pragma once

#include "basslab/network.hpp"
#include "basslab/oracle.hpp"

#include <json.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/// Influence structure relative to a node set Omega: which edges can change
/// the time of the first adoption inside Omega, and edits that provably cannot.
namespace basslab::principles {

enum class Verdict { influential, non_influential };

/// Edge a -> b is non-influential to Omega when
///   case 1: a is in Omega;
///   case 2: no directed path leads from b into Omega;
///   case 3: every directed path from b into Omega passes through a.
struct EdgeClassification {
    Edge edge;
    Verdict verdict = Verdict::influential;
    int non_influential_case = 0;  ///< 1, 2 or 3; 0 when influential

    bool non_influential() const { return verdict == Verdict::non_influential; }
};

std::string describe(const EdgeClassification& c);

/// Throws std::invalid_argument when the edge is absent or Omega has another universe.
EdgeClassification classify_edge(const Network& network, const NodeSet& omega, std::size_t source, std::size_t target);
std::vector<EdgeClassification> classify_all(const Network& network, const NodeSet& omega);

struct EdgeRef {
    std::size_t source = 0;
    std::size_t target = 0;
};

/// Removals are classified on the original network; additions are applied in
/// order after the removals and each is classified right after its insertion.
struct TransformPlan {
    NodeSet omega;
    std::vector<EdgeRef> remove;
    std::vector<Edge> add;
};

class InfluentialEdge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PlanCheck {
    bool valid = true;
    std::vector<std::string> problems;
    std::vector<EdgeClassification> removals;
    std::vector<EdgeClassification> additions;
};

PlanCheck check_plan(const Network& network, const TransformPlan& plan);
/// Applies the edits without classification (edges must exist / be absent).
Network apply_unchecked(const Network& network, const TransformPlan& plan);
/// Throws InfluentialEdge if any step of the plan is influential.
Network apply_transform(const Network& network, const TransformPlan& plan);
/// Plan deleting every edge that is non-influential to Omega.
TransformPlan remove_all_non_influential(const Network& network, const NodeSet& omega);

struct IndifferenceReport {
    std::string name;
    bool plan_valid = true;
    std::vector<std::string> problems;
    double max_difference = 0.0;
    double tolerance = 1e-10;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;

    bool passed() const { return max_difference <= tolerance; }
};

/// S_Omega before and after the (unchecked) transform, both from the master
/// equation; passes when the sup-norm gap is within `tol`.
IndifferenceReport verify_indifference(const Network& network, const TransformPlan& plan,
                                       std::span<const double> grid, double tol = 1e-10,
                                       const oracle::Options& options = {});

struct MonotonicityReport {
    std::size_t added = 0;
    /// min over sampled t > 0 of f_after(t) - f_before(t)
    double min_gain = 0.0;
    double max_abs_gain = 0.0;
    bool passed = false;
};

/// Adding positive-weight edges must raise f strictly at every sampled t > 0
/// (or leave it unchanged when nothing is added).
MonotonicityReport corollary_monotonicity(const Network& base, std::span<const Edge> added,
                                          std::span<const double> grid, const oracle::Options& options = {});

/// A named network with an indifference plan reproducing a textbook reduction.
struct FigurePreset {
    std::string name;
    std::string description;
    Network network;
    TransformPlan plan;
};

std::vector<std::string> figure_preset_names();
/// Throws std::invalid_argument for unknown names.
FigurePreset figure_preset(const std::string& name, double p = 0.01, double q = 0.1);
std::vector<FigurePreset> figure_presets(double p = 0.01, double q = 0.1);

nlohmann::json to_json(const EdgeClassification& c);
nlohmann::json to_json(const TransformPlan& plan);
TransformPlan plan_from_json(const nlohmann::json& doc, std::size_t universe);
nlohmann::json to_json(const IndifferenceReport& report);
nlohmann::json to_json(const MonotonicityReport& report);

}  // namespace basslab::principles
