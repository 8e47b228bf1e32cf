#pragma once

#include "basslab/curve.hpp"
#include "basslab/network.hpp"
#include "basslab/rng.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace basslab::sim {

enum class Scheme { event_driven, discrete };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

struct SimConfig {
    double horizon = 30.0;
    std::size_t trials = 4000;
    std::uint64_t base_seed = 1;
    Scheme scheme = Scheme::event_driven;
    /// Discrete step; 0 picks default_dt(network).
    double dt = 0.0;
    std::size_t grid_points = 200;
    /// 0 = hardware concurrency (still capped by BASSLAB_THREADS).
    std::size_t threads = 0;
};

/// Throws std::invalid_argument on a malformed configuration.
void validate(const SimConfig& config);

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// One realisation: adoption time per node, kNever if not adopted within the horizon.
struct Trajectory {
    std::vector<double> adoption_time;

    bool adopted_by(std::size_t node, double t) const { return adoption_time[node] <= t; }
    std::size_t adopters_by(double t) const;
    /// t_Omega, the first adoption time inside `omega` (kNever if none).
    double first_adoption(const NodeSet& omega) const;
};

/// Exact continuous-time sample path up to `horizon`.
Trajectory sample_event_driven(const Network& network, double horizon, std::mt19937_64& engine);

/// Monte Carlo estimate of f with standard errors. Trial i uses
/// std::mt19937_64(trial_seed(base_seed, i)), so results do not depend on the
/// number of worker threads.
AdoptionCurve run_event_driven(const Network& network, const SimConfig& config);

class StepTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct StepCheck {
    double dt = 0.0;
    /// max_j (p_j + sum_i q_{i,j}) dt
    double max_step_probability = 0.0;
    /// Set when the per-step probability exceeds 0.1 (bias may be visible).
    bool coarse = false;
};

/// Throws StepTooLarge unless max_step_probability <= 1.
StepCheck check_step(const Network& network, double dt);
/// Step with max per-step probability 0.01.
double default_dt(const Network& network);

/// Discrete scheme: at step n (time t_n = n dt) node j adopts, with adoption
/// time t_{n+1}, when tape(n, j) <= (p_j + sum_i q_{i,j} X_i(t_n)) dt.
/// Updates are synchronous.
Trajectory run_discrete(const Network& network, double dt, double horizon, const rng::CouplingTape& tape);

/// Monte Carlo curve from the discrete scheme; trial i reads the tape seeded
/// with trial_seed(base_seed, i).
AdoptionCurve run_discrete_curve(const Network& network, const SimConfig& config);

struct Violation {
    std::size_t trial = 0;
    std::size_t step = 0;
    std::size_t node = 0;
};

struct CouplingReport {
    std::size_t trials = 0;
    std::size_t steps = 0;
    double dt = 0.0;
    Dominance relation = Dominance::incomparable;
    /// Pathwise order is only asserted when A is weakly below B.
    bool applicable = false;
    std::size_t violation_count = 0;
    /// First violations found (at most kMaxListedViolations).
    std::vector<Violation> violations;
    /// Trials where the two paths coincide node by node.
    std::size_t identical_trials = 0;

    bool passed() const { return !applicable || violation_count == 0; }
};

inline constexpr std::size_t kMaxListedViolations = 100;

/// Runs A and B on one shared tape per trial and checks X_j^A(t_n) <= X_j^B(t_n)
/// at every step when dominates(A, B) allows it.
CouplingReport run_coupled(const Network& a, const Network& b, const SimConfig& config);

nlohmann::json to_json(const CouplingReport& report);

}  // namespace basslab::sim
