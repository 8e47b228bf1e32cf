#pragma once

#include "basslab/curve.hpp"
#include "basslab/network.hpp"
#include "basslab/ode.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

/// Exact adoption probabilities from the Kolmogorov forward equations of the
/// continuous-time chain on adopter subsets. From adopter set A, a node j
/// outside A joins at rate p_j + sum_{i in A} q_{i,j}.
namespace basslab::oracle {

inline constexpr std::size_t kHardNodeCap = 20;
inline constexpr std::size_t kDefaultNodeCap = 16;

struct Options {
    /// Refuse networks larger than this (never more than kHardNodeCap).
    std::size_t max_nodes = kDefaultNodeCap;
    ode::Tolerance tol{1e-13, 1e-12};
};

class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Probability of every adopter subset (bit j set = node j adopted) at one time.
struct StateDistribution {
    std::size_t node_count = 0;
    double time = 0.0;
    std::vector<double> probabilities;

    double total() const;
    /// S_Omega: probability that no node of the mask has adopted.
    double survival(std::uint64_t omega_mask) const;
    double survival(const NodeSet& omega) const { return survival(omega.bitmask()); }
    /// Prob(X_j = 1).
    double adoption_probability(std::size_t node) const;
};

using DistributionObserver = std::function<void(const StateDistribution&)>;

/// Streams the distribution at each grid time to `observe`; the initial state is
/// the empty adopter set with probability 1 at t = 0.
void solve_master(const Network& network, std::span<const double> grid, const DistributionObserver& observe,
                  const Options& options = {});
std::vector<StateDistribution> solve_master(const Network& network, std::span<const double> grid,
                                            const Options& options = {});

struct MarginalReport {
    double time = 0.0;
    std::vector<double> adoption;       ///< Prob(X_j = 1) per node
    std::vector<double> set_survival;   ///< S_Omega per requested set
    double f = 0.0;
};

MarginalReport marginal_report(const StateDistribution& dist, std::span<const NodeSet> sets = {});

/// S_Omega(t) on the grid.
std::vector<double> survival(const Network& network, const NodeSet& omega, std::span<const double> grid,
                             const Options& options = {});
/// Several S_Omega series from one solve; result[s][g].
std::vector<std::vector<double>> survival(const Network& network, std::span<const NodeSet> sets,
                                          std::span<const double> grid, const Options& options = {});

/// f(t) with per-node adoption probabilities.
AdoptionCurve exact_f(const Network& network, std::span<const double> grid, const Options& options = {});

/// Diagnostic dump: one `bitmask,probability` line per state with non-zero mass.
void write_distribution(std::ostream& out, const StateDistribution& dist);

}  // namespace basslab::oracle
