#pragma once

#include "basslab/network.hpp"
#include "basslab/oracle.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

/// Auxiliary quantities whose positivity underlies the line/circle orderings.
/// Indices k and M are 1-based node counts as in the formulas.
namespace basslab::analytic {

/// Non-adoption probabilities on a line, from whichever source built them.
struct LineSurvival {
    std::size_t size = 0;
    /// node[j][g] = Prob(X_{j+1} = 0)
    std::vector<std::vector<double>> node;
    /// pair[j][g] = Prob(X_{j+1} = 0, X_{j+2} = 0), j = 0..M-2
    std::vector<std::vector<double>> pair;
};

LineSurvival line_survival_oracle(std::span<const double> grid, double p, double q, std::size_t size, Sidedness sided,
                                  const oracle::Options& options = {});

/// alpha(t,k) = S_1(q,k) - S_1(q,k+1); k >= 1.
std::vector<double> alpha(std::span<const double> grid, double p, double q, std::size_t k);
/// beta(t,k,M) = [S_k - S_{k+1}](q/2,M) - [S_k - S_{k+1}](q,M); M >= 2, 1 <= k <= M-1.
std::vector<double> beta(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size);
/// gamma(t,k,M) = S_k - 2 S_{k+1} + S_{k+2} at (q,M); M >= 3, 1 <= k <= M-2.
std::vector<double> gamma(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size);
/// nu(t,k,M) = [Prob(X_k^one = 0) + Prob(X_{M-k+1}^one = 0)] - [Prob(X_k^two = 0) + Prob(X_{M-k+1}^two = 0)].
std::vector<double> nu(const LineSurvival& one_sided, const LineSurvival& two_sided, std::size_t k);
/// nu with the one-sided probabilities taken from S_1(q, j).
std::vector<double> nu(std::span<const double> grid, double p, double q, std::size_t k,
                       const LineSurvival& two_sided);
/// psi(t,k,M) = S_2(q,k) + S_2(q,M-k+1) - Prob(X_{k-1}=X_k=0) - Prob(X_k=X_{k+1}=0) on the
/// two-sided line; k >= 2, M >= 2k-1.
std::vector<double> psi(std::span<const double> grid, double p, double q, std::size_t k,
                        const LineSurvival& two_sided);

/// Every quantity that is defined for (k, M); undefined ones stay empty.
struct DiagnosticSeries {
    std::vector<double> time;
    std::optional<std::vector<double>> alpha, beta, gamma, nu, psi;
};

/// Uses the master equation for the two-sided line probabilities, so M is
/// limited by the oracle cap.
DiagnosticSeries diagnostics(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size,
                             const oracle::Options& options = {});

}  // namespace basslab::analytic
