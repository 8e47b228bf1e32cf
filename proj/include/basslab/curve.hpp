#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace basslab {

enum class CurveSource { closed_form, ode, quadrature, oracle, monte_carlo };

std::string to_string(CurveSource source);

/// Expected adopter fraction f(t) = (1/M) E[n(t)] on a time grid, optionally
/// with per-node adoption probabilities and (Monte Carlo only) standard errors.
struct AdoptionCurve {
    std::vector<double> time;
    std::vector<double> f;
    /// Standard error of f; empty unless the curve is a Monte Carlo estimate.
    std::vector<double> std_error;
    /// per_node[j][g] = Prob(X_j(time[g]) = 1); empty when not computed.
    std::vector<std::vector<double>> per_node;
    CurveSource source = CurveSource::closed_form;
};

/// `points` uniform times on [0, t_max] (both ends included).
std::vector<double> uniform_grid(double t_max, std::size_t points);

/// Builds the aggregate curve from per-node adoption probabilities.
AdoptionCurve curve_from_nodes(std::span<const double> time, std::vector<std::vector<double>> per_node,
                               CurveSource source);

/// Checks f(0) = 0 (when the grid starts at 0), 0 <= f <= 1 and f
/// non-decreasing, each up to `tol`. Returns an empty string when the curve
/// is valid, otherwise a description of the first violation.
std::string check_curve(const AdoptionCurve& curve, double tol = 1e-9);

/// Formats a double with 12 significant digits, locale independent.
std::string format_number(double value);

/// CSV with header `t,f[,stderr][,node_1..node_M]` and '\n' line endings.
void write_csv(std::ostream& out, const AdoptionCurve& curve, bool include_nodes = true);
std::string to_csv(const AdoptionCurve& curve, bool include_nodes = true);

}  // namespace basslab
