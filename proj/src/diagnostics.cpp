#include "basslab/diagnostics.hpp"

#include "basslab/analytic.hpp"

#include <stdexcept>
#include <string>

namespace basslab::analytic {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) throw std::invalid_argument(what);
}

const ode::Tolerance kTight{1e-14, 1e-12};

std::vector<double> block(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size)
{
    return survival_circle_ode(grid, p, q, size, kTight)[k - 1].values;
}

}  // namespace

LineSurvival line_survival_oracle(std::span<const double> grid, double p, double q, std::size_t size, Sidedness sided,
                                  const oracle::Options& options)
{
    const auto net = build_line(size, p, q, sided);
    std::vector<NodeSet> sets;
    for (std::size_t j = 0; j < size; ++j) sets.emplace_back(size, std::vector<std::size_t>{j});
    for (std::size_t j = 0; j + 1 < size; ++j) sets.emplace_back(size, std::vector<std::size_t>{j, j + 1});
    auto series = oracle::survival(net, sets, grid, options);
    LineSurvival out;
    out.size = size;
    for (std::size_t j = 0; j < size; ++j) out.node.push_back(std::move(series[j]));
    for (std::size_t j = size; j < series.size(); ++j) out.pair.push_back(std::move(series[j]));
    return out;
}

std::vector<double> alpha(std::span<const double> grid, double p, double q, std::size_t k)
{
    require(k >= 1, "alpha needs k >= 1");
    const auto a = block(grid, p, q, 1, k);
    const auto b = block(grid, p, q, 1, k + 1);
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) out[g] = a[g] - b[g];
    return out;
}

std::vector<double> beta(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size)
{
    require(size >= 2 && k >= 1 && k + 1 <= size, "beta needs M >= 2 and 1 <= k <= M-1");
    const auto half = survival_circle_ode(grid, p, q / 2.0, size, kTight);
    const auto full = survival_circle_ode(grid, p, q, size, kTight);
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out[g] = (half[k - 1].values[g] - half[k].values[g]) - (full[k - 1].values[g] - full[k].values[g]);
    }
    return out;
}

std::vector<double> gamma(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size)
{
    require(size >= 3 && k >= 1 && k + 2 <= size, "gamma needs M >= 3 and 1 <= k <= M-2");
    const auto s = survival_circle_ode(grid, p, q, size, kTight);
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        out[g] = s[k - 1].values[g] - 2.0 * s[k].values[g] + s[k + 1].values[g];
    }
    return out;
}

std::vector<double> nu(const LineSurvival& one_sided, const LineSurvival& two_sided, std::size_t k)
{
    const std::size_t m = two_sided.size;
    require(one_sided.size == m, "nu needs lines of equal size");
    require(k >= 1 && k <= m, "nu needs 1 <= k <= M");
    const std::size_t mirror = m - k;  // 0-based index of node M-k+1
    std::vector<double> out(two_sided.node[k - 1].size());
    for (std::size_t g = 0; g < out.size(); ++g) {
        out[g] = (one_sided.node[k - 1][g] + one_sided.node[mirror][g]) -
                 (two_sided.node[k - 1][g] + two_sided.node[mirror][g]);
    }
    return out;
}

std::vector<double> nu(std::span<const double> grid, double p, double q, std::size_t k,
                       const LineSurvival& two_sided)
{
    const std::size_t m = two_sided.size;
    require(k >= 1 && k <= m, "nu needs 1 <= k <= M");
    LineSurvival one;
    one.size = m;
    one.node.assign(m, {});
    one.node[k - 1] = block(grid, p, q, 1, k);
    one.node[m - k] = block(grid, p, q, 1, m - k + 1);
    return nu(one, two_sided, k);
}

std::vector<double> psi(std::span<const double> grid, double p, double q, std::size_t k,
                        const LineSurvival& two_sided)
{
    const std::size_t m = two_sided.size;
    require(k >= 2 && m + 1 >= 2 * k, "psi needs k >= 2 and M >= 2k-1");
    const auto a = block(grid, p, q, 2, k);
    const auto b = block(grid, p, q, 2, m - k + 1);
    const auto& left = two_sided.pair[k - 2];   // nodes k-1, k
    const auto& right = two_sided.pair[k - 1];  // nodes k, k+1
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) out[g] = a[g] + b[g] - left[g] - right[g];
    return out;
}

DiagnosticSeries diagnostics(std::span<const double> grid, double p, double q, std::size_t k, std::size_t size,
                             const oracle::Options& options)
{
    require(k >= 1 && size >= 1, "diagnostics need k >= 1 and M >= 1");
    DiagnosticSeries out;
    out.time.assign(grid.begin(), grid.end());
    out.alpha = alpha(grid, p, q, k);
    if (size >= 2 && k + 1 <= size) out.beta = beta(grid, p, q, k, size);
    if (size >= 3 && k + 2 <= size) out.gamma = gamma(grid, p, q, k, size);
    if (k <= size) {
        const auto two = line_survival_oracle(grid, p, q, size, Sidedness::two, options);
        out.nu = nu(grid, p, q, k, two);
        if (k >= 2 && size + 1 >= 2 * k) out.psi = psi(grid, p, q, k, two);
    }
    return out;
}

}  // namespace basslab::analytic
