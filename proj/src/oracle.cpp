#include "basslab/oracle.hpp"

#include <ostream>
#include <string>

namespace basslab::oracle {

double StateDistribution::total() const
{
    double sum = 0.0;
    for (double v : probabilities) sum += v;
    return sum;
}

double StateDistribution::survival(std::uint64_t omega_mask) const
{
    double sum = 0.0;
    for (std::uint64_t s = 0; s < probabilities.size(); ++s) {
        if ((s & omega_mask) == 0) sum += probabilities[s];
    }
    return sum;
}

double StateDistribution::adoption_probability(std::size_t node) const
{
    if (node >= node_count) throw std::out_of_range("node index out of range");
    return 1.0 - survival(std::uint64_t{1} << node);
}

namespace {

struct Influence {
    std::uint64_t source_bit;
    double weight;
};

/// Generator of the adoption chain, applied matrix-free.
class Generator {
public:
    explicit Generator(const Network& network) : n_(network.size()), p_(network.external_rates().begin(), network.external_rates().end())
    {
        offsets_.push_back(0);
        for (std::size_t j = 0; j < n_; ++j) {
            for (const auto& nb : network.in_neighbors(j)) influences_.push_back({std::uint64_t{1} << nb.node, nb.weight});
            offsets_.push_back(influences_.size());
        }
    }

    void apply(const ode::State& prob, ode::State& dprob) const
    {
        std::fill(dprob.begin(), dprob.end(), 0.0);
        const std::uint64_t states = prob.size();
        for (std::uint64_t s = 0; s < states; ++s) {
            const double ps = prob[s];
            if (ps == 0.0) continue;
            double out = 0.0;
            for (std::size_t j = 0; j < n_; ++j) {
                const std::uint64_t bit = std::uint64_t{1} << j;
                if (s & bit) continue;
                double rate = p_[j];
                for (auto k = offsets_[j]; k < offsets_[j + 1]; ++k) {
                    if (s & influences_[k].source_bit) rate += influences_[k].weight;
                }
                const double flow = rate * ps;
                out += flow;
                dprob[s | bit] += flow;
            }
            dprob[s] -= out;
        }
    }

private:
    std::size_t n_;
    std::vector<double> p_;
    std::vector<std::size_t> offsets_;
    std::vector<Influence> influences_;
};

void check_size(const Network& network, const Options& options)
{
    const auto cap = std::min(options.max_nodes, kHardNodeCap);
    if (network.size() > cap) {
        throw CapExceeded("master equation needs M <= " + std::to_string(cap) + ", got M = " +
                          std::to_string(network.size()));
    }
}

}  // namespace

void solve_master(const Network& network, std::span<const double> grid, const DistributionObserver& observe,
                  const Options& options)
{
    check_size(network, options);
    ode::check_grid(grid);
    const std::size_t states = std::size_t{1} << network.size();
    Generator generator(network);

    ode::State initial(states, 0.0);
    initial[0] = 1.0;
    StateDistribution snapshot;
    snapshot.node_count = network.size();
    ode::integrate_on_grid(
        [&generator](const ode::State& x, ode::State& dxdt, double) { generator.apply(x, dxdt); }, std::move(initial),
        grid, options.tol, [&](std::size_t i, const ode::State& x) {
            snapshot.time = grid[i];
            snapshot.probabilities = x;
            observe(snapshot);
        });
}

std::vector<StateDistribution> solve_master(const Network& network, std::span<const double> grid,
                                            const Options& options)
{
    std::vector<StateDistribution> out;
    out.reserve(grid.size());
    solve_master(network, grid, [&out](const StateDistribution& d) { out.push_back(d); }, options);
    return out;
}

MarginalReport marginal_report(const StateDistribution& dist, std::span<const NodeSet> sets)
{
    MarginalReport report;
    report.time = dist.time;
    report.adoption.assign(dist.node_count, 0.0);
    // one pass: Prob(X_j = 1) = sum of states containing j
    for (std::uint64_t s = 0; s < dist.probabilities.size(); ++s) {
        const double ps = dist.probabilities[s];
        for (std::size_t j = 0; j < dist.node_count; ++j) {
            if (s & (std::uint64_t{1} << j)) report.adoption[j] += ps;
        }
    }
    double sum = 0.0;
    for (double a : report.adoption) sum += a;
    report.f = sum / static_cast<double>(dist.node_count);
    for (const auto& omega : sets) report.set_survival.push_back(dist.survival(omega));
    return report;
}

std::vector<std::vector<double>> survival(const Network& network, std::span<const NodeSet> sets,
                                          std::span<const double> grid, const Options& options)
{
    std::vector<std::uint64_t> masks;
    for (const auto& omega : sets) {
        if (omega.universe() != network.size()) throw std::invalid_argument("node set universe does not match network");
        masks.push_back(omega.bitmask());
    }
    std::vector<std::vector<double>> out(sets.size());
    solve_master(
        network, grid,
        [&](const StateDistribution& d) {
            for (std::size_t s = 0; s < masks.size(); ++s) out[s].push_back(d.survival(masks[s]));
        },
        options);
    return out;
}

std::vector<double> survival(const Network& network, const NodeSet& omega, std::span<const double> grid,
                             const Options& options)
{
    return std::move(survival(network, std::span<const NodeSet>(&omega, 1), grid, options).front());
}

AdoptionCurve exact_f(const Network& network, std::span<const double> grid, const Options& options)
{
    std::vector<std::vector<double>> per_node(network.size());
    solve_master(
        network, grid,
        [&](const StateDistribution& d) {
            auto report = marginal_report(d);
            for (std::size_t j = 0; j < per_node.size(); ++j) per_node[j].push_back(report.adoption[j]);
        },
        options);
    return curve_from_nodes(grid, std::move(per_node), CurveSource::oracle);
}

void write_distribution(std::ostream& out, const StateDistribution& dist)
{
    out << "bitmask,probability\n";
    for (std::uint64_t s = 0; s < dist.probabilities.size(); ++s) {
        if (dist.probabilities[s] != 0.0) out << s << ',' << format_number(dist.probabilities[s]) << '\n';
    }
}

}  // namespace basslab::oracle
