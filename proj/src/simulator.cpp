#include "basslab/simulator.hpp"

#include "basslab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace basslab::sim {

std::string to_string(Scheme scheme)
{
    return scheme == Scheme::discrete ? "discrete" : "event_driven";
}

Scheme parse_scheme(const std::string& text)
{
    if (text == "event_driven" || text == "event") return Scheme::event_driven;
    if (text == "discrete") return Scheme::discrete;
    throw std::invalid_argument("scheme must be 'event_driven' or 'discrete', got '" + text + "'");
}

void validate(const SimConfig& config)
{
    if (!(config.horizon >= 0.0) || !std::isfinite(config.horizon)) {
        throw std::invalid_argument("horizon must be finite and >= 0");
    }
    if (config.trials == 0) throw std::invalid_argument("trials must be >= 1");
    if (config.grid_points == 0) throw std::invalid_argument("grid needs at least one point");
    if (config.dt < 0.0 || !std::isfinite(config.dt)) throw std::invalid_argument("dt must be > 0 (or 0 for default)");
}

std::size_t Trajectory::adopters_by(double t) const
{
    return static_cast<std::size_t>(
        std::count_if(adoption_time.begin(), adoption_time.end(), [t](double a) { return a <= t; }));
}

double Trajectory::first_adoption(const NodeSet& omega) const
{
    double first = kNever;
    for (auto j : omega.nodes()) first = std::min(first, adoption_time.at(j));
    return first;
}

namespace {

/// Sums of n(t_g) and n(t_g)^2 over trials; integers, so merging is exact.
struct Tally {
    std::vector<std::int64_t> sum;
    std::vector<std::int64_t> sum_sq;

    explicit Tally(std::size_t points) : sum(points, 0), sum_sq(points, 0) {}

    void add(const Trajectory& path, const std::vector<double>& grid, std::vector<double>& scratch)
    {
        scratch = path.adoption_time;
        std::sort(scratch.begin(), scratch.end());
        std::size_t n = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            // discrete-step times like 3 * 0.2 may sit one ulp above the grid time
            const double edge = grid[g] * (1.0 + 1e-12);
            while (n < scratch.size() && scratch[n] <= edge) ++n;
            const auto v = static_cast<std::int64_t>(n);
            sum[g] += v;
            sum_sq[g] += v * v;
        }
    }

    void merge(const Tally& other)
    {
        for (std::size_t g = 0; g < sum.size(); ++g) {
            sum[g] += other.sum[g];
            sum_sq[g] += other.sum_sq[g];
        }
    }
};

AdoptionCurve to_curve(const Tally& tally, std::vector<double> grid, std::size_t nodes, std::size_t trials)
{
    AdoptionCurve curve;
    curve.source = CurveSource::monte_carlo;
    curve.time = std::move(grid);
    curve.f.resize(curve.time.size());
    curve.std_error.resize(curve.time.size());
    const double n = static_cast<double>(trials);
    const double m = static_cast<double>(nodes);
    for (std::size_t g = 0; g < curve.time.size(); ++g) {
        const double s = static_cast<double>(tally.sum[g]);
        const double ss = static_cast<double>(tally.sum_sq[g]);
        const double mean = s / n;
        curve.f[g] = mean / m;
        if (trials > 1) {
            const double var = std::max(0.0, (ss - s * mean) / (n - 1.0));
            curve.std_error[g] = std::sqrt(var / n) / m;
        } else {
            curve.std_error[g] = 0.0;
        }
    }
    return curve;
}

template <class Sampler>
AdoptionCurve monte_carlo(const Network& network, const SimConfig& config, Sampler&& sample)
{
    validate(config);
    auto grid = uniform_grid(config.horizon, config.grid_points);
    const std::size_t workers = worker_count(config.threads);
    std::vector<Tally> tallies(std::min(workers, config.trials), Tally(grid.size()));
    parallel_chunks(config.trials, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
        std::vector<double> scratch;
        for (std::size_t trial = begin; trial < end; ++trial) {
            tallies[w].add(sample(rng::trial_seed(config.base_seed, trial)), grid, scratch);
        }
    });
    Tally total(grid.size());
    for (const auto& t : tallies) total.merge(t);
    return to_curve(total, std::move(grid), network.size(), config.trials);
}

/// Synchronous discrete-time state for one network.
class DiscreteState {
public:
    explicit DiscreteState(const Network& network)
        : network_(network), hazard_(network.external_rates().begin(), network.external_rates().end()),
          path_{std::vector<double>(network.size(), kNever)}
    {
    }

    /// Decides adoptions for step n from the state at t_n; applies them afterwards.
    void step(std::uint64_t n, double dt, const rng::CouplingTape& tape)
    {
        fresh_.clear();
        for (std::size_t j = 0; j < hazard_.size(); ++j) {
            if (path_.adoption_time[j] != kNever) continue;
            if (tape(n, j) <= hazard_[j] * dt) fresh_.push_back(j);
        }
        const double t_next = static_cast<double>(n + 1) * dt;
        for (auto j : fresh_) {
            path_.adoption_time[j] = t_next;
            ++adopted_;
            for (const auto& nb : network_.out_neighbors(j)) hazard_[nb.node] += nb.weight;
        }
    }

    bool adopted(std::size_t j) const { return path_.adoption_time[j] != kNever; }
    bool saturated() const { return adopted_ == hazard_.size(); }
    Trajectory& path() { return path_; }

private:
    const Network& network_;
    std::vector<double> hazard_;
    Trajectory path_;
    std::vector<std::size_t> fresh_;
    std::size_t adopted_ = 0;
};

std::uint64_t step_count(double horizon, double dt)
{
    return static_cast<std::uint64_t>(std::floor(horizon / dt + 1e-9));
}

double resolve_dt(const Network& network, const SimConfig& config)
{
    const double dt = config.dt > 0.0 ? config.dt : default_dt(network);
    check_step(network, dt);
    return dt;
}

}  // namespace

Trajectory sample_event_driven(const Network& network, double horizon, std::mt19937_64& engine)
{
    const std::size_t m = network.size();
    std::vector<double> hazard(network.external_rates().begin(), network.external_rates().end());
    Trajectory path{std::vector<double>(m, kNever)};
    std::vector<char> adopted(m, 0);
    double t = 0.0;
    for (std::size_t events = 0; events < m; ++events) {
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (!adopted[j]) total += hazard[j];
        }
        if (!(total > 0.0)) break;
        t += -std::log(rng::to_unit(engine())) / total;
        if (t > horizon) break;
        const double target = (1.0 - rng::to_unit(engine())) * total;  // in [0, total)
        double acc = 0.0;
        std::size_t chosen = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (adopted[j] || hazard[j] <= 0.0) continue;
            chosen = j;
            acc += hazard[j];
            if (target < acc) break;
        }
        adopted[chosen] = 1;
        path.adoption_time[chosen] = t;
        for (const auto& nb : network.out_neighbors(chosen)) hazard[nb.node] += nb.weight;
    }
    return path;
}

AdoptionCurve run_event_driven(const Network& network, const SimConfig& config)
{
    return monte_carlo(network, config, [&](std::uint64_t seed) {
        std::mt19937_64 engine(seed);
        return sample_event_driven(network, config.horizon, engine);
    });
}

StepCheck check_step(const Network& network, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be finite and > 0");
    StepCheck check;
    check.dt = dt;
    for (std::size_t j = 0; j < network.size(); ++j) {
        check.max_step_probability = std::max(check.max_step_probability, network.max_hazard(j) * dt);
    }
    if (check.max_step_probability > 1.0) {
        throw StepTooLarge("dt = " + std::to_string(dt) + " gives per-step adoption probability " +
                           std::to_string(check.max_step_probability) + " > 1");
    }
    check.coarse = check.max_step_probability > 0.1;
    return check;
}

double default_dt(const Network& network)
{
    double top = 0.0;
    for (std::size_t j = 0; j < network.size(); ++j) top = std::max(top, network.max_hazard(j));
    return top > 0.0 ? 0.01 / top : 1.0;
}

Trajectory run_discrete(const Network& network, double dt, double horizon, const rng::CouplingTape& tape)
{
    check_step(network, dt);
    DiscreteState state(network);
    const auto steps = step_count(horizon, dt);
    for (std::uint64_t n = 0; n < steps && !state.saturated(); ++n) state.step(n, dt, tape);
    return std::move(state.path());
}

AdoptionCurve run_discrete_curve(const Network& network, const SimConfig& config)
{
    validate(config);
    const double dt = resolve_dt(network, config);
    return monte_carlo(network, config, [&](std::uint64_t seed) {
        return run_discrete(network, dt, config.horizon, rng::CouplingTape(seed));
    });
}

CouplingReport run_coupled(const Network& a, const Network& b, const SimConfig& config)
{
    validate(config);
    if (a.size() != b.size()) throw std::invalid_argument("coupled networks must have the same size");
    CouplingReport report;
    report.trials = config.trials;
    report.relation = dominates(a, b);
    report.applicable = weakly_below(report.relation);
    report.dt = config.dt > 0.0 ? config.dt : std::min(default_dt(a), default_dt(b));
    check_step(a, report.dt);
    check_step(b, report.dt);
    report.steps = step_count(config.horizon, report.dt);

    const std::size_t workers = worker_count(config.threads);
    struct Partial {
        std::size_t count = 0;
        std::size_t identical = 0;
        std::vector<Violation> listed;
    };
    std::vector<Partial> partial(std::min(workers, config.trials));
    parallel_chunks(config.trials, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
        auto& out = partial[w];
        for (std::size_t trial = begin; trial < end; ++trial) {
            const rng::CouplingTape tape(rng::trial_seed(config.base_seed, trial));
            DiscreteState sa(a), sb(b);
            for (std::uint64_t n = 0; n < report.steps; ++n) {
                if (sa.saturated() && sb.saturated()) break;
                sa.step(n, report.dt, tape);
                sb.step(n, report.dt, tape);
                if (!report.applicable) continue;
                for (std::size_t j = 0; j < a.size(); ++j) {
                    if (sa.adopted(j) && !sb.adopted(j)) {
                        ++out.count;
                        if (out.listed.size() < kMaxListedViolations) out.listed.push_back({trial, n + 1, j});
                    }
                }
            }
            if (sa.path().adoption_time == sb.path().adoption_time) ++out.identical;
        }
    });
    for (const auto& part : partial) {
        report.violation_count += part.count;
        report.identical_trials += part.identical;
        for (const auto& v : part.listed) {
            if (report.violations.size() < kMaxListedViolations) report.violations.push_back(v);
        }
    }
    return report;
}

nlohmann::json to_json(const CouplingReport& report)
{
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"trial", v.trial}, {"step", v.step}, {"node", v.node + 1}});
    }
    return {
        {"trials", report.trials},
        {"steps", report.steps},
        {"dt", report.dt},
        {"relation", to_string(report.relation)},
        {"status", report.applicable ? (report.violation_count == 0 ? "pass" : "fail") : "not applicable"},
        {"violation_count", report.violation_count},
        {"violations", violations},
        {"identical_trials", report.identical_trials},
    };
}

}  // namespace basslab::sim
