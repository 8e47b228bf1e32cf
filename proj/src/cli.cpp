#include "basslab/cli.hpp"

#include "basslab/analytic.hpp"
#include "basslab/curve.hpp"
#include "basslab/network_json.hpp"
#include "basslab/oracle.hpp"
#include "basslab/simulator.hpp"
#include "basslab/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace basslab::cli {

nlohmann::json to_json(const RunSpec& s)
{
    return {{"topology", s.topology},   {"sided", s.sided},     {"M", s.nodes},
            {"D", s.dim},               {"side", s.side},       {"ray", s.ray},
            {"periodic", s.periodic},   {"p", s.p},             {"q", s.q},
            {"scheme", s.scheme},       {"trials", s.trials},   {"seed", s.seed},
            {"dt", s.dt},               {"t_max", s.t_max},     {"grid", s.grid},
            {"out", s.out},             {"suite", s.suite},     {"preset", s.preset},
            {"threads", s.threads},     {"max_nodes", s.max_nodes}, {"distribution", s.distribution}};
}

RunSpec spec_from_json(const nlohmann::json& doc, RunSpec s)
{
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    const auto known = to_json(s);
    for (const auto& [key, value] : doc.items()) {
        if (key == "command") continue;
        if (!known.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");
    }
    auto get = [&doc](const char* key, auto& field) {
        if (!doc.contains(key)) return;
        try {
            doc.at(key).get_to(field);
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
        }
    };
    get("topology", s.topology);
    get("sided", s.sided);
    get("M", s.nodes);
    get("D", s.dim);
    get("side", s.side);
    get("ray", s.ray);
    get("periodic", s.periodic);
    get("p", s.p);
    get("q", s.q);
    get("scheme", s.scheme);
    get("trials", s.trials);
    get("seed", s.seed);
    get("dt", s.dt);
    get("t_max", s.t_max);
    get("grid", s.grid);
    get("out", s.out);
    get("suite", s.suite);
    get("preset", s.preset);
    get("threads", s.threads);
    get("max_nodes", s.max_nodes);
    get("distribution", s.distribution);
    return s;
}

void apply_config(RunSpec& spec, const nlohmann::json& config, const std::set<std::string>& explicit_keys,
                  bool flags_win)
{
    const auto current = to_json(spec);
    nlohmann::json merged = current;
    for (const auto& [key, value] : config.items()) {
        if (key == "command") {
            if (!spec.command.empty() && value != spec.command) {
                throw ConfigConflict("config is for command '" + value.dump() + "', not '" + spec.command + "'");
            }
            continue;
        }
        if (explicit_keys.count(key)) {
            if (current.contains(key) && current[key] != value && !flags_win) {
                throw ConfigConflict("--" + key + " conflicts with the config file (" + current[key].dump() + " vs " +
                                     value.dump() + "); pass --override to let flags win");
            }
            continue;
        }
        merged[key] = value;
    }
    const auto command = spec.command;
    spec = spec_from_json(merged, spec);
    spec.command = command;
}

Network build_network(const RunSpec& s)
{
    const auto sided = parse_sidedness(s.sided);
    if (s.topology == "circle") return build_circle(s.nodes, s.p, s.q, sided);
    if (s.topology == "line") return build_line(s.nodes, s.p, s.q, sided);
    if (s.topology == "grid") return build_grid(s.dim, s.side, s.p, s.q, sided, s.periodic);
    if (s.topology == "hybrid") {
        if (s.ray == 0 || s.ray >= s.nodes) throw std::invalid_argument("hybrid needs 1 <= --ray < M");
        return build_hybrid_circle_ray(s.nodes - s.ray, s.ray, s.p, s.q);
    }
    throw std::invalid_argument("unknown topology '" + s.topology + "'");
}

std::vector<double> time_grid(const RunSpec& s)
{
    const double t_max = s.t_max > 0.0 ? s.t_max : analytic::default_horizon(s.p, s.q);
    return uniform_grid(t_max, s.grid);
}

namespace {

/// Writes to --out when given, otherwise to the command's stdout.
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write)
{
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    write(file);
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_analytic(const RunSpec& s, std::ostream& out)
{
    const auto grid = time_grid(s);
    const auto sided = parse_sidedness(s.sided);
    AdoptionCurve curve;
    if (s.topology == "circle") {
        curve = analytic::f_circle(grid, s.p, s.q, s.nodes);
    } else if (s.topology == "line") {
        curve = sided == Sidedness::one ? analytic::f_line_one_sided(grid, s.p, s.q, s.nodes)
                                        : analytic::f_line_two_sided(grid, s.p, s.q, s.nodes);
    } else if (s.topology == "hybrid") {
        if (s.ray == 0 || s.ray >= s.nodes) throw std::invalid_argument("hybrid needs 1 <= --ray < M");
        curve = analytic::f_hybrid(grid, s.p, s.q, s.nodes - s.ray, s.ray);
    } else {
        throw std::invalid_argument("no closed-form curve for topology '" + s.topology + "'; use simulate or oracle");
    }
    emit(s.out, out, [&](std::ostream& o) { write_csv(o, curve); });
    return 0;
}

AdoptionCurve simulate_one(const Network& net, const RunSpec& s)
{
    sim::SimConfig config;
    config.horizon = s.t_max > 0.0 ? s.t_max : analytic::default_horizon(s.p, s.q);
    config.trials = s.trials;
    config.base_seed = s.seed;
    config.scheme = sim::parse_scheme(s.scheme);
    config.dt = s.dt;
    config.grid_points = s.grid;
    config.threads = s.threads;
    return config.scheme == sim::Scheme::discrete ? sim::run_discrete_curve(net, config)
                                                  : sim::run_event_driven(net, config);
}

int cmd_simulate(const RunSpec& s, std::ostream& out, std::ostream& err)
{
    if (s.preset.empty()) {
        const auto net = build_network(s);
        if (sim::parse_scheme(s.scheme) == sim::Scheme::discrete) {
            const auto check = sim::check_step(net, s.dt > 0.0 ? s.dt : sim::default_dt(net));
            if (check.coarse) {
                err << "warning: per-step adoption probability " << check.max_step_probability
                    << " exceeds 0.1; discretisation bias may be visible\n";
            }
        }
        const auto curve = simulate_one(net, s);
        emit(s.out, out, [&](std::ostream& o) { write_csv(o, curve, false); });
        return 0;
    }

    std::vector<std::pair<std::string, RunSpec>> runs;
    auto add = [&](const std::string& topology, const std::string& sided, bool periodic) {
        RunSpec r = s;
        r.topology = topology;
        r.sided = sided;
        r.periodic = periodic;
        std::string name = s.preset + "_" + topology + (topology == "grid" ? (periodic ? "_periodic" : "_box") : "");
        runs.emplace_back(name + "_" + sided, r);
    };
    if (s.preset == "fig5") {
        for (const char* topo : {"line", "circle"})
            for (const char* sided : {"one", "two"}) {
                add(topo, sided, false);
                runs.back().second.nodes = 6;
            }
    } else if (s.preset == "fig11" || s.preset == "fig12") {
        for (bool periodic : {true, false})
            for (const char* sided : {"one", "two"}) {
                add("grid", sided, periodic);
                runs.back().second.dim = s.preset == "fig11" ? 2 : 3;
                runs.back().second.side = 6;
            }
    } else {
        throw std::invalid_argument("unknown simulate preset '" + s.preset + "' (fig5, fig11, fig12)");
    }
    if (s.out.empty()) throw std::invalid_argument("--preset needs --out <directory>");
    std::filesystem::create_directories(s.out);
    for (std::size_t i = 0; i < runs.size(); ++i) {
        auto& [name, r] = runs[i];
        r.seed = s.seed + i;  // independent streams per curve
        const auto curve = simulate_one(build_network(r), r);
        const auto path = (std::filesystem::path(s.out) / (name + ".csv")).string();
        emit(path, out, [&](std::ostream& o) { write_csv(o, curve, false); });
        out << path << '\n';
    }
    return 0;
}

int cmd_oracle(const RunSpec& s, std::ostream& out)
{
    const auto net = build_network(s);
    const auto grid = time_grid(s);
    oracle::Options options;
    options.max_nodes = s.max_nodes;
    const auto curve = oracle::exact_f(net, grid, options);
    emit(s.out, out, [&](std::ostream& o) { write_csv(o, curve); });
    if (!s.distribution.empty()) {
        const double last[] = {grid.back()};
        const auto dist = oracle::solve_master(net, last, options).front();
        emit(s.distribution, out, [&](std::ostream& o) { oracle::write_distribution(o, dist); });
    }
    return 0;
}

int cmd_verify(const RunSpec& s, std::ostream& out)
{
    suites::Options options;
    options.p = s.p;
    options.q = s.q;
    options.trials = s.trials;
    options.seed = s.seed;
    options.threads = s.threads;
    const auto checks = suites::run(s.suite, options);
    auto report = suites::to_json(checks);
    report["suite"] = s.suite;
    emit(s.out, out, [&](std::ostream& o) { o << report.dump(2) << '\n'; });
    return suites::all_passed(checks) ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunSpec spec;
    CLI::App app{"Bass diffusion on networks: analytic curves, exact oracle, simulation and verification", "basslab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::map<std::string, CLI::Option*> keyed;
    keyed["topology"] = app.add_option("--topology", spec.topology, "circle | line | grid | hybrid")
                            ->check(CLI::IsMember({"circle", "line", "grid", "hybrid"}));
    keyed["sided"] = app.add_option("--sided", spec.sided, "one | two")->check(CLI::IsMember({"one", "two"}));
    keyed["M"] = app.add_option("-M,--nodes", spec.nodes, "number of nodes (circle, line, hybrid total)");
    keyed["D"] = app.add_option("-D,--dim", spec.dim, "grid dimension");
    keyed["side"] = app.add_option("--side", spec.side, "grid nodes per coordinate");
    keyed["ray"] = app.add_option("--ray", spec.ray, "ray length of a hybrid network");
    keyed["periodic"] = app.add_flag("--periodic", spec.periodic, "periodic grid (torus)");
    keyed["p"] = app.add_option("-p", spec.p, "external influence");
    keyed["q"] = app.add_option("-q", spec.q, "internal influence");
    keyed["scheme"] = app.add_option("--scheme", spec.scheme, "event_driven | discrete")
                          ->check(CLI::IsMember({"event_driven", "discrete"}));
    keyed["trials"] = app.add_option("--trials", spec.trials, "Monte Carlo trials");
    keyed["seed"] = app.add_option("--seed", spec.seed, "base seed");
    keyed["dt"] = app.add_option("--dt", spec.dt, "discrete step (default: 1% max step probability)");
    keyed["t_max"] = app.add_option("--t-max", spec.t_max, "horizon (default: f_1D reaches 0.99)");
    keyed["grid"] = app.add_option("--grid", spec.grid, "number of output times");
    keyed["out"] = app.add_option("--out", spec.out, "output file (directory for simulate presets)");
    keyed["suite"] = app.add_option("--suite", spec.suite, "verify suite or 'all'");
    keyed["preset"] = app.add_option("--preset", spec.preset, "simulate preset: fig5 | fig11 | fig12");
    keyed["threads"] = app.add_option("--threads", spec.threads, "worker threads (0 = auto)");
    keyed["max_nodes"] = app.add_option("--max-nodes", spec.max_nodes, "oracle size cap (at most 20)");
    keyed["distribution"] = app.add_option("--distribution", spec.distribution, "oracle: dump final distribution");
    std::string config_path;
    bool flags_win = false;
    app.add_option("--config", config_path, "JSON config with the same keys")->check(CLI::ExistingFile);
    app.add_flag("--override", flags_win, "let flags win over conflicting config values");

    auto* analytic_cmd = app.add_subcommand("analytic", "closed-form / ODE adoption curve (CSV)");
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo adoption curve with standard errors (CSV)");
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites (JSON, exit 1 on failure)");
    auto* oracle_cmd = app.add_subcommand("oracle", "exact master-equation curve for small networks (CSV)");
    for (auto* sub : {analytic_cmd, simulate_cmd, verify_cmd, oracle_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        spec.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            nlohmann::json config;
            try {
                config = nlohmann::json::parse(file);
            } catch (const nlohmann::json::parse_error& e) {
                throw std::invalid_argument(std::string("cannot parse config: ") + e.what());
            }
            std::set<std::string> explicit_keys;
            for (const auto& [key, opt] : keyed) {
                if (opt->count() > 0) explicit_keys.insert(key);
            }
            apply_config(spec, config, explicit_keys, flags_win);
        }
        if (spec.command == "analytic") return cmd_analytic(spec, out);
        if (spec.command == "simulate") return cmd_simulate(spec, out, err);
        if (spec.command == "oracle") return cmd_oracle(spec, out);
        return cmd_verify(spec, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace basslab::cli
