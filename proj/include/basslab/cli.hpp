#pragma once

#include "basslab/network.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace basslab::cli {

/// Everything a command needs. JSON config files use the keys of to_json().
struct RunSpec {
    std::string command;
    std::string topology = "circle";  ///< circle | line | grid | hybrid
    std::string sided = "one";
    std::size_t nodes = 6;  ///< M (total, including the ray for hybrids)
    std::size_t dim = 2;
    std::size_t side = 6;
    std::size_t ray = 1;
    bool periodic = false;
    double p = 0.01;
    double q = 0.1;
    std::string scheme = "event_driven";
    std::size_t trials = 4000;
    std::uint64_t seed = 1;
    double dt = 0.0;     ///< 0 = default step
    double t_max = 0.0;  ///< 0 = horizon where the infinite-line curve reaches 0.99
    std::size_t grid = 200;
    std::string out;
    std::string suite = "all";
    std::string preset;
    std::size_t threads = 0;
    std::size_t max_nodes = 16;
    std::string distribution;
};

class ConfigConflict : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

nlohmann::json to_json(const RunSpec& spec);
RunSpec spec_from_json(const nlohmann::json& doc, RunSpec base = {});

/// Merges a config document into `spec`. Keys named in `explicit_keys` came
/// from flags; a differing config value for them throws ConfigConflict unless
/// `flags_win` is set, in which case the flag value is kept.
void apply_config(RunSpec& spec, const nlohmann::json& config, const std::set<std::string>& explicit_keys,
                  bool flags_win);

Network build_network(const RunSpec& spec);
std::vector<double> time_grid(const RunSpec& spec);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace basslab::cli
