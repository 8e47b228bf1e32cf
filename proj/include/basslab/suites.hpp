#pragma once

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

/// Named verification batteries used by `basslab verify`.
namespace basslab::suites {

struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    /// The measured quantity (a gap, a minimum, a violation count, ...).
    double value = 0.0;
    /// Bound the value was compared against.
    double bound = 0.0;
    std::string detail;
};

struct Options {
    double p = 0.01;
    double q = 0.1;
    std::size_t trials = 4000;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
};

/// circle, line, theorem, boundary, appendix, shift, dominance, indifference,
/// montecarlo, conjecture.
std::vector<std::string> suite_names();
/// Runs one suite, or every suite for "all". Throws std::invalid_argument on unknown names.
std::vector<Check> run(const std::string& suite, const Options& options = {});

nlohmann::json to_json(const std::vector<Check>& checks);
bool all_passed(const std::vector<Check>& checks);

}  // namespace basslab::suites
