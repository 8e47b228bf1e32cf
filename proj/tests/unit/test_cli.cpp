#include "basslab/cli.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace basslab;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "basslab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> row;
        std::istringstream cells(line);
        for (std::string cell; std::getline(cells, cell, ',');) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> column(const std::string& csv, std::size_t index)
{
    std::vector<std::string> col;
    const auto rows = parse_csv(csv);
    for (std::size_t r = 1; r < rows.size(); ++r) col.push_back(rows[r].at(index));
    return col;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("analytic csv starts at zero adoption")
{
    const auto r = invoke({"analytic", "--topology", "circle", "-M", "4", "--grid", "11", "--t-max", "20"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0][0] == "t");
    CHECK(rows[0][1] == "f");
    CHECK(std::stod(rows[1][1]) == 0.0);
    CHECK(std::stod(rows.back()[0]) == Catch::Approx(20.0));
}

TEST_CASE("circle sidedness does not change the analytic curve")
{
    const auto one = invoke({"analytic", "--topology", "circle", "-M", "7", "--sided", "one"});
    const auto two = invoke({"analytic", "--topology", "circle", "-M", "7", "--sided", "two"});
    REQUIRE(one.code == 0);
    REQUIRE(two.code == 0);
    CHECK(column(one.out, 1) == column(two.out, 1));
}

TEST_CASE("two-sided line adopts faster than one-sided line")
{
    const auto one = column(invoke({"analytic", "--topology", "line", "-M", "5", "--sided", "one"}).out, 1);
    const auto two = column(invoke({"analytic", "--topology", "line", "-M", "5", "--sided", "two"}).out, 1);
    const auto circle = column(invoke({"analytic", "--topology", "circle", "-M", "5"}).out, 1);
    REQUIRE(one.size() == 200);
    for (std::size_t g = 1; g < one.size(); ++g) {
        CHECK(std::stod(one[g]) < std::stod(two[g]));
        CHECK(std::stod(two[g]) < std::stod(circle[g]));
    }
}

TEST_CASE("config file fills unset flags")
{
    const auto cfg = temp_file("basslab_cfg_merge.json", R"({"topology": "line", "M": 3, "q": 0.2})");
    const auto merged = invoke({"analytic", "--config", cfg.string(), "--grid", "5", "--t-max", "4"});
    const auto flags = invoke({"analytic", "--topology", "line", "-M", "3", "-q", "0.2", "--grid", "5", "--t-max", "4"});
    REQUIRE(merged.code == 0);
    CHECK(merged.out == flags.out);
    std::filesystem::remove(cfg);
}

TEST_CASE("conflicting config and flag is rejected unless overridden")
{
    const auto cfg = temp_file("basslab_cfg_conflict.json", R"({"M": 3})");
    const auto rejected = invoke({"analytic", "--config", cfg.string(), "-M", "4"});
    CHECK(rejected.code != 0);
    CHECK(rejected.err.find("error") != std::string::npos);
    const auto kept = invoke({"analytic", "--config", cfg.string(), "-M", "4", "--override", "--grid", "3"});
    REQUIRE(kept.code == 0);
    CHECK(parse_csv(kept.out)[0].size() == 6);
    std::filesystem::remove(cfg);
}

TEST_CASE("unknown config keys are rejected")
{
    CHECK_THROWS(cli::spec_from_json(nlohmann::json{{"nodes_typo", 3}}));
    const auto spec = cli::spec_from_json(cli::to_json(cli::RunSpec{}));
    CHECK(cli::to_json(spec) == cli::to_json(cli::RunSpec{}));
}

TEST_CASE("simulate is deterministic for a fixed seed")
{
    const std::vector<std::string> args{"simulate", "--topology", "line", "-M", "4", "--trials", "1",
                                        "--seed", "17", "--grid", "9", "--t-max", "200"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    for (const auto& v : column(a.out, 1)) {
        const double f = std::stod(v);
        CHECK((f == 0.0 || f == 0.25 || f == 0.5 || f == 0.75 || f == 1.0));
    }
}

TEST_CASE("verify exit code reflects the checks")
{
    const auto r = invoke({"verify", "--suite", "shift"});
    CHECK(r.code == 0);
    const auto report = nlohmann::json::parse(r.out);
    CHECK(report.contains("checks"));
    CHECK(invoke({"verify", "--suite", "no-such-suite"}).code != 0);
}

TEST_CASE("invalid input fails with a nonzero code")
{
    CHECK(invoke({"analytic", "--topology", "nope"}).code != 0);
    const auto r = invoke({"analytic", "-p", "-1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}
