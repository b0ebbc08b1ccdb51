#pragma once

#include "mobileba/pairs.hpp"
#include "mobileba/sim.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace mobileba::cli
{

/// A scenario file or flag could not be turned into a valid run; exit status 2.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum Exit
{
    kOk = 0,
    kVerdictFailure = 1,
    kUsage = 2,
};

struct PairSpec
{
    std::string kind; // five-set | cutset
    int n = 5;
    int m = 1;
    Value value = Value::plain(1);
    bool swapped = false;
    ProcessorId source = kSource;
    std::vector<ProcessorId> cut;
    ProcessorId observer{2};
    std::optional<std::string> perturb; // "r:s:t" or "auto"
};

struct ScenarioSpec
{
    std::optional<sim::Setup> setup;    // absent for pair files
    std::string strategy = "none";
    std::function<adv::StrategyFactory(std::uint64_t)> strategy_for_seed;
    std::uint64_t seed = 0;
    int count = 1;
    std::optional<net::Network> network; // pair files may carry one
    std::optional<PairSpec> pair;

    sim::Scenario scenario(std::uint64_t s) const { return sim::Scenario{*setup, strategy_for_seed(s), s}; }
};

ScenarioSpec parse_scenario(std::istream &is);
ScenarioSpec parse_scenario_file(const std::string &path);

/// "1,2,3" -> processors; "-" or empty -> none.
std::vector<ProcessorId> parse_id_list(const std::string &text);

nlohmann::json verdict_json(const sim::Verdict &v, std::uint64_t seed, std::size_t claim_violations);
nlohmann::json analyze(const net::Network &g, int m, ProcessorId s = kSource);
nlohmann::json bounds(int n, int m);
nlohmann::json pair_report(const PairSpec &spec, const std::optional<net::Network> &network);
net::Network generate(const std::string &kind, int n, int clique, int bridge, int pairs);

int cmd_run(const std::string &scenario_path, const std::string &output_path, std::ostream &out, std::ostream &err);
int cmd_analyze(const std::string &graph_path, int m, int source, bool as_json, std::ostream &out, std::ostream &err);
int cmd_campaign(const std::string &scenario_path, std::optional<int> seed_count, std::ostream &out,
                 std::ostream &err);
int cmd_generate(const std::string &kind, int n, int clique, int bridge, int pairs, const std::string &output_path,
                 std::ostream &out, std::ostream &err);
int cmd_pair(const PairSpec &spec, const std::string &graph_path, std::ostream &out, std::ostream &err);
int cmd_bounds(int n, int m, std::ostream &out, std::ostream &err);

} // namespace mobileba::cli
