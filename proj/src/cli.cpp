#include "mobileba/cli.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mobileba::cli
{

using nlohmann::json;
namespace pt = boost::property_tree;

namespace
{

int to_int(const std::string &field, const std::string &text)
{
    const std::string t = boost::trim_copy(text);
    int x = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError(field + ": expected an integer, got '" + text + "'");
    return x;
}

std::uint64_t to_u64(const std::string &field, const std::string &text)
{
    const std::string t = boost::trim_copy(text);
    std::uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ParseError(field + ": expected a non-negative integer, got '" + text + "'");
    return x;
}

Value to_value(const std::string &field, const std::string &text)
{
    try
    {
        return Value::parse(boost::trim_copy(text));
    }
    catch (const PreconditionError &)
    {
        throw ParseError(field + ": expected a value (symbol, bot0 or bot2), got '" + text + "'");
    }
}

bool to_bool(const std::string &field, const std::string &text)
{
    const std::string t = boost::to_lower_copy(boost::trim_copy(text));
    if (t == "true" || t == "yes" || t == "1")
        return true;
    if (t == "false" || t == "no" || t == "0")
        return false;
    throw ParseError(field + ": expected true or false, got '" + text + "'");
}

class Fields
{
public:
    explicit Fields(const pt::ptree &tree) : tree_(tree) {}

    std::optional<std::string> str(const std::string &path) const
    {
        if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.')))
            return boost::trim_copy(*v);
        return std::nullopt;
    }

    std::string str(const std::string &path, const std::string &fallback) const { return str(path).value_or(fallback); }

    std::optional<int> integer(const std::string &path) const
    {
        if (auto v = str(path))
            return to_int(path, *v);
        return std::nullopt;
    }

    int integer(const std::string &path, int fallback) const { return integer(path).value_or(fallback); }

    int required(const std::string &path) const
    {
        if (auto v = integer(path))
            return *v;
        throw ParseError(path + ": missing");
    }

    bool has_section(const std::string &name) const { return tree_.get_child_optional(name).has_value(); }

private:
    const pt::ptree &tree_;
};

std::vector<net::Edge> parse_edges(const std::string &field, const std::string &text)
{
    std::vector<net::Edge> edges;
    std::vector<std::string> items;
    boost::split(items, text, boost::is_any_of(",;"));
    for (std::string item : items)
    {
        boost::trim(item);
        if (item.empty())
            continue;
        auto dash = item.find('-');
        if (dash == std::string::npos)
            throw ParseError(field + ": edge '" + item + "' is not of the form u-v");
        edges.emplace_back(ProcessorId(to_int(field, item.substr(0, dash))),
                           ProcessorId(to_int(field, item.substr(dash + 1))));
    }
    return edges;
}

net::Network parse_network(const Fields &f, const std::filesystem::path &base)
{
    const std::string kind = f.str("network.kind", "complete");
    try
    {
        if (kind == "complete")
            return net::Network::complete(f.required("network.n"));
        if (kind == "two-clique")
            return net::make_two_clique_network(f.required("network.clique"), f.required("network.bridge"));
        if (kind == "complete-minus-matching")
            return net::make_complete_minus_matching(f.required("network.n"), f.required("network.pairs"));
        if (kind == "cycle")
            return net::make_cycle(f.required("network.n"));
        if (kind == "star")
            return net::make_star(f.required("network.n"));
        if (kind == "edges")
        {
            auto edges = parse_edges("network.edges", f.str("network.edges", ""));
            int n = f.integer("network.n", 0);
            for (auto [u, v] : edges)
                n = std::max({n, u.index, v.index});
            return net::Network(n, edges);
        }
        if (kind == "file")
        {
            auto path = f.str("network.path");
            if (!path)
                throw ParseError("network.path: missing");
            std::filesystem::path p(*path);
            if (p.is_relative())
                p = base / p;
            return net::read_edge_list_file(p.string());
        }
    }
    catch (const PreconditionError &e)
    {
        throw ParseError(std::string("network: ") + e.what());
    }
    throw ParseError("network.kind: unknown kind '" + kind + "'");
}

adv::LieRule parse_rule(const std::string &field, const std::string &text, std::uint64_t seed)
{
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(":"));
    const std::string &name = parts[0];
    auto arg = [&](std::size_t i) {
        if (parts.size() <= i)
            throw ParseError(field + ": rule '" + name + "' needs more arguments");
        return to_value(field, parts[i]);
    };
    if (name == "constant")
        return adv::LieRule::constant(arg(1));
    if (name == "split")
        return adv::LieRule::split(arg(1), arg(2));
    if (name == "random")
        return adv::LieRule::random(seed);
    if (name == "counterfactual")
        return adv::LieRule::counterfactual(arg(1));
    throw ParseError(field + ": unknown rule '" + text + "'");
}

std::vector<std::vector<ProcessorId>> parse_schedule(const std::string &text)
{
    std::vector<std::vector<ProcessorId>> sets;
    std::vector<std::string> items;
    boost::split(items, text, boost::is_any_of("|"));
    for (const auto &item : items)
        sets.push_back(parse_id_list(item));
    return sets;
}

std::function<adv::StrategyFactory(std::uint64_t)> parse_strategy(const Fields &f, Value source_value,
                                                                  std::string &name)
{
    name = f.str("adversary.strategy", "none");
    if (name == "none")
        return [](std::uint64_t) { return adv::strategy_none(); };
    if (name == "static")
    {
        auto set = parse_id_list(f.str("adversary.set", ""));
        auto rule_text = f.str("adversary.rule", "constant:0");
        parse_rule("adversary.rule", rule_text, 0);
        return [set, rule_text](std::uint64_t seed) {
            return adv::strategy_static(set, parse_rule("adversary.rule", rule_text, seed));
        };
    }
    if (name == "alternating")
    {
        auto x = parse_id_list(f.str("adversary.x", ""));
        auto y = parse_id_list(f.str("adversary.y", ""));
        Value fake = source_value == Value::plain(0) ? Value::plain(1) : Value::plain(0);
        if (auto text = f.str("adversary.fake"))
            fake = to_value("adversary.fake", *text);
        return [x, y, fake](std::uint64_t) { return adv::strategy_alternating(x, y, fake); };
    }
    if (name == "scheduled")
    {
        auto sets = parse_schedule(f.str("adversary.schedule", ""));
        auto rule_text = f.str("adversary.rule", "constant:0");
        parse_rule("adversary.rule", rule_text, 0);
        return [sets, rule_text](std::uint64_t seed) {
            return adv::strategy_scheduled(sets, parse_rule("adversary.rule", rule_text, seed));
        };
    }
    if (name == "random")
        return [](std::uint64_t seed) { return adv::strategy_random(seed); };
    throw ParseError("adversary.strategy: unknown strategy '" + name + "'");
}

PairSpec parse_pair(const Fields &f)
{
    PairSpec p;
    p.kind = f.str("pair.kind", "five-set");
    if (p.kind != "five-set" && p.kind != "cutset")
        throw ParseError("pair.kind: expected five-set or cutset, got '" + p.kind + "'");
    p.n = f.integer("pair.n", 5);
    p.m = f.integer("pair.m", 1);
    if (auto v = f.str("pair.value"))
        p.value = to_value("pair.value", *v);
    if (auto v = f.str("pair.swapped"))
        p.swapped = to_bool("pair.swapped", *v);
    p.source = ProcessorId(f.integer("pair.source", 1));
    p.cut = parse_id_list(f.str("pair.cut", ""));
    p.observer = ProcessorId(f.integer("pair.observer", 0));
    p.perturb = f.str("pair.perturb");
    return p;
}

json id_list(const std::vector<ProcessorId> &ids)
{
    json out = json::array();
    for (ProcessorId p : ids)
        out.push_back(p.index);
    return out;
}

std::string rational(const relcomm::Rational &r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json divergence_json(const std::optional<sim::Divergence> &d)
{
    if (!d)
        return nullptr;
    return json{{"round", d->round}, {"observer", d->observer.index}, {"field", d->field}};
}

} // namespace

std::vector<ProcessorId> parse_id_list(const std::string &text)
{
    std::vector<ProcessorId> out;
    std::string t = boost::trim_copy(text);
    if (t.empty() || t == "-")
        return out;
    std::vector<std::string> items;
    boost::split(items, t, boost::is_any_of(", "), boost::token_compress_on);
    for (const auto &item : items)
        if (!item.empty())
            out.emplace_back(to_int("processor list", item));
    return out;
}

namespace
{

ScenarioSpec parse_tree(const pt::ptree &tree, const std::filesystem::path &base)
{
    Fields f(tree);
    ScenarioSpec spec;
    spec.seed = f.str("seeds.seed") ? to_u64("seeds.seed", *f.str("seeds.seed")) : 0;
    spec.count = f.integer("seeds.count", 1);
    if (spec.count < 0)
        throw ParseError("seeds.count: must be non-negative");

    if (f.has_section("pair"))
    {
        spec.pair = parse_pair(f);
        if (f.has_section("network"))
            spec.network = parse_network(f, base);
        return spec;
    }

    net::Network g = parse_network(f, base);
    spec.network = g;
    const int n = g.size();
    const int m = f.integer("protocol.m", 1);
    const int alphabet = f.integer("protocol.alphabet", 2);
    const Value source = to_value("protocol.source", f.str("protocol.source", "1"));
    const int rounds = f.integer("protocol.rounds", 0);
    const bool unchecked = to_bool("protocol.unchecked", f.str("protocol.unchecked", "false"));
    const std::string kind = f.str("protocol.kind", "bare");

    try
    {
        if (kind == "bare")
        {
            if (!g.is_complete())
                throw ParseError("protocol.kind: the bare protocol needs a complete network");
            auto params = unchecked ? mba::ProtocolParams::unchecked(n, m, alphabet, m)
                                    : mba::ProtocolParams::bare(n, m, alphabet);
            spec.setup = sim::bare_setup(params, source, rounds);
        }
        else if (kind == "lifted")
        {
            const std::string scheme_name = f.str("protocol.scheme", "two-round");
            std::shared_ptr<const relcomm::CommScheme> scheme;
            if (scheme_name == "two-round")
            {
                auto policy = unchecked ? relcomm::PlanPolicy::BestEffort : relcomm::PlanPolicy::Strict;
                scheme = std::make_shared<const relcomm::CommScheme>(relcomm::CommScheme::two_round(g, m, policy));
            }
            else if (scheme_name == "flood")
            {
                const int kappa = f.integer("protocol.kappa", net::vertex_connectivity(g));
                scheme = std::make_shared<const relcomm::CommScheme>(relcomm::CommScheme::flood(g, m, kappa));
            }
            else
            {
                throw ParseError("protocol.scheme: expected two-round or flood, got '" + scheme_name + "'");
            }
            auto base_params = mba::ProtocolParams::unchecked(n, m, alphabet, m);
            auto lifted = unchecked ? relcomm::lift_unchecked(scheme, base_params) : relcomm::lift(scheme, base_params);
            spec.setup = sim::lifted_setup(lifted, source, rounds);
        }
        else
        {
            throw ParseError("protocol.kind: expected bare or lifted, got '" + kind + "'");
        }
        if (!source.is_plain() || source.symbol() >= alphabet)
            throw ParseError("protocol.source: " + source.to_string() + " is not in the alphabet 0.." +
                             std::to_string(alphabet - 1));
    }
    catch (const PreconditionError &e)
    {
        throw ParseError(std::string("protocol: ") + e.what());
    }

    spec.strategy_for_seed = parse_strategy(f, source, spec.strategy);
    try
    {
        spec.strategy_for_seed(spec.seed)(*spec.setup);
    }
    catch (const PreconditionError &e)
    {
        throw ParseError(std::string("adversary: ") + e.what());
    }
    return spec;
}

ScenarioSpec parse_stream(std::istream &is, const std::filesystem::path &base)
{
    pt::ptree tree;
    try
    {
        pt::read_ini(is, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    return parse_tree(tree, base);
}

} // namespace

ScenarioSpec parse_scenario(std::istream &is)
{
    return parse_stream(is, std::filesystem::current_path());
}

ScenarioSpec parse_scenario_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read scenario file " + path);
    return parse_stream(in, std::filesystem::path(path).parent_path());
}

json verdict_json(const sim::Verdict &v, std::uint64_t seed, std::size_t claim_violations)
{
    json j;
    j["seed"] = seed;
    j["mba1prime"] = sim::to_string(v.mba1prime);
    j["mba2"] = sim::to_string(v.mba2);
    j["agreed"] = v.agreed_value ? json(v.agreed_value->to_string()) : json(nullptr);
    j["first_stable_round"] = v.first_stable_round ? json(*v.first_stable_round) : json(nullptr);
    j["stable"] = v.stable ? json(*v.stable) : json(nullptr);
    j["claim_violations"] = claim_violations;
    j["notes"] = v.notes;
    j["ok"] = v.ok() && claim_violations == 0;
    return j;
}

json analyze(const net::Network &g, int m, ProcessorId s)
{
    if (g.size() < 1)
        throw PreconditionError("empty network");
    if (!g.contains(s))
        throw PreconditionError("source out of range");
    if (m < 0)
        throw PreconditionError("m must be non-negative");
    const int n = g.size();
    json j;
    j["n"] = n;
    j["m"] = m;
    j["source"] = s.index;
    j["edges"] = g.edge_count();
    j["connected"] = g.is_connected();
    j["complete"] = g.is_complete();
    const int delta = net::min_degree(g);
    j["delta"] = delta;
    const int kappa = n >= 2 ? net::vertex_connectivity(g) : 0;
    j["kappa"] = kappa;
    if (n >= 3)
        j["avoiding_source"] = net::local_connectivity_avoiding_source(g, s);
    std::optional<int> T;
    if (kappa > 4 * m)
    {
        T = relcomm::compute_T(n, m, kappa);
        j["T"] = *T;
    }
    const bool sufficient = n > 6 * m;
    if (m >= 1 && sufficient)
    {
        auto b = relcomm::kappa_sufficiency_bounds(n, m);
        j["threshold10m"] = rational(b.threshold10m);
        j["thresholdA"] = rational(b.thresholdA);
        j["regime"] = b.low_regime ? "A<=12" : "A>=12";
    }

    std::string verdict = "UNKNOWN";
    std::string reason = "no bound applies";
    json certificate = nullptr;
    auto cut = n >= 2 ? net::min_source_cut(g, s) : std::nullopt;
    if (cut && static_cast<int>(cut->cut.size()) <= 4 * m)
    {
        verdict = "IMPOSSIBLE";
        reason = "cut-set of size " + std::to_string(cut->cut.size()) + " <= 4m avoiding the source";
        certificate = json{{"cut", id_list(cut->cut)}, {"far", cut->far.index}};
    }
    else if (g.is_complete() && n <= 5 * m)
    {
        verdict = "IMPOSSIBLE";
        reason = "complete network with n <= 5m";
        certificate = json{{"five_set", true}};
    }
    else if (sufficient && g.is_complete())
    {
        verdict = "POSSIBLE";
        reason = "complete network with n > 6m";
    }
    else if (sufficient && 2 * delta > n + 4 * m - 2)
    {
        verdict = "POSSIBLE";
        reason = "delta bound: delta > n/2 + 2m - 1";
    }
    else if (sufficient && T)
    {
        auto b = relcomm::kappa_sufficiency_bounds(n, m);
        if (m >= 1 && relcomm::Rational(kappa) >= b.threshold10m)
        {
            verdict = "POSSIBLE";
            reason = "kappa bound: kappa >= 10m - 24m^2/n - 6m/n";
        }
        else if (6 * m * (*T - 1) < n)
        {
            verdict = "POSSIBLE";
            reason = "flood condition: K = T-1 < n/(6m)";
        }
    }
    j["verdict"] = verdict;
    j["reason"] = reason;
    j["certificate"] = certificate;
    return j;
}

json bounds(int n, int m)
{
    auto b = relcomm::kappa_sufficiency_bounds(n, m);
    return json{{"n", n},
                {"m", m},
                {"A", rational(b.ratio)},
                {"threshold10m", rational(b.threshold10m)},
                {"thresholdA", rational(b.thresholdA)},
                {"regime", b.low_regime ? "A<=12" : "A>=12"}};
}

json pair_report(const PairSpec &spec, const std::optional<net::Network> &network)
{
    sim::ScenarioPair pair = [&] {
        if (spec.kind == "five-set")
            return adv::build_five_set_pair(spec.n, spec.m, spec.value, spec.swapped);
        net::Network g = network ? *network : net::make_two_clique_network(4, 4);
        std::vector<ProcessorId> cut = spec.cut;
        ProcessorId observer = spec.observer;
        if (cut.empty() || observer.index == 0)
        {
            auto found = net::min_source_cut(g, spec.source);
            if (!found)
                throw PreconditionError("network has no separator avoiding the source");
            if (cut.empty())
                cut = found->cut;
            if (observer.index == 0)
                observer = found->far;
        }
        return adv::build_cutset_pair(g, spec.m, spec.source, cut, observer);
    }();

    json j;
    j["kind"] = spec.kind;
    j["observers"] = id_list(pair.observers);
    j["rounds"] = pair.a.setup.rounds;
    auto result = sim::check_indistinguishable(pair);
    j["identical"] = result.identical;
    j["divergence"] = divergence_json(result.first);
    bool ok = result.identical;
    if (spec.perturb)
    {
        adv::PerturbPoint point{};
        if (*spec.perturb == "auto")
        {
            point = adv::default_perturbation(pair);
        }
        else
        {
            std::vector<std::string> parts;
            boost::split(parts, *spec.perturb, boost::is_any_of(":"));
            if (parts.size() != 3)
                throw ParseError("perturb: expected round:sender:target or auto");
            point = {to_int("perturb", parts[0]), ProcessorId(to_int("perturb", parts[1])),
                     ProcessorId(to_int("perturb", parts[2]))};
        }
        auto changed = sim::check_indistinguishable(adv::perturb_pair(pair, point.round, point.sender, point.target));
        j["perturbation"] = json{{"round", point.round}, {"sender", point.sender.index}, {"target", point.target.index}};
        j["perturbed_identical"] = changed.identical;
        j["perturbed_divergence"] = divergence_json(changed.first);
        ok = ok && !changed.identical && changed.first->round == point.round;
    }
    j["ok"] = ok;
    return j;
}

net::Network generate(const std::string &kind, int n, int clique, int bridge, int pairs)
{
    if (kind == "complete")
        return net::Network::complete(n);
    if (kind == "two-clique")
        return net::make_two_clique_network(clique, bridge);
    if (kind == "cycle")
        return net::make_cycle(n);
    if (kind == "star")
        return net::make_star(n);
    if (kind == "complete-minus-matching")
        return net::make_complete_minus_matching(n, pairs);
    throw ParseError("unknown generator '" + kind + "'");
}

int cmd_run(const std::string &scenario_path, const std::string &output_path, std::ostream &out, std::ostream &err)
{
    try
    {
        ScenarioSpec spec = parse_scenario_file(scenario_path);
        if (spec.pair)
        {
            json report = pair_report(*spec.pair, spec.network);
            out << report.dump() << '\n';
            return report["ok"].get<bool>() ? kOk : kVerdictFailure;
        }
        sim::Scenario scenario = spec.scenario(spec.seed);
        Trace trace = sim::run(scenario);
        if (!output_path.empty())
        {
            std::ofstream file(output_path);
            if (!file)
                throw ParseError("cannot write " + output_path);
            write_trace(file, trace);
        }
        auto verdict = sim::check_agreement(trace, scenario.setup);
        auto claims = sim::check_claim(trace, scenario.setup);
        json j = verdict_json(verdict, spec.seed, claims.size());
        j["rounds"] = trace.rounds.size();
        out << j.dump() << '\n';
        return j["ok"].get<bool>() ? kOk : kVerdictFailure;
    }
    catch (const ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const PreconditionError &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const sim::StrategyViolation &e)
    {
        err << "strategy violation: " << e.what() << '\n';
        return kVerdictFailure;
    }
}

int cmd_analyze(const std::string &graph_path, int m, int source, bool as_json, std::ostream &out, std::ostream &err)
{
    try
    {
        net::Network g = net::read_edge_list_file(graph_path);
        json j = analyze(g, m, ProcessorId(source));
        if (as_json)
        {
            out << j.dump() << '\n';
            return kOk;
        }
        for (const char *key : {"n", "m", "source", "edges", "connected", "delta", "kappa", "avoiding_source", "T",
                                "threshold10m", "thresholdA", "regime"})
            if (j.contains(key))
                out << key << ": " << (j[key].is_string() ? j[key].get<std::string>() : j[key].dump()) << '\n';
        out << "verdict: " << j["verdict"].get<std::string>() << " (" << j["reason"].get<std::string>() << ")\n";
        if (!j["certificate"].is_null() && j["certificate"].contains("cut"))
            out << "certificate: cut " << j["certificate"]["cut"].dump() << " separates p"
                << j["certificate"]["far"].get<int>() << " from the source\n";
        return kOk;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_campaign(const std::string &scenario_path, std::optional<int> seed_count, std::ostream &out,
                 std::ostream &err)
{
    ScenarioSpec spec;
    try
    {
        spec = parse_scenario_file(scenario_path);
        if (spec.pair)
            throw ParseError("campaign needs a run scenario, not a pair");
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    const int count = seed_count.value_or(spec.count);
    int pass = 0;
    int vacuous = 0;
    int fail = 0;
    std::vector<std::uint64_t> failing;
    json worst = nullptr;
    for (int i = 0; i < count; ++i)
    {
        const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(i);
        json line;
        try
        {
            sim::Scenario scenario = spec.scenario(seed);
            Trace trace = sim::run(scenario);
            auto verdict = sim::check_agreement(trace, scenario.setup);
            auto claims = sim::check_claim(trace, scenario.setup);
            line = verdict_json(verdict, seed, claims.size());
            if (!claims.empty())
                line["notes"].push_back(claims.front());
        }
        catch (const sim::StrategyViolation &e)
        {
            line = json{{"seed", seed}, {"ok", false}, {"notes", {std::string("strategy violation: ") + e.what()}}};
        }
        out << line.dump() << '\n';
        if (!line["ok"].get<bool>())
        {
            ++fail;
            failing.push_back(seed);
            if (worst.is_null())
                worst = line;
        }
        else if (line["mba1prime"] == "vacuous")
        {
            ++vacuous;
        }
        else
        {
            ++pass;
        }
    }
    json summary{{"summary", true}, {"runs", count},  {"pass", pass},
                 {"vacuous", vacuous}, {"fail", fail}, {"failing_seeds", failing}, {"first_failure", worst}};
    out << summary.dump() << '\n';
    return fail == 0 ? kOk : kVerdictFailure;
}

int cmd_generate(const std::string &kind, int n, int clique, int bridge, int pairs, const std::string &output_path,
                 std::ostream &out, std::ostream &err)
{
    try
    {
        net::Network g = generate(kind, n, clique, bridge, pairs);
        if (output_path.empty())
        {
            net::write_edge_list(out, g);
            return kOk;
        }
        std::ofstream file(output_path);
        if (!file)
            throw ParseError("cannot write " + output_path);
        net::write_edge_list(file, g);
        return kOk;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_pair(const PairSpec &spec, const std::string &graph_path, std::ostream &out, std::ostream &err)
{
    try
    {
        std::optional<net::Network> g;
        if (!graph_path.empty())
            g = net::read_edge_list_file(graph_path);
        json report = pair_report(spec, g);
        out << report.dump() << '\n';
        return report["ok"].get<bool>() ? kOk : kVerdictFailure;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int cmd_bounds(int n, int m, std::ostream &out, std::ostream &err)
{
    try
    {
        out << bounds(n, m).dump() << '\n';
        return kOk;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace mobileba::cli
