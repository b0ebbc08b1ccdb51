// One line per acceptance criterion; exit status is the number of failures.

#include "mobileba/cli.hpp"
#include "mobileba/pairs.hpp"
#include "mobileba/relcomm.hpp"
#include "mobileba/sim.hpp"

#include "unit/oracles.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace mobileba;
using Clock = std::chrono::steady_clock;

namespace
{

int failures = 0;

void report(const std::string &id, bool ok, const std::string &detail)
{
    std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
    failures += ok ? 0 : 1;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << s << "s";
    return os.str();
}

Value other(Value v)
{
    return v == Value::plain(0) ? Value::plain(1) : Value::plain(0);
}

struct CampaignResult
{
    int pass = 0, vacuous = 0, fail = 0, unstable = 0, claim_violations = 0, qualifying = 0;
    double seconds = 0;
};

CampaignResult campaign(const sim::Setup &setup, std::uint64_t first, int count)
{
    CampaignResult r;
    const auto t0 = Clock::now();
    for (int i = 0; i < count; ++i)
    {
        const std::uint64_t seed = first + static_cast<std::uint64_t>(i);
        const Trace t = sim::run({setup, adv::strategy_random(seed), seed});
        const sim::Verdict v = sim::check_agreement(t, setup);
        if (v.mba1prime == sim::Status::Fail || v.mba2 == sim::Status::Fail)
            ++r.fail;
        else if (v.mba1prime == sim::Status::Vacuous)
            ++r.vacuous;
        else
            ++r.pass;
        if (v.stable.has_value())
            ++r.qualifying;
        if (v.stable == false)
            ++r.unstable;
        r.claim_violations += static_cast<int>(sim::check_claim(t, setup).size());
        if (t.rounds.size() != static_cast<std::size_t>(setup.rounds))
            ++r.fail;
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<net::Network> atlas()
{
    std::vector<net::Network> out;
    std::ifstream in(MOBILEBA_TEST_DATA "/connected_graphs_upto7.txt");
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        int n;
        ls >> n;
        std::vector<net::Edge> edges;
        std::string tok;
        while (ls >> tok)
        {
            auto dash = tok.find('-');
            edges.emplace_back(ProcessorId(std::stoi(tok.substr(0, dash))), ProcessorId(std::stoi(tok.substr(dash + 1))));
        }
        out.emplace_back(n, edges);
    }
    return out;
}

} // namespace

int main()
{
    const sim::Setup k7 = sim::bare_setup(mba::ProtocolParams::bare(7, 1), Value::plain(1));

    // 1 and 2: random mobile adversary campaign on K7
    {
        CampaignResult r = campaign(k7, 42, 1000);
        report("AC1", r.fail == 0 && r.unstable == 0 && r.pass + r.vacuous == 1000 && r.seconds < 10.0,
               "n=7 m=1 1000 seeds: " + std::to_string(r.pass) + " pass, " + std::to_string(r.vacuous) +
                   " vacuous, " + std::to_string(r.fail) + " fail, " + std::to_string(r.unstable) + " of " +
                   std::to_string(r.qualifying) + " qualifying seeds unstable, " + fmt_seconds(r.seconds));
        report("AC2", r.claim_violations == 0,
               "claim violations over the same campaign: " + std::to_string(r.claim_violations));
    }

    // 3: every single-processor schedule over rounds 1..4 with the counterfactual lie
    {
        const auto t0 = Clock::now();
        int bad = 0, runs = 0;
        for (int code = 0; code < 7 * 7 * 7 * 7; ++code)
        {
            std::vector<std::vector<ProcessorId>> sets;
            for (int r = 0, c = code; r < 4; ++r, c /= 7)
                sets.push_back({ProcessorId(c % 7 + 1)});
            const Trace t = sim::run(
                {k7, adv::strategy_scheduled(sets, adv::LieRule::counterfactual(other(k7.source_value))), 0});
            const sim::Verdict v = sim::check_agreement(t, k7);
            ++runs;
            if (!v.ok() || !sim::check_claim(t, k7).empty())
                ++bad;
        }
        const double s = seconds_since(t0);
        report("AC3", bad == 0 && runs == 2401 && s < 300.0,
               std::to_string(runs) + " schedules, " + std::to_string(bad) + " violations, " + fmt_seconds(s));
    }

    // 4: five-set pair at n=5, m=1
    {
        sim::ScenarioPair pair = adv::build_five_set_pair(5, 1, Value::plain(1));
        const Trace a = sim::run(pair.a);
        const Trace b = sim::run(pair.b);
        bool equal = a.rounds.size() >= 10 && b.rounds.size() == a.rounds.size();
        for (ProcessorId o : pair.observers)
            equal = equal && serialize(view_of(a, o)) == serialize(view_of(b, o));
        const auto point = adv::default_perturbation(pair);
        const auto perturbed = sim::check_indistinguishable(adv::perturb_pair(pair, point.round, point.sender, point.target));
        report("AC4", equal && pair.observers.size() == 2 && !perturbed.identical,
               std::string("observers p4,p5 over ") + std::to_string(a.rounds.size()) + " rounds " +
                   (equal ? "byte-identical" : "differ") + "; perturbed control " +
                   (perturbed.identical ? "did not diverge"
                                        : "diverges at round " + std::to_string(perturbed.first->round)));
    }

    // 5: cut-set pair on two-clique (4,4)
    {
        const net::Network g = net::make_two_clique_network(4, 4);
        const auto j = cli::analyze(g, 1);
        const bool impossible = j["verdict"] == "IMPOSSIBLE" && j["certificate"]["cut"].size() == 4;
        std::vector<ProcessorId> cut;
        for (int x : j["certificate"]["cut"])
            cut.emplace_back(x);
        const ProcessorId far(j["certificate"]["far"].get<int>());
        sim::ScenarioPair pair = adv::build_cutset_pair(g, 1, kSource, cut, far);
        const auto result = sim::check_indistinguishable(pair);
        report("AC5", impossible && result.identical,
               "analyze " + j["verdict"].get<std::string>() + " with cut " + j["certificate"]["cut"].dump() +
                   "; views at p" + std::to_string(far.index) + (result.identical ? " identical" : " differ"));
    }

    // 6: two-round transfers on K7 minus an edge, every single-processor schedule
    {
        const net::Network g = net::make_complete_minus_matching(7, 1);
        const relcomm::CommScheme scheme = relcomm::CommScheme::two_round(g, 1);
        const std::vector<std::function<Value(Value)>> corruptions{
            [](Value v) { return other(v); }, [](Value) { return Value::bot2(); }};
        int cases = 0, excluded = 0, wrong = 0;
        for (int u = 1; u <= 7; ++u)
            for (int v = 1; v <= 7; ++v)
                for (int x = 0; x <= 7; ++x)
                    for (int y = 0; y <= 7; ++y)
                    {
                        relcomm::TransferSchedule sched(2);
                        if (x)
                            sched[0].emplace_back(x);
                        if (y)
                            sched[1].emplace_back(y);
                        if (!relcomm::endpoints_respected(scheme, ProcessorId(u), ProcessorId(v), sched))
                        {
                            ++excluded;
                            continue;
                        }
                        for (const auto &corrupt : corruptions)
                            for (Value sent : {Value::plain(0), Value::plain(1)})
                            {
                                auto forge = [sent](ProcessorId w, ProcessorId q, int) {
                                    RelayBundle b;
                                    for (int c = 0; c < 7; ++c)
                                        b.push_back(RelayCopy{w, q, c, PairMessage{other(sent), other(sent)}});
                                    return b;
                                };
                                auto out = relcomm::simulate_transfer(scheme, ProcessorId(u), ProcessorId(v), sent,
                                                                      sched, corrupt, forge);
                                ++cases;
                                if (out.decoded != sent)
                                    ++wrong;
                            }
                    }
        report("AC6", wrong == 0 && cases > 0,
               std::to_string(cases) + " transfers (" + std::to_string(excluded) +
                   " schedules excluded by endpoint windows), " + std::to_string(wrong) + " wrong decodes");
    }

    // 7: flood transfers on two-clique (4,5)
    {
        const net::Network g = net::make_two_clique_network(4, 5);
        const int n = g.size(), m = 1, kappa = net::vertex_connectivity(g);
        const int T = relcomm::compute_T(n, m, kappa);
        const relcomm::CommScheme scheme = relcomm::CommScheme::flood(g, m, kappa);
        const int K = scheme.window();
        std::mt19937_64 rng(7);
        int short_count = 0, over_influenced = 0, wrong = 0, runs = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed)
        {
            std::mt19937_64 r(seed);
            ProcessorId u, v;
            do
            {
                u = ProcessorId(1 + static_cast<int>(r() % 13));
                v = ProcessorId(1 + static_cast<int>(r() % 13));
            } while (u == v || g.adjacent(u, v));
            relcomm::TransferSchedule sched(static_cast<std::size_t>(T));
            for (int ph = 1; ph <= T; ++ph)
            {
                std::vector<int> allowed;
                for (int x = 1; x <= n; ++x)
                    if (!(ph <= K && ProcessorId(x) == u) && !(ph > T - K && ProcessorId(x) == v))
                        allowed.push_back(x);
                if (r() % 8 != 0)
                    sched[static_cast<std::size_t>(ph - 1)].emplace_back(allowed[r() % allowed.size()]);
            }
            const Value sent = Value::plain(static_cast<int>(r() % 2));
            const int mode = static_cast<int>(r() % 3);
            auto corrupt = [&, mode](Value x) {
                if (mode == 0)
                    return other(x);
                if (mode == 1)
                    return Value::bot2();
                return Value::plain(static_cast<int>(rng() % 3));
            };
            auto forge = [&](ProcessorId w, ProcessorId q, int) {
                RelayBundle b;
                for (int c = 0; c < 40; c += 3)
                    b.push_back(RelayCopy{u, v, c, PairMessage{other(sent), other(sent)}});
                b.push_back(RelayCopy{w, q, 0, PairMessage{other(sent), other(sent)}});
                return b;
            };
            auto out = relcomm::simulate_transfer(scheme, u, v, sent, sched, corrupt, forge);
            ++runs;
            if (static_cast<int>(out.copies.size()) < kappa * T - n + 2)
                ++short_count;
            if (out.influenced > 2 * m * (T - 1))
                ++over_influenced;
            if (out.decoded != sent)
                ++wrong;
        }
        report("AC7", T == 8 && kappa == 5 && short_count == 0 && over_influenced == 0 && wrong == 0,
               "kappa=" + std::to_string(kappa) + " T=" + std::to_string(T) + ", " + std::to_string(runs) +
                   " transfers: " + std::to_string(short_count) + " below kappa*T-n+2 copies, " +
                   std::to_string(over_influenced) + " above 2m(T-1) influenced, " + std::to_string(wrong) +
                   " wrong decodes");
    }

    // 8: lifted protocol over the two-round scheme on K13 minus a 6-edge matching
    {
        const net::Network g = net::make_complete_minus_matching(13, 6);
        const bool delta_ok = 2 * net::min_degree(g) > 13 + 4 - 2;
        auto scheme = std::make_shared<const relcomm::CommScheme>(relcomm::CommScheme::two_round(g, 1));
        const sim::Setup setup =
            sim::lifted_setup(relcomm::lift(scheme, mba::ProtocolParams::bare(13, 1)), Value::plain(1));
        CampaignResult r = campaign(setup, 0, 200);
        report("AC8", delta_ok && r.fail == 0 && setup.rounds == 2 * 13 * 2,
               "200 seeds: " + std::to_string(r.pass) + " pass, " + std::to_string(r.vacuous) + " vacuous, " +
                   std::to_string(r.fail) + " fail; physical rounds " + std::to_string(setup.rounds) + ", " +
                   fmt_seconds(r.seconds));
    }

    // 9: connectivity against brute-force separators on the graph atlas
    {
        int graphs = 0, mismatches = 0;
        for (const net::Network &g : atlas())
        {
            ++graphs;
            if (net::vertex_connectivity(g) != oracle::brute_connectivity(g))
                ++mismatches;
            if (g.size() >= 3)
                for (int s = 1; s <= g.size(); ++s)
                    if (net::local_connectivity_avoiding_source(g, ProcessorId(s)) != oracle::brute_avoiding_source(g, s))
                        ++mismatches;
        }
        report("AC9", graphs == 995 && mismatches == 0,
               std::to_string(graphs) + " connected graphs on 2..7 vertices, " + std::to_string(mismatches) +
                   " mismatches");
    }

    // 10: kappa bound table in exact rationals
    {
        using R = relcomm::Rational;
        int bad = 0, rows = 0;
        for (int m = 1; m <= 4; ++m)
        {
            for (int A = 7; A <= 48; ++A)
            {
                const auto b = relcomm::kappa_sufficiency_bounds(A * m, m);
                const R low = (R(A, 2) + 2) * m;
                const R high = (R(10) - R(24, A)) * m;
                const R want = A <= 12 ? low : high;
                ++rows;
                if (b.thresholdA != want || b.low_regime != (A <= 12) || b.ratio != R(A))
                    ++bad;
                if (A == 12 && (low != R(8 * m) || high != R(8 * m)))
                    ++bad;
            }
        }
        const auto b25 = relcomm::kappa_sufficiency_bounds(25, 1);
        const bool examples = b25.threshold10m == R(44, 5) &&
                              relcomm::kappa_sufficiency_bounds(24, 1).thresholdA == R(9) &&
                              relcomm::kappa_sufficiency_bounds(12, 1).thresholdA == R(8);
        report("AC10", bad == 0 && examples,
               std::to_string(rows) + " table rows, " + std::to_string(bad) +
                   " mismatches; A=12 gives 8m in both regimes, m=1 n=25 gives 44/5");
    }

    return failures;
}
