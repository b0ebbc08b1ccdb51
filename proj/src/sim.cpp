#include "mobileba/sim.hpp"

#include <algorithm>
#include <string>

namespace mobileba::sim
{

Setup bare_setup(const mba::ProtocolParams &params, Value source_value, int rounds)
{
    return Setup{ProtocolKind::Bare, net::Network::complete(params.n()), params, nullptr, source_value,
                 rounds > 0 ? rounds : mba::termination_round(params)};
}

Setup lifted_setup(const relcomm::LiftedProtocol &lifted, Value source_value, int rounds)
{
    return Setup{ProtocolKind::Lifted, lifted.scheme->network(), lifted.params, lifted.scheme, source_value,
                 rounds > 0 ? rounds : lifted.physical_rounds};
}

namespace
{

int logical_of(const Setup &s, int round)
{
    return (round - 1) / s.T() + 1;
}

int phase_of(const Setup &s, int round)
{
    return (round - 1) % s.T() + 1;
}

Payload silence(const Setup &s, int round)
{
    if (s.kind == ProtocolKind::Lifted)
        return RelayBundle{};
    if (round == 1)
        return Value::bot0();
    return PairMessage{Value::bot0(), Value::bot0()};
}

bool same_kind(const Payload &x, const Payload &y)
{
    return x.index() == y.index();
}

void validate(const Setup &s)
{
    const int n = s.params.n();
    if (s.network.size() != n)
        throw PreconditionError("network has " + std::to_string(s.network.size()) + " processors, protocol expects " +
                                std::to_string(n));
    if (s.kind == ProtocolKind::Bare && !s.network.is_complete())
        throw PreconditionError("the bare protocol needs a complete network");
    if (s.kind == ProtocolKind::Lifted && !s.scheme)
        throw PreconditionError("the lifted protocol needs a communication scheme");
    if (!s.source_value.is_plain() || s.source_value.symbol() >= s.params.alphabet_size())
        throw PreconditionError("source value " + s.source_value.to_string() + " is not in the alphabet");
    if (s.rounds < 1)
        throw PreconditionError("a run needs at least one round");
}

} // namespace

std::vector<ProcessorId> scheduled_recipients(const Setup &setup, ProcessorId p, int round)
{
    if (setup.kind == ProtocolKind::Lifted)
        return setup.network.neighbors(p);
    if (round == 1 && p != kSource)
        return {};
    std::vector<ProcessorId> all;
    for (int q = 1; q <= setup.n(); ++q)
        all.emplace_back(q);
    return all;
}

Outbox honest_outbox(const Setup &setup, ProcessorId p, const ProcessorState &state, int round)
{
    Outbox out;
    if (setup.kind == ProtocolKind::Bare)
    {
        Payload msg = round == 1 ? Payload(state.a) : Payload(mba::honest_emit(state, round));
        for (ProcessorId q : scheduled_recipients(setup, p, round))
            out.emplace(q, msg);
        return out;
    }

    const int logical = logical_of(setup, round);
    std::optional<PairMessage> own;
    if (logical > 1 || p == kSource)
        own = PairMessage{state.a, state.b};
    auto bundles = relcomm::relay_emit(*setup.scheme, p, phase_of(setup, round), own, state.relay);
    for (ProcessorId q : setup.network.neighbors(p))
        out.emplace(q, bundles.count(q) ? Payload(bundles.at(q)) : Payload(RelayBundle{}));
    return out;
}

ProcessorState honest_transition(const Setup &setup, ProcessorId p, const ProcessorState &state, const Inbox &received,
                                 int round)
{
    const int n = setup.n();
    if (setup.kind == ProtocolKind::Bare)
    {
        if (round == 1)
        {
            Value v = Value::bot0();
            for (const auto &[from, payload] : received)
                if (from == kSource)
                    if (auto *x = std::get_if<Value>(&payload))
                        v = *x;
            return mba::round_one_update(v);
        }
        std::vector<PairMessage> pairs(static_cast<std::size_t>(n), PairMessage{Value::bot0(), Value::bot0()});
        for (const auto &[from, payload] : received)
            if (auto *x = std::get_if<PairMessage>(&payload))
                pairs[from.slot()] = *x;
        return mba::round_update(p, state, pairs, round, setup.params);
    }

    const int phase = phase_of(setup, round);
    ProcessorState next = state;
    for (const auto &[from, payload] : received)
        if (auto *bundle = std::get_if<RelayBundle>(&payload))
            relcomm::relay_receive(*setup.scheme, p, phase, from, *bundle, next.relay);
    if (phase < setup.T())
        return next;

    std::vector<PairMessage> pairs(static_cast<std::size_t>(n), PairMessage{Value::bot0(), Value::bot0()});
    for (int u = 1; u <= n; ++u)
    {
        ProcessorId from(u);
        if (from == p)
            pairs[from.slot()] = PairMessage{state.a, state.b};
        else if (auto decoded = relcomm::relay_decode(*setup.scheme, from, p, next.relay))
            pairs[from.slot()] = decoded->first;
    }
    const int logical = logical_of(setup, round);
    ProcessorState out = logical == 1 ? mba::round_one_update(pairs[kSource.slot()].a)
                                      : mba::round_update(p, next, pairs, logical, setup.params);
    out.relay = RelayBuffers{};
    return out;
}

Engine::Engine(Setup setup, std::unique_ptr<adv::Strategy> strategy)
    : setup_(std::move(setup)), strategy_(std::move(strategy))
{
    validate(setup_);
    if (!strategy_)
        throw PreconditionError("engine needs a strategy");
    const int n = setup_.n();
    for (int p = 1; p <= n; ++p)
        states_.push_back(mba::initial_state(ProcessorId(p), setup_.source_value));
    trace_.header = TraceHeader{n, setup_.params.m(), setup_.T(), setup_.K(), setup_.source_value};
}

Engine::Engine(const Scenario &scenario)
    : Engine(scenario.setup, scenario.strategy ? scenario.strategy(scenario.setup) : nullptr)
{
}

void Engine::expect(Stage stage, const char *what) const
{
    if (stage_ != stage)
        throw std::logic_error(std::string("engine stage out of order: ") + what);
}

adv::AdversaryView Engine::view() const
{
    return adv::AdversaryView{setup_, round_, trace_, states_, controlled_};
}

void Engine::select()
{
    expect(Stage::Idle, "select");
    if (done())
        throw std::logic_error("run already finished");
    round_ = rounds_done() + 1;
    controlled_.clear();
    auto chosen = strategy_->select_controlled(view());
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    for (ProcessorId p : chosen)
        if (!setup_.network.contains(p))
            throw StrategyViolation("round " + std::to_string(round_) + ": processor " + std::to_string(p.index) +
                                    " does not exist");
    if (static_cast<int>(chosen.size()) > setup_.params.m())
    {
        throw StrategyViolation("round " + std::to_string(round_) + ": " + std::to_string(chosen.size()) +
                                " processors controlled, bound is " + std::to_string(setup_.params.m()));
    }
    controlled_ = std::move(chosen);
    stage_ = Stage::Selected;
}

void Engine::emit_honest()
{
    expect(Stage::Selected, "emit_honest");
    const int n = setup_.n();
    honest_out_.assign(static_cast<std::size_t>(n), {});
    for (int p = 1; p <= n; ++p)
        honest_out_[static_cast<std::size_t>(p - 1)] =
            honest_outbox(setup_, ProcessorId(p), states_[static_cast<std::size_t>(p - 1)], round_);
    stage_ = Stage::HonestEmitted;
}

void Engine::emit_forged()
{
    expect(Stage::HonestEmitted, "emit_forged");
    out_ = honest_out_;
    for (ProcessorId p : controlled_)
    {
        Outbox forged = strategy_->forge_messages(p, honest_out_[p.slot()], view());
        for (const auto &[q, payload] : forged)
        {
            if (q != p && !(setup_.network.contains(q) && setup_.network.adjacent(p, q)))
            {
                throw StrategyViolation("round " + std::to_string(round_) + ": processor " +
                                        std::to_string(p.index) + " cannot reach " + std::to_string(q.index));
            }
        }
        Outbox normalized;
        for (ProcessorId q : scheduled_recipients(setup_, p, round_))
        {
            Payload quiet = silence(setup_, round_);
            auto it = forged.find(q);
            normalized.emplace(q, it != forged.end() && same_kind(it->second, quiet) ? it->second : quiet);
        }
        out_[p.slot()] = std::move(normalized);
    }
    stage_ = Stage::Emitted;
}

void Engine::deliver()
{
    expect(Stage::Emitted, "deliver");
    const int n = setup_.n();
    inbox_.assign(static_cast<std::size_t>(n), {});
    for (int p = 1; p <= n; ++p)
        for (const auto &[q, payload] : out_[static_cast<std::size_t>(p - 1)])
            inbox_[q.slot()].emplace_back(ProcessorId(p), payload);
    stage_ = Stage::Delivered;
}

void Engine::update_honest()
{
    expect(Stage::Delivered, "update_honest");
    const int n = setup_.n();
    next_.assign(static_cast<std::size_t>(n), {});
    for (int p = 1; p <= n; ++p)
    {
        const auto slot = static_cast<std::size_t>(p - 1);
        next_[slot] = honest_transition(setup_, ProcessorId(p), states_[slot], inbox_[slot], round_);
    }
    stage_ = Stage::Updated;
}

void Engine::apply_rewrites()
{
    expect(Stage::Updated, "apply_rewrites");
    std::vector<ProcessorState> after = next_;
    for (ProcessorId p : controlled_)
        after[p.slot()] = strategy_->rewrite_state(p, next_[p.slot()], view());

    RoundTrace rt;
    rt.round = round_;
    rt.controlled = controlled_;
    for (std::size_t p = 0; p < out_.size(); ++p)
        for (const auto &[q, payload] : out_[p])
            rt.sent.emplace(std::make_pair(ProcessorId::from_slot(p), q), payload);
    rt.states_after = after;
    states_ = std::move(after);
    trace_.rounds.push_back(std::move(rt));
    stage_ = Stage::Idle;
}

void Engine::step()
{
    select();
    emit_honest();
    emit_forged();
    deliver();
    update_honest();
    apply_rewrites();
}

Trace Engine::run_to_end()
{
    while (!done())
        step();
    return trace_;
}

Trace run(const Scenario &scenario)
{
    Engine engine(scenario);
    return engine.run_to_end();
}

std::string to_string(Status s)
{
    switch (s)
    {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::Vacuous:
        return "vacuous";
    }
    return "?";
}

namespace
{

bool clean_between(const Trace &trace, ProcessorId p, int first, int last)
{
    for (int r = std::max(first, 1); r <= last; ++r)
        if (trace.controlled_in(p, r))
            return false;
    return true;
}

int logical_rounds_in(const Trace &trace, const Setup &setup)
{
    return static_cast<int>(trace.rounds.size()) / setup.T();
}

const ProcessorState &state_at_logical(const Trace &trace, const Setup &setup, ProcessorId p, int logical)
{
    return trace.rounds.at(static_cast<std::size_t>(logical * setup.T() - 1)).states_after.at(p.slot());
}

} // namespace

bool nonfaulty_in_round(const Trace &trace, const Setup &setup, ProcessorId p, int logical_round)
{
    const int end = logical_round * setup.T();
    return clean_between(trace, p, end - setup.K() + 1, end);
}

bool reliable_index(const Trace &trace, const Setup &setup, int R)
{
    const int T = setup.T();
    const int K = setup.K();
    if (R < 1 || R > setup.n())
        return false;
    if (R == 1)
        return clean_between(trace, kSource, 1, K);
    const int mid = (2 * R - 2) * T;
    return clean_between(trace, ProcessorId(R), mid - K + 1, mid + K);
}

std::optional<int> first_reliable_index(const Trace &trace, const Setup &setup)
{
    for (int R = 1; R <= setup.n(); ++R)
        if (reliable_index(trace, setup, R))
            return R;
    return std::nullopt;
}

Verdict check_agreement(const Trace &trace, const Setup &setup)
{
    Verdict v;
    const int n = setup.n();
    if (trace.rounds.empty())
    {
        v.notes.push_back("empty trace");
        return v;
    }
    std::vector<ProcessorId> clean;
    for (int p = 1; p <= n; ++p)
    {
        bool ever = false;
        for (const RoundTrace &rt : trace.rounds)
            ever = ever || std::binary_search(rt.controlled.begin(), rt.controlled.end(), ProcessorId(p));
        if (!ever)
            clean.emplace_back(p);
    }
    const auto &final_states = trace.rounds.back().states_after;

    if (clean.empty())
    {
        v.mba1prime = Status::Vacuous;
        v.notes.push_back("every processor was controlled at least once");
    }
    else
    {
        v.mba1prime = Status::Pass;
        std::optional<Value> common;
        for (ProcessorId p : clean)
        {
            const auto &d = final_states[p.slot()].decided;
            if (!d)
            {
                v.mba1prime = Status::Fail;
                v.notes.push_back("p" + std::to_string(p.index) + " never decided");
            }
            else if (!common)
            {
                common = d;
            }
            else if (*common != *d)
            {
                v.mba1prime = Status::Fail;
                v.notes.push_back("p" + std::to_string(p.index) + " decided " + d->to_string() + ", others " +
                                  common->to_string());
            }
        }
        if (v.mba1prime == Status::Pass)
            v.agreed_value = common;
    }

    const bool source_clean = std::find(clean.begin(), clean.end(), kSource) != clean.end();
    if (!source_clean)
    {
        v.mba2 = Status::Vacuous;
    }
    else
    {
        v.mba2 = Status::Pass;
        for (ProcessorId p : clean)
        {
            const auto &d = final_states[p.slot()].decided;
            if (!d || *d != setup.source_value)
            {
                v.mba2 = Status::Fail;
                v.notes.push_back("p" + std::to_string(p.index) + " did not decide the source value");
            }
        }
    }

    if (auto R = first_reliable_index(trace, setup))
    {
        v.first_stable_round = 2 * *R;
        v.stable = true;
        const int last = logical_rounds_in(trace, setup);
        for (int r = 2 * *R; r <= last && *v.stable; ++r)
        {
            std::optional<Value> common;
            for (int p = 1; p <= n; ++p)
            {
                ProcessorId id(p);
                if (!nonfaulty_in_round(trace, setup, id, r))
                    continue;
                const auto &d = state_at_logical(trace, setup, id, r).decided;
                bool good = d.has_value() && (!common || *common == *d) && (*R != 1 || *d == setup.source_value);
                if (!good)
                {
                    v.stable = false;
                    v.notes.push_back("agreement from round " + std::to_string(2 * *R) + " broken at round " +
                                      std::to_string(r) + " by p" + std::to_string(p));
                    break;
                }
                common = d;
            }
        }
    }
    else
    {
        v.notes.push_back("no index R with p_R non-faulty in its window");
    }
    return v;
}

std::vector<std::string> check_claim(const Trace &trace, const Setup &setup)
{
    std::vector<std::string> out;
    const int last = logical_rounds_in(trace, setup);
    for (int R = 2; R <= setup.n() && 2 * R - 1 <= last; ++R)
    {
        if (!reliable_index(trace, setup, R))
            continue;
        const int r = 2 * R - 1;
        std::optional<Value> star;
        for (int p = 1; p <= setup.n(); ++p)
        {
            ProcessorId id(p);
            if (!nonfaulty_in_round(trace, setup, id, r))
                continue;
            const ProcessorState &s = state_at_logical(trace, setup, id, r);
            if (s.a != s.b || (star && *star != s.a))
            {
                out.push_back("R=" + std::to_string(R) + ": p" + std::to_string(p) + " ends round " +
                              std::to_string(r) + " with (" + s.a.to_string() + "," + s.b.to_string() + ")" +
                              (star ? ", expected " + star->to_string() : std::string()));
                break;
            }
            star = s.a;
        }
    }
    return out;
}

Indistinguishability compare_views(const Trace &a, const Trace &b, const std::vector<ProcessorId> &observers)
{
    Indistinguishability result;
    std::vector<View> va;
    std::vector<View> vb;
    for (ProcessorId p : observers)
    {
        va.push_back(view_of(a, p));
        vb.push_back(view_of(b, p));
    }
    const std::size_t rounds = std::max(a.rounds.size(), b.rounds.size());
    for (std::size_t r = 0; r < rounds; ++r)
    {
        for (std::size_t i = 0; i < observers.size(); ++i)
        {
            const auto &ra = va[i].rounds;
            const auto &rb = vb[i].rounds;
            if (r >= ra.size() || r >= rb.size())
            {
                result.identical = false;
                result.first = Divergence{static_cast<int>(r) + 1, observers[i], "length"};
                return result;
            }
            if (to_line(ViewRound{ra[r].received, {}}) != to_line(ViewRound{rb[r].received, {}}))
            {
                result.identical = false;
                result.first = Divergence{static_cast<int>(r) + 1, observers[i], "received"};
                return result;
            }
            if (to_line(ra[r].state) != to_line(rb[r].state))
            {
                result.identical = false;
                result.first = Divergence{static_cast<int>(r) + 1, observers[i], "state"};
                return result;
            }
        }
    }
    return result;
}

Indistinguishability check_indistinguishable(const ScenarioPair &pair)
{
    const Setup &x = pair.a.setup;
    const Setup &y = pair.b.setup;
    if (x.n() != y.n() || !(x.network == y.network) || x.rounds != y.rounds)
        throw PreconditionError("scenario pair disagrees on n, network or round count");
    return compare_views(run(pair.a), run(pair.b), pair.observers);
}

} // namespace mobileba::sim
