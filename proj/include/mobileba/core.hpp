#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mobileba
{

/// Raised when an operation's precondition does not hold.
class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A symbol of the source alphabet, or one of the two sentinels.
///
/// Ordering is canonical: bot0 < bot2 < plain(0) < plain(1) < ...
class Value
{
public:
    constexpr Value() = default;

    static constexpr Value bot0() { return Value(kBot0); }
    static constexpr Value bot2() { return Value(kBot2); }
    static Value plain(int symbol);

    constexpr bool is_plain() const { return code_ >= 0; }
    constexpr bool is_bot0() const { return code_ == kBot0; }
    constexpr bool is_bot2() const { return code_ == kBot2; }

    int symbol() const;
    constexpr int code() const { return code_; }

    std::string to_string() const;
    static Value parse(std::string_view text);

    constexpr auto operator<=>(const Value &) const = default;

private:
    static constexpr int kBot0 = -2;
    static constexpr int kBot2 = -1;

    explicit constexpr Value(int code) : code_(code) {}

    int code_ = kBot0;
};

bool value_eq(Value x, Value y);

/// 1-based processor index; processor 1 is always the source.
struct ProcessorId
{
    int index = 1;

    constexpr ProcessorId() = default;
    constexpr explicit ProcessorId(int i) : index(i) {}

    constexpr std::size_t slot() const { return static_cast<std::size_t>(index - 1); }
    static constexpr ProcessorId from_slot(std::size_t s) { return ProcessorId(static_cast<int>(s) + 1); }

    constexpr auto operator<=>(const ProcessorId &) const = default;
};

inline constexpr ProcessorId kSource{1};

struct PairMessage
{
    Value a;
    Value b;

    constexpr auto operator<=>(const PairMessage &) const = default;
};

/// One copy of a point-to-point transfer travelling along a pre-agreed route.
/// The tag (origin, target, copy) is forgeable; receivers validate it against the plan.
struct RelayCopy
{
    ProcessorId origin;
    ProcessorId target;
    int copy = 0;
    PairMessage payload;

    auto operator<=>(const RelayCopy &) const = default;
};

using RelayBundle = std::vector<RelayCopy>;

/// Whatever travels over a link in one round.
using Payload = std::variant<Value, PairMessage, RelayBundle>;

using Outbox = std::map<ProcessorId, Payload>;
using Inbox = std::vector<std::pair<ProcessorId, Payload>>;

struct RelaySlot
{
    ProcessorId origin;
    ProcessorId target;
    int copy = 0;

    auto operator<=>(const RelaySlot &) const = default;
};

struct RelayBuffers
{
    // copies waiting at an intermediate holder to be forwarded
    std::map<RelaySlot, PairMessage> held;
    // copies that reached their target this transfer window
    std::map<RelaySlot, PairMessage> inbox;

    bool empty() const { return held.empty() && inbox.empty(); }
    bool operator==(const RelayBuffers &) const = default;
};

struct ProcessorState
{
    Value a;
    Value b;
    std::vector<Value> A; // sorted, unique, never contains bot0
    std::vector<Value> B;
    std::optional<Value> decided;
    RelayBuffers relay;

    bool operator==(const ProcessorState &) const = default;
};

std::string to_string(const PairMessage &m);

} // namespace mobileba
