#include "mobileba/core.hpp"

#include <charconv>

namespace mobileba
{

Value Value::plain(int symbol)
{
    if (symbol < 0)
    {
        throw PreconditionError("plain symbols are non-negative, got " + std::to_string(symbol));
    }
    return Value(symbol);
}

int Value::symbol() const
{
    if (!is_plain())
    {
        throw PreconditionError("sentinel " + to_string() + " has no symbol");
    }
    return code_;
}

std::string Value::to_string() const
{
    if (is_bot0())
        return "bot0";
    if (is_bot2())
        return "bot2";
    return std::to_string(code_);
}

Value Value::parse(std::string_view text)
{
    if (text == "bot0")
        return bot0();
    if (text == "bot2")
        return bot2();
    int symbol = -1;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), symbol);
    if (ec != std::errc{} || ptr != text.data() + text.size() || symbol < 0)
    {
        throw PreconditionError("not a value: '" + std::string(text) + "'");
    }
    return plain(symbol);
}

bool value_eq(Value x, Value y)
{
    return x == y;
}

std::string to_string(const PairMessage &m)
{
    return "(" + m.a.to_string() + "," + m.b.to_string() + ")";
}

} // namespace mobileba
