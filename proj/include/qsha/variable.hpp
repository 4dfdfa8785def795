#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <qsha/error.hpp>

namespace qsha {

/// Non-lambda variables, in their fixed order.
enum class Param : std::int32_t { t1 = 0, t2 = 1, t3 = 2, hbar = 3, u = 4, v = 5 };

inline std::string to_string(Param p) {
    switch (p) {
    case Param::t1: return "t1";
    case Param::t2: return "t2";
    case Param::t3: return "t3";
    case Param::hbar: return "hbar";
    case Param::u: return "u";
    case Param::v: return "v";
    }
    throw InternalError("bad parameter");
}

/// A polynomial variable: either a parameter or a lambda variable carrying a
/// color (vertex) and a slot >= 1. The total order puts parameters first in
/// their fixed order, then lambdas by (color, slot).
class Variable {
public:
    static Variable lambda(int color, int slot) {
        if (color < 0 || slot < 1) throw StructuralError("bad lambda variable");
        return Variable(color, slot);
    }
    static Variable param(Param p) { return Variable(-1, static_cast<std::int32_t>(p)); }

    bool is_lambda() const { return color_ >= 0; }
    bool is_param() const { return color_ < 0; }

    int color() const {
        if (!is_lambda()) throw DomainError("parameter variable has no color");
        return color_;
    }
    int slot() const {
        if (!is_lambda()) throw DomainError("parameter variable has no slot");
        return slot_;
    }
    Param param_kind() const {
        if (!is_param()) throw DomainError("lambda variable is not a parameter");
        return static_cast<Param>(slot_);
    }

    friend auto operator<=>(const Variable&, const Variable&) = default;

private:
    Variable(std::int32_t color, std::int32_t slot) : color_(color), slot_(slot) {}

    std::int32_t color_;
    std::int32_t slot_;
};

inline std::string to_string(const Variable& v) {
    if (v.is_param()) return to_string(v.param_kind());
    return "l:" + std::to_string(v.color()) + ":" + std::to_string(v.slot());
}

inline Variable parse_variable(const std::string& s) {
    if (s == "t1") return Variable::param(Param::t1);
    if (s == "t2") return Variable::param(Param::t2);
    if (s == "t3") return Variable::param(Param::t3);
    if (s == "hbar") return Variable::param(Param::hbar);
    if (s == "u") return Variable::param(Param::u);
    if (s == "v") return Variable::param(Param::v);
    if (s.rfind("l:", 0) == 0) {
        const auto second = s.find(':', 2);
        if (second != std::string::npos) {
            try {
                return Variable::lambda(std::stoi(s.substr(2, second - 2)),
                                        std::stoi(s.substr(second + 1)));
            } catch (const std::exception&) {
            }
        }
    }
    throw StructuralError("cannot parse variable: " + s);
}

} // namespace qsha
