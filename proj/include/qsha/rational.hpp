#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include <qsha/error.hpp>

namespace qsha {

/// Exact arbitrary-precision rational. Every computation in this library is
/// carried out over these; there is no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Renders in the canonical "p/q" form ("p" when q = 1), always reduced.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p", "p/q", optionally signed. Throws StructuralError on garbage.
inline Rational parse_rational(std::string_view s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(Integer(std::string(s)));
        Integer num{std::string(s.substr(0, slash))};
        Integer den{std::string(s.substr(slash + 1))};
        if (den == 0) throw StructuralError("rational with zero denominator: " + std::string(s));
        return Rational(num, den);
    } catch (const std::exception&) {
        throw StructuralError("cannot parse rational: " + std::string(s));
    }
}

inline Rational rational_pow(Rational base, unsigned long e) {
    Rational acc(1);
    while (e != 0) {
        if (e & 1UL) acc *= base;
        base *= base;
        e >>= 1UL;
    }
    return acc;
}

inline Integer factorial(unsigned n) {
    Integer acc(1);
    for (unsigned i = 2; i <= n; ++i) acc *= i;
    return acc;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer acc(1);
    for (unsigned i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

} // namespace qsha
