#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <qsha/error.hpp>
#include <qsha/rational.hpp>
#include <qsha/variable.hpp>

namespace qsha {

/// Sparse exponent vector: (variable, positive exponent) pairs sorted by
/// variable.
using Monomial = std::vector<std::pair<Variable, int>>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

/// Graded lexicographic order: total degree first, ties broken by the first
/// variable (in the fixed variable order) whose exponents differ, higher
/// exponent winning.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const int da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (ia->first < ib->first) return false; // a has the earlier variable
            if (ib->first < ia->first) return true;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia;
            ++ib;
        }
        return ia == a.end() && ib != b.end();
    }
};

inline Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first))
            m.push_back(*ia++);
        else if (ia == a.end() || ib->first < ia->first)
            m.push_back(*ib++);
        else {
            m.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return m;
}

/// nullopt unless b divides a variable-wise.
inline std::optional<Monomial> divide_monomials(const Monomial& a, const Monomial& b) {
    Monomial q;
    auto ia = a.begin();
    for (const auto& [v, e] : b) {
        while (ia != a.end() && ia->first < v) q.push_back(*ia++);
        if (ia == a.end() || ia->first != v || ia->second < e) return std::nullopt;
        if (ia->second > e) q.emplace_back(v, ia->second - e);
        ++ia;
    }
    q.insert(q.end(), ia, a.end());
    return q;
}

/// Sparse multivariate polynomial with exact rational coefficients,
/// canonically merged (no zero coefficients, unique keys).
class MPoly {
public:
    MPoly() = default;
    MPoly(const Rational& c) { // NOLINT: implicit by design
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    MPoly(int c) : MPoly(Rational(c)) {} // NOLINT

    static MPoly variable(const Variable& v, int exp = 1) {
        if (exp < 0) throw DomainError("negative exponent");
        MPoly p;
        if (exp == 0)
            p.terms_.emplace(Monomial{}, Rational(1));
        else
            p.terms_.emplace(Monomial{{v, exp}}, Rational(1));
        return p;
    }
    static MPoly term(const Rational& c, Monomial m) {
        MPoly p;
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const std::map<Monomial, Rational, MonoLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_.begin()->second;
    }
    int degree() const {
        if (terms_.empty()) return -1;
        return monomial_degree(terms_.rbegin()->first);
    }

    void add_term(const Rational& c, const Monomial& m) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        guard_term_count(terms_.size());
    }

    MPoly& operator+=(const MPoly& rhs) {
        for (const auto& [m, c] : rhs.terms_) add_term(c, m);
        return *this;
    }
    MPoly& operator-=(const MPoly& rhs) {
        for (const auto& [m, c] : rhs.terms_) add_term(-c, m);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(const MPoly& a) {
        MPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ca * cb, merge_monomials(ma, mb));
        return r;
    }
    MPoly& operator*=(const MPoly& rhs) { return *this = *this * rhs; }

    friend MPoly operator*(const Rational& c, const MPoly& a) {
        MPoly r;
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, c * k);
        return r;
    }
    friend MPoly operator/(const MPoly& a, const Rational& c) {
        if (c == 0) throw DomainError("division by zero");
        return Rational(1) / c * a;
    }

    MPoly pow(unsigned e) const {
        MPoly acc(1);
        MPoly base = *this;
        while (e != 0) {
            if (e & 1U) acc *= base;
            if ((e >>= 1U) != 0) base *= base;
        }
        return acc;
    }

    /// Simultaneous substitution of polynomials for variables. Unbound
    /// variables stay as they are.
    MPoly substitute(const std::map<Variable, MPoly>& bindings) const {
        MPoly r;
        for (const auto& [m, c] : terms_) {
            MPoly t(c);
            for (const auto& [v, e] : m) {
                const auto it = bindings.find(v);
                if (it == bindings.end())
                    t *= MPoly::variable(v, e);
                else
                    t *= it->second.pow(static_cast<unsigned>(e));
            }
            r += t;
        }
        return r;
    }

    /// Applies an injective relabelling of variables; used for slot
    /// permutations and the shift embedding of shuffle products.
    template <class VarMap> MPoly rename(VarMap&& f) const {
        MPoly r;
        for (const auto& [m, c] : terms_) {
            Monomial renamed;
            renamed.reserve(m.size());
            for (const auto& [v, e] : m) renamed.emplace_back(f(v), e);
            std::sort(renamed.begin(), renamed.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            r.add_term(c, renamed);
        }
        return r;
    }

    std::set<Variable> variables() const {
        std::set<Variable> vars;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m) vars.insert(v);
        return vars;
    }

    friend bool operator==(const MPoly&, const MPoly&) = default;

private:
    std::map<Monomial, Rational, MonoLess> terms_;
};

inline std::string to_string(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        s += to_string(v);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        if (!s.empty()) s += " + ";
        if (m.empty())
            s += to_string(c);
        else if (c == 1)
            s += to_string(m);
        else if (c == -1)
            s += "-" + to_string(m);
        else
            s += to_string(c) + "*" + to_string(m);
    }
    return s;
}

/// Exact multivariate division: the quotient q with a = q*b, or nullopt when
/// b does not divide a. Single-divisor division under the graded
/// lexicographic order with no remainder allowed.
inline std::optional<MPoly> try_exact_div(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    MPoly q;
    MPoly rem = a;
    const auto& [lmb, lcb] = *b.terms().rbegin();
    while (!rem.is_zero()) {
        const auto& [lma, lca] = *rem.terms().rbegin();
        const auto mono = divide_monomials(lma, lmb);
        if (!mono) return std::nullopt;
        const MPoly t = MPoly::term(lca / lcb, *mono);
        q += t;
        rem -= t * b;
    }
    return q;
}

inline MPoly exact_div(const MPoly& a, const MPoly& b) {
    auto q = try_exact_div(a, b);
    if (!q)
        throw DivisibilityError("polynomial division left a remainder");
    return std::move(*q);
}

} // namespace qsha
