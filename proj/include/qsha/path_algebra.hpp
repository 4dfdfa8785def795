#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <qsha/quiver.hpp>
#include <qsha/rational.hpp>

namespace qsha {

/// A path in the extended quiver. Generators are stored left to right but
/// compose right to left, like linear maps: in the cycle B_1 h h* on
///
///        h                 h*: 1 -> 0         B_1 h h*:
///   0 -------> 1           h : 0 -> 1
///        <------            B_1: 1 -> 1     1 --h*--> 0 --h--> 1 --B_1--> 1
///        h*
///
/// the reversal h* acts first, then h, then the loop, so the whole word is a
/// cycle at the target vertex of h. Source and target of a stored word are
/// out(last generator) and inc(first generator). The empty path is the
/// idempotent e_i of its vertex.
class Path {
public:
    /// Identity path at a vertex.
    explicit Path(int vertex) : source_(vertex), target_(vertex) {}

    /// Builds a path from generators, validating composability against the
    /// quiver: out(a_i) = inc(a_{i+1}) for consecutive generators.
    Path(const ExtendedQuiver& eq, std::vector<Generator> gens) : gens_(std::move(gens)) {
        if (gens_.empty()) throw StructuralError("empty path needs an explicit vertex");
        for (std::size_t i = 0; i + 1 < gens_.size(); ++i)
            if (eq.source(gens_[i]) != eq.target(gens_[i + 1]))
                throw StructuralError("generators do not compose: " + to_string(gens_[i]) +
                                      " after " + to_string(gens_[i + 1]));
        source_ = eq.source(gens_.back());
        target_ = eq.target(gens_.front());
    }

    /// Trusted constructor for already-validated pieces of paths.
    static Path from_parts(int source, int target, std::vector<Generator> gens) {
        Path p(source);
        p.target_ = target;
        p.gens_ = std::move(gens);
        return p;
    }

    int source() const { return source_; }
    int target() const { return target_; }
    bool is_cycle() const { return source_ == target_; }
    std::size_t length() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }

    /// p.compose(q) is "q first, then p"; nullopt when the endpoints do not
    /// match (the product vanishes in the path algebra).
    std::optional<Path> compose(const Path& rhs) const {
        if (rhs.target_ != source_) return std::nullopt;
        std::vector<Generator> gens = gens_;
        gens.insert(gens.end(), rhs.gens_.begin(), rhs.gens_.end());
        return Path::from_parts(rhs.source_, target_, std::move(gens));
    }

    /// The cyclic rotation class representative: the lexicographically least
    /// rotation of the generator sequence. Only meaningful for cycles.
    Path canonical_rotation(const ExtendedQuiver& eq) const {
        if (!is_cycle() || gens_.size() <= 1) return *this;
        std::size_t best = 0;
        for (std::size_t r = 1; r < gens_.size(); ++r) {
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                const Generator& a = gens_[(r + i) % gens_.size()];
                const Generator& b = gens_[(best + i) % gens_.size()];
                if (a != b) {
                    if (a < b) best = r;
                    break;
                }
            }
        }
        return rotated(eq, best);
    }

    /// Rotation of a cycle moving position r of the generator list to the
    /// front; endpoints are re-derived from the quiver.
    Path rotated(const ExtendedQuiver& eq, std::size_t r) const {
        if (!is_cycle()) throw DomainError("rotating a non-cycle path");
        if (gens_.empty() || r % gens_.size() == 0) return *this;
        r %= gens_.size();
        std::vector<Generator> gens;
        gens.reserve(gens_.size());
        for (std::size_t i = 0; i < gens_.size(); ++i) gens.push_back(gens_[(r + i) % gens_.size()]);
        return Path(eq, std::move(gens));
    }

    friend auto operator<=>(const Path& a, const Path& b) {
        return std::tie(a.source_, a.target_, a.gens_) <=> std::tie(b.source_, b.target_, b.gens_);
    }
    friend bool operator==(const Path& a, const Path& b) {
        return std::tie(a.source_, a.target_, a.gens_) == std::tie(b.source_, b.target_, b.gens_);
    }

private:
    int source_;
    int target_;
    std::vector<Generator> gens_;
};

inline std::string to_string(const Path& p) {
    if (p.generators().empty()) return "e_" + std::to_string(p.source());
    std::string s;
    for (const Generator& g : p.generators()) {
        if (!s.empty()) s += " ";
        s += to_string(g);
    }
    return s;
}

/// Noncommutative polynomial: a finite formal sum of rational multiples of
/// paths, canonically merged. Products of incomposable paths vanish.
class NCPoly {
public:
    NCPoly() = default;

    static NCPoly term(const Rational& c, Path p) {
        NCPoly w;
        w.add_term(c, std::move(p));
        return w;
    }

    const std::map<Path, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Rational& c, Path p) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(p), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& rhs) {
        for (const auto& [p, c] : rhs.terms_) add_term(c, p);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& rhs) {
        for (const auto& [p, c] : rhs.terms_) add_term(-c, p);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator-(const NCPoly& a) {
        NCPoly r;
        for (const auto& [p, c] : a.terms_) r.add_term(-c, p);
        return r;
    }
    friend NCPoly operator*(const Rational& c, const NCPoly& a) {
        NCPoly r;
        for (const auto& [p, k] : a.terms_) r.add_term(c * k, p);
        return r;
    }

    /// Bilinear product; incomposable path products are dropped.
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r;
        for (const auto& [p, c] : a.terms_)
            for (const auto& [q, d] : b.terms_)
                if (auto pq = p.compose(q)) r.add_term(c * d, std::move(*pq));
        return r;
    }

    friend bool operator==(const NCPoly&, const NCPoly&) = default;

private:
    std::map<Path, Rational> terms_;
};

inline std::string to_string(const NCPoly& w) {
    if (w.is_zero()) return "0";
    std::string s;
    for (const auto& [p, c] : w.terms()) {
        if (!s.empty()) s += "  +  ";
        s += to_string(c) + " * (" + to_string(p) + ")";
    }
    return s;
}

/// Path consisting of the loop at a vertex raised to a power.
inline Path loop_power(int vertex, int power) {
    return Path::from_parts(vertex, vertex,
                            std::vector<Generator>(static_cast<std::size_t>(power), loop_gen(vertex)));
}

/// The potential of the extended quiver:
///   W^L = sum over arrows h of
///         B_{inc(h)}^{l_{inc(h),out(h)}} h h*  -  B_{out(h)}^{l_{out(h),inc(h)}} h* h.
inline NCPoly build_potential(const ExtendedQuiver& eq) {
    NCPoly w;
    const QuiverWithSymmetrizer& q = eq.base();
    for (int k = 0; k < q.arrow_count(); ++k) {
        const Arrow& a = q.arrows()[static_cast<std::size_t>(k)];
        const int inc = a.to, out = a.from;
        const int l_io = q.symmetrizer(inc, out);
        const int l_oi = q.symmetrizer(out, inc);

        std::vector<Generator> first(static_cast<std::size_t>(l_io), loop_gen(inc));
        first.push_back(arrow_gen(k));
        first.push_back(reversed_gen(k));
        w.add_term(1, Path::from_parts(inc, inc, std::move(first)));

        std::vector<Generator> second(static_cast<std::size_t>(l_oi), loop_gen(out));
        second.push_back(reversed_gen(k));
        second.push_back(arrow_gen(k));
        w.add_term(-1, Path::from_parts(out, out, std::move(second)));
    }
    return w;
}

/// Cyclic derivative: for a cycle u = a_1...a_n and each position with
/// a_i = a, contributes a_{i+1}...a_n a_1...a_{i-1}; extended linearly.
/// Every term of w must be a cycle. The result runs from inc(a) to out(a).
inline NCPoly cyclic_derivative(const ExtendedQuiver& eq, const NCPoly& w, const Generator& a) {
    NCPoly result;
    const int src = eq.target(a); // inc(a)
    const int tgt = eq.source(a); // out(a)
    for (const auto& [u, c] : w.terms()) {
        if (!u.is_cycle()) throw DomainError("cyclic derivative of a non-cycle term");
        const auto& gens = u.generators();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i] != a) continue;
            std::vector<Generator> cut;
            cut.reserve(gens.size() - 1);
            for (std::size_t j = i + 1; j < gens.size(); ++j) cut.push_back(gens[j]);
            for (std::size_t j = 0; j < i; ++j) cut.push_back(gens[j]);
            result.add_term(c, Path::from_parts(src, tgt, std::move(cut)));
        }
    }
    return result;
}

/// True iff every term of the potential contains exactly one generator from
/// the cut set (homogeneity of degree 1 for the cut grading).
inline bool check_cut(const NCPoly& w, const std::set<Generator>& cut) {
    for (const auto& [p, c] : w.terms()) {
        int deg = 0;
        for (const Generator& g : p.generators())
            if (cut.count(g)) ++deg;
        if (deg != 1) return false;
    }
    return true;
}

/// The three closed-form derivative families of the potential, compared
/// term-by-term against cyclic_derivative on every generator:
///   dW/dh   = h* B_{inc}^{l} - B_{out}^{l'} h*
///   dW/dh*  = B_{inc}^{l} h - h B_{out}^{l'}
///   dW/dB_i = sums of B_i^{l-1-e} h h* B_i^e over arrows into i minus the
///             matching sums over arrows out of i.
inline bool verify_closed_form_derivatives(const ExtendedQuiver& eq) {
    const NCPoly w = build_potential(eq);
    const QuiverWithSymmetrizer& q = eq.base();

    for (int k = 0; k < q.arrow_count(); ++k) {
        const Arrow& a = q.arrows()[static_cast<std::size_t>(k)];
        const int inc = a.to, out = a.from;
        const int l_io = q.symmetrizer(inc, out);
        const int l_oi = q.symmetrizer(out, inc);
        const NCPoly h = NCPoly::term(1, Path(eq, {arrow_gen(k)}));
        const NCPoly hs = NCPoly::term(1, Path(eq, {reversed_gen(k)}));
        const NCPoly b_inc = NCPoly::term(1, loop_power(inc, l_io));
        const NCPoly b_out = NCPoly::term(1, loop_power(out, l_oi));

        if (cyclic_derivative(eq, w, arrow_gen(k)) != hs * b_inc - b_out * hs) return false;
        if (cyclic_derivative(eq, w, reversed_gen(k)) != b_inc * h - h * b_out) return false;
    }

    for (int i = 0; i < q.vertex_count(); ++i) {
        NCPoly expected;
        for (int k = 0; k < q.arrow_count(); ++k) {
            const Arrow& a = q.arrows()[static_cast<std::size_t>(k)];
            const NCPoly h = NCPoly::term(1, Path(eq, {arrow_gen(k)}));
            const NCPoly hs = NCPoly::term(1, Path(eq, {reversed_gen(k)}));
            if (a.to == i) {
                const int l = q.symmetrizer(i, a.from);
                for (int e = 0; e < l; ++e)
                    expected += NCPoly::term(1, loop_power(i, l - 1 - e)) * h * hs *
                                NCPoly::term(1, loop_power(i, e));
            }
            if (a.from == i) {
                const int l = q.symmetrizer(i, a.to);
                for (int e = 0; e < l; ++e)
                    expected -= NCPoly::term(1, loop_power(i, l - 1 - e)) * hs * h *
                                NCPoly::term(1, loop_power(i, e));
            }
        }
        if (cyclic_derivative(eq, w, loop_gen(i)) != expected) return false;
    }
    return true;
}

/// Multiset of (canonical rotation, coefficient) pairs of a cycle-supported
/// NCPoly; the invariant under which the Euler identity holds at this level.
inline std::map<std::pair<Path, Rational>, int> rotation_class_multiset(const ExtendedQuiver& eq,
                                                                        const NCPoly& w) {
    std::map<std::pair<Path, Rational>, int> ms;
    for (const auto& [p, c] : w.terms()) ++ms[{p.canonical_rotation(eq), c}];
    return ms;
}

} // namespace qsha
