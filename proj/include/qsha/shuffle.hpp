#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <qsha/quiver.hpp>
#include <qsha/random.hpp>
#include <qsha/ratexpr.hpp>
#include <qsha/symmetrize.hpp>

namespace qsha {

/// Which algebra the kernels belong to: the t-generic shuffle algebra or its
/// sign-twisted specialization t1 = t2 = hbar/2, t3 = -hbar.
enum class KernelMode { GenericT, TwistedHbar };

/// Everything the kernels need: the quiver, a weight function, and the mode.
/// Twisted mode requires the weights to be compatible with the
/// specialization, i.e. check_specialization at (1/2, 1/2, -1).
struct KernelConfig {
    ExtendedQuiver quiver;
    WeightFunction weights;
    KernelMode mode = KernelMode::GenericT;
    /// Test hook: drops the sign twist from the star product, providing a
    /// negative control for the verification suite.
    bool corrupt_sign = false;

    KernelConfig(ExtendedQuiver eq, WeightFunction w, KernelMode m, bool corrupt = false)
        : quiver(std::move(eq)), weights(std::move(w)), mode(m), corrupt_sign(corrupt) {
        const QuiverWithSymmetrizer& q = quiver.base();
        if (static_cast<int>(weights.vertex.size()) != q.vertex_count() ||
            static_cast<int>(weights.arrow.size()) != q.arrow_count() ||
            static_cast<int>(weights.reversed.size()) != q.arrow_count())
            throw StructuralError("weight function does not match the quiver");
        if (mode == KernelMode::TwistedHbar &&
            !check_specialization(q, weights, Rational(1, 2), Rational(1, 2), Rational(-1)))
            throw WeightError("weights are not compatible with the twisted specialization");
    }

    bool twisted() const { return mode == KernelMode::TwistedHbar; }

    /// The additive shift carried by a vertex-weight kernel factor:
    /// m_i t3 generically, -m_i hbar after specialization.
    MPoly vertex_shift(int i) const {
        const int m = weights.vertex.at(static_cast<std::size_t>(i));
        if (twisted()) return Rational(-m) * MPoly::variable(Variable::param(Param::hbar));
        return Rational(m) * MPoly::variable(Variable::param(Param::t3));
    }
    /// m_h t1, or m_h hbar/2 after specialization.
    MPoly arrow_shift(int k) const {
        const int m = weights.arrow.at(static_cast<std::size_t>(k));
        if (twisted()) return Rational(m, 2) * MPoly::variable(Variable::param(Param::hbar));
        return Rational(m) * MPoly::variable(Variable::param(Param::t1));
    }
    /// m_{h*} t2, or m_{h*} hbar/2 after specialization.
    MPoly reversed_shift(int k) const {
        const int m = weights.reversed.at(static_cast<std::size_t>(k));
        if (twisted()) return Rational(m, 2) * MPoly::variable(Variable::param(Param::hbar));
        return Rational(m) * MPoly::variable(Variable::param(Param::t2));
    }
};

/// A graded element of the shuffle algebra: a dimension vector and an
/// S_grade-symmetric polynomial in the variables lambda(i, s), s <= grade^i.
struct ShuffleElement {
    DimensionVector grade;
    MPoly value;
};

/// The identity: 1 in grade 0.
inline ShuffleElement unit_element(int vertex_count) {
    return {zero_vector(vertex_count), MPoly(1)};
}

/// 1^(k): the constant 1 in grade e_k.
inline ShuffleElement one_at(int vertex_count, int k) {
    return {unit_vector(vertex_count, k), MPoly(1)};
}

/// The image of the mode x_{k,r}: (lambda^(k))^r in grade e_k.
inline ShuffleElement mode_element(int vertex_count, int k, int r) {
    return {unit_vector(vertex_count, k), MPoly::variable(Variable::lambda(k, 1), r)};
}

namespace detail {

inline MPoly lambda1(int color, int slot) { return MPoly::variable(Variable::lambda(color, slot)); }

/// lambda''^i_t - lambda'^i_s in the ambient variables, i.e.
/// lambda(i, v1^i + t) - lambda(i, s).
inline MPoly primed_difference(int i, int s, int t, const DimensionVector& v1) {
    return lambda1(i, v1[static_cast<std::size_t>(i)] + t) - lambda1(i, s);
}

} // namespace detail

/// The exponent of the sign twist: sum over arrows of v1^{inc(h)} v2^{out(h)}.
inline int twist_exponent(const DimensionVector& v1, const DimensionVector& v2,
                          const ExtendedQuiver& eq) {
    int e = 0;
    for (const Arrow& a : eq.base().arrows())
        e += v1.at(static_cast<std::size_t>(a.to)) * v2.at(static_cast<std::size_t>(a.from));
    return e;
}

/// Numerator of fac1: product over colors and slot pairs of the linear form
/// with the vertex-weight shift. Generic mode per the untwisted kernel,
/// twisted mode per the rewritten kernel with both signs flipped.
inline MPoly fac1_numerator(const DimensionVector& v1, const DimensionVector& v2,
                            const KernelConfig& cfg) {
    if (v1.size() != v2.size()) throw StructuralError("dimension vectors of different length");
    MPoly p(1);
    for (int i = 0; i < static_cast<int>(v1.size()); ++i) {
        const MPoly shift = cfg.vertex_shift(i);
        for (int s = 1; s <= v1[static_cast<std::size_t>(i)]; ++s)
            for (int t = 1; t <= v2[static_cast<std::size_t>(i)]; ++t) {
                const MPoly diff = detail::primed_difference(i, s, t, v1);
                p *= cfg.twisted() ? (-diff - shift) : (diff + shift);
            }
    }
    return p;
}

inline MPoly fac1_denominator(const DimensionVector& v1, const DimensionVector& v2,
                              const KernelConfig& cfg) {
    if (v1.size() != v2.size()) throw StructuralError("dimension vectors of different length");
    MPoly p(1);
    for (int i = 0; i < static_cast<int>(v1.size()); ++i)
        for (int s = 1; s <= v1[static_cast<std::size_t>(i)]; ++s)
            for (int t = 1; t <= v2[static_cast<std::size_t>(i)]; ++t) {
                const MPoly diff = detail::primed_difference(i, s, t, v1);
                p *= cfg.twisted() ? -diff : diff;
            }
    return p;
}

/// The rational kernel attached to the vertex loops.
inline RatExpr fac1(const DimensionVector& v1, const DimensionVector& v2,
                    const KernelConfig& cfg) {
    return RatExpr(fac1_numerator(v1, v2, cfg), fac1_denominator(v1, v2, cfg));
}

/// The polynomial kernel attached to the arrows. In twisted mode this is the
/// sign-twisted version, equal to (-1)^{twist_exponent} times the
/// specialized generic kernel.
inline MPoly fac2(const DimensionVector& v1, const DimensionVector& v2, const KernelConfig& cfg) {
    const QuiverWithSymmetrizer& q = cfg.quiver.base();
    if (static_cast<int>(v1.size()) != q.vertex_count() ||
        static_cast<int>(v2.size()) != q.vertex_count())
        throw StructuralError("grade length does not match the quiver");
    MPoly p(1);
    for (int k = 0; k < q.arrow_count(); ++k) {
        const Arrow& arw = q.arrows()[static_cast<std::size_t>(k)];
        const int out = arw.from, inc = arw.to;
        const MPoly w1 = cfg.arrow_shift(k);
        for (int s = 1; s <= v1[static_cast<std::size_t>(out)]; ++s)
            for (int t = 1; t <= v2[static_cast<std::size_t>(inc)]; ++t)
                p *= detail::lambda1(inc, v1[static_cast<std::size_t>(inc)] + t) -
                     detail::lambda1(out, s) + w1;
        const MPoly w2 = cfg.reversed_shift(k);
        for (int s = 1; s <= v1[static_cast<std::size_t>(inc)]; ++s)
            for (int t = 1; t <= v2[static_cast<std::size_t>(out)]; ++t) {
                const MPoly diff = detail::lambda1(out, v1[static_cast<std::size_t>(out)] + t) -
                                   detail::lambda1(inc, s);
                p *= cfg.twisted() ? (-diff - w2) : (diff + w2);
            }
    }
    return p;
}

namespace detail {

/// The master denominator: one factor lambda(i,b) - lambda(i,a) per color
/// and slot pair a < b. Every shuffled kernel denominator divides it up to
/// sign, which lets the whole shuffle sum accumulate over this single
/// denominator followed by one exact division.
inline MPoly master_denominator(const DimensionVector& v) {
    MPoly p(1);
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        for (int a = 1; a <= v[static_cast<std::size_t>(i)]; ++a)
            for (int b = a + 1; b <= v[static_cast<std::size_t>(i)]; ++b)
                p *= lambda1(i, b) - lambda1(i, a);
    return p;
}

/// The complement of the shuffled kernel denominator inside the master
/// denominator (the within-block slot pairs), together with the sign that
/// aligns the shuffled factors with the master's (b > a) orientation.
inline std::pair<MPoly, int> cofactor_and_sign(const DimensionVector& v1,
                                               const DimensionVector& v2, const SlotMap& map,
                                               bool twisted) {
    MPoly cof(1);
    int sign = 1;
    for (int i = 0; i < static_cast<int>(v1.size()); ++i) {
        const int p = v1[static_cast<std::size_t>(i)], q = v2[static_cast<std::size_t>(i)];
        const auto& m = map[static_cast<std::size_t>(i)];
        for (int a = 1; a <= p; ++a)
            for (int b = a + 1; b <= p; ++b) {
                // shuffles preserve order within a block, so m[b] > m[a]
                cof *= lambda1(i, m[static_cast<std::size_t>(b)]) -
                       lambda1(i, m[static_cast<std::size_t>(a)]);
            }
        for (int a = 1; a <= q; ++a)
            for (int b = a + 1; b <= q; ++b)
                cof *= lambda1(i, m[static_cast<std::size_t>(p + b)]) -
                       lambda1(i, m[static_cast<std::size_t>(p + a)]);
        for (int s = 1; s <= p; ++s)
            for (int t = 1; t <= q; ++t) {
                const int ss = m[static_cast<std::size_t>(s)];
                const int tt = m[static_cast<std::size_t>(p + t)];
                const bool matches_master = twisted ? (ss > tt) : (tt > ss);
                if (!matches_master) sign = -sign;
            }
    }
    return {std::move(cof), sign};
}

} // namespace detail

/// The shuffle product. Relabels the second factor through the shift
/// embedding, forms the integrand against the kernels, sums the shuffle
/// orbit over the master denominator, and performs a single exact division.
/// The result must come out polynomial and symmetric; either failure throws
/// InternalError since it indicates a bug, not bad input.
inline ShuffleElement shuffle_mul(const ShuffleElement& f1, const ShuffleElement& f2,
                                  const KernelConfig& cfg) {
    const int n = cfg.quiver.vertex_count();
    if (static_cast<int>(f1.grade.size()) != n || static_cast<int>(f2.grade.size()) != n)
        throw StructuralError("grade length does not match the quiver");
    if (!is_symmetric(f1.value, f1.grade) || !is_symmetric(f2.value, f2.grade))
        throw DomainError("shuffle factors must be symmetric in their grades");

    const DimensionVector& v1 = f1.grade;
    const DimensionVector& v2 = f2.grade;
    const DimensionVector v = v1 + v2;

    const MPoly base =
        f1.value * shift_slots(f2.value, v1) * fac1_numerator(v1, v2, cfg) * fac2(v1, v2, cfg);
    const MPoly delta = detail::master_denominator(v);

    MPoly numerator;
    detail::for_each_shuffle(v1, v2, [&](const SlotMap& map) {
        auto [cof, sign] = detail::cofactor_and_sign(v1, v2, map, cfg.twisted());
        numerator += Rational(sign) * (apply_slot_map(base, map) * cof);
    });

    auto quotient = try_exact_div(numerator, delta);
    if (!quotient)
        throw InternalError("shuffle product failed to be polynomial; kernel bug");
    MPoly result = std::move(*quotient);

    if (cfg.twisted() && cfg.corrupt_sign && twist_exponent(v1, v2, cfg.quiver) % 2 != 0)
        result = -result;
    if (!is_symmetric(result, v))
        throw InternalError("shuffle product failed to be symmetric; kernel bug");
    return {v, std::move(result)};
}

/// The shuffle product on rational expressions; used for the generating
/// series with inert u, v. No polynomiality is asserted: denominators in the
/// inert parameters legitimately survive.
inline RatExpr shuffle_mul_rat(const RatExpr& f1, const DimensionVector& v1, const RatExpr& f2,
                               const DimensionVector& v2, const KernelConfig& cfg) {
    const int n = cfg.quiver.vertex_count();
    if (static_cast<int>(v1.size()) != n || static_cast<int>(v2.size()) != n)
        throw StructuralError("grade length does not match the quiver");
    const RatExpr integrand =
        f1 * shift_slots(f2, v1) * fac1(v1, v2, cfg) * RatExpr(fac2(v1, v2, cfg));
    RatExpr sum;
    detail::for_each_shuffle(
        v1, v2, [&](const SlotMap& map) { sum += apply_slot_map(integrand, map); });
    if (cfg.twisted() && cfg.corrupt_sign && twist_exponent(v1, v2, cfg.quiver) % 2 != 0)
        sum = -sum;
    return sum;
}

/// Left-iterated star power; x^{star 0} is the unit.
inline ShuffleElement star_power(const ShuffleElement& x, int n, const KernelConfig& cfg) {
    if (n < 0) throw DomainError("negative star power");
    if (n == 0) return unit_element(cfg.quiver.vertex_count());
    ShuffleElement acc = x;
    for (int i = 2; i <= n; ++i) acc = shuffle_mul(acc, x, cfg);
    return acc;
}

/// Seeded random S_v-symmetric polynomial: a few random monomials in the
/// grade's variables (with an occasional hbar), symmetrized.
inline MPoly random_symmetric_poly(Sampler& sampler, const DimensionVector& v, int max_degree = 2,
                                   int terms = 3) {
    std::vector<Variable> vars;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        for (int s = 1; s <= v[static_cast<std::size_t>(i)]; ++s)
            vars.push_back(Variable::lambda(i, s));
    MPoly p;
    for (int t = 0; t < terms; ++t) {
        MPoly mono(sampler.rational());
        if (!vars.empty()) {
            const int deg = sampler.integer(0, max_degree);
            for (int d = 0; d < deg; ++d)
                mono *= MPoly::variable(vars[static_cast<std::size_t>(
                    sampler.integer(0, static_cast<int>(vars.size()) - 1))]);
        }
        if (sampler.integer(0, 2) == 0) mono *= MPoly::variable(Variable::param(Param::hbar));
        p += mono;
    }
    MPoly sym = symmetrize(p, v);
    if (sym.is_zero()) sym = MPoly(1);
    return sym;
}

struct AssociativityResult {
    bool ok = true;
    ShuffleElement f, g, h; // witness triple on failure
};

/// (f*g)*h = f*(g*h) for `trials` random symmetric triples in the given
/// grades, exactly.
inline AssociativityResult check_associativity(const KernelConfig& cfg, const DimensionVector& g1,
                                               const DimensionVector& g2, const DimensionVector& g3,
                                               int trials, std::uint64_t seed) {
    Sampler sampler(seed);
    for (int t = 0; t < trials; ++t) {
        ShuffleElement f{g1, random_symmetric_poly(sampler, g1)};
        ShuffleElement g{g2, random_symmetric_poly(sampler, g2)};
        ShuffleElement h{g3, random_symmetric_poly(sampler, g3)};
        const ShuffleElement left = shuffle_mul(shuffle_mul(f, g, cfg), h, cfg);
        const ShuffleElement right = shuffle_mul(f, shuffle_mul(g, h, cfg), cfg);
        if (left.value != right.value) return {false, std::move(f), std::move(g), std::move(h)};
    }
    return {};
}

} // namespace qsha
