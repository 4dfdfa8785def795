#pragma once

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <qsha/cartan.hpp>
#include <qsha/shuffle.hpp>

namespace qsha {

/// Per ordered pair (k,l): the arrow count n, the step d, the number
/// a = n d = -d_k a_kl, and the weight sets S = {a, a-2d, ..., -a+2d},
/// S' = S minus one copy of a. Non-adjacent pairs carry n = d = a = 0 and
/// empty sets.
struct PairData {
    int k = 0, l = 0;
    int n = 0, d = 0, a = 0;
    std::vector<int> S;
    std::vector<int> S_prime;
};

/// The twisted shuffle algebra of a Cartan matrix, with the per-pair
/// arithmetic of the quadratic and Serre relations precomputed.
class YangianContext {
public:
    YangianContext(CartanData cartan, bool corrupt_sign = false)
        : cartan_(std::move(cartan)),
          quiver_(cartan_to_quiver(cartan_)),
          cfg_(extend_quiver(quiver_), default_weights(quiver_, cartan_.D),
               KernelMode::TwistedHbar, corrupt_sign) {
        Integer g(0);
        for (int di : cartan_.D) g = boost::multiprecision::gcd(g, Integer(di));
        d_coprime_ = (g == 1);
        for (int k = 0; k < rank(); ++k)
            for (int l = 0; l < rank(); ++l)
                if (k != l) check_pair_invariants(pair_data(k, l));
    }

    int rank() const { return cartan_.rank(); }
    const CartanData& cartan() const { return cartan_; }
    const QuiverWithSymmetrizer& quiver() const { return quiver_; }
    const KernelConfig& cfg() const { return cfg_; }
    /// Whether gcd(d_i) = 1; the construction does not require it, callers
    /// may want to warn when it fails.
    bool d_relatively_prime() const { return d_coprime_; }

    int cartan_entry(int k, int l) const {
        return cartan_.A.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(l));
    }
    int symmetrizer_entry(int k) const { return cartan_.D.at(static_cast<std::size_t>(k)); }
    bool adjacent(int k, int l) const { return k != l && cartan_entry(k, l) != 0; }

    PairData pair_data(int k, int l) const {
        if (k == l) throw DomainError("pair data needs two distinct vertices");
        PairData p;
        p.k = k;
        p.l = l;
        const int akl = cartan_entry(k, l), alk = cartan_entry(l, k);
        if (akl == 0) return p;
        p.n = std::gcd(akl, alk);
        p.d = symmetrizer_entry(k) * quiver_.symmetrizer(k, l);
        p.a = p.n * p.d;
        for (int i = 1; i <= p.n; ++i) p.S.push_back(p.a - 2 * p.d * (i - 1));
        p.S_prime.assign(p.S.begin() + 1, p.S.end());
        return p;
    }

private:
    void check_pair_invariants(const PairData& p) const {
        if (p.n == 0) return;
        if (p.a != -symmetrizer_entry(p.k) * cartan_entry(p.k, p.l) ||
            p.a != -symmetrizer_entry(p.l) * cartan_entry(p.l, p.k))
            throw InternalError("pair arithmetic broke: a != -d_k a_kl");
        std::vector<int> mh, mhs;
        for (int id : quiver_.arrows_between(p.k, p.l)) {
            mh.push_back(cfg_.weights.arrow[static_cast<std::size_t>(id)]);
            mhs.push_back(cfg_.weights.reversed[static_cast<std::size_t>(id)]);
        }
        std::vector<int> s = p.S;
        std::sort(s.begin(), s.end());
        std::sort(mh.begin(), mh.end());
        std::sort(mhs.begin(), mhs.end());
        if (mh != s || mhs != s)
            throw InternalError("pair arithmetic broke: S != {m_h} or {m_h*}");
    }

    CartanData cartan_;
    QuiverWithSymmetrizer quiver_;
    KernelConfig cfg_;
    bool d_coprime_ = false;
};

inline YangianContext build_context(CartanData cartan, bool corrupt_sign = false) {
    return YangianContext(std::move(cartan), corrupt_sign);
}

namespace detail {

inline MPoly hbar_poly() { return MPoly::variable(Variable::param(Param::hbar)); }

/// hbar / (z - lambda(k,1)) with z one of the inert parameters.
inline RatExpr series_image(Param z, int k) {
    return RatExpr(hbar_poly(),
                   MPoly::variable(Variable::param(z)) - MPoly::variable(Variable::lambda(k, 1)));
}

} // namespace detail

struct Y1Result {
    bool relation_ok = false;    // the quadratic identity itself
    bool closed_form_ok = false; // both sides match the evaluated closed form
    std::string residual;        // nonzero difference, when the relation fails

    bool ok() const { return relation_ok && closed_form_ok; }
};

/// The quadratic relation, verified as an identity of rational expressions
/// in u, v, the lambdas, and hbar:
///   (u-v-c) x_k(u) * x_l(v) - (u-v+c) x_l(v) * x_k(u)
///     = hbar ( 1^(k) * x_l(v) - x_l(v) * 1^(k) - x_k(u) * 1^(l) + 1^(l) * x_k(u) )
/// with c = d_k a_kl hbar / 2, star products taken with u, v inert. On top of
/// the identity, both sides are matched against the evaluated closed form:
/// for k != l the product closed form times the common kernel factor, for
/// k = l the 2 d_k hbar^3 expression.
inline Y1Result verify_Y1(const YangianContext& ctx, int k, int l) {
    const int n = ctx.rank();
    const KernelConfig& cfg = ctx.cfg();
    const DimensionVector ek = unit_vector(n, k), el = unit_vector(n, l);

    const RatExpr xk = detail::series_image(Param::u, k);
    const RatExpr xl = detail::series_image(Param::v, l);
    const RatExpr one(1);

    const RatExpr p_kl = shuffle_mul_rat(xk, ek, xl, el, cfg);
    const RatExpr p_lk = shuffle_mul_rat(xl, el, xk, ek, cfg);
    const RatExpr a1 = shuffle_mul_rat(one, ek, xl, el, cfg);
    const RatExpr a2 = shuffle_mul_rat(xl, el, one, ek, cfg);
    const RatExpr a3 = shuffle_mul_rat(xk, ek, one, el, cfg);
    const RatExpr a4 = shuffle_mul_rat(one, el, xk, ek, cfg);

    const MPoly hbar = detail::hbar_poly();
    const MPoly u = MPoly::variable(Variable::param(Param::u));
    const MPoly v = MPoly::variable(Variable::param(Param::v));
    const MPoly c = Rational(ctx.symmetrizer_entry(k) * ctx.cartan_entry(k, l), 2) * hbar;

    const RatExpr lhs = RatExpr(u - v - c) * p_kl - RatExpr(u - v + c) * p_lk;
    const RatExpr rhs = RatExpr(hbar) * (a1 - a2 - a3 + a4);

    Y1Result result;
    const RatExpr diff = lhs - rhs;
    result.relation_ok = diff.is_zero();
    if (!result.relation_ok) result.residual = to_string(diff.normalized());

    const MPoly lam_k = MPoly::variable(Variable::lambda(k, 1));
    if (k != l) {
        const PairData pd = ctx.pair_data(k, l);
        const MPoly lam_l = MPoly::variable(Variable::lambda(l, 1));
        MPoly common = hbar * hbar;
        for (int m : pd.S_prime) common *= lam_l - lam_k + Rational(m, 2) * hbar;
        const RatExpr closed(Rational(pd.a) * hbar * (u - v + lam_l - lam_k),
                             (u - lam_k) * (v - lam_l));
        // the evaluated form is stated for arrows oriented k -> l; for the
        // opposite orientation each of the n rewritten kernel factors flips
        // sign, so both sides carry an extra (-1)^n
        const std::vector<int> between = ctx.quiver().arrows_between(k, l);
        const bool k_to_l =
            between.empty() ||
            ctx.quiver().arrows()[static_cast<std::size_t>(between.front())].from == k;
        const Rational orientation_sign = (!k_to_l && pd.n % 2 != 0) ? -1 : 1;
        const RatExpr expected = RatExpr(MPoly(orientation_sign) * common) * closed;
        result.closed_form_ok = lhs.equals(expected) && rhs.equals(expected);
    } else {
        const MPoly lam1 = lam_k;
        const MPoly lam2 = MPoly::variable(Variable::lambda(k, 2));
        const RatExpr bracket = RatExpr(MPoly(1), v - lam2) - RatExpr(MPoly(1), v - lam1) -
                                RatExpr(MPoly(1), u - lam1) + RatExpr(MPoly(1), u - lam2);
        const RatExpr closed =
            RatExpr(Rational(2 * ctx.symmetrizer_entry(k)) * hbar.pow(3), lam1 - lam2) * bracket;
        result.closed_form_ok = lhs.equals(closed) && rhs.equals(closed);
    }
    return result;
}

struct ModesResult {
    bool ok = true;
    int R = 0;                    // degree bound the check ran at
    int fail_r = -1, fail_s = -1; // first failing coefficient

    std::string describe() const {
        if (ok) return "ok";
        return "failed at (r,s) = (" + std::to_string(fail_r) + "," + std::to_string(fail_s) + ")";
    }
};

/// Series-coefficient check of the quadratic relation: for 0 <= r, s <= R,
/// the coefficient of u^{-r-1} v^{-s-1} is the mode identity
///   [x_{k,r+1}, x_{l,s}] - [x_{k,r}, x_{l,s+1}] = c (x_{k,r} x_{l,s} + x_{l,s} x_{k,r}),
/// computed entirely through polynomial star products; the u^0/v^0 boundary
/// coefficients produced by the prefactors reduce to matching commutators
/// and are compared as well.
inline ModesResult verify_Y1_modes(const YangianContext& ctx, int k, int l, int R) {
    const int n = ctx.rank();
    const KernelConfig& cfg = ctx.cfg();
    const MPoly c =
        Rational(ctx.symmetrizer_entry(k) * ctx.cartan_entry(k, l), 2) * detail::hbar_poly();

    const auto mode_mul = [&](int kk, int r, int ll, int s) {
        return shuffle_mul(mode_element(n, kk, r), mode_element(n, ll, s), cfg).value;
    };

    for (int r = 0; r <= R; ++r) {
        for (int s = 0; s <= R; ++s) {
            const MPoly lhs = (mode_mul(k, r + 1, l, s) - mode_mul(l, s, k, r + 1)) -
                              (mode_mul(k, r, l, s + 1) - mode_mul(l, s + 1, k, r));
            const MPoly rhs = c * (mode_mul(k, r, l, s) + mode_mul(l, s, k, r));
            if (lhs != rhs) return {false, R, r, s};
        }
    }
    // boundary coefficients: the commutator terms of the two sides coincide
    for (int s = 0; s <= R; ++s) {
        const MPoly left = mode_mul(k, 0, l, s) - mode_mul(l, s, k, 0);
        const MPoly right = mode_mul(k, 0, l, s) - mode_mul(l, s, k, 0);
        if (left != right) return {false, R, 0, s};
    }
    for (int r = 0; r <= R; ++r) {
        const MPoly left = mode_mul(k, r, l, 0) - mode_mul(l, 0, k, r);
        const MPoly right = mode_mul(k, r, l, 0) - mode_mul(l, 0, k, r);
        if (left != right) return {false, R, r, 0};
    }
    return {true, R, -1, -1};
}

struct SerreResult {
    bool ok = false;
    MPoly residual;
    DimensionVector grade;
};

/// The reduced Serre relation (Y2'): the alternating binomial sum
///   sum_p (-1)^p C(N,p) x_{k,0}^{*p} * x_{l,0} * x_{k,0}^{*(N-p)},  N = 1 - a_kl,
/// must be the zero polynomial in grade N e_k + e_l. For non-adjacent
/// distinct vertices the sum degenerates to the commutativity of x_{k,0}
/// and x_{l,0}, which is what gets checked.
inline SerreResult verify_serre(const YangianContext& ctx, int k, int l) {
    if (k == l) throw DomainError("the Serre relation needs distinct vertices");
    const int n = ctx.rank();
    const KernelConfig& cfg = ctx.cfg();
    const ShuffleElement xk0 = one_at(n, k), xl0 = one_at(n, l);

    SerreResult result;
    if (ctx.cartan_entry(k, l) == 0) {
        const ShuffleElement ab = shuffle_mul(xk0, xl0, cfg);
        const ShuffleElement ba = shuffle_mul(xl0, xk0, cfg);
        result.grade = ab.grade;
        result.residual = ab.value - ba.value;
        result.ok = result.residual.is_zero();
        return result;
    }

    const int N = 1 - ctx.cartan_entry(k, l);
    result.grade = scale(unit_vector(n, k), N) + unit_vector(n, l);
    MPoly sum;
    for (int p = 0; p <= N; ++p) {
        const ShuffleElement t = shuffle_mul(
            shuffle_mul(star_power(xk0, p, cfg), xl0, cfg), star_power(xk0, N - p, cfg), cfg);
        if (t.grade != result.grade) throw InternalError("Serre term landed in the wrong grade");
        const Rational coeff =
            Rational(binomial(static_cast<unsigned>(N), static_cast<unsigned>(p))) *
            (p % 2 == 0 ? 1 : -1);
        sum += coeff * t.value;
    }
    result.residual = std::move(sum);
    result.ok = result.residual.is_zero();
    return result;
}

struct ClosedFormsResult {
    bool star_ok = true;  // iterated star powers match the closed form
    bool mixed_ok = true; // x^{*n} * x_{l,0} matches the product form
    bool assoc_ok = true; // the p,q-fold products match the direct formula
    bool ok() const { return star_ok && mixed_ok && assoc_ok; }

    std::string describe() const {
        if (ok()) return "ok";
        std::string s = "failed:";
        if (!star_ok) s += " star-power";
        if (!mixed_ok) s += " mixed-product";
        if (!assoc_ok) s += " two-sided-product";
        return s;
    }
};

namespace detail {

/// The factor the arrow kernel contributes when x_{k,0}^{*p} (slots i <= p
/// of color k) multiplies x_{l,0} from the left; depends on the arrow
/// orientation between k and l. `m` runs over S.
inline MPoly mixed_factor_left(const YangianContext& ctx, int k, int l, int slot, int m) {
    const MPoly lk = MPoly::variable(Variable::lambda(k, slot));
    const MPoly ll = MPoly::variable(Variable::lambda(l, 1));
    const MPoly shift = Rational(m, 2) * hbar_poly();
    const bool k_to_l = !ctx.quiver().arrows_between(k, l).empty() &&
                        ctx.quiver()
                                .arrows()[static_cast<std::size_t>(
                                    ctx.quiver().arrows_between(k, l).front())]
                                .from == k;
    // arrows k -> l contribute lambda^(l) - lambda^(k)_i + m hbar/2; for the
    // opposite orientation the rewritten twisted factor flips every sign
    return k_to_l ? (ll - lk + shift) : (lk - ll - shift);
}

/// Same for multiplication by x_{k,0}^{*q} from the right (Eq. 3* pattern):
/// the shift enters with the opposite sign.
inline MPoly mixed_factor_right(const YangianContext& ctx, int k, int l, int slot, int m) {
    const MPoly lk = MPoly::variable(Variable::lambda(k, slot));
    const MPoly ll = MPoly::variable(Variable::lambda(l, 1));
    const MPoly shift = Rational(m, 2) * hbar_poly();
    const bool k_to_l = !ctx.quiver().arrows_between(k, l).empty() &&
                        ctx.quiver()
                                .arrows()[static_cast<std::size_t>(
                                    ctx.quiver().arrows_between(k, l).front())]
                                .from == k;
    return k_to_l ? (ll - lk - shift) : (lk - ll + shift);
}

} // namespace detail

/// Cross-checks the three closed product formulas of the twisted algebra,
/// each computed independently of the shuffle-product machinery:
///  (i)  x_{k,0}^{*n} equals the symmetrized product over slot pairs of
///       (lambda_ij + d_k hbar)/lambda_ij, evaluated by common-denominator
///       summation (and equals n! for n = 2, 3);
///  (ii) x_{k,0}^{*n} * x_{l,0} equals that constant times the pair kernel
///       product over slots and S;
///  (iii) (x_{k,0}^{*p} * x_{l,0}) * x_{k,0}^{*q} equals the direct
///       shuffle-formula expansion assembled from (i) and (ii).
inline ClosedFormsResult verify_closed_forms(const YangianContext& ctx, int k,
                                             std::optional<int> l_opt, int star_bound = 4,
                                             int pq_bound = 4) {
    const int n = ctx.rank();
    const KernelConfig& cfg = ctx.cfg();
    const int dk = ctx.symmetrizer_entry(k);
    const MPoly hbar = detail::hbar_poly();
    ClosedFormsResult result;

    const auto star_closed_form = [&](int m) {
        RatExpr prod(1);
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) {
                const MPoly diff = MPoly::variable(Variable::lambda(k, i)) -
                                   MPoly::variable(Variable::lambda(k, j));
                prod *= RatExpr(diff + Rational(dk) * hbar, diff);
            }
        return symmetrize(prod, scale(unit_vector(n, k), m));
    };

    for (int m = 1; m <= star_bound; ++m) {
        const ShuffleElement power = star_power(one_at(n, k), m, cfg);
        const RatExpr closed = star_closed_form(m);
        if (!RatExpr(power.value).equals(closed)) result.star_ok = false;
        if ((m == 2 || m == 3) && !closed.equals(RatExpr(Rational(factorial(unsigned(m))))))
            result.star_ok = false;
    }

    if (!l_opt) return result;
    const int l = *l_opt;
    const PairData pd = ctx.pair_data(k, l);

    const auto mixed_closed_form = [&](int m) {
        MPoly expected(Rational(factorial(static_cast<unsigned>(m))));
        for (int i = 1; i <= m; ++i)
            for (int mm : pd.S) expected *= detail::mixed_factor_left(ctx, k, l, i, mm);
        return expected;
    };

    for (int m = 1; m <= star_bound; ++m) {
        const ShuffleElement lhs = shuffle_mul(star_power(one_at(n, k), m, cfg), one_at(n, l), cfg);
        if (lhs.value != mixed_closed_form(m)) result.mixed_ok = false;
    }

    for (int p = 0; p <= pq_bound; ++p) {
        for (int q = (p == 0 ? 1 : 0); p + q <= pq_bound; ++q) {
            const ShuffleElement lhs = shuffle_mul(
                shuffle_mul(star_power(one_at(n, k), p, cfg), one_at(n, l), cfg),
                star_power(one_at(n, k), q, cfg), cfg);
            // direct Eq. 3* assembly: A_p(lambda_1..p) q! kernel(p,q) factors
            RatExpr integrand(mixed_closed_form(p));
            integrand *= RatExpr(Rational(factorial(static_cast<unsigned>(q))));
            for (int s = 1; s <= p; ++s)
                for (int t = p + 1; t <= p + q; ++t) {
                    const MPoly diff = MPoly::variable(Variable::lambda(k, s)) -
                                       MPoly::variable(Variable::lambda(k, t));
                    integrand *= RatExpr(diff + Rational(dk) * hbar, diff);
                }
            for (int t = p + 1; t <= p + q; ++t)
                for (int mm : pd.S)
                    integrand *= RatExpr(detail::mixed_factor_right(ctx, k, l, t, mm));
            const DimensionVector v1 = scale(unit_vector(n, k), p) + unit_vector(n, l);
            const DimensionVector v2 = scale(unit_vector(n, k), q);
            const RatExpr rhs = shuffle_sum(integrand, v1, v2);
            if (!RatExpr(lhs.value).equals(rhs)) result.assoc_ok = false;
        }
    }
    return result;
}

/// Direct evaluation of the reduced Serre identity: with N = 1 - a_kl and
/// a = -d_k a_kl,
///   sum_p (-1)^p C(N,p) sum_{sigma in S_N} sigma( prod_{s<=p} (lambda_s - a hbar/2)
///       prod_{t>p} (lambda_t + a hbar/2) prod_{i<j} (lambda_ij + d_k hbar)/lambda_ij ) = 0.
inline SerreResult verify_reduced_serre_identity(const YangianContext& ctx, int k, int l) {
    if (!ctx.adjacent(k, l)) throw DomainError("reduced Serre identity needs an adjacent pair");
    const int n = ctx.rank();
    const PairData pd = ctx.pair_data(k, l);
    const int N = 1 - ctx.cartan_entry(k, l);
    const MPoly hbar = detail::hbar_poly();
    const MPoly half_a = Rational(pd.a, 2) * hbar;
    const DimensionVector grade = scale(unit_vector(n, k), N);

    RatExpr kernel(1);
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) {
            const MPoly diff =
                MPoly::variable(Variable::lambda(k, i)) - MPoly::variable(Variable::lambda(k, j));
            kernel *= RatExpr(diff + Rational(ctx.symmetrizer_entry(k)) * hbar, diff);
        }

    RatExpr total;
    for (int p = 0; p <= N; ++p) {
        MPoly pre(1);
        for (int s = 1; s <= p; ++s)
            pre *= MPoly::variable(Variable::lambda(k, s)) - half_a;
        for (int t = p + 1; t <= N; ++t)
            pre *= MPoly::variable(Variable::lambda(k, t)) + half_a;
        const Rational coeff =
            Rational(binomial(static_cast<unsigned>(N), static_cast<unsigned>(p))) *
            (p % 2 == 0 ? 1 : -1);
        total += RatExpr(coeff) * symmetrize(RatExpr(pre) * kernel, grade);
    }

    SerreResult result;
    result.grade = grade;
    result.ok = total.is_zero();
    if (!result.ok) result.residual = total.normalized().num();
    return result;
}

} // namespace qsha
