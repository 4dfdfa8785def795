#pragma once

#include <string>
#include <utility>

#include <qsha/mpoly.hpp>

namespace qsha {

/// Quotient of two polynomials; the denominator is never zero. Equality is
/// decided by cross-multiplication, so no gcd machinery is needed on the hot
/// path; normalization is optional and idempotent.
class RatExpr {
public:
    RatExpr() : num_(0), den_(1) {}
    RatExpr(MPoly num) : num_(std::move(num)), den_(1) {} // NOLINT: implicit by design
    RatExpr(const Rational& c) : num_(c), den_(1) {}      // NOLINT
    RatExpr(int c) : num_(c), den_(1) {}                  // NOLINT
    RatExpr(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational expression with zero denominator");
        if (num_.is_zero()) den_ = MPoly(1);
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == MPoly(1); }

    friend RatExpr operator+(const RatExpr& a, const RatExpr& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatExpr(a.num_ + b.num_, a.den_);
        // common cases from symmetrization: one denominator divides the other
        if (auto q = try_exact_div(a.den_, b.den_)) return RatExpr(a.num_ + *q * b.num_, a.den_);
        if (auto q = try_exact_div(b.den_, a.den_)) return RatExpr(*q * a.num_ + b.num_, b.den_);
        return RatExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatExpr operator-(const RatExpr& a) { return RatExpr(-a.num_, a.den_); }
    friend RatExpr operator-(const RatExpr& a, const RatExpr& b) { return a + (-b); }

    friend RatExpr operator*(const RatExpr& a, const RatExpr& b) {
        if (a.is_zero() || b.is_zero()) return RatExpr();
        // cross-cancel whole factors when possible to keep sizes down
        MPoly an = a.num_, bd = b.den_;
        if (auto q = try_exact_div(an, bd)) {
            an = std::move(*q);
            bd = MPoly(1);
        }
        MPoly bn = b.num_, ad = a.den_;
        if (auto q = try_exact_div(bn, ad)) {
            bn = std::move(*q);
            ad = MPoly(1);
        }
        return RatExpr(an * bn, ad * bd);
    }

    /// Multiplicative inverse; throws on zero.
    RatExpr inverse() const {
        if (is_zero()) throw DomainError("inverting the zero expression");
        return RatExpr(den_, num_);
    }
    friend RatExpr operator/(const RatExpr& a, const RatExpr& b) { return a * b.inverse(); }

    RatExpr& operator+=(const RatExpr& b) { return *this = *this + b; }
    RatExpr& operator-=(const RatExpr& b) { return *this = *this - b; }
    RatExpr& operator*=(const RatExpr& b) { return *this = *this * b; }

    /// Cross-multiplication equality: n1 d2 - n2 d1 = 0.
    bool equals(const RatExpr& b) const { return num_ * b.den_ == b.num_ * den_; }

    /// Value-preserving canonical scaling: the denominator is made primitive
    /// with a positive leading coefficient, and a denominator that divides
    /// the numerator exactly is cleared. Idempotent.
    RatExpr normalized() const {
        if (num_.is_zero()) return RatExpr();
        if (auto q = try_exact_div(num_, den_)) return RatExpr(std::move(*q));
        const Rational scale = signed_content(den_);
        return RatExpr(num_ / scale, den_ / scale);
    }

private:
    /// content * sign of the leading coefficient; dividing by it makes the
    /// polynomial primitive (integer, coprime coefficients) with positive
    /// leading coefficient.
    static Rational signed_content(const MPoly& p) {
        Integer num_gcd(0), den_lcm(1);
        for (const auto& [m, c] : p.terms()) {
            num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(numerator(c)));
            den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
        }
        Rational content(num_gcd, den_lcm);
        if (p.terms().rbegin()->second < 0) content = -content;
        return content;
    }

    MPoly num_;
    MPoly den_;
};

inline std::string to_string(const RatExpr& r) {
    if (r.is_polynomial()) return to_string(r.num());
    return "(" + to_string(r.num()) + ") / (" + to_string(r.den()) + ")";
}

} // namespace qsha
