#pragma once

#include "sphcert/bigfloat.hpp"

namespace sphcert {

struct BallDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Center-radius interval with outward rounding: the result ball always
// contains every exact result of the operation over the operand balls.
class Ball {
  public:
    static constexpr mpfr_prec_t kRadiusPrec = 48;

    Ball() : c_(128), r_(kRadiusPrec) {}
    explicit Ball(BigFloat center) : c_(std::move(center)), r_(kRadiusPrec) {}
    Ball(BigFloat center, BigFloat radius) : c_(std::move(center)), r_(std::move(radius)) {
        if (r_.sign() < 0) throw std::invalid_argument("Ball: negative radius");
    }

    static Ball exact(const Rat& q, mpfr_prec_t bits) {
        Ball b;
        b.c_ = BigFloat(bits);
        int t = mpfr_set_q(b.c_.raw(), q.get_mpq_t(), MPFR_RNDN);
        if (t != 0) b.r_ = half_ulp(b.c_);
        return b;
    }
    static Ball exact(long v, mpfr_prec_t bits) { return Ball(BigFloat::of(v, bits)); }
    static Ball exact(const Int& v, mpfr_prec_t bits) {
        Ball b;
        b.c_ = BigFloat(bits);
        int t = mpfr_set_z(b.c_.raw(), v.get_mpz_t(), MPFR_RNDN);
        if (t != 0) b.r_ = half_ulp(b.c_);
        return b;
    }
    // Interval [lo, hi] given exactly.
    static Ball interval(const Rat& lo, const Rat& hi, mpfr_prec_t bits) {
        Ball m = exact((lo + hi) / 2, bits);
        Ball h = exact((hi - lo) / 2, bits);
        BigFloat r(kRadiusPrec);
        mpfr_add(r.raw(), h.c_.raw(), h.r_.raw(), MPFR_RNDU);
        mpfr_add(r.raw(), r.raw(), m.r_.raw(), MPFR_RNDU);
        return Ball(m.c_, r);
    }

    const BigFloat& center() const { return c_; }
    const BigFloat& radius() const { return r_; }
    mpfr_prec_t prec() const { return c_.prec(); }

    bool contains_zero() const { return mpfr_cmpabs(c_.raw(), r_.raw()) <= 0; }
    bool is_positive() const { return c_.sign() > 0 && !contains_zero(); }
    bool is_negative() const { return c_.sign() < 0 && !contains_zero(); }

    BigFloat lower() const {
        BigFloat l(c_.prec());
        mpfr_sub(l.raw(), c_.raw(), r_.raw(), MPFR_RNDD);
        return l;
    }
    BigFloat upper() const {
        BigFloat u(c_.prec());
        mpfr_add(u.raw(), c_.raw(), r_.raw(), MPFR_RNDU);
        return u;
    }

    friend Ball operator-(const Ball& a) { return Ball(-a.c_, a.r_); }

    friend Ball operator+(const Ball& a, const Ball& b) {
        Ball out;
        out.c_ = BigFloat(std::max(a.prec(), b.prec()));
        int t = mpfr_add(out.c_.raw(), a.c_.raw(), b.c_.raw(), MPFR_RNDN);
        out.r_ = radius_sum(a.r_, b.r_, t ? half_ulp(out.c_) : zero_r());
        return out;
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        Ball out;
        out.c_ = BigFloat(std::max(a.prec(), b.prec()));
        int t = mpfr_sub(out.c_.raw(), a.c_.raw(), b.c_.raw(), MPFR_RNDN);
        out.r_ = radius_sum(a.r_, b.r_, t ? half_ulp(out.c_) : zero_r());
        return out;
    }
    friend Ball operator*(const Ball& a, const Ball& b) {
        Ball out;
        out.c_ = BigFloat(std::max(a.prec(), b.prec()));
        int t = mpfr_mul(out.c_.raw(), a.c_.raw(), b.c_.raw(), MPFR_RNDN);
        // |a||rb| + |b||ra| + ra rb, all rounded up
        BigFloat r(kRadiusPrec), tmp(kRadiusPrec);
        mpfr_abs(tmp.raw(), a.c_.raw(), MPFR_RNDU);
        mpfr_mul(r.raw(), tmp.raw(), b.r_.raw(), MPFR_RNDU);
        mpfr_abs(tmp.raw(), b.c_.raw(), MPFR_RNDU);
        mpfr_fma(r.raw(), tmp.raw(), a.r_.raw(), r.raw(), MPFR_RNDU);
        mpfr_fma(r.raw(), a.r_.raw(), b.r_.raw(), r.raw(), MPFR_RNDU);
        if (t) mpfr_add(r.raw(), r.raw(), half_ulp(out.c_).raw(), MPFR_RNDU);
        out.r_ = r;
        return out;
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        if (b.contains_zero()) throw BallDomainError("Ball division by interval containing zero");
        Ball out;
        out.c_ = BigFloat(std::max(a.prec(), b.prec()));
        int t = mpfr_div(out.c_.raw(), a.c_.raw(), b.c_.raw(), MPFR_RNDN);
        // (ra + rb |a/b|) / (|b| - rb), rounded up
        BigFloat num(kRadiusPrec), den(kRadiusPrec), tmp(kRadiusPrec);
        mpfr_abs(tmp.raw(), out.c_.raw(), MPFR_RNDU);
        mpfr_mul(num.raw(), tmp.raw(), b.r_.raw(), MPFR_RNDU);
        mpfr_add(num.raw(), num.raw(), a.r_.raw(), MPFR_RNDU);
        mpfr_abs(den.raw(), b.c_.raw(), MPFR_RNDD);
        mpfr_sub(den.raw(), den.raw(), b.r_.raw(), MPFR_RNDD);
        mpfr_div(num.raw(), num.raw(), den.raw(), MPFR_RNDU);
        if (t) mpfr_add(num.raw(), num.raw(), half_ulp(out.c_).raw(), MPFR_RNDU);
        out.r_ = num;
        return out;
    }

    Ball& operator+=(const Ball& b) { *this = *this + b; return *this; }
    Ball& operator-=(const Ball& b) { *this = *this - b; return *this; }
    Ball& operator*=(const Ball& b) { *this = *this * b; return *this; }

    // Requires the ball to be strictly positive.
    friend Ball sqrt(const Ball& a) {
        if (!a.is_positive()) throw BallDomainError("Ball sqrt of interval not strictly positive");
        Ball out;
        out.c_ = BigFloat(a.prec());
        int t = mpfr_sqrt(out.c_.raw(), a.c_.raw(), MPFR_RNDN);
        // |sqrt x - sqrt c| <= r / sqrt(c - r)
        BigFloat lo(kRadiusPrec), r(kRadiusPrec);
        mpfr_sub(lo.raw(), a.c_.raw(), a.r_.raw(), MPFR_RNDD);
        mpfr_sqrt(lo.raw(), lo.raw(), MPFR_RNDD);
        mpfr_div(r.raw(), a.r_.raw(), lo.raw(), MPFR_RNDU);
        if (t) mpfr_add(r.raw(), r.raw(), half_ulp(out.c_).raw(), MPFR_RNDU);
        out.r_ = r;
        return out;
    }

    friend Ball pow_ui(const Ball& a, unsigned long e) {
        Ball r = Ball::exact(1, a.prec());
        Ball base = a;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    // x^(p/4) for strictly positive x; covers all (n-2)/4 exponents.
    friend Ball pow_quarter(const Ball& a, unsigned long p) {
        return sqrt(sqrt(pow_ui(a, p)));
    }

  private:
    static BigFloat zero_r() { return BigFloat(kRadiusPrec); }
    static BigFloat half_ulp(const BigFloat& c) {
        BigFloat r(kRadiusPrec);
        if (c.is_zero()) return r;
        mpfr_set_ui_2exp(r.raw(), 1, c.exponent() - c.prec(), MPFR_RNDU);
        return r;
    }
    static BigFloat radius_sum(const BigFloat& a, const BigFloat& b, const BigFloat& c) {
        BigFloat r(kRadiusPrec);
        mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
        mpfr_add(r.raw(), r.raw(), c.raw(), MPFR_RNDU);
        return r;
    }

    BigFloat c_;
    BigFloat r_;
};

}  // namespace sphcert
