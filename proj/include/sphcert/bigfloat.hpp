#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "sphcert/rational.hpp"

namespace sphcert {

inline mpfr_prec_t digits_to_bits(long digits) {
    // 1 decimal digit ~ 3.33 bits; a small pad keeps printing stable.
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873626 + 16);
}

// Correctly rounded floating point at an explicit precision. Binary
// operations round to the wider of the two operand precisions.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of(double x, mpfr_prec_t bits) { BigFloat r(bits); mpfr_set_d(r.v_, x, MPFR_RNDN); return r; }
    static BigFloat of(long x, mpfr_prec_t bits) { BigFloat r(bits); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static BigFloat of(const Rat& q, mpfr_prec_t bits) { BigFloat r(bits); mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN); return r; }
    static BigFloat of(const Int& z, mpfr_prec_t bits) { BigFloat r(bits); mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN); return r; }
    static BigFloat parse(const std::string& s, mpfr_prec_t bits) {
        BigFloat r(bits);
        if (mpfr_set_str(r.v_, s.c_str(), 0, MPFR_RNDN) != 0) throw std::invalid_argument("BigFloat::parse: " + s);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    void round_to_prec(mpfr_prec_t bits) { mpfr_prec_round(v_, bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits, MPFR_RNDN); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const { return mpfr_zero_p(v_) ? -mpfr_get_emax() : mpfr_get_exp(v_); }

    // The exact rational value (every finite float is dyadic).
    Rat to_rat() const {
        if (!is_finite()) throw std::domain_error("BigFloat::to_rat: not finite");
        if (is_zero()) return Rat(0);
        mpq_class q;
        mpfr_exp_t e;
        mpz_class m;
        e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
        q = m;
        if (e >= 0) {
            mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
        } else {
            mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -e);
        }
        q.canonicalize();
        return q;
    }

    std::string str(long digits = 0) const {
        if (digits <= 0) digits = static_cast<long>(prec() / 3.32) + 2;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend BigFloat operator-(const BigFloat& a) { BigFloat r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }

#define SPHCERT_BF_BINOP(op, fn)                                            \
    friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {     \
        BigFloat r(std::max(a.prec(), b.prec()));                           \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                    \
        return r;                                                           \
    }                                                                       \
    BigFloat& operator op##=(const BigFloat& b) {                           \
        fn(v_, v_, b.v_, MPFR_RNDN);                                        \
        return *this;                                                       \
    }
    SPHCERT_BF_BINOP(+, mpfr_add)
    SPHCERT_BF_BINOP(-, mpfr_sub)
    SPHCERT_BF_BINOP(*, mpfr_mul)
    SPHCERT_BF_BINOP(/, mpfr_div)
#undef SPHCERT_BF_BINOP

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

    friend BigFloat abs(const BigFloat& a) { BigFloat r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    friend BigFloat sqrt(const BigFloat& a) { BigFloat r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend BigFloat fma(const BigFloat& a, const BigFloat& b, const BigFloat& c) {
        BigFloat r(std::max(std::max(a.prec(), b.prec()), c.prec()));
        mpfr_fma(r.v_, a.v_, b.v_, c.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow_si(const BigFloat& a, long e) { BigFloat r(a.prec()); mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN); return r; }
    friend BigFloat pow2(long e, mpfr_prec_t bits) { BigFloat r(bits); mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN); return r; }
    friend BigFloat pow10(long e, mpfr_prec_t bits) {
        BigFloat r(bits);
        mpfr_ui_pow_ui(r.raw(), 10, e >= 0 ? e : -e, MPFR_RNDN);
        if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

}  // namespace sphcert
