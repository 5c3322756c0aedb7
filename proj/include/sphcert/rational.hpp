#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphcert {

// Exact scalars. mpq_class keeps gcd(num, den) = 1 and den >= 1 after
// every operation, which is exactly the Rational invariant we need.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = e < 0 ? -e : e;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0^negative");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// Round half away from zero.
inline Int rat_round(const Rat& x) {
    Rat y = x + Rat(x < 0 ? -1 : 1, 2);
    return x < 0 ? rat_ceil(y - Rat(1)) + 1 : rat_floor(y);
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline size_t bit_size(const Int& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }

inline size_t bit_size(const Rat& a) {
    return bit_size(Int(a.get_num())) + bit_size(Int(a.get_den()));
}

// Parses "p", "p/q", or a plain decimal like "-0.25".
inline Rat parse_rat(const std::string& s) {
    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac = s.size() - dot - 1;
        Rat r(Int(digits.c_str()), int_pow(Int(10), frac));
        r.canonicalize();
        return r;
    }
    Rat r(s);
    r.canonicalize();
    if (r.get_den() <= 0) throw std::invalid_argument("parse_rat: zero or negative denominator");
    return r;
}

inline std::string to_string(const Rat& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace sphcert
