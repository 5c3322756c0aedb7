#pragma once

#include <vector>

#include "sphcert/ball.hpp"
#include "sphcert/matrix.hpp"

namespace sphcert {

// Dense univariate polynomial over Q, coefficients low -> high, no trailing zeros.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(Rat c) { if (c != 0) c_.push_back(std::move(c)); }
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly x() { return QPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
    static QPoly monomial(size_t k, Rat c = Rat(1)) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = std::move(c);
        return QPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rat& operator[](size_t i) const { static const Rat z(0); return i < c_.size() ? c_[i] : z; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& lead() const { return c_.back(); }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a) {
        std::vector<Rat> r = a.c_;
        for (auto& x : r) x = -x;
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const Rat& s, const QPoly& a) {
        if (s == 0) return {};
        std::vector<Rat> r = a.c_;
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    QPoly& operator+=(const QPoly& b) { *this = *this + b; return *this; }
    QPoly& operator-=(const QPoly& b) { *this = *this - b; return *this; }
    QPoly& operator*=(const QPoly& b) { *this = *this * b; return *this; }

    QPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rat> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c_[i];
        return QPoly(std::move(r));
    }

    QPoly pow(unsigned long e) const {
        QPoly r(Rat(1)), base = *this;
        while (e) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }
    BigFloat eval(const BigFloat& x, mpfr_prec_t bits) const {
        BigFloat r(bits);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + BigFloat::of(c_[i], bits);
        return r;
    }
    Ball eval(const Ball& x) const {
        Ball r = Ball::exact(0, x.prec());
        for (size_t i = c_.size(); i-- > 0;) r = r * x + Ball::exact(c_[i], x.prec());
        return r;
    }

    // substitute x -> a*x + b
    QPoly compose_affine(const Rat& a, const Rat& b) const {
        QPoly lin(std::vector<Rat>{b, a});
        QPoly r;
        for (size_t i = c_.size(); i-- > 0;) r = r * lin + QPoly(c_[i]);
        return r;
    }

    std::string str(const std::string& var = "x") const;

  private:
    void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
    std::vector<Rat> c_;
};

// quotient/remainder over Q
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);  // monic gcd

// Integer polynomial with content removed and positive leading coefficient.
std::vector<Int> primitive_z(const QPoly& p);
QPoly from_z(const std::vector<Int>& c);

// Sturm sequences and real root isolation.
struct SturmSequence {
    std::vector<QPoly> seq;
    explicit SturmSequence(const QPoly& p);
    int sign_changes_at(const Rat& x) const;
    int sign_changes_at_inf(int dir) const;  // dir = +1 or -1
    // number of distinct real roots in (a, b]
    int count(const Rat& a, const Rat& b) const;
    int count_all() const;
};

struct RootInterval {
    Rat lo, hi;       // root in [lo, hi]; lo == hi means exact rational root
    bool exact() const { return lo == hi; }
};

// Disjoint isolating intervals for the distinct real roots of p in [a, b].
std::vector<RootInterval> isolate_roots(const QPoly& p, const Rat& a, const Rat& b);

// Shrink an isolating interval until hi - lo <= width (exact root detected on the way).
RootInterval refine_root(const QPoly& p, RootInterval iv, const Rat& width);

BigFloat root_to_bigfloat(const QPoly& p, const RootInterval& iv, mpfr_prec_t bits);

}  // namespace sphcert
