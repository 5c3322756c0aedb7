#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <random>

#include "sphcert/factor.hpp"
#include "sphcert/matrix.hpp"
#include "sphcert/poly.hpp"

namespace sphcert {

struct FieldNotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Real algebraic number field Q(g), where g is the unique root of the minimal
// polynomial inside the embedding interval. Degree 1 is Q itself (g = 0).
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    using Ptr = std::shared_ptr<const NumberField>;

    // Verifies irreducibility and that the interval isolates exactly one root.
    static Ptr create(const QPoly& minpoly, RootInterval embedding, std::mt19937_64& rng);
    static Ptr rationals();
    static Ptr quadratic(const Int& d);  // Q(sqrt d), d > 1 squarefree-ish

    int degree() const { return static_cast<int>(minpoly_.degree()); }
    bool is_rational() const { return degree() == 1; }
    const QPoly& minpoly() const { return minpoly_; }
    const RootInterval& embedding() const { return emb_; }

    Ball generator_ball(mpfr_prec_t bits) const;
    BigFloat generator(mpfr_prec_t bits) const;

    // power basis reduction: row k holds the coefficients of g^(degree+k)
    const std::vector<std::vector<Rat>>& power_reduction() const { return powred_; }

    std::string str() const;

  private:
    NumberField(QPoly mp, RootInterval emb);
    QPoly minpoly_;
    RootInterval emb_;
    std::vector<std::vector<Rat>> powred_;
    mutable std::mutex mu_;
    mutable RootInterval refined_;
};

// Element of a number field in the power basis (1, g, ..., g^(d-1)).
// A null field pointer means a plain rational (usable with any field).
class FieldElem {
  public:
    FieldElem() : c_{Rat(0)} {}
    FieldElem(long v) : c_{Rat(v)} {}
    FieldElem(Rat v) : c_{std::move(v)} {}
    FieldElem(NumberField::Ptr F, std::vector<Rat> coeffs);

    static FieldElem generator(const NumberField::Ptr& F);

    const NumberField::Ptr& field() const { return F_; }
    int length() const { return static_cast<int>(c_.size()); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational_value() const;
    Rat to_rat() const;  // throws when the element is not rational

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem& operator+=(const FieldElem& b) { *this = *this + b; return *this; }
    FieldElem& operator-=(const FieldElem& b) { *this = *this - b; return *this; }
    FieldElem& operator*=(const FieldElem& b) { *this = *this * b; return *this; }
    friend bool operator==(const FieldElem& a, const FieldElem& b) { return (a - b).is_zero(); }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    FieldElem inverse() const;

    Ball eval_ball(mpfr_prec_t bits) const;
    BigFloat eval(mpfr_prec_t bits) const;
    // Exact sign via embedding enclosure with precision escalation.
    int sign() const;

    std::string str() const;

    static std::pair<FieldElem, FieldElem> aligned(const FieldElem& a, const FieldElem& b);

  private:
    NumberField::Ptr F_;  // null = rational
    std::vector<Rat> c_;
};

inline bool scalar_is_zero(const FieldElem& x) { return x.is_zero(); }
inline bool operator<(const FieldElem& a, const FieldElem& b) { return (a - b).sign() < 0; }
inline bool operator>(const FieldElem& a, const FieldElem& b) { return (a - b).sign() > 0; }
inline bool operator<=(const FieldElem& a, const FieldElem& b) { return (a - b).sign() <= 0; }
inline bool operator>=(const FieldElem& a, const FieldElem& b) { return (a - b).sign() >= 0; }

using FMatQ = Matrix<FieldElem>;

// ----- recognition of algebraic numbers from high-precision approximations -----

struct RecognitionOptions {
    int max_degree = 8;
    long max_coeff_bits = 256;
};

// Minimal polynomial (primitive, irreducible, positive lead) of the algebraic
// number x approximates, or nullopt when no certified candidate is found.
std::optional<QPoly> recognize_algebraic(const BigFloat& x, int max_degree, long max_coeff_bits,
                                         std::mt19937_64& rng);

// Coefficients over the power basis of F, or nullopt.
std::optional<FieldElem> recognize_in_field(const BigFloat& x, const NumberField::Ptr& F,
                                            long denominator_bits, std::mt19937_64& rng);

// Common field of all samples per the iterative heuristic: start from the
// best single-entry minimal polynomial, absorb unrecognized entries by
// recognizing generator+entry sums. Throws FieldNotFoundError past max_degree.
NumberField::Ptr find_field(const std::vector<BigFloat>& samples, int max_degree,
                            std::mt19937_64& rng, size_t selection = 32);

// Restriction of scalars: A x = b over F becomes A' x' = b' over Q with
// blocks indexed by power-basis coordinates.
std::pair<QMat, std::vector<Rat>> field_system_expand(const FMatQ& A, const std::vector<FieldElem>& b);

// Reassemble field vectors from the expanded rational solution.
std::vector<FieldElem> field_vector_contract(const NumberField::Ptr& F, const std::vector<Rat>& x, size_t cols);

}  // namespace sphcert
