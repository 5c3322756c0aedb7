#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "sphcert/bigfloat.hpp"
#include "sphcert/matrix.hpp"

namespace sphcert {

struct SingularMatrixError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InsufficientRankError : std::domain_error {
    size_t achieved;
    explicit InsufficientRankError(size_t r)
        : std::domain_error("insufficient rank in column pool: " + std::to_string(r)), achieved(r) {}
};

// Row Hermite normal form: T * N = [H; 0] with T unimodular and H a full-row-rank
// staircase with positive pivots and reduced entries above them. With
// append_identity the transform is produced by running the reduction on
// [N | I], so the rows of T complementary to the kernel part come out reduced.
struct HnfResult {
    ZMat H;     // r x cols, r = rank(N)
    ZMat T;     // rows x rows, unimodular
};
HnfResult hnf_row(const ZMat& N, bool append_identity);

// Lattice basis reduction on the rows of B (independent rows required).
ZMat lll_reduce(const ZMat& B, const Rat& delta = Rat(3, 4));

// Exact solution of A x = b via p-adic lifting; verifies A x = b before returning.
std::vector<Rat> dixon_solve(const QMat& A, const std::vector<Rat>& b, std::mt19937_64& rng);

// Indices (subset of pool) of full-row-rank-many columns that are independent mod p.
std::vector<size_t> independent_columns_mod_p(const QMat& A, const std::vector<size_t>& pool, uint64_t p);

// round(x * den) / den, computed exactly from the dyadic value of x.
Rat nearest_rational(const BigFloat& x, const Int& den);

// Best rational p/q with q <= max_den and |x - p/q| <= tol, if one exists.
std::optional<Rat> recognize_rational(const Rat& x, const Int& max_den, const Rat& tol);
inline std::optional<Rat> recognize_rational(const BigFloat& x, const Int& max_den, const Rat& tol) {
    return recognize_rational(x.to_rat(), max_den, tol);
}

// Rational y = n/d with n = y*d mod m, |n| <= bound, 0 < d <= bound; standard
// half-Euclid reconstruction. Returns nullopt when no such fraction exists.
std::optional<Rat> rational_reconstruction(const Int& value, const Int& modulus);

uint64_t random_prime62(std::mt19937_64& rng);

// Dense linear algebra mod a word-sized prime.
class ModMatrix {
  public:
    ModMatrix(size_t rows, size_t cols, uint64_t p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}
    uint64_t& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    uint64_t operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint64_t p() const { return p_; }

    // Gauss-Jordan; returns pivot columns.
    std::vector<size_t> rref_in_place();

    static uint64_t mod_of(const Int& v, uint64_t p);
    // num/den mod p; throws std::domain_error when p divides den.
    static uint64_t mod_of(const Rat& v, uint64_t p);
    static uint64_t inv_mod(uint64_t a, uint64_t p);
    static uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }

  private:
    size_t rows_, cols_;
    uint64_t p_;
    std::vector<uint64_t> a_;
};

}  // namespace sphcert
