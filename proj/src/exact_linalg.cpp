#include "sphcert/exact_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sphcert {

namespace {

// Euclidean column elimination for rows at..end in column c; leaves the
// (unique, up to sign) gcd survivor in row `at`.
void eliminate_column(ZMat& w, size_t at, size_t c) {
    const size_t m = w.rows(), n = w.cols();
    while (true) {
        size_t best = m;
        for (size_t i = at; i < m; ++i)
            if (w(i, c) != 0 &&
                (best == m || mpz_cmpabs(w(i, c).get_mpz_t(), w(best, c).get_mpz_t()) < 0))
                best = i;
        if (best == m) return;
        if (best != at)
            for (size_t j = 0; j < n; ++j) std::swap(w(best, j), w(at, j));
        bool done = true;
        for (size_t i = at + 1; i < m; ++i) {
            if (w(i, c) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w(i, c).get_mpz_t(), w(at, c).get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < n; ++j) w(i, j) -= q * w(at, j);
            if (w(i, c) != 0) done = false;
        }
        if (done) return;
    }
}

void hnf_in_place(ZMat& w, size_t active_cols, std::vector<size_t>* pivots_out) {
    size_t r = 0;
    std::vector<size_t> pivots;
    for (size_t c = 0; c < active_cols && r < w.rows(); ++c) {
        eliminate_column(w, r, c);
        if (w(r, c) == 0) continue;
        if (w(r, c) < 0)
            for (size_t j = 0; j < w.cols(); ++j) w(r, j) = -w(r, j);
        for (size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w(i, c).get_mpz_t(), w(r, c).get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < w.cols(); ++j) w(i, j) -= q * w(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivots_out) *pivots_out = pivots;
}

}  // namespace

HnfResult hnf_row(const ZMat& N, bool append_identity) {
    const size_t m = N.rows(), n = N.cols();
    ZMat w(m, n + m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) w(i, j) = N(i, j);
        w(i, n + i) = 1;
    }
    std::vector<size_t> pivots;
    if (append_identity) {
        // Reduction conditions apply across the appended identity too, which
        // keeps the complementary transform rows small.
        hnf_in_place(w, n + m, &pivots);
    } else {
        hnf_in_place(w, n, &pivots);
    }
    size_t r = 0;
    for (size_t c : pivots)
        if (c < n) ++r;
    HnfResult out;
    out.H = ZMat(r, n);
    out.T = ZMat(m, m);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) out.H(i, j) = w(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out.T(i, j) = w(i, n + j);
    return out;
}

ZMat lll_reduce(const ZMat& B, const Rat& delta) {
    if (delta <= Rat(1, 4) || delta >= 1) throw std::invalid_argument("lll_reduce: delta outside (1/4, 1)");
    const size_t m = B.rows(), n = B.cols();
    if (m <= 1) return B;
    ZMat b = B;
    std::vector<std::vector<Rat>> gso(m, std::vector<Rat>(n));
    std::vector<std::vector<Rat>> mu(m, std::vector<Rat>(m));
    std::vector<Rat> Bn(m);

    auto dotzq = [n](const ZMat& z, size_t i, const std::vector<Rat>& v) {
        Rat s = 0;
        for (size_t j = 0; j < n; ++j) s += z(i, j) * v[j];
        return s;
    };
    auto introduce = [&](size_t k) {
        for (size_t j = 0; j < n; ++j) gso[k][j] = Rat(b(k, j));
        for (size_t j = 0; j < k; ++j) {
            if (Bn[j] == 0) throw std::invalid_argument("lll_reduce: dependent rows");
            mu[k][j] = dotzq(b, k, gso[j]) / Bn[j];
            for (size_t t = 0; t < n; ++t) gso[k][t] -= mu[k][j] * gso[j][t];
        }
        Rat s = 0;
        for (size_t t = 0; t < n; ++t) s += gso[k][t] * gso[k][t];
        Bn[k] = s;
        if (Bn[k] == 0) throw std::invalid_argument("lll_reduce: dependent rows");
    };
    auto red = [&](size_t k, size_t l) {
        Rat a = mu[k][l] < 0 ? -mu[k][l] : mu[k][l];
        if (2 * a <= 1) return;
        Int q = rat_round(mu[k][l]);
        for (size_t j = 0; j < n; ++j) b(k, j) -= q * b(l, j);
        mu[k][l] -= q;
        for (size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
    };

    introduce(0);
    size_t k = 1, kmax = 0;
    while (k < m) {
        if (k > kmax) {
            kmax = k;
            introduce(k);
        }
        red(k, k - 1);
        if (Bn[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1]) {
            // swap rows k-1 and k, patch the orthogonalization in place
            for (size_t j = 0; j < n; ++j) std::swap(b(k, j), b(k - 1, j));
            for (size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            Rat m_ = mu[k][k - 1];
            Rat Bp = Bn[k] + m_ * m_ * Bn[k - 1];
            mu[k][k - 1] = m_ * Bn[k - 1] / Bp;
            std::vector<Rat> bstar = gso[k - 1];
            for (size_t t = 0; t < n; ++t) {
                gso[k - 1][t] = gso[k][t] + m_ * bstar[t];
                gso[k][t] = -mu[k][k - 1] * gso[k][t] + (Bn[k] / Bp) * bstar[t];
            }
            Bn[k] = Bn[k - 1] * Bn[k] / Bp;
            Bn[k - 1] = Bp;
            for (size_t i = k + 1; i <= kmax; ++i) {
                Rat t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m_ * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = k > 1 ? k - 1 : 1;
        } else {
            for (size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    return b;
}

uint64_t ModMatrix::mod_of(const Int& v, uint64_t p) {
    Int r;
    mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return r.get_ui();
}

uint64_t ModMatrix::mod_of(const Rat& v, uint64_t p) {
    uint64_t num = mod_of(Int(v.get_num()), p);
    uint64_t den = mod_of(Int(v.get_den()), p);
    if (den == 0) throw std::domain_error("prime divides a denominator");
    return mulmod(num, inv_mod(den, p), p);
}

uint64_t ModMatrix::inv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(p) : t);
}

std::vector<size_t> ModMatrix::rref_in_place() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t sel = rows_;
        for (size_t i = r; i < rows_; ++i)
            if ((*this)(i, c) != 0) { sel = i; break; }
        if (sel == rows_) continue;
        if (sel != r)
            for (size_t j = c; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(r, j));
        uint64_t inv = inv_mod((*this)(r, c), p_);
        for (size_t j = c; j < cols_; ++j) (*this)(r, j) = mulmod((*this)(r, j), inv, p_);
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            uint64_t f = (*this)(i, c);
            if (f == 0) continue;
            for (size_t j = c; j < cols_; ++j) {
                uint64_t s = mulmod(f, (*this)(r, j), p_);
                (*this)(i, j) = ((*this)(i, j) + p_ - s) % p_;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

uint64_t random_prime62(std::mt19937_64& rng) {
    for (;;) {
        uint64_t c = (rng() | (1ULL << 61) | 1ULL) & ((1ULL << 62) - 1);
        Int z(static_cast<unsigned long>(c));
        if (mpz_probab_prime_p(z.get_mpz_t(), 32)) return c;
    }
}

std::vector<size_t> independent_columns_mod_p(const QMat& A, const std::vector<size_t>& pool, uint64_t p) {
    ModMatrix m(A.rows(), pool.size(), p);
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) m(i, j) = ModMatrix::mod_of(A(i, pool[j]), p);
    auto piv = m.rref_in_place();
    if (piv.size() < A.rows()) throw InsufficientRankError(piv.size());
    std::vector<size_t> out;
    out.reserve(piv.size());
    for (size_t c : piv) out.push_back(pool[c]);
    return out;
}

std::optional<Rat> rational_reconstruction(const Int& value, const Int& modulus) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(modulus / 2).get_mpz_t());
    Int r0 = modulus, r1 = value % modulus;
    if (r1 < 0) r1 += modulus;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (t1 < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound || gcd(r1, t1) != 1) return std::nullopt;
    Rat q(r1, t1);
    q.canonicalize();
    return q;
}

std::vector<Rat> dixon_solve(const QMat& A, const std::vector<Rat>& b, std::mt19937_64& rng) {
    const size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw std::invalid_argument("dixon_solve: shape mismatch");
    if (n == 0) return {};

    // clear denominators per row
    ZMat Ai(n, n);
    std::vector<Int> bi(n);
    for (size_t i = 0; i < n; ++i) {
        Int l = A(i, 0).get_den();
        for (size_t j = 1; j < n; ++j) l = lcm(l, A(i, j).get_den());
        l = lcm(l, b[i].get_den());
        for (size_t j = 0; j < n; ++j) Ai(i, j) = A(i, j).get_num() * (l / A(i, j).get_den());
        bi[i] = b[i].get_num() * (l / b[i].get_den());
    }

    for (int attempt = 0;; ++attempt) {
        uint64_t p = random_prime62(rng);
        ModMatrix lu(n, 2 * n, p);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) lu(i, j) = ModMatrix::mod_of(Ai(i, j), p);
            lu(i, n + i) = 1;
        }
        auto piv = lu.rref_in_place();
        if (piv.size() < n || piv.back() != n - 1) {
            if (attempt >= 3) {
                QMat q(n, n);
                for (size_t i = 0; i < n; ++i)
                    for (size_t j = 0; j < n; ++j) q(i, j) = Rat(Ai(i, j));
                if (rank(q) < n) throw SingularMatrixError("dixon_solve: singular matrix");
            }
            continue;  // unlucky prime
        }
        // inv = A^{-1} mod p
        std::vector<uint64_t> inv(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) inv[i * n + j] = lu(i, n + j);

        Int pz(static_cast<unsigned long>(p));
        std::vector<Int> d = bi, x(n, Int(0));
        Int pk(1);
        std::vector<uint64_t> dm(n), xm(n);
        auto try_finish = [&]() -> std::optional<std::vector<Rat>> {
            std::vector<Rat> sol(n);
            for (size_t i = 0; i < n; ++i) {
                auto r = rational_reconstruction(x[i], pk);
                if (!r) return std::nullopt;
                sol[i] = *r;
            }
            for (size_t i = 0; i < n; ++i) {
                Rat s = 0;
                for (size_t j = 0; j < n; ++j) s += A(i, j) * sol[j];
                if (s != b[i]) return std::nullopt;
            }
            return sol;
        };

        for (size_t step = 0, next_check = 4;; ++step) {
            for (size_t i = 0; i < n; ++i) dm[i] = ModMatrix::mod_of(d[i], p);
            for (size_t i = 0; i < n; ++i) {
                unsigned __int128 acc = 0;
                for (size_t j = 0; j < n; ++j) {
                    acc += static_cast<unsigned __int128>(inv[i * n + j]) * dm[j];
                    if ((j & 15) == 15) acc %= p;
                }
                xm[i] = static_cast<uint64_t>(acc % p);
            }
            for (size_t i = 0; i < n; ++i) x[i] += pk * Int(static_cast<unsigned long>(xm[i]));
            for (size_t i = 0; i < n; ++i) {
                Int acc = d[i];
                for (size_t j = 0; j < n; ++j)
                    if (xm[j]) acc -= Ai(i, j) * Int(static_cast<unsigned long>(xm[j]));
                d[i] = acc / pz;  // exact by construction
            }
            pk *= pz;
            if (step + 1 >= next_check) {
                if (auto sol = try_finish()) return *sol;
                next_check *= 2;
            }
            if (step > 64 && next_check > (1u << 20)) throw SingularMatrixError("dixon_solve: lifting failed to converge");
        }
    }
}

Rat nearest_rational(const BigFloat& x, const Int& den) {
    if (den <= 0) throw std::invalid_argument("nearest_rational: denominator must be positive");
    Rat q = x.to_rat() * den;
    Rat out(rat_round(q), den);
    out.canonicalize();
    return out;
}

std::optional<Rat> recognize_rational(const Rat& x, const Int& max_den, const Rat& tol) {
    // continued-fraction convergents of x
    Int p0 = 1, q0 = 0;
    Int p1 = rat_floor(x), q1 = 1;
    Rat frac = x - p1;
    Rat best(p1);
    for (int it = 0; it < 20000; ++it) {
        Rat diff = best - x;
        if (abs(diff) <= tol) return best;
        if (frac == 0) break;
        Rat inv = 1 / frac;
        Int a = rat_floor(inv);
        frac = inv - a;
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1;
        p1 = p2; q1 = q2;
        best = Rat(p1, q1);
        best.canonicalize();
    }
    Rat diff = best - x;
    if (abs(diff) <= tol) return best;
    return std::nullopt;
}

}  // namespace sphcert
