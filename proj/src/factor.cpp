#include "sphcert/factor.hpp"

#include <algorithm>
#include <map>

#include "sphcert/exact_linalg.hpp"

namespace sphcert {

namespace {

// ---------- arithmetic mod a word prime ----------

using UPoly = std::vector<uint64_t>;  // low -> high, trimmed

void utrim(UPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

UPoly umul(const UPoly& a, const UPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + ModMatrix::mulmod(a[i], b[j], p)) % p;
    }
    utrim(r);
    return r;
}

UPoly umod(UPoly a, const UPoly& m, uint64_t p) {
    uint64_t inv = ModMatrix::inv_mod(m.back(), p);
    utrim(a);
    while (a.size() >= m.size()) {
        uint64_t f = ModMatrix::mulmod(a.back(), inv, p);
        size_t off = a.size() - m.size();
        for (size_t j = 0; j + 1 < m.size(); ++j) {
            uint64_t s = ModMatrix::mulmod(f, m[j], p);
            a[off + j] = (a[off + j] + p - s) % p;
        }
        a.pop_back();
        utrim(a);
    }
    return a;
}

UPoly udiv(UPoly a, const UPoly& m, uint64_t p) {
    utrim(a);
    if (a.size() < m.size()) return {};
    uint64_t inv = ModMatrix::inv_mod(m.back(), p);
    UPoly q(a.size() - m.size() + 1, 0);
    while (a.size() >= m.size()) {
        uint64_t f = ModMatrix::mulmod(a.back(), inv, p);
        size_t off = a.size() - m.size();
        q[off] = f;
        for (size_t j = 0; j + 1 < m.size(); ++j) {
            uint64_t s = ModMatrix::mulmod(f, m[j], p);
            a[off + j] = (a[off + j] + p - s) % p;
        }
        a.pop_back();
        utrim(a);
    }
    utrim(q);
    return q;
}

UPoly umonic(UPoly a, uint64_t p) {
    if (a.empty()) return a;
    uint64_t inv = ModMatrix::inv_mod(a.back(), p);
    for (auto& c : a) c = ModMatrix::mulmod(c, inv, p);
    return a;
}

UPoly ugcd(UPoly a, UPoly b, uint64_t p) {
    while (!b.empty()) {
        UPoly r = umod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return umonic(a, p);
}

UPoly uderiv(const UPoly& a, uint64_t p) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = ModMatrix::mulmod(a[i], i % p, p);
    utrim(r);
    return r;
}

UPoly usub(UPoly a, const UPoly& b, uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    utrim(a);
    return a;
}

UPoly upowmod(UPoly base, Int e, const UPoly& m, uint64_t p) {
    UPoly r{1};
    base = umod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = umod(umul(r, base, p), m, p);
        e >>= 1;
        if (e > 0) base = umod(umul(base, base, p), m, p);
    }
    return r;
}

// Cantor-Zassenhaus equal-degree splitting inside distinct-degree factors.
void equal_degree(const UPoly& f, size_t d, uint64_t p, std::mt19937_64& rng, std::vector<UPoly>& out) {
    size_t r = (f.size() - 1) / d;
    if (r == 1) { out.push_back(umonic(f, p)); return; }
    Int exp = (int_pow(Int(static_cast<unsigned long>(p)), d) - 1) / 2;
    for (;;) {
        UPoly a(f.size() - 1);
        for (auto& c : a) c = rng() % p;
        utrim(a);
        if (a.size() <= 1) continue;
        UPoly g = ugcd(f, a, p);
        if (g.size() > 1 && g.size() < f.size()) {
            equal_degree(g, d, p, rng, out);
            equal_degree(udiv(f, g, p), d, p, rng, out);
            return;
        }
        UPoly b = upowmod(a, exp, f, p);
        if (b.empty()) continue;
        b[0] = (b[0] + p - 1) % p;
        utrim(b);
        g = ugcd(f, b, p);
        if (g.size() > 1 && g.size() < f.size()) {
            equal_degree(g, d, p, rng, out);
            equal_degree(udiv(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// monic squarefree factorization mod p
std::vector<UPoly> factor_mod_p(UPoly f, uint64_t p, std::mt19937_64& rng) {
    f = umonic(std::move(f), p);
    std::vector<UPoly> out;
    const UPoly x{0, 1};
    UPoly h = x;  // x^(p^d) mod rem
    UPoly rem = f;
    size_t d = 0;
    while (rem.size() > 1) {
        ++d;
        if (2 * d > rem.size() - 1) {
            out.push_back(umonic(rem, p));
            break;
        }
        h = upowmod(h, Int(static_cast<unsigned long>(p)), rem, p);
        UPoly g = ugcd(rem, usub(h, x, p), p);
        if (g.size() > 1) {
            equal_degree(g, d, p, rng, out);
            rem = udiv(rem, g, p);
            if (rem.size() <= 1) break;
            h = umod(h, rem, p);
        }
    }
    return out;
}

// ---------- arithmetic mod m (big modulus) ----------

using MPoly = std::vector<Int>;

void mtrim(MPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }

Int mreduce(const Int& v, const Int& m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

MPoly mreduce_poly(MPoly a, const Int& m) {
    for (auto& c : a) c = mreduce(c, m);
    mtrim(a);
    return a;
}

MPoly madd(MPoly a, const MPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = mreduce(a[i] + b[i], m);
    mtrim(a);
    return a;
}

MPoly msub(MPoly a, const MPoly& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = mreduce(a[i] - b[i], m);
    mtrim(a);
    return a;
}

MPoly mmul(const MPoly& a, const MPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return mreduce_poly(std::move(r), m);
}

// divisor must be monic
std::pair<MPoly, MPoly> mdivmod(MPoly a, const MPoly& d, const Int& m) {
    a = mreduce_poly(std::move(a), m);
    if (a.size() < d.size()) return {{}, std::move(a)};
    MPoly q(a.size() - d.size() + 1, Int(0));
    while (a.size() >= d.size()) {
        Int f = a.back();
        size_t off = a.size() - d.size();
        if (f != 0) {
            q[off] = f;
            for (size_t j = 0; j + 1 < d.size(); ++j) a[off + j] = mreduce(a[off + j] - f * d[j], m);
        }
        a.pop_back();
        mtrim(a);
    }
    mtrim(q);
    return {std::move(q), std::move(a)};
}

// Hensel step: lifts f = g h and s g + t h = 1 from mod m to mod m^2.
struct HenselPair { MPoly g, h, s, t; };

HenselPair hensel_step(const MPoly& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    HenselPair o;
    MPoly e = msub(f, mmul(in.g, in.h, m2), m2);
    auto [q, r] = mdivmod(mmul(in.s, e, m2), in.h, m2);
    o.g = madd(madd(in.g, mmul(in.t, e, m2), m2), mmul(q, in.g, m2), m2);
    o.h = madd(in.h, r, m2);
    MPoly b = msub(madd(mmul(in.s, o.g, m2), mmul(in.t, o.h, m2), m2), MPoly{Int(1)}, m2);
    auto [c, d] = mdivmod(mmul(in.s, b, m2), o.h, m2);
    o.s = msub(in.s, d, m2);
    o.t = msub(msub(in.t, mmul(in.t, b, m2), m2), mmul(c, o.g, m2), m2);
    return o;
}

MPoly upoly_to_mpoly(const UPoly& a) {
    MPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    return r;
}

// Extended Euclid mod p for the initial Bezout pair.
void bezout_mod_p(const UPoly& g, const UPoly& h, uint64_t p, UPoly& s, UPoly& t) {
    UPoly r0 = g, r1 = h;
    UPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        UPoly q = udiv(r0, r1, p);
        UPoly r2 = usub(r0, umul(q, r1, p), p);
        UPoly s2 = usub(s0, umul(q, s1, p), p);
        UPoly t2 = usub(t0, umul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::domain_error("bezout_mod_p: inputs not coprime");
    uint64_t inv = ModMatrix::inv_mod(r0[0], p);
    for (auto& c : s0) c = ModMatrix::mulmod(c, inv, p);
    for (auto& c : t0) c = ModMatrix::mulmod(c, inv, p);
    s = std::move(s0);
    t = std::move(t0);
}

// Lift the factorization of monic f from mod p to mod target (a power of p).
void lift_tree(const MPoly& f, const std::vector<UPoly>& leaves, size_t lo, size_t hi, uint64_t p,
               const Int& target, std::vector<MPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(mreduce_poly(f, target));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    UPoly gu{1}, hu{1};
    for (size_t i = lo; i < mid; ++i) gu = umul(gu, leaves[i], p);
    for (size_t i = mid; i < hi; ++i) hu = umul(hu, leaves[i], p);
    UPoly su, tu;
    bezout_mod_p(gu, hu, p, su, tu);
    HenselPair pr{upoly_to_mpoly(gu), upoly_to_mpoly(hu), upoly_to_mpoly(su), upoly_to_mpoly(tu)};
    Int m(static_cast<unsigned long>(p));
    while (m < target) {
        pr = hensel_step(mreduce_poly(f, m * m), pr, m);
        m *= m;
    }
    lift_tree(mreduce_poly(pr.g, target), leaves, lo, mid, p, target, out);
    lift_tree(mreduce_poly(pr.h, target), leaves, mid, hi, p, target, out);
}

Int balanced(const Int& v, const Int& m) {
    Int r = mreduce(v, m);
    if (2 * r > m) r -= m;
    return r;
}

std::vector<Int> to_zvec(const QPoly& p) { return primitive_z(p); }

// factor a primitive squarefree integer polynomial, monic case handled directly
std::vector<QPoly> factor_squarefree(const QPoly& fq, std::mt19937_64& rng) {
    long n = fq.degree();
    if (n <= 0) return {};
    if (n == 1) {
        return {from_z(to_zvec(fq))};
    }
    // monicize: F(x) = lc^(n-1) f(x/lc) is monic with integer coefficients
    std::vector<Int> fz = to_zvec(fq);
    Int lc = fz.back();
    std::vector<Int> F(fz.size());
    for (long i = 0; i <= n; ++i) F[i] = fz[i] * int_pow(lc, n - 1 - i >= 0 ? n - 1 - i : 0);
    // F coefficients: fz[i] * lc^(n-1-i)
    F[n] = 1;

    // choose a prime keeping F squarefree mod p
    uint64_t p = 0;
    std::vector<UPoly> modfac;
    for (int tries = 0; tries < 64; ++tries) {
        uint64_t cand = random_prime62(rng);
        UPoly fp(F.size());
        for (size_t i = 0; i < F.size(); ++i) fp[i] = ModMatrix::mod_of(F[i], cand);
        utrim(fp);
        if (fp.size() != F.size()) continue;
        if (ugcd(fp, uderiv(fp, cand), cand).size() != 1) continue;
        auto fac = factor_mod_p(fp, cand, rng);
        if (p == 0 || fac.size() < modfac.size()) {
            p = cand;
            modfac = std::move(fac);
        }
        if (tries >= 2 && p != 0) break;
    }
    if (p == 0) throw std::domain_error("factor: no good prime found");
    if (modfac.size() == 1) return {from_z(fz)};

    // Mignotte-style bound on factor coefficients of monic F
    Rat norm2 = 0;
    for (const Int& c : F) norm2 += Rat(c) * Rat(c);
    Int nb = rat_ceil(norm2);
    mpz_sqrt(nb.get_mpz_t(), nb.get_mpz_t());
    Int bound = (nb + 1) * binomial(n, n / 2) * 2 + 1;
    Int target(static_cast<unsigned long>(p));
    while (target < bound) target *= target;

    std::vector<MPoly> lifted;
    lift_tree(mreduce_poly(MPoly(F.begin(), F.end()), target), modfac, 0, modfac.size(), p, target, lifted);

    // recombination by subset search
    std::vector<QPoly> out;
    std::vector<MPoly> pool = lifted;
    MPoly rem(F.begin(), F.end());
    auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
        MPoly prod{Int(1)};
        for (size_t i : subset) prod = mmul(prod, pool[i], target);
        std::vector<Rat> cand(prod.size());
        for (size_t i = 0; i < prod.size(); ++i) cand[i] = Rat(balanced(prod[i], target));
        QPoly g(std::move(cand));
        QPoly remq = from_z(std::vector<Int>(rem.begin(), rem.end()));
        auto [q, r] = divmod(remq, g);
        if (!r.is_zero()) return false;
        for (const Rat& c : q.coeffs())
            if (c.get_den() != 1) return false;
        out.push_back(g);
        std::vector<MPoly> next;
        for (size_t i = 0; i < pool.size(); ++i)
            if (std::find(subset.begin(), subset.end(), i) == subset.end()) next.push_back(pool[i]);
        pool = std::move(next);
        std::vector<Int> rz = to_zvec(q);
        rem.assign(rz.begin(), rz.end());
        return true;
    };

    for (size_t take = 1; take <= pool.size() && pool.size() > 0; ) {
        if (2 * take > pool.size()) break;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        bool found = false;
        for (;;) {
            if (try_subset(idx)) { found = true; break; }
            long i = static_cast<long>(take) - 1;
            while (i >= 0 && idx[i] == pool.size() - take + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++take;
    }
    if (rem.size() > 1) out.push_back(from_z(std::vector<Int>(rem.begin(), rem.end())));

    // map factors of F back to factors of f: g(x) -> primitive(g(lc x))
    std::vector<QPoly> mapped;
    for (const QPoly& g : out) {
        std::vector<Rat> c(g.coeffs());
        for (size_t i = 0; i < c.size(); ++i) c[i] *= rat_pow(Rat(lc), static_cast<long>(i));
        QPoly gl(std::move(c));
        mapped.push_back(from_z(to_zvec(gl)));
    }
    return mapped;
}

}  // namespace

std::vector<std::pair<QPoly, int>> factor_q(const QPoly& f, std::mt19937_64& rng) {
    if (f.is_zero()) throw std::domain_error("factor_q of zero polynomial");
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() == 0) return out;
    // Yun squarefree decomposition
    QPoly a = from_z(primitive_z(f));
    QPoly g = poly_gcd(a, a.derivative());
    QPoly w = divmod(a, g).first;
    QPoly y = divmod(a.derivative(), g).first;
    QPoly z = y - w.derivative();
    int mult = 1;
    while (w.degree() > 0) {
        QPoly gi = poly_gcd(w, z);
        if (gi.degree() > 0)
            for (const QPoly& irr : factor_squarefree(gi, rng)) out.push_back({irr, mult});
        w = divmod(w, gi).first;
        y = divmod(z, gi).first;
        z = y - w.derivative();
        ++mult;
    }
    return out;
}

bool is_irreducible_q(const QPoly& f, std::mt19937_64& rng) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fac = factor_q(f, rng);
    return fac.size() == 1 && fac[0].second == 1;
}

std::vector<std::pair<Rat, int>> rational_roots(const QPoly& f, std::mt19937_64& rng) {
    std::vector<std::pair<Rat, int>> out;
    for (const auto& [g, mult] : factor_q(f, rng))
        if (g.degree() == 1) out.push_back({-g[0] / g[1], mult});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sphcert
