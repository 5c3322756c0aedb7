#include "sphcert/field.hpp"

#include <algorithm>
#include <sstream>

#include "sphcert/exact_linalg.hpp"

namespace sphcert {

NumberField::NumberField(QPoly mp, RootInterval emb) : minpoly_(std::move(mp)), emb_(emb), refined_(emb) {
    int d = degree();
    // coefficients of g^(d+k) for k = 0..d-2 in the power basis
    std::vector<Rat> cur(d);  // g^d = -(c_0 + ... + c_{d-1} g^{d-1}) / c_d
    const Rat& lead = minpoly_.lead();
    for (int i = 0; i < d; ++i) cur[i] = -minpoly_[i] / lead;
    for (int k = 0; k + 1 < d; ++k) {
        powred_.push_back(cur);
        // multiply by g
        std::vector<Rat> next(d, Rat(0));
        Rat top = cur[d - 1];
        for (int i = d - 1; i > 0; --i) next[i] = cur[i - 1];
        if (top != 0)
            for (int i = 0; i < d; ++i) next[i] += top * powred_[0][i];
        cur = std::move(next);
    }
    if (d == 1) powred_.clear();
}

NumberField::Ptr NumberField::create(const QPoly& minpoly, RootInterval embedding, std::mt19937_64& rng) {
    QPoly mp = from_z(primitive_z(minpoly));
    if (mp.degree() < 1) throw std::invalid_argument("NumberField: constant minimal polynomial");
    if (mp.degree() > 1 && !is_irreducible_q(mp, rng)) throw std::invalid_argument("NumberField: reducible polynomial");
    if (!embedding.exact()) {
        SturmSequence st(mp);
        if (st.count(embedding.lo, embedding.hi) != 1)
            throw std::invalid_argument("NumberField: embedding interval does not isolate one root");
    } else if (mp.eval(embedding.lo) != 0) {
        throw std::invalid_argument("NumberField: embedding point is not a root");
    }
    return Ptr(new NumberField(std::move(mp), embedding));
}

NumberField::Ptr NumberField::rationals() {
    static Ptr q = [] {
        return Ptr(new NumberField(QPoly::x(), RootInterval{Rat(0), Rat(0)}));
    }();
    return q;
}

NumberField::Ptr NumberField::quadratic(const Int& d) {
    if (d <= 1) throw std::invalid_argument("NumberField::quadratic: d must exceed 1");
    QPoly mp(std::vector<Rat>{Rat(-d), Rat(0), Rat(1)});
    return Ptr(new NumberField(std::move(mp), RootInterval{Rat(0), Rat(d)}));
}

Ball NumberField::generator_ball(mpfr_prec_t bits) const {
    RootInterval iv;
    {
        std::lock_guard<std::mutex> lock(mu_);
        Rat width = rat_pow(Rat(1, 2), bits + 8);
        if (!refined_.exact() && refined_.hi - refined_.lo > width)
            refined_ = refine_root(minpoly_, refined_, width);
        iv = refined_;
    }
    if (iv.exact()) return Ball::exact(iv.lo, bits);
    return Ball::interval(iv.lo, iv.hi, bits);
}

BigFloat NumberField::generator(mpfr_prec_t bits) const { return generator_ball(bits + 8).center(); }

std::string NumberField::str() const {
    if (is_rational()) return "Q";
    return "Q[x]/(" + minpoly_.str() + ")";
}

FieldElem::FieldElem(NumberField::Ptr F, std::vector<Rat> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    if (!F_) throw std::invalid_argument("FieldElem: null field");
    c_.resize(F_->degree(), Rat(0));
    if (F_->is_rational()) F_.reset();
    if (!F_ && c_.empty()) c_.push_back(Rat(0));
}

FieldElem FieldElem::generator(const NumberField::Ptr& F) {
    std::vector<Rat> c(F->degree(), Rat(0));
    if (F->degree() == 1) return FieldElem(Rat(0));  // g = 0 for Q
    c[1] = 1;
    return FieldElem(F, std::move(c));
}

bool FieldElem::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElem::is_rational_value() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat FieldElem::to_rat() const {
    if (!is_rational_value()) throw std::domain_error("FieldElem::to_rat: element not rational");
    return c_[0];
}

std::pair<FieldElem, FieldElem> FieldElem::aligned(const FieldElem& a, const FieldElem& b) {
    if (a.F_ == b.F_) return {a, b};
    if (!a.F_ && !b.F_) return {a, b};
    auto lift = [](const FieldElem& r, const NumberField::Ptr& F) {
        std::vector<Rat> c(F->degree(), Rat(0));
        c[0] = r.c_[0];
        return FieldElem(F, std::move(c));
    };
    if (!a.F_) {
        if (!a.is_rational_value()) throw std::domain_error("FieldElem: mixing distinct fields");
        return {lift(a, b.F_), b};
    }
    if (!b.F_) return {a, lift(b, a.F_)};
    throw std::domain_error("FieldElem: mixing distinct fields");
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    auto [x, y] = FieldElem::aligned(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    auto [x, y] = FieldElem::aligned(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

FieldElem operator-(const FieldElem& a) {
    FieldElem r = a;
    for (auto& x : r.c_) x = -x;
    return r;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    auto [x, y] = FieldElem::aligned(a, b);
    if (!x.F_) {
        x.c_[0] *= y.c_[0];
        return x;
    }
    int d = x.F_->degree();
    std::vector<Rat> conv(2 * d - 1, Rat(0));
    for (int i = 0; i < d; ++i) {
        if (x.c_[i] == 0) continue;
        for (int j = 0; j < d; ++j) conv[i + j] += x.c_[i] * y.c_[j];
    }
    const auto& red = x.F_->power_reduction();
    std::vector<Rat> out(conv.begin(), conv.begin() + d);
    for (int k = 0; k + d < 2 * d - 1 + 1 && k < static_cast<int>(red.size()) + 0; ++k) {
        if (d + k >= static_cast<int>(conv.size())) break;
        if (conv[d + k] == 0) continue;
        for (int i = 0; i < d; ++i) out[i] += conv[d + k] * red[k][i];
    }
    return FieldElem(x.F_, std::move(out));
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElem: inverse of zero");
    if (!F_) {
        return FieldElem(Rat(1) / c_[0]);
    }
    // extended Euclid in Q[x] modulo the minimal polynomial
    QPoly a(std::vector<Rat>(c_));
    QPoly m = F_->minpoly();
    QPoly r0 = m, r1 = a;
    QPoly t0, t1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        QPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw std::domain_error("FieldElem: not invertible (reducible modulus?)");
    QPoly inv = (1 / r0[0]) * t0;
    std::vector<Rat> c(F_->degree(), Rat(0));
    for (int i = 0; i <= inv.degree(); ++i) c[i] = inv[i];
    return FieldElem(F_, std::move(c));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

Ball FieldElem::eval_ball(mpfr_prec_t bits) const {
    if (!F_) return Ball::exact(c_[0], bits);
    Ball g = F_->generator_ball(bits);
    Ball r = Ball::exact(0, bits);
    for (size_t i = c_.size(); i-- > 0;) r = r * g + Ball::exact(c_[i], bits);
    return r;
}

BigFloat FieldElem::eval(mpfr_prec_t bits) const { return eval_ball(bits + 8).center(); }

int FieldElem::sign() const {
    if (is_zero()) return 0;
    if (is_rational_value()) return sgn(c_[0]);
    for (mpfr_prec_t bits = 128; bits <= (1 << 22); bits *= 2) {
        Ball v = eval_ball(bits);
        if (v.is_positive()) return 1;
        if (v.is_negative()) return -1;
    }
    throw std::runtime_error("FieldElem::sign: enclosure failed to separate from zero");
}

std::string FieldElem::str() const {
    if (!F_ || is_rational_value()) return to_string(c_[0]);
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << to_string(c_[i]);
    }
    os << ")";
    return os.str();
}

// ----- recognition -----

namespace {

// Shortest certified integer relation among the values, via LLL on the
// standard relation lattice; returns coefficient rows to inspect.
std::vector<std::vector<Int>> relation_candidates(const std::vector<BigFloat>& vals, mpfr_prec_t bits) {
    const size_t n = vals.size();
    Int scale = int_pow(Int(2), bits);
    ZMat b(n, n + 1);
    for (size_t i = 0; i < n; ++i) {
        b(i, i) = 1;
        Rat scaled = vals[i].to_rat() * scale;
        b(i, n) = rat_round(scaled);
    }
    ZMat red = lll_reduce(b, Rat(3, 4));
    std::vector<std::vector<Int>> out;
    for (size_t i = 0; i < red.rows(); ++i) {
        std::vector<Int> coef(n);
        for (size_t j = 0; j < n; ++j) coef[j] = red(i, j);
        out.push_back(std::move(coef));
    }
    return out;
}

}  // namespace

std::optional<QPoly> recognize_algebraic(const BigFloat& x, int max_degree, long max_coeff_bits,
                                         std::mt19937_64& rng) {
    const mpfr_prec_t prec = x.prec();
    // residual certification threshold: half the working precision
    BigFloat thresh = pow2(-static_cast<long>(prec) / 2, 64);

    std::vector<BigFloat> powers{BigFloat::of(1L, prec)};
    for (int d = 1; d <= max_degree; ++d) {
        powers.push_back(powers.back() * x);
        mpfr_prec_t lat_bits = prec - 16;
        auto cands = relation_candidates(powers, lat_bits);
        for (const auto& coef : cands) {
            QPoly p(std::vector<Rat>(coef.begin(), coef.end()));
            if (p.degree() < 1) continue;
            bool small = true;
            for (const Int& c : coef)
                if (bit_size(c) > static_cast<size_t>(max_coeff_bits)) small = false;
            if (!small) continue;
            // certify: |p(x)| below threshold relative to coefficient size
            BigFloat val = abs(p.eval(x, prec));
            BigFloat scale = BigFloat::of(1L, 64);
            for (const Int& c : coef) {
                BigFloat a = abs(BigFloat::of(c, 64));
                if (a > scale) scale = a;
            }
            if (!(val <= thresh * scale)) continue;
            // reduce to the irreducible factor vanishing at x
            auto fac = factor_q(p, rng);
            const QPoly* best = nullptr;
            BigFloat bestval(prec);
            for (const auto& [g, mult] : fac) {
                BigFloat v = abs(g.eval(x, prec));
                if (!best || v < bestval) { best = &g, bestval = v; }
            }
            if (!best) continue;
            BigFloat gscale = BigFloat::of(1L, 64);
            for (const Rat& c : best->coeffs()) {
                BigFloat a = abs(BigFloat::of(c, 64));
                if (a > gscale) gscale = a;
            }
            if (!(bestval <= thresh * gscale)) continue;
            return from_z(primitive_z(*best));
        }
    }
    return std::nullopt;
}

std::optional<FieldElem> recognize_in_field(const BigFloat& x, const NumberField::Ptr& F,
                                            long denominator_bits, std::mt19937_64& rng) {
    (void)rng;
    const mpfr_prec_t prec = x.prec();
    const int d = F->degree();
    if (d == 1) {
        auto r = recognize_rational(x, int_pow(Int(2), denominator_bits),
                                    Rat(pow2(-static_cast<long>(prec) / 2, 64).to_rat()));
        if (!r) return std::nullopt;
        return FieldElem(*r);
    }
    BigFloat g = F->generator(prec);
    std::vector<BigFloat> vals;
    BigFloat p = BigFloat::of(1L, prec);
    for (int i = 0; i < d; ++i) {
        vals.push_back(p);
        p = p * g;
    }
    vals.push_back(x);
    auto cands = relation_candidates(vals, prec - 16);
    BigFloat thresh = pow2(-static_cast<long>(prec) / 2, 64);
    for (const auto& coef : cands) {
        const Int& ax = coef[d];
        if (ax == 0) continue;
        bool small = true;
        for (const Int& c : coef)
            if (bit_size(c) > static_cast<size_t>(denominator_bits) + 8) small = false;
        if (!small) continue;
        std::vector<Rat> c(d);
        for (int i = 0; i < d; ++i) {
            c[i] = Rat(-coef[i], ax);
            c[i].canonicalize();
        }
        FieldElem e(F, c);
        BigFloat err = abs(e.eval(prec) - x);
        if (err <= thresh) return e;
    }
    return std::nullopt;
}

NumberField::Ptr find_field(const std::vector<BigFloat>& samples, int max_degree,
                            std::mt19937_64& rng, size_t selection) {
    if (samples.empty()) return NumberField::rationals();
    std::vector<BigFloat> sel(samples.begin(),
                              samples.begin() + std::min(selection, samples.size()));
    const long coeff_bits = 1024;

    // best single-entry minimal polynomial: highest degree, then lowest bit size
    QPoly p = QPoly::x();
    bool have = false;
    for (const BigFloat& s : sel) {
        auto cand = recognize_algebraic(s, max_degree, coeff_bits, rng);
        if (!cand) throw FieldNotFoundError("find_field: sample not recognized as algebraic");
        auto size_of = [](const QPoly& q) {
            size_t bits = 0;
            for (const Rat& c : q.coeffs()) bits += bit_size(c);
            return bits;
        };
        if (!have || cand->degree() > p.degree() ||
            (cand->degree() == p.degree() && size_of(*cand) < size_of(p))) {
            p = *cand;
            have = true;
        }
    }

    for (int round = 0; round < 8; ++round) {
        if (p.degree() > max_degree) throw FieldNotFoundError("find_field: degree bound exceeded");
        // embed: choose the real root closest to matching all samples; try each root
        auto roots = isolate_roots(p, Rat(-1) - Rat(rat_ceil(cauchy_bound(p))), Rat(1) + Rat(rat_ceil(cauchy_bound(p))));
        NumberField::Ptr best;
        const BigFloat* offender = nullptr;
        for (const auto& iv : roots) {
            NumberField::Ptr F;
            try {
                F = NumberField::create(p, iv, rng);
            } catch (const std::invalid_argument&) {
                continue;
            }
            offender = nullptr;
            for (const BigFloat& s : sel) {
                if (!recognize_in_field(s, F, coeff_bits, rng)) { offender = &s; break; }
            }
            if (!offender) return F;
            best = F;
        }
        if (!best) throw FieldNotFoundError("find_field: no usable real root");
        // absorb the offending entry: minimal polynomial of g + entry
        BigFloat g = best->generator(offender->prec());
        auto cand = recognize_algebraic(g + *offender, max_degree, coeff_bits, rng);
        if (!cand || cand->degree() <= p.degree())
            throw FieldNotFoundError("find_field: failed to extend field");
        p = *cand;
    }
    throw FieldNotFoundError("find_field: iteration limit");
}

std::pair<QMat, std::vector<Rat>> field_system_expand(const FMatQ& A, const std::vector<FieldElem>& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("field_system_expand: shape mismatch");
    NumberField::Ptr F;
    for (size_t i = 0; i < A.rows() && !F; ++i) {
        for (size_t j = 0; j < A.cols() && !F; ++j) F = A(i, j).field();
        if (!F) F = b[i].field();
    }
    if (!F) F = NumberField::rationals();
    const int d = F->degree();
    const size_t r = A.rows(), s = A.cols();
    QMat Ax(d * r, d * s);
    std::vector<Rat> bx(d * r, Rat(0));
    FieldElem g = FieldElem::generator(F);
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < s; ++j) {
            if (A(i, j).is_zero()) continue;
            FieldElem gk = A(i, j);
            auto lifted = FieldElem::aligned(gk, FieldElem::generator(F)).first;
            gk = lifted;
            for (int k = 0; k < d; ++k) {
                // column (j,k) carries A_ij * g^k
                for (int l = 0; l < d; ++l) Ax(d * i + l, d * j + k) = gk.coeffs()[l];
                if (k + 1 < d) gk = gk * g;
            }
        }
        FieldElem bi = FieldElem::aligned(b[i], FieldElem::generator(F)).first;
        for (int l = 0; l < d; ++l) bx[d * i + l] = bi.coeffs()[l];
    }
    return {std::move(Ax), std::move(bx)};
}

std::vector<FieldElem> field_vector_contract(const NumberField::Ptr& F, const std::vector<Rat>& x, size_t cols) {
    const int d = F->degree();
    if (x.size() != cols * static_cast<size_t>(d))
        throw std::invalid_argument("field_vector_contract: shape mismatch");
    std::vector<FieldElem> out;
    out.reserve(cols);
    for (size_t j = 0; j < cols; ++j)
        out.push_back(FieldElem(F, std::vector<Rat>(x.begin() + d * j, x.begin() + d * (j + 1))));
    return out;
}

}  // namespace sphcert
