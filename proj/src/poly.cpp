#include "sphcert/poly.hpp"

#include <sstream>

namespace sphcert {

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rat c = c_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rat a = abs(c);
        if (a != 1 || i == 0) os << to_string(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::domain_error("poly divmod by zero");
    std::vector<Rat> r(a.coeffs());
    long db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    for (long i = a.degree(); i >= db; --i) {
        Rat f = r[i] / b.lead();
        if (f == 0) continue;
        q[i - db] = f;
        for (long j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (1 / a.lead()) * a;
}

std::vector<Int> primitive_z(const QPoly& p) {
    if (p.is_zero()) return {};
    Int den = 1;
    for (const Rat& c : p.coeffs()) den = lcm(den, c.get_den());
    std::vector<Int> z(p.coeffs().size());
    Int g = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        z[i] = p[i].get_num() * (den / p[i].get_den());
        g = gcd(g, z[i]);
    }
    if (z.back() < 0) g = -g;
    for (auto& c : z) c /= g;
    return z;
}

QPoly from_z(const std::vector<Int>& c) {
    std::vector<Rat> q(c.size());
    for (size_t i = 0; i < c.size(); ++i) q[i] = Rat(c[i]);
    return QPoly(std::move(q));
}

namespace {
// scale to integer primitive form; preserves sign
QPoly normalize_signs(const QPoly& p) {
    if (p.is_zero()) return p;
    auto z = primitive_z(p);
    QPoly r = from_z(z);
    return p.lead() < 0 ? -r : r;
}
}  // namespace

SturmSequence::SturmSequence(const QPoly& p) {
    QPoly p0 = normalize_signs(p);
    if (p0.is_zero()) { seq.push_back(p0); return; }
    seq.push_back(p0);
    QPoly p1 = normalize_signs(p0.derivative());
    if (!p1.is_zero()) {
        seq.push_back(p1);
        for (;;) {
            QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
            if (r.is_zero()) break;
            seq.push_back(normalize_signs(-r));
        }
    }
}

int SturmSequence::sign_changes_at(const Rat& x) const {
    int changes = 0, last = 0;
    for (const auto& s : seq) {
        int sg = sgn(s.eval(x));
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++changes;
        last = sg;
    }
    return changes;
}

int SturmSequence::sign_changes_at_inf(int dir) const {
    int changes = 0, last = 0;
    for (const auto& s : seq) {
        if (s.is_zero()) continue;
        int sg = sgn(s.lead());
        if (dir < 0 && (s.degree() % 2) == 1) sg = -sg;
        if (last != 0 && sg != last) ++changes;
        last = sg;
    }
    return changes;
}

int SturmSequence::count(const Rat& a, const Rat& b) const {
    if (seq.empty() || seq[0].is_zero()) throw std::domain_error("Sturm count of zero polynomial");
    return sign_changes_at(a) - sign_changes_at(b);
}

int SturmSequence::count_all() const {
    return sign_changes_at_inf(-1) - sign_changes_at_inf(+1);
}

std::vector<RootInterval> isolate_roots(const QPoly& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw std::domain_error("isolate_roots of zero polynomial");
    QPoly sf = divmod(p, poly_gcd(p, p.derivative())).first;  // squarefree part
    SturmSequence st(sf);
    std::vector<RootInterval> out;
    // count on (lo, hi] plus an explicit check at the left endpoint
    if (sf.eval(a) == 0) out.push_back({a, a});

    struct Seg { Rat lo, hi; int cnt; };
    std::vector<Seg> stack;
    int c0 = st.count(a, b);
    if (c0 > 0) stack.push_back({a, b, c0});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.cnt == 1) {
            // tighten: if the right endpoint is the root itself, report exactly
            if (sf.eval(s.hi) == 0) out.push_back({s.hi, s.hi});
            else out.push_back({s.lo, s.hi});
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        while (sf.eval(mid) == 0) mid = (s.lo + 2 * mid) / 3;  // nudge off a root
        int cl = st.count(s.lo, mid);
        int cr = s.cnt - cl;
        if (cl > 0) stack.push_back({s.lo, mid, cl});
        if (cr > 0) stack.push_back({mid, s.hi, cr});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    return out;
}

RootInterval refine_root(const QPoly& p, RootInterval iv, const Rat& width) {
    if (iv.exact()) return iv;
    QPoly sf = divmod(p, poly_gcd(p, p.derivative())).first;
    int slo = sgn(sf.eval(iv.lo));
    if (slo == 0) return {iv.lo, iv.lo};
    if (sgn(sf.eval(iv.hi)) == 0) return {iv.hi, iv.hi};
    while (iv.hi - iv.lo > width) {
        Rat mid = (iv.lo + iv.hi) / 2;
        int sm = sgn(sf.eval(mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo) iv.lo = mid;
        else iv.hi = mid;
    }
    return iv;
}

BigFloat root_to_bigfloat(const QPoly& p, const RootInterval& iv, mpfr_prec_t bits) {
    if (iv.exact()) return BigFloat::of(iv.lo, bits);
    Rat w = rat_pow(Rat(1, 2), bits + 8);
    Rat scale = abs(iv.hi) > abs(iv.lo) ? abs(iv.hi) : abs(iv.lo);
    if (scale > 1) w *= scale;
    RootInterval r = refine_root(p, iv, w);
    return BigFloat::of((r.lo + r.hi) / 2, bits);
}

}  // namespace sphcert
