#include "perpdec/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace perpdec {

Poly::Poly(std::vector<i64> coeffs, i64 prime) : c(std::move(coeffs)), p(prime) {
    for (auto& v : c) v = norm_mod(v, p);
    normalize();
}

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(inv_mod(leading(), p));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<i64> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] = add_mod(r[i], o.c[i], p);
    return Poly(std::move(r), p);
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<i64> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] = sub_mod(r[i], o.c[i], p);
    return Poly(std::move(r), p);
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return zero(p);
    std::vector<i64> r(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j)
            r[i + j] = (r[i + j] + c[i] * o.c[j]) % p;
    }
    return Poly(std::move(r), p);
}

Poly Poly::scaled(i64 s) const {
    std::vector<i64> r = c;
    for (auto& v : r) v = mul_mod(v, norm_mod(s, p), p);
    return Poly(std::move(r), p);
}

i64 Poly::eval(i64 x) const {
    i64 r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = (r * x + *it) % p;
    return norm_mod(r, p);
}

Mat Poly::eval(const Mat& M) const {
    Mat r = Mat::zero(M.rows(), M.cols(), p);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * M;
        if (*it != 0) r = r + Mat::identity(M.rows(), p).scaled(*it);
    }
    return r;
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return zero(p);
    std::vector<i64> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = mul_mod(c[i], static_cast<i64>(i % p), p);
    return Poly(std::move(r), p);
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        if (c[d] == 0) continue;
        if (!first) os << " + ";
        if (d == 0 || c[d] != 1) os << c[d];
        if (d >= 1) os << (c[d] != 1 ? "*t" : "t");
        if (d >= 2) os << "^" << d;
        first = false;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Poly r = f;
    std::vector<i64> q(std::max<int>(f.degree() - g.degree() + 1, 0), 0);
    i64 glead_inv = inv_mod(g.leading(), g.p);
    while (!r.is_zero() && r.degree() >= g.degree()) {
        int shift = r.degree() - g.degree();
        i64 coef = mul_mod(r.leading(), glead_inv, g.p);
        q[shift] = coef;
        std::vector<i64> sub(r.c.size(), 0);
        for (size_t i = 0; i < g.c.size(); ++i)
            sub[i + shift] = mul_mod(g.c[i], coef, g.p);
        r = r - Poly(std::move(sub), g.p);
    }
    return {Poly(std::move(q), g.p), r};
}

Poly poly_mod(const Poly& f, const Poly& g) { return divmod(f, g).second; }

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyXgcd poly_xgcd(Poly a, Poly b) {
    i64 p = a.p;
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(p), u1 = Poly::zero(p);
    Poly v0 = Poly::zero(p), v1 = Poly::one(p);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        r0 = r1; r1 = r2;
        Poly u2 = u0 - q * u1;
        u0 = u1; u1 = u2;
        Poly v2 = v0 - q * v1;
        v0 = v1; v1 = v2;
    }
    if (!r0.is_zero()) {
        i64 s = inv_mod(r0.leading(), p);
        r0 = r0.scaled(s);
        u0 = u0.scaled(s);
        v0 = v0.scaled(s);
    }
    return {r0, u0, v0};
}

Poly poly_powmod(Poly base, i64 e, const Poly& mod) {
    Poly r = Poly::one(mod.p);
    base = poly_mod(base, mod);
    while (e > 0) {
        if (e & 1) r = poly_mod(r * base, mod);
        base = poly_mod(base * base, mod);
        e >>= 1;
    }
    return r;
}

Poly min_poly(const Mat& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("min_poly: not square");
    int n = M.rows();
    i64 p = M.p();
    // incremental rref of vectorized powers I, M, M^2, ... with tracking
    int amb = n * n;
    Mat rr(0, amb, p);
    std::vector<std::vector<i64>> combos;  // combos[i]: power k expressed in rr rows
    std::vector<Mat> powers;
    Mat cur = Mat::identity(n, p);
    for (int k = 0;; ++k) {
        powers.push_back(cur);
        std::vector<i64> v = cur.vectorize();
        // reduce against current rr, remembering coefficients over powers
        RowSpan span(rr);
        auto coords = span.coords(v);
        if (coords) {
            // dependency: M^k = sum coords_i * rr_i, rr rows are themselves
            // combinations of earlier powers
            std::vector<i64> coeff(k + 1, 0);
            for (int i = 0; i < static_cast<int>(coords->size()); ++i) {
                if ((*coords)[i] == 0) continue;
                for (int j = 0; j <= k; ++j)
                    if (j < static_cast<int>(combos[i].size()))
                        coeff[j] = add_mod(coeff[j], mul_mod((*coords)[i], combos[i][j], p), p);
            }
            // m(t) = t^k - sum coeff_j t^j
            std::vector<i64> mc(k + 1, 0);
            for (int j = 0; j < k; ++j) mc[j] = norm_mod(-coeff[j], p);
            mc[k] = 1;
            return Poly(std::move(mc), p);
        }
        // append as new independent row
        Mat rr2(rr.rows() + 1, amb, p);
        for (int i = 0; i < rr.rows(); ++i) rr2.set_row(i, rr.row(i));
        rr2.set_row(rr.rows(), v);
        rr = rr2;
        std::vector<i64> cb(k + 1, 0);
        cb[k] = 1;
        combos.push_back(cb);
        cur = cur * M;
    }
}

namespace {

// squarefree part handling in characteristic p
void squarefree_decompose(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    i64 p = f.p;
    if (f.degree() <= 0) return;
    Poly d = f.derivative();
    if (d.is_zero()) {
        // f = g(t^p) = g1(t)^p over GF(p)
        std::vector<i64> g((f.degree() / p) + 1, 0);
        for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) g[i / p] = f.c[i];
        squarefree_decompose(Poly(std::move(g), p), mult * static_cast<int>(p), out);
        return;
    }
    Poly g = poly_gcd(f, d);
    Poly sqfree = divmod(f, g).first;  // squarefree part of f
    int i = 1;
    Poly w = sqfree;
    Poly rest = g;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, rest);
        Poly factor = divmod(w, y).first;  // product of factors with multiplicity exactly i
        if (factor.degree() > 0) out.emplace_back(factor.monic(), mult * i);
        w = y;
        rest = divmod(rest, y).first;
        ++i;
    }
    if (rest.degree() > 0) squarefree_decompose(rest, mult, out);
}

// distinct-degree then equal-degree (Cantor-Zassenhaus) on squarefree monic f
void factor_squarefree(const Poly& f, Rng rng, std::vector<Poly>& out) {
    i64 p = f.p;
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(f.monic());
        return;
    }
    Poly rest = f.monic();
    Poly x = Poly::t(p);
    Poly xq = x;
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
        xq = poly_powmod(xq, p, rest);  // t^{p^d} mod rest
        Poly g = poly_gcd(xq - x, rest);
        if (g.degree() > 0) {
            // g = product of all irreducible factors of degree d
            std::vector<Poly> stack{g};
            while (!stack.empty()) {
                Poly h = stack.back();
                stack.pop_back();
                if (h.degree() == d) {
                    out.push_back(h.monic());
                    continue;
                }
                // random splitting, p odd
                i64 exp = 1;
                for (int i = 0; i < d; ++i) exp *= p;
                exp = (exp - 1) / 2;
                for (;;) {
                    std::vector<i64> rc(h.degree(), 0);
                    for (auto& v : rc) v = static_cast<i64>(rng.below(static_cast<u64>(p)));
                    Poly r(std::move(rc), p);
                    if (r.is_zero()) continue;
                    Poly s = poly_powmod(r, exp, h) - Poly::one(p);
                    Poly u = poly_gcd(s, h);
                    if (u.degree() > 0 && u.degree() < h.degree()) {
                        stack.push_back(u);
                        stack.push_back(divmod(h, u).first);
                        break;
                    }
                }
            }
            rest = divmod(rest, g).first;
            xq = poly_mod(xq, rest);
        }
    }
    if (rest.degree() > 0) out.push_back(rest.monic());
}

}  // namespace

std::vector<PolyFactor> factor_poly(const Poly& f, u64 seed) {
    if (f.is_zero()) throw std::invalid_argument("factor_poly: zero polynomial");
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    std::map<std::vector<i64>, int> acc;
    std::vector<Poly> keyed;
    Rng rng(seed);
    for (auto& [part, mult] : sqf) {
        std::vector<Poly> irr;
        factor_squarefree(part, rng.split(acc.size() + mult), irr);
        for (auto& g : irr) {
            auto it = acc.find(g.c);
            if (it == acc.end()) {
                acc[g.c] = mult;
                keyed.push_back(g);
            } else {
                it->second += mult;
            }
        }
    }
    std::vector<PolyFactor> out;
    for (auto& g : keyed) out.push_back({g, acc[g.c]});
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
        return a.f.c < b.f.c;
    });
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    i64 p = f.p;
    int n = f.degree();
    Poly x = Poly::t(p);
    // t^{p^n} == t mod f and gcd(t^{p^{n/q}} - t, f) == 1 for prime q | n
    Poly xq = x;
    std::vector<Poly> powers(n + 1, Poly::zero(p));
    for (int d = 1; d <= n; ++d) {
        xq = poly_powmod(xq, p, f);
        powers[d] = xq;
    }
    if (!poly_mod(powers[n] - x, f).is_zero()) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool qprime = is_prime(q);
        if (!qprime) continue;
        Poly g = poly_gcd(powers[n / q] - x, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

}  // namespace perpdec
