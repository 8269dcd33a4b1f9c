// Univariate polynomial arithmetic and factorization over GF(p).
#pragma once

#include "perpdec/ff.hpp"
#include "perpdec/rng.hpp"

#include <utility>

namespace perpdec {

// coefficients ascending, normalized (no trailing zeros); empty == 0
struct Poly {
    std::vector<i64> c;
    i64 p = 3;

    Poly() = default;
    Poly(std::vector<i64> coeffs, i64 prime);

    static Poly zero(i64 p) { return Poly({}, p); }
    static Poly one(i64 p) { return Poly({1}, p); }
    static Poly t(i64 p) { return Poly({0, 1}, p); }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    i64 leading() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return leading() == 1; }

    void normalize();
    Poly monic() const;

    bool operator==(const Poly& o) const { return p == o.p && c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(i64 s) const;

    i64 eval(i64 x) const;
    Mat eval(const Mat& M) const;  // Horner with matrices
    Poly derivative() const;

    std::string to_string() const;
};

// f = q*g + r with deg r < deg g
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly poly_mod(const Poly& f, const Poly& g);
Poly poly_gcd(Poly a, Poly b);  // monic gcd
// g, u, v with g = gcd, u*a + v*b = g
struct PolyXgcd {
    Poly g, u, v;
};
PolyXgcd poly_xgcd(Poly a, Poly b);
Poly poly_powmod(Poly base, i64 e, const Poly& mod);

// monic minimal polynomial of a square matrix
Poly min_poly(const Mat& M);

// irreducible factors with multiplicity, deterministic given seed,
// canonically sorted (degree, then coefficients)
struct PolyFactor {
    Poly f;
    int mult;
};
std::vector<PolyFactor> factor_poly(const Poly& f, u64 seed);

bool is_irreducible(const Poly& f);

}  // namespace perpdec
