#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "perpdec/adjoint.hpp"
#include "perpdec/rng.hpp"

using namespace perpdec;

namespace {

Mat random_element(const StarAlgebra& A, Rng& rng) {
    Mat x(A.ambient(), A.ambient(), A.p());
    for (const Mat& b : A.basis()) x = x + b.scaled(static_cast<i64>(rng.below(static_cast<u64>(A.p()))));
    return x;
}

BilinearMap random_nondeg_alternating(Rng& rng, i64 p, int maxV, int maxW) {
    for (;;) {
        int m = 2 + static_cast<int>(rng.below(static_cast<u64>(maxV - 1)));
        int w = 1 + static_cast<int>(rng.below(static_cast<u64>(maxW)));
        if (w > m * (m - 1) / 2) continue;
        BilinearMap b;
        b.p = p;
        b.sign = -1;
        b.dimV = m;
        b.dimW = w;
        for (int k = 0; k < w; ++k) {
            Mat g(m, m, p);
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    i64 v = static_cast<i64>(rng.below(static_cast<u64>(p)));
                    g.at(i, j) = v;
                    g.at(j, i) = norm_mod(-v, p);
                }
            b.grams.push_back(g);
        }
        auto rep = validate(b);
        if (rep.ok && rep.radical_dim == 0) return b;
    }
}

}  // namespace

TEST_CASE("Adj(exterior_square(3,5)) is the scalars with trivial star") {
    auto A = adjoint_algebra(exterior_square(3, 5));
    CHECK(A.dim() == 1);
    CHECK(A.star(Mat::identity(3, 5)).is_identity());
}

TEST_CASE("Adj(standard_alternating(2,5)) is M_2 with the adjugate star") {
    auto A = adjoint_algebra(standard_alternating(2, 5));
    CHECK(A.dim() == 4);
    // adjugate: [a b; c d]* = [d -b; -c a]
    Mat x = Mat::from_rows({{1, 2}, {3, 4}}, 5);
    Mat expected = Mat::from_rows({{4, -2}, {-3, 1}}, 5);
    CHECK(A.star(x) == expected);
}

TEST_CASE("Adj(exchange_map(2,5)) has dimension 4 with shape alpha, beta, hom part") {
    auto A = adjoint_algebra(exchange_map(2, 5));
    CHECK(A.dim() == 4);
    // every element is [[alpha, h],[0, beta I]] in the 1+n split
    for (const Mat& f : A.basis()) {
        CHECK(f.at(1, 0) == 0);
        CHECK(f.at(2, 0) == 0);
        CHECK(f.at(1, 2) == 0);
        CHECK(f.at(2, 1) == 0);
        CHECK(f.at(1, 1) == f.at(2, 2));
    }
}

TEST_CASE("star is involutive and anti-multiplicative") {
    Rng rng(17);
    for (const char* fam : {"alt", "exch", "dot"}) {
        BilinearMap b = (fam[0] == 'a')   ? standard_alternating(2, 5)
                        : (fam[0] == 'e') ? exchange_map(3, 5)
                                          : dot_form(3, 5, Disc::square);
        auto A = adjoint_algebra(b);
        CHECK(A.star(A.identity()).is_identity());
        for (int t = 0; t < 10; ++t) {
            Mat x = random_element(A, rng);
            Mat y = random_element(A, rng);
            CHECK(A.star(A.star(x)) == x);
            CHECK(A.star(x * y) == A.star(y) * A.star(x));
            // defining identity x B_k = B_k (x*)^T
            for (const Mat& g : b.grams) CHECK(x * g == g * A.star(x).transpose());
        }
    }
}

TEST_CASE("star on the dot-form square algebra is transpose") {
    auto A = adjoint_algebra(dot_form(2, 5, Disc::square));
    Mat e12(2, 2, 5);
    e12.at(0, 1) = 1;
    Mat e21(2, 2, 5);
    e21.at(1, 0) = 1;
    CHECK(A.star(e12) == e21);
    Mat outside(2, 2, 5);
    REQUIRE(A.dim() == 4);  // full matrix algebra, so nothing is outside
}

TEST_CASE("sym_basis dimensions") {
    CHECK(sym_basis(adjoint_algebra(exterior_square(3, 5))).size() == 1);
    CHECK(sym_basis(adjoint_algebra(standard_alternating(2, 5))).size() == 1);
    CHECK(sym_basis(adjoint_algebra(dot_form(3, 5, Disc::square))).size() == 6);
}

TEST_CASE("sym closure under jordan and quadratic products") {
    Rng rng(29);
    auto b = central_power(standard_alternating(2, 5), 2).map;
    auto A = adjoint_algebra(b);
    auto sym = sym_basis(A);
    Mat rows(static_cast<int>(sym.size()), A.ambient() * A.ambient(), A.p());
    for (size_t i = 0; i < sym.size(); ++i) rows.set_row(static_cast<int>(i), sym[i].vectorize());
    RowSpan span(rows);
    for (int t = 0; t < 12; ++t) {
        Mat x(A.ambient(), A.ambient(), A.p());
        Mat y(A.ambient(), A.ambient(), A.p());
        for (const Mat& s : sym) {
            x = x + s.scaled(static_cast<i64>(rng.below(5)));
            y = y + s.scaled(static_cast<i64>(rng.below(5)));
        }
        CHECK(span.contains(jordan_product(x, y).vectorize()));
        CHECK(span.contains(quadratic_product(y, x).vectorize()));
        CHECK(A.star(x) == x);
    }
}

TEST_CASE("trace and norm behave") {
    auto A = adjoint_algebra(standard_alternating(2, 5));
    auto [t, n] = trace_norm(A, A.identity());
    CHECK(t == Mat::identity(2, 5).scaled(2));
    CHECK(n.is_identity());
    // skew element has zero trace: x* = -x
    Mat x = Mat::from_rows({{1, 0}, {0, 4}}, 5);  // adjugate sends diag(a,d) -> diag(d,a)
    Mat skew = Mat::from_rows({{1, 0}, {0, 4}}, 5);
    auto [ts, ns] = trace_norm(A, skew);
    CHECK(ts.is_zero());
    (void)x;
    (void)ns;
}

TEST_CASE("Fitting behaviour on an indecomposable: T(x) scalar for exterior square") {
    auto A = adjoint_algebra(exterior_square(3, 5));
    Rng rng(31);
    for (int t = 0; t < 5; ++t) {
        Mat x = random_element(A, rng);
        auto [tr, nm] = trace_norm(A, x);
        // Adj is the scalars here, so T(x) is a scalar matrix
        CHECK((tr.at(0, 0) == tr.at(1, 1)));
        CHECK(tr.at(0, 1) == 0);
        (void)nm;
    }
}

TEST_CASE("is_isometry") {
    auto b = dot_form(2, 5, Disc::square);
    auto A = adjoint_algebra(b);
    CHECK(is_isometry(A, Mat::identity(2, 5)));
    CHECK(is_isometry(A, Mat::identity(2, 5).scaled(-1)));
    Mat d21 = Mat::from_rows({{2, 0}, {0, 1}}, 5);
    CHECK(!is_isometry(A, d21));
    CHECK_THROWS(is_isometry(A, Mat(2, 2, 5)));
}

TEST_CASE("conjugation by an isometry preserves the algebra and commutes with star") {
    auto b = central_power(standard_alternating(2, 5), 2).map;
    auto A = adjoint_algebra(b);
    // a block isometry: scale a hyperbolic pair
    Mat phi = Mat::identity(4, 5);
    phi.at(0, 0) = 2;
    phi.at(1, 1) = inv_mod(2, 5);
    REQUIRE(is_isometry(A, phi));
    Mat phi_inv = *inverse(phi);
    Rng rng(41);
    for (int t = 0; t < 8; ++t) {
        Mat x = random_element(A, rng);
        Mat cx = phi_inv * x * phi;
        CHECK(A.contains(cx));
        CHECK(A.star(cx) == phi_inv * A.star(x) * phi);
    }
}

TEST_CASE("adjoint dimension laws on random pairs (sum and tensor)") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        auto b = random_nondeg_alternating(rng, 3, 4, 2);
        auto c = random_nondeg_alternating(rng, 3, 4, 2);
        auto A = adjoint_algebra(b);
        auto B = adjoint_algebra(c);
        auto S = adjoint_algebra(direct_sum(b, c));
        CHECK(S.dim() == A.dim() + B.dim());
        auto d = dot_form(1 + static_cast<int>(rng.below(2)), 3, Disc::square);
        auto D = adjoint_algebra(d);
        auto T = adjoint_algebra(tensor(d, b));
        CHECK(T.dim() == D.dim() * A.dim());
    }
}

TEST_CASE("degenerate maps are rejected") {
    BilinearMap deg;
    deg.p = 5;
    deg.sign = -1;
    deg.dimV = 3;
    deg.dimW = 1;
    Mat g(3, 3, 5);
    g.at(0, 1) = 1;
    g.at(1, 0) = 4;
    deg.grams.push_back(g);
    CHECK_THROWS(adjoint_algebra(deg));
}

TEST_CASE("is_isometry rejects invertible operators outside the algebra") {
    auto b = exchange_map(2, 5);
    auto A = adjoint_algebra(b);
    Mat perm(3, 3, 5);
    perm.at(0, 0) = 1;
    perm.at(1, 2) = 1;
    perm.at(2, 1) = 1;
    REQUIRE(!A.contains(perm));
    CHECK(!is_isometry(A, perm));
}
