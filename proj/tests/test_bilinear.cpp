#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "perpdec/bilinear.hpp"
#include "perpdec/rng.hpp"

using namespace perpdec;

namespace {

BilinearMap random_alternating(Rng& rng, i64 p, int maxV, int maxW) {
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

TEST_CASE("validate passes on exterior square and flags broken maps") {
    auto b = exterior_square(3, 5);
    auto rep = validate(b);
    CHECK(rep.ok);
    CHECK(rep.radical_dim == 0);
    CHECK(b.sign == -1);

    // dependent grams break fullness
    BilinearMap bad = b;
    bad.grams[1] = bad.grams[0].scaled(2);
    auto rep2 = validate(bad);
    CHECK(!rep2.ok);
    CHECK(!rep2.fullness_ok);

    // symmetric sign on a skew gram
    BilinearMap bad2;
    bad2.p = 5;
    bad2.sign = 1;
    bad2.dimV = 2;
    bad2.dimW = 1;
    bad2.grams.push_back(Mat::from_rows({{0, 1}, {-1, 0}}, 5));
    auto rep3 = validate(bad2);
    CHECK(!rep3.ok);
    CHECK(!rep3.symmetry_ok);
}

TEST_CASE("radical computations") {
    CHECK(radical(standard_alternating(2, 5)).dim() == 0);
    CHECK(radical(exchange_map(2, 5)).dim() == 0);
    // a hyperbolic plane plus a one-dimensional null summand
    BilinearMap b;
    b.p = 5;
    b.sign = -1;
    b.dimV = 3;
    b.dimW = 1;
    Mat g(3, 3, 5);
    g.at(0, 1) = 1;
    g.at(1, 0) = 4;
    b.grams.push_back(g);
    CHECK(radical(b).dim() == 1);
}

TEST_CASE("restrict recovers standard pieces") {
    auto b = standard_alternating(2, 5);
    // restriction to all of V is a pseudo-isometric copy
    Subspace full{Mat::identity(2, 5)};
    auto r = restrict_map(b, full);
    CHECK(r.map.dimV == 2);
    CHECK(r.map.dimW == 1);
    CHECK(!r.map.degenerate_flag);

    // 4-dim alternating block form restricted to the first two coordinates
    auto big = central_power(standard_alternating(2, 5), 2).map;
    Subspace first2{Mat::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}, 5)};
    auto r2 = restrict_map(big, first2);
    CHECK(r2.map.dimV == 2);
    CHECK(r2.map.dimW == 1);
    CHECK(r2.map.grams[0] == standard_alternating(2, 5).grams[0]);

    // restriction to a totally isotropic line is flagged degenerate
    Subspace line{Mat::from_rows({{1, 0, 0, 0}}, 5)};
    auto r3 = restrict_map(big, line);
    CHECK(r3.map.degenerate_flag);
    CHECK(r3.map.dimW == 0);
}

TEST_CASE("direct sums add dimensions and reject sign mismatch") {
    auto b = standard_alternating(2, 3);
    auto s = direct_sum(b, b);
    CHECK(s.dimV == 4);
    CHECK(s.dimW == 2);
    CHECK(validate(s).ok);

    auto t = direct_sum(exterior_square(3, 5), standard_alternating(2, 5));
    CHECK(t.dimV == 5);
    CHECK(t.dimW == 4);

    CHECK_THROWS(direct_sum(dot_form(2, 5, Disc::square), standard_alternating(2, 5)));
}

TEST_CASE("tensor constructions") {
    auto b = standard_alternating(2, 5);
    auto id = tensor(dot_form(1, 5, Disc::square), b);
    CHECK(id.dimV == 2);
    CHECK(id.grams[0] == b.grams[0]);

    auto extra = tensor(dot_form(3, 5, Disc::square), b);  // Bi of p^{1+6}
    CHECK(extra.dimV == 6);
    CHECK(extra.dimW == 1);
    CHECK(validate(extra).ok);

    auto big = tensor(dot_form(2, 5, Disc::square), exterior_square(3, 5));
    CHECK(big.dimV == 6);
    CHECK(big.dimW == 3);

    BilinearMap deg;
    deg.p = 5;
    deg.sign = 1;
    deg.dimV = 1;
    deg.dimW = 1;
    deg.grams.push_back(Mat(1, 1, 5));
    CHECK_THROWS(tensor(deg, b));
}

TEST_CASE("constructors match the stated shapes") {
    auto es = exterior_square(3, 5);
    CHECK(es.dimV == 3);
    CHECK(es.dimW == 3);
    CHECK(exterior_square(2, 5).grams[0] == standard_alternating(2, 5).grams[0]);
    CHECK_THROWS(exterior_square(1, 5));

    CHECK(standard_alternating(2, 3).grams[0] == Mat::from_rows({{0, 1}, {2, 0}}, 3));

    auto ex = exchange_map(2, 5);
    CHECK(ex.dimV == 3);
    CHECK(ex.dimW == 2);
    CHECK(ex.grams[0].at(0, 1) == 1);
    CHECK(ex.grams[0].at(1, 0) == 4);
    CHECK(ex.grams[1].at(0, 2) == 1);
    CHECK(radical(ex).dim() == 0);
    CHECK_THROWS(exchange_map(1, 5));

    CHECK(dot_form(2, 5, Disc::square).grams[0] == Mat::identity(2, 5));
    CHECK(dot_form(2, 5, Disc::nonsquare).grams[0] == Mat::from_rows({{1, 0}, {0, 2}}, 5));
    CHECK(dot_form(1, 5, Disc::square).grams[0] == Mat::from_rows({{1}}, 5));
}

TEST_CASE("central power blocks restrict to the base map") {
    auto cp = central_power(exterior_square(3, 5), 4);
    CHECK(cp.map.dimV == 12);
    CHECK(cp.map.dimW == 3);
    CHECK(cp.blocks.size() == 4);
    for (const auto& blk : cp.blocks) {
        auto r = restrict_map(cp.map, blk);
        CHECK(!r.map.degenerate_flag);
        CHECK(r.map.dimV == 3);
        CHECK(r.map.dimW == 3);
    }
    auto one = central_power(exterior_square(3, 5), 1);
    CHECK(one.map.dimV == 3);
    for (size_t i = 0; i < one.map.grams.size(); ++i)
        CHECK(one.map.grams[i] == exterior_square(3, 5).grams[i]);
}

TEST_CASE("pseudo-isometry checks") {
    auto b = standard_alternating(2, 5);
    PseudoIsometry id{Mat::identity(2, 5), Mat::identity(1, 5)};
    CHECK(check_pseudo_isometry(b, b, id));

    // similitude pair on the square dot form: ([a b; b -a], w), w = a^2+b^2
    auto d = dot_form(2, 5, Disc::square);
    for (i64 a = 0; a < 5; ++a)
        for (i64 bb = 0; bb < 5; ++bb) {
            i64 w = norm_mod(a * a + bb * bb, 5);
            if (w == 0) continue;
            PseudoIsometry pi{Mat::from_rows({{a, bb}, {bb, -a}}, 5),
                              Mat::from_rows({{w}}, 5)};
            CHECK(check_pseudo_isometry(d, d, pi));
        }

    // swapping coordinates of diag(1,2) changes the gram
    auto dn = dot_form(2, 5, Disc::nonsquare);
    PseudoIsometry swp{Mat::from_rows({{0, 1}, {1, 0}}, 5), Mat::identity(1, 5)};
    CHECK(!check_pseudo_isometry(dn, dn, swp));

    PseudoIsometry sing{Mat(2, 2, 5), Mat::identity(1, 5)};
    CHECK_THROWS(check_pseudo_isometry(dn, dn, sing));
}

TEST_CASE("pseudo-isometries compose and invert on random pairs") {
    Rng rng(99);
    auto b = central_power(standard_alternating(2, 5), 2).map;
    // random isometries built from block pieces: alpha = diag(A, A^-T) on a
    // hyperbolic pair keeps the form; compose/invert closure is what we check
    std::vector<PseudoIsometry> found;
    for (i64 a = 1; a < 5 && found.size() < 4; ++a) {
        Mat alpha = Mat::identity(4, 5);
        alpha.at(0, 0) = a;
        alpha.at(1, 1) = inv_mod(a, 5);
        PseudoIsometry pi{alpha, Mat::identity(1, 5)};
        if (check_pseudo_isometry(b, b, pi)) found.push_back(pi);
    }
    REQUIRE(found.size() >= 2);
    for (const auto& x : found)
        for (const auto& y : found) {
            PseudoIsometry comp{x.alpha * y.alpha, x.alpha_hat * y.alpha_hat};
            CHECK(check_pseudo_isometry(b, b, comp));
        }
    for (const auto& x : found) {
        PseudoIsometry inv{*inverse(x.alpha), *inverse(x.alpha_hat)};
        CHECK(check_pseudo_isometry(b, b, inv));
    }
    (void)rng;
}

TEST_CASE("radical of a direct sum is the sum of the radicals") {
    Rng rng(5);
    for (int trial = 0; trial < 8; ++trial) {
        auto b = random_alternating(rng, 3, 5, 3);
        auto c = random_alternating(rng, 3, 5, 3);
        auto s = direct_sum(b, c);
        CHECK(radical(s).dim() == radical(b).dim() + radical(c).dim());
    }
}

TEST_CASE("restriction to a radical complement is non-degenerate") {
    Rng rng(71);
    for (int t = 0; t < 12; ++t) {
        auto b = random_alternating(rng, 3, 5, 3);
        BilinearMap padded;  // force a radical by adding null coordinates
        padded.p = b.p;
        padded.sign = b.sign;
        padded.dimV = b.dimV + 2;
        padded.dimW = b.dimW;
        for (const Mat& g : b.grams) {
            Mat gg(padded.dimV, padded.dimV, b.p);
            for (int i = 0; i < b.dimV; ++i)
                for (int j = 0; j < b.dimV; ++j) gg.at(i, j) = g.at(i, j);
            padded.grams.push_back(gg);
        }
        Subspace rad = radical(padded);
        CHECK(rad.dim() == 2);
        Mat comp(b.dimV, padded.dimV, b.p);
        for (int i = 0; i < b.dimV; ++i) comp.at(i, i) = 1;
        auto restr = restrict_map(padded, Subspace{comp});
        CHECK(!restr.map.degenerate_flag);
        CHECK(radical(restr.map).dim() == 0);
    }
}

TEST_CASE("every constructor validates") {
    for (i64 p : {3, 5, 7}) {
        CHECK(validate(exterior_square(3, p)).ok);
        CHECK(validate(exterior_square(5, p)).ok);
        CHECK(validate(standard_alternating(2, p)).ok);
        CHECK(validate(exchange_map(2, p)).ok);
        CHECK(validate(exchange_map(4, p)).ok);
        CHECK(validate(dot_form(1, p, Disc::square)).ok);
        CHECK(validate(dot_form(3, p, Disc::nonsquare)).ok);
        CHECK(validate(central_power(exterior_square(3, p), 2).map).ok);
        CHECK(validate(tensor(dot_form(2, p, Disc::square), exchange_map(2, p))).ok);
        CHECK(validate(direct_sum(exchange_map(2, p), exterior_square(3, p))).ok);
    }
}

TEST_CASE("restriction W-projection expresses old coordinates in the new basis") {
    Rng rng(83);
    for (int t = 0; t < 8; ++t) {
        auto b = random_alternating(rng, 5, 5, 3);
        // restrict to a random 2-dimensional subspace of full rank
        Mat rows(2, b.dimV, b.p);
        do {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < b.dimV; ++j) rows.at(i, j) = static_cast<i64>(rng.below(5));
        } while (rank_of(rows) != 2);
        auto restr = restrict_map(b, Subspace{rows});
        // b_X(u, v) in new W coordinates equals b(u, v) pushed through the projection
        for (int a = 0; a < 5; ++a)
            for (int c = 0; c < 5; ++c) {
                std::vector<i64> xi{a, c};
                std::vector<i64> u(b.dimV, 0);
                for (int j = 0; j < b.dimV; ++j)
                    u[j] = norm_mod(a * rows.at(0, j) + c * rows.at(1, j), b.p);
                for (int a2 = 0; a2 < 3; ++a2) {
                    std::vector<i64> eta{a2, (a2 + 1) % 5};
                    std::vector<i64> v(b.dimV, 0);
                    for (int j = 0; j < b.dimV; ++j)
                        v[j] = norm_mod(a2 * rows.at(0, j) + ((a2 + 1) % 5) * rows.at(1, j), b.p);
                    auto old_w = eval_map(b, u, v);
                    auto new_w = eval_map(restr.map, xi, eta);
                    std::vector<i64> lifted(b.dimW, 0);
                    for (int k = 0; k < b.dimW; ++k)
                        for (int l = 0; l < restr.map.dimW; ++l)
                            lifted[k] = add_mod(lifted[k], mul_mod(restr.w_change.at(k, l), new_w[l], b.p), b.p);
                    CHECK(lifted == old_w);
                }
            }
    }
}
