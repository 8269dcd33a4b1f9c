#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "perpdec/groups.hpp"
#include "perpdec/rng.hpp"

#include <set>

using namespace perpdec;

namespace {

BilinearMap random_alternating_full(Rng& rng, i64 p, int maxV, int maxW) {
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
        if (validate(b).ok) return b;
    }
}

std::vector<GroupElement> all_elements(const BilinearMap& b) {
    std::vector<GroupElement> out;
    int total_dim = b.dimV + b.dimW;
    std::vector<i64> co(total_dim, 0);
    for (;;) {
        GroupElement x = grp_identity(b);
        for (int i = 0; i < b.dimV; ++i) x.v[i] = co[i];
        for (int k = 0; k < b.dimW; ++k) x.w[k] = co[b.dimV + k];
        out.push_back(x);
        int i = 0;
        while (i < total_dim && ++co[i] == b.p) co[i++] = 0;
        if (i == total_dim) break;
    }
    return out;
}

}  // namespace

TEST_CASE("group product basics") {
    auto b = standard_alternating(2, 3);
    GroupElement id = grp_identity(b);
    GroupElement x{{1, 0}, {0}};
    GroupElement y{{0, 1}, {0}};
    CHECK(grp_multiply(b, id, y) == y);
    // (e1,0)*(e2,0) = (e1+e2, 1/2) and 1/2 = 2 mod 3
    auto prod = grp_multiply(b, x, y);
    CHECK(prod.v == std::vector<i64>{1, 1});
    CHECK(prod.w == std::vector<i64>{2});
    auto inv = grp_inverse(b, prod);
    CHECK(grp_multiply(b, prod, inv) == id);
    CHECK(grp_commutator(b, x, y).w == std::vector<i64>{1});
    CHECK(grp_commutator(b, x, x) == id);
    GroupElement central{{0, 0}, {1}};
    CHECK(grp_commutator(b, x, central) == id);
}

TEST_CASE("Grp(standard_alternating(2,3)) is extraspecial of order 27") {
    auto b = standard_alternating(2, 3);
    auto elems = all_elements(b);
    REQUIRE(elems.size() == 27);
    int central = 0;
    for (const auto& x : elems) {
        CHECK(grp_power(b, x, 3) == grp_identity(b));  // exponent 3
        bool is_central = true;
        for (const auto& y : elems)
            if (!(grp_commutator(b, x, y) == grp_identity(b))) {
                is_central = false;
                break;
            }
        central += is_central;
    }
    CHECK(central == 3);  // center of order p
}

TEST_CASE("group axioms hold exhaustively for a small case and sampled beyond") {
    auto b = standard_alternating(2, 3);
    auto elems = all_elements(b);
    for (const auto& x : elems)
        for (const auto& y : elems)
            for (const auto& z : elems) {
                auto lhs = grp_multiply(b, grp_multiply(b, x, y), z);
                auto rhs = grp_multiply(b, x, grp_multiply(b, y, z));
                REQUIRE(lhs == rhs);
            }
    // sampled checks on a bigger group
    auto big = central_power(exterior_square(3, 5), 2).map;
    Rng rng(5);
    for (int t = 0; t < 1000; ++t) {
        GroupElement x = grp_identity(big), y = grp_identity(big), z = grp_identity(big);
        for (auto& c : x.v) c = static_cast<i64>(rng.below(5));
        for (auto& c : y.v) c = static_cast<i64>(rng.below(5));
        for (auto& c : z.v) c = static_cast<i64>(rng.below(5));
        for (auto& c : x.w) c = static_cast<i64>(rng.below(5));
        auto lhs = grp_multiply(big, grp_multiply(big, x, y), z);
        auto rhs = grp_multiply(big, x, grp_multiply(big, y, z));
        REQUIRE(lhs == rhs);
        REQUIRE(grp_power(big, x, 5) == grp_identity(big));
    }
}

TEST_CASE("bi_from_presentation on the reference presentations") {
    auto ep = extraspecial_presentation(1, 5);
    auto ext = bi_from_presentation(ep);
    CHECK(ext.abelian_rank == 0);
    CHECK(ext.nondeg.dimV == 2);
    CHECK(ext.nondeg.grams[0] == standard_alternating(2, 5).grams[0]);

    auto fp = free_class2_presentation(3, 5);
    auto fext = bi_from_presentation(fp);
    CHECK(fext.abelian_rank == 0);
    CHECK(fext.nondeg.dimV == 3);
    CHECK(fext.nondeg.dimW == 3);

    // central generator contributes to the radical
    GroupPresentation pres;
    pres.p = 5;
    pres.ngens = 3;
    pres.ncentral = 1;
    pres.commutators[{0, 1}] = {1};
    auto gext = bi_from_presentation(pres);
    CHECK(gext.abelian_rank == 1);
    CHECK(gext.nondeg.dimV == 2);
    CHECK(gext.nondeg.grams[0] == standard_alternating(2, 5).grams[0]);
}

TEST_CASE("presentations whose commutators do not span are rejected") {
    GroupPresentation pres;
    pres.p = 5;
    pres.ngens = 2;
    pres.ncentral = 2;
    pres.commutators[{0, 1}] = {1, 0};  // z_2 never appears
    CHECK_THROWS(bi_from_presentation(pres));
}

TEST_CASE("round trip: Bi(Grp(b)) has the same grams") {
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        auto b = random_alternating_full(rng, 3, 5, 3);
        auto pres = presentation_of(b);
        auto ext = bi_from_presentation(pres);
        REQUIRE(ext.full.dimV == b.dimV);
        REQUIRE(ext.full.dimW == b.dimW);
        for (int k = 0; k < b.dimW; ++k) CHECK(ext.full.grams[k] == b.grams[k]);
    }
}

TEST_CASE("central decomposition of p^{1+4}") {
    auto pres = extraspecial_presentation(2, 5);
    auto gd = central_decomposition(pres, 0);
    CHECK(gd.decomposition.members.size() == 2);
    CHECK(gd.decomposition.abelian_members == 0);
    for (const auto& mi : gd.invariants.members) {
        CHECK(mi.order_exp == 3);  // p^3 members
        CHECK(mi.center_exp == 1);
    }
    auto ver = verify_central_decomposition(pres, gd.decomposition);
    CHECK(ver.ok);
    CHECK(ver.fully_refined);
}

TEST_CASE("central decomposition of the free rank-3 group is itself") {
    auto pres = free_class2_presentation(3, 5);
    auto gd = central_decomposition(pres, 1);
    CHECK(gd.decomposition.members.size() == 1);
}

TEST_CASE("central generator appears as an order-p member") {
    GroupPresentation pres;
    pres.p = 5;
    pres.ngens = 3;
    pres.ncentral = 1;
    pres.commutators[{0, 1}] = {1};
    auto gd = central_decomposition(pres, 0);
    CHECK(gd.decomposition.members.size() == 2);
    CHECK(gd.decomposition.abelian_members == 1);
    auto ver = verify_central_decomposition(pres, gd.decomposition);
    CHECK(ver.ok);
    CHECK(ver.fully_refined);
}

TEST_CASE("verify flags broken decompositions") {
    auto pres = extraspecial_presentation(2, 5);
    auto gd = central_decomposition(pres, 0);
    // dropping a member loses generation
    CentralDecomposition dropped;
    dropped.members.push_back(gd.decomposition.members[0]);
    auto v1 = verify_central_decomposition(pres, dropped);
    CHECK(!v1.ok);
    // merging the two members is a valid but coarser decomposition
    CentralDecomposition merged;
    DecompositionMember m;
    std::vector<std::vector<i64>> rows;
    for (const auto& mm : gd.decomposition.members)
        for (int r = 0; r < mm.vgens.rows(); ++r) rows.push_back(mm.vgens.row(r));
    m.vgens = Mat::from_rows(rows, 5);
    m.wgens = gd.decomposition.members[0].wgens;
    merged.members.push_back(m);
    auto v2 = verify_central_decomposition(pres, merged);
    CHECK(v2.ok);
    CHECK(!v2.fully_refined);
}

TEST_CASE("classify_group across the families") {
    CHECK(classify_group(free_class2_presentation(3, 5)).verdict == GroupClass::Orthogonal);
    CHECK(classify_group(extraspecial_presentation(1, 5)).verdict == GroupClass::Symplectic);
    CHECK(classify_group(extraspecial_presentation(2, 5)).verdict == GroupClass::Decomposable);
    // <a, b, c | [a,c] = 1, class 2, exponent p> is the smallest exchange group
    GroupPresentation ex;
    ex.p = 5;
    ex.ngens = 3;
    ex.ncentral = 2;
    ex.commutators[{0, 1}] = {1, 0};
    ex.commutators[{1, 2}] = {0, 1};
    CHECK(classify_group(ex).verdict == GroupClass::Exchange);
    // trivial and elementary abelian cases
    GroupPresentation cyc;
    cyc.p = 5;
    cyc.ngens = 1;
    cyc.ncentral = 0;
    CHECK(classify_group(cyc).verdict == GroupClass::Abelian);
    GroupPresentation ab;
    ab.p = 5;
    ab.ngens = 2;
    ab.ncentral = 0;
    CHECK(classify_group(ab).verdict == GroupClass::Decomposable);
    // p = 3 orthogonal verdicts carry the caveat
    auto c3 = classify_group(free_class2_presentation(3, 3));
    CHECK(c3.verdict == GroupClass::Orthogonal);
    CHECK(c3.p3_orthogonal_caveat);
}

TEST_CASE("member order formula checked by enumeration at p=3") {
    auto pres = extraspecial_presentation(1, 3);
    auto gd = central_decomposition(pres, 0);
    REQUIRE(gd.decomposition.members.size() == 1);
    const auto& m = gd.decomposition.members[0];
    auto ext = bi_from_presentation(pres);
    // enumerate the subgroup generated by the member's generators
    std::set<std::pair<std::vector<i64>, std::vector<i64>>> seen;
    std::vector<GroupElement> gens;
    for (int r = 0; r < m.vgens.rows(); ++r)
        gens.push_back({m.vgens.row(r), std::vector<i64>(ext.full.dimW, 0)});
    for (int r = 0; r < m.wgens.rows(); ++r)
        gens.push_back({std::vector<i64>(ext.full.dimV, 0), m.wgens.row(r)});
    std::vector<GroupElement> frontier{grp_identity(ext.full)};
    seen.insert({frontier[0].v, frontier[0].w});
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                auto y = grp_multiply(ext.full, x, g);
                if (seen.insert({y.v, y.w}).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    CHECK(static_cast<i64>(seen.size()) == 27);  // p^(dimX + dim b(X,X)) = 3^3
}
