// The Grp and Bi functors: groups of class 2 and exponent p as (v,w)-pairs
// over an alternating map, extraction of the map from a presentation, the
// canonical abelian split, and central decompositions at the group level.
#pragma once

#include "perpdec/addresses.hpp"

namespace perpdec {

struct GroupPresentation {
    i64 p = 3;
    int ngens = 0;     // generators g_1..g_r
    int ncentral = 0;  // central generators z_1..z_s spanning P'
    // commutator table: 0-based (i, j) with i < j maps to the exponent vector
    // of [g_{i+1}, g_{j+1}] over the z's; missing entries mean trivial
    std::map<std::pair<int, int>, std::vector<i64>> commutators;
};

struct GroupElement {
    std::vector<i64> v, w;
    bool operator==(const GroupElement& o) const { return v == o.v && w == o.w; }
};

struct DecompositionMember {
    Mat vgens;  // rows: generators (row, 0)
    Mat wgens;  // rows: central generators (0, row) spanning b(X,X)
};

struct CentralDecomposition {
    std::vector<DecompositionMember> members;
    int abelian_members = 0;  // trailing members coming from the abelian split
};

GroupElement grp_identity(const BilinearMap& b);
GroupElement grp_multiply(const BilinearMap& b, const GroupElement& x, const GroupElement& y);
GroupElement grp_inverse(const BilinearMap& b, const GroupElement& x);
GroupElement grp_power(const BilinearMap& b, const GroupElement& x, i64 n);
GroupElement grp_commutator(const BilinearMap& b, const GroupElement& x, const GroupElement& y);

struct BiExtraction {
    BilinearMap full;    // antisymmetrized map on all generators; may be degenerate
    BilinearMap nondeg;  // restriction to the canonical radical complement
    Mat complement;      // rows: complement basis inside V
    Mat rad_basis;       // rows: rad b = Z(P)/P'
    int abelian_rank = 0;
};
BiExtraction bi_from_presentation(const GroupPresentation& pres);

// canonical presentation of Grp(b) on the coordinate generators
GroupPresentation presentation_of(const BilinearMap& b);
GroupPresentation free_class2_presentation(int rank, i64 p);
GroupPresentation extraspecial_presentation(int n, i64 p);  // p^{1+2n}

struct GroupDecomposition {
    CentralDecomposition decomposition;
    InvariantsReport invariants;  // group-level: abelian singletons included
};
GroupDecomposition central_decomposition(const GroupPresentation& pres, u64 seed);

struct GroupVerification {
    bool ok = false;
    bool fully_refined = false;
    std::vector<std::string> violations;
};
GroupVerification verify_central_decomposition(const GroupPresentation& pres, const CentralDecomposition& d);

enum class GroupClass { Abelian, Orthogonal, Unitary, Exchange, Symplectic, Decomposable };
std::string to_string(GroupClass c);

struct GroupClassification {
    GroupClass verdict = GroupClass::Abelian;
    bool p3_orthogonal_caveat = false;  // algebra-level classification; group-level p = 3 caveat applies
};
GroupClassification classify_group(const GroupPresentation& pres);

}  // namespace perpdec
