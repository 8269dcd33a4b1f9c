// Addresses of primitive idempotents, address multisets and discriminants,
// re-addressing, semi-refinement, decomposition invariants, and the
// orbit-count verifier for the central-power families.
#pragma once

#include "perpdec/jordan.hpp"

#include <map>

namespace perpdec {

enum class RelAddress { equal, unequal, incomparable };

// factor index of the unique *-factor the primitive idempotent survives in
int surviving_factor(const StarStructure& s, const Mat& e);

RelAddress relative_address(const StarStructure& s, const Mat& e, const Mat& f);

// 0 if e lies in the anchor class of its (orthogonal) factor, 1 otherwise,
// -1 when the factor is not orthogonal
int address_class(const StarStructure& s, int factor, const Mat& e);

void annotate_frame(const StarStructure& s, Frame& f);

// (n-s : s) with the anchor class labelled square; nullopt for non-orthogonal
struct AddressPair {
    int square = 0;
    int nonsquare = 0;
};
std::map<int, std::optional<AddressPair>> address_multiset(const StarStructure& s, const Frame& f);

Disc discriminant(const AddressPair& a);

// number of realizable addresses: 1 + floor((n - c)/2), c = 0 square, 1 not
int count_addresses(int n, Disc disc);

// pseudo-isometry orbit classes of a full address list in rank n
std::vector<std::vector<AddressPair>> pseudo_orbit_classes(int n, const std::vector<AddressPair>& addrs);

// rewrite the frame inside orthogonal factor `factor` to the target
// nonsquare count (same parity); pair-local two-square mixing, exact output
Frame readdress(const StarStructure& s, const Frame& f, int factor, int target_s, u64 seed);

struct SemiRefinement {
    std::vector<Subspace> members;      // merged subspaces
    std::vector<std::vector<int>> parts;  // frame member indices per merged member
    Mat rho;                            // involutive isometry realizing the pairing
    std::vector<int> fixed;             // frame member indices fixed by rho
};
SemiRefinement semirefine(const StarStructure& s, const Frame& f);

struct MemberInvariants {
    int dim_v = 0;
    int dim_w = 0;       // dim b(X,X)
    int rad_dim = 0;     // dim rad b_X
    i64 order_exp = 0;   // log_p |Grp(b_X)| = dim_v + dim_w
    i64 center_exp = 0;  // log_p |Z| = dim_w + rad_dim
};

struct InvariantsReport {
    int member_count = 0;
    std::map<int, int> per_ideal;  // factor index -> |E_I|
    std::vector<MemberInvariants> members;
    std::map<int, std::optional<AddressPair>> addresses;
    std::map<int, std::string> discriminants;  // "square" / "nonsquare" per orthogonal factor
};
InvariantsReport invariants(const StarStructure& s, const Frame& f);

struct OrbitReport {
    int n = 0;
    i64 p = 5;
    bool p3_caveat = false;  // group-level orthogonal caveat at p = 3
    std::vector<AddressPair> addresses_realized;
    int isometry_orbits = 0;
    int aut_orbit_classes = 0;
    bool transport_within_ok = false;
    bool transport_across_none = false;
    bool pseudo_pairing_ok = false;
};
// builds central_power(exterior_square(3,p), 2n) and verifies the orbit
// counts 1+n (isometries) and 1+floor(n/2) (pseudo-isometries)
OrbitReport verify_many_orbits(int n, i64 p, u64 seed);

}  // namespace perpdec
