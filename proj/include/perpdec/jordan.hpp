// Idempotent machinery in Sym(b): Peirce splitting, proper-idempotent search,
// lifting modulo nil ideals, frame construction (fully refined
// perpendicular decompositions), and frame transport by isometries.
#pragma once

#include "perpdec/star_structure.hpp"

namespace perpdec {

struct Frame {
    std::vector<Mat> idem;                // pairwise orthogonal, sum to 1, primitive
    std::vector<int> ideal;               // index of the *-factor each member survives in
    std::vector<int> addr;                // 0 anchor class ("square"), 1 other, -1 non-orthogonal factor
    std::vector<std::string> cert_types;  // per-member indecomposability certificate type
};

struct PeirceSplit {
    Subspace im, ker;            // Ve and V(1-e)
    Restriction on_im, on_ker;   // restrictions of b with their W projections
    std::vector<Mat> jordan_im;  // Sym bases of the restrictions
    std::vector<Mat> jordan_ker;
};

// is e a self-adjoint idempotent for b (exact checks)
bool is_sym_idempotent(const BilinearMap& b, const Mat& e);

PeirceSplit peirce_split(const BilinearMap& b, const Mat& e);

// random search by minimal-polynomial splitting; returns nullopt only
// together with an indecomposability certificate for b
std::optional<Mat> find_proper_idempotent(const BilinearMap& b, const StarAlgebra& A,
                                          const std::vector<Mat>& sym, u64 seed);

// Newton lift e <- 3e^2 - 2e^3 of an idempotent-mod-nil to an exact one
Mat lift_idempotent(const Mat& e_hat, const ModRad& nil);
// v with v^2 = 1 exactly and v == u_hat mod nil
Mat lift_involution(const Mat& u_hat, const ModRad& nil);
// v = 1 - 2e - z with e idempotent, z^2 = 0, e + z idempotent; e U_v = e + z
Mat involution_from_nil(const Mat& e, const Mat& z);

// fully refined frame of Sym(b); annotated with ideal tags and addresses
Frame find_frame(const StarStructure& s, u64 seed);

std::vector<Subspace> frame_decomposition(const Frame& f);

// embed an operator of the restriction back into End V (identity 0 off X)
Mat embed_operator(const Mat& sub_op, const Mat& xbasis, const Mat& compbasis);

// isometry phi with e_i^phi = f_{sigma(i)} for an address-respecting matching
// sigma, or nullopt when the addresses obstruct transport
struct TransportResult {
    Mat phi;
    std::vector<int> matching;  // E[i] maps onto F[matching[i]]
};
std::optional<TransportResult> transport_frames(const StarStructure& s, const Frame& E, const Frame& F);

// --- building blocks shared with the address machinery ---

// corner element bhat in fbar * A * ebar with bhat* bhat == ebar and
// bhat bhat* == fbar (mod rad); requires equal addresses in orthogonal factors
std::optional<Mat> normalized_corner(const StarStructure& s, int factor, const Mat& ebar, const Mat& fbar,
                                     Rng& rng);

// self-adjoint square root of c = 1 + nilpotent, congruent to 1 mod rad
Mat unipotent_sqrt(const Mat& c);

// enumerate t in span(basis) with t*t == target (mod); deterministic order
std::optional<Mat> sqrt_in_span(const std::vector<Mat>& basis, const Mat& target, const ModRad& mod);

// inverse of x inside the (mod-rad) unital span of `basis` with identity c
std::optional<Mat> invert_in_span(const std::vector<Mat>& basis, const Mat& x, const Mat& c, const ModRad& mod);

}  // namespace perpdec
