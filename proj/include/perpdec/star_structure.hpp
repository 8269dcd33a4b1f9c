// Radical and semisimple structure of Adj(b): Jacobson radical, minimal
// *-ideal decomposition, and the classification of each simple *-factor as
// orthogonal / unitary / exchange / symplectic with parameters (n, q).
#pragma once

#include "perpdec/adjoint.hpp"
#include "perpdec/poly.hpp"
#include "perpdec/rng.hpp"

namespace perpdec {

struct RadicalData {
    std::vector<Mat> basis;        // canonical basis of rad A
    int nilindex = 1;              // least k with rad^k = 0
    std::vector<Mat> power_rows;   // power_rows[i] spans rad^{i+1} (row-matrices of vectorized elements)
};

// reduction context modulo a subspace of matrices (usually rad A or a power)
class ModRad {
  public:
    ModRad() = default;
    ModRad(const Mat& rows, int m, i64 p) : span_(rows), m_(m), p_(p) {}

    static ModRad from_mats(const std::vector<Mat>& mats, int m, i64 p);

    Mat reduce(const Mat& x) const { return Mat::from_vector(span_.reduce(x.vectorize()), m_, m_, p_); }
    bool is_zero(const Mat& x) const { return span_.contains(x.vectorize()); }
    bool eq(const Mat& x, const Mat& y) const { return is_zero(x - y); }
    int m() const { return m_; }
    i64 p() const { return p_; }
    int dim() const { return span_.dim(); }

  private:
    RowSpan span_;
    int m_ = 0;
    i64 p_ = 3;
};

struct SimpleStarFactor {
    int index = 0;
    std::string type;  // orthogonal | unitary | exchange | symplectic
    int n = 1;
    i64 q = 3;
    int e = 1;         // [K : F_p], q = p^e
    int dim_p = 0;     // dimension of the factor over F_p
    Mat identity_rep;  // idempotent mod rad
    std::vector<Mat> basis;         // canonical reps of a factor basis (reduced mod rad)
    std::vector<Mat> center_basis;  // center of the factor (reduced reps)
    std::vector<Mat> sym_corner;    // star-fixed part of the factor
    Mat anchor;        // orthogonal type: canonical primitive idempotent mod rad
};

struct FactorSummary {
    std::string type;
    int n = 1;
    i64 q = 3;
};

struct StructureReport {
    int radical_dim = 0;
    std::vector<FactorSummary> factors;
    bool indecomposable = false;
    std::string indecomposable_type;  // set when indecomposable
    std::string isom_shape;
    int adj_dim = 0;
    int sym_dim = 0;
    bool p3_orthogonal_caveat = false;
};

struct StarStructure {
    BilinearMap b;
    StarAlgebra A;
    std::vector<Mat> sym;
    RadicalData rad;
    ModRad mod;  // reduction mod rad
    std::vector<SimpleStarFactor> factors;
};

RadicalData jacobson_radical(const StarAlgebra& A);

// central primitive idempotents of A/rad merged along star orbits
std::vector<SimpleStarFactor> star_ideal_decomposition(const StarAlgebra& A, const RadicalData& rad);

StarStructure analyze_structure(const BilinearMap& b);

StructureReport summarize(const StarStructure& s);

struct IndecomposabilityVerdict {
    bool indecomposable = false;
    std::string type;  // factor type when indecomposable
    StructureReport evidence;
};
IndecomposabilityVerdict indecomposability_certificate(const BilinearMap& b);

std::string isometry_shape(const StructureReport& r);

// --- helpers shared with the Jordan / address machinery ---

// monic minimal polynomial of x in the unital algebra with identity c,
// computed modulo the reduction context
Poly min_poly_mod(const Mat& x, const Mat& c, const ModRad& mod);

// self-adjoint idempotent h(x) splitting off the primary factor `target`
// of the minimal polynomial m of x (x^0 evaluates to the block identity c)
Mat idempotent_from_primary_split(const Mat& x, const Mat& c, const Poly& m, const Poly& target);

// star-fixed part of a list of elements, canonically reduced mod `mod`
std::vector<Mat> sym_part_mod(const StarAlgebra& A, const std::vector<Mat>& span, const ModRad& mod);

// corner e * span * e, canonically reduced mod `mod`
std::vector<Mat> corner_basis_mod(const std::vector<Mat>& span, const Mat& e, const ModRad& mod);

// f * span * e, canonically reduced mod `mod`
std::vector<Mat> between_basis_mod(const std::vector<Mat>& span, const Mat& f, const Mat& e, const ModRad& mod);

// solve z in span(candidates) with z * x == rhs (mod), linear in z
std::optional<Mat> solve_left_multiplier(const std::vector<Mat>& candidates, const Mat& x, const Mat& rhs,
                                         const ModRad& mod);

}  // namespace perpdec
