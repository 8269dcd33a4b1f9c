// Hermitian bilinear maps b : V x V -> W over GF(p), represented by a list
// of Gram matrices: b(u,v)_k = u * B_k * v^T with row vectors.
// sign = +1 (symmetric) or -1 (alternating); these are the involutions
// theta = sign * 1_W the library supports.
#pragma once

#include "perpdec/ff.hpp"

namespace perpdec {

struct Subspace {
    Mat basis;  // rows of full row rank spanning X <= V

    int dim() const { return basis.rows(); }
    int ambient() const { return basis.cols(); }
};

struct BilinearMap {
    i64 p = 3;
    int sign = -1;
    int dimV = 0;
    int dimW = 0;
    std::vector<Mat> grams;

    // degenerate restrictions are representable but flagged; structure
    // operations reject them
    bool degenerate_flag = false;
};

struct ValidationReport {
    bool ok = true;
    bool symmetry_ok = true;
    bool fullness_ok = true;
    int radical_dim = 0;
    std::vector<std::string> violations;
};

struct PseudoIsometry {
    Mat alpha;      // dimV x dimV
    Mat alpha_hat;  // dimW x dimW, convention b(u a, v a)_k = sum_l b(u,v)_l (a_hat)_{lk}
};

ValidationReport validate(const BilinearMap& b);
void require_valid_nondegenerate(const BilinearMap& b, const char* who);

Subspace radical(const BilinearMap& b);

struct Restriction {
    BilinearMap map;  // re-spanned so fullness holds
    // dimW x dimW' change of basis from W: old coordinates of a restricted
    // value are w_change * new coordinates
    Mat w_change;
};
Restriction restrict_map(const BilinearMap& b, const Subspace& X);

BilinearMap direct_sum(const BilinearMap& b, const BilinearMap& c);
// d symmetric non-degenerate with dimW == 1; grams become D (x) B_k
BilinearMap tensor(const BilinearMap& d, const BilinearMap& b);

BilinearMap exterior_square(int n, i64 p);
BilinearMap standard_alternating(int n, i64 p);  // n == 2
BilinearMap exchange_map(int n, i64 p);
enum class Disc { square, nonsquare };
BilinearMap dot_form(int n, i64 p, Disc disc);

struct CentralPower {
    BilinearMap map;
    std::vector<Subspace> blocks;  // the canonical perpendicular copies
};
CentralPower central_power(const BilinearMap& b, int n);

bool check_pseudo_isometry(const BilinearMap& b, const BilinearMap& c, const PseudoIsometry& pi);

// b(u,v) as a W-coordinate row vector
std::vector<i64> eval_map(const BilinearMap& b, const std::vector<i64>& u, const std::vector<i64>& v);

// image b(X,Y) as a row span inside W
Mat map_image(const BilinearMap& b, const Mat& xrows, const Mat& yrows);

}  // namespace perpdec
