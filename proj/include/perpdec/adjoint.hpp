// The adjoint *-algebra Adj(b) = { f : b(uf,v) = b(u,vf*) } and the Jordan
// algebra Sym(b) of self-adjoint operators.
#pragma once

#include "perpdec/bilinear.hpp"

namespace perpdec {

class StarAlgebra {
  public:
    StarAlgebra() = default;

    i64 p() const { return p_; }
    int ambient() const { return m_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Mat>& basis() const { return basis_; }
    const std::vector<Mat>& basis_star() const { return basis_star_; }
    Mat identity() const { return Mat::identity(m_, p_); }

    bool contains(const Mat& x) const { return span_.contains(x.vectorize()); }
    std::optional<std::vector<i64>> to_coords(const Mat& x) const { return span_.coords(x.vectorize()); }
    Mat from_coords(const std::vector<i64>& c) const;

    // the unique adjoint; throws if x is outside the span
    Mat star(const Mat& x) const;

    friend StarAlgebra adjoint_algebra(const BilinearMap& b);

  private:
    i64 p_ = 3;
    int m_ = 0;
    std::vector<Mat> basis_;
    std::vector<Mat> basis_star_;
    RowSpan span_;
};

StarAlgebra adjoint_algebra(const BilinearMap& b);

// basis of the +1 eigenspace of star, canonically reduced
std::vector<Mat> sym_basis(const StarAlgebra& A);

// T(x) = x + x*, N(x) = x x*
std::pair<Mat, Mat> trace_norm(const StarAlgebra& A, const Mat& x);

bool is_isometry(const StarAlgebra& A, const Mat& phi);

// Jordan products on Sym(b)
Mat jordan_product(const Mat& x, const Mat& y);       // x . y = (xy + yx)/2
Mat quadratic_product(const Mat& y, const Mat& x);    // y U_x = x y x

}  // namespace perpdec
