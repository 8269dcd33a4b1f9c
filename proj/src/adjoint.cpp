#include "perpdec/adjoint.hpp"

namespace perpdec {

Mat StarAlgebra::from_coords(const std::vector<i64>& c) const {
    if (static_cast<int>(c.size()) != dim()) throw std::invalid_argument("from_coords: length mismatch");
    Mat r(m_, m_, p_);
    for (int i = 0; i < dim(); ++i)
        if (c[i] != 0) r = r + basis_[i].scaled(c[i]);
    return r;
}

Mat StarAlgebra::star(const Mat& x) const {
    auto co = to_coords(x);
    if (!co) throw std::invalid_argument("star: element outside Adj(b)");
    Mat r(m_, m_, p_);
    for (int i = 0; i < dim(); ++i)
        if ((*co)[i] != 0) r = r + basis_star_[i].scaled((*co)[i]);
    return r;
}

StarAlgebra adjoint_algebra(const BilinearMap& b) {
    require_valid_nondegenerate(b, "adjoint_algebra");
    int m = b.dimV;
    i64 p = b.p;
    // unknowns: pair (F, G) with F B_k = B_k G^T for every gram; kernel of a
    // (w m^2) x (2 m^2) system. Unknown layout: F row-major then G row-major.
    int un = 2 * m * m;
    Mat sys(b.dimW * m * m, un, p);
    int row = 0;
    for (int k = 0; k < b.dimW; ++k) {
        const Mat& B = b.grams[k];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                // (F B)_{ij} - (B G^T)_{ij} = 0
                for (int s = 0; s < m; ++s) {
                    sys.at(row, i * m + s) = add_mod(sys.at(row, i * m + s), B.at(s, j), p);
                    sys.at(row, m * m + j * m + s) = sub_mod(sys.at(row, m * m + j * m + s), B.at(i, s), p);
                }
                ++row;
            }
    }
    Mat ker = right_kernel(sys);
    // the projection to F must be injective for non-degenerate b
    Mat fpart(ker.rows(), m * m, p);
    for (int i = 0; i < ker.rows(); ++i)
        for (int j = 0; j < m * m; ++j) fpart.at(i, j) = ker.at(i, j);
    if (rank_of(fpart) != ker.rows())
        throw std::logic_error("adjoint_algebra: adjoints not unique on a non-degenerate map");
    // canonical basis: rref over the F coordinates, carrying G along
    Mat aug = ker;
    {
        // eliminate on the first m^2 columns only
        int r = 0;
        for (int c = 0; c < m * m && r < aug.rows(); ++c) {
            int sel = -1;
            for (int i = r; i < aug.rows(); ++i)
                if (aug.at(i, c) != 0) { sel = i; break; }
            if (sel < 0) continue;
            if (sel != r)
                for (int j = 0; j < aug.cols(); ++j) std::swap(aug.at(sel, j), aug.at(r, j));
            i64 inv = inv_mod(aug.at(r, c), p);
            for (int j = 0; j < aug.cols(); ++j) aug.at(r, j) = mul_mod(aug.at(r, j), inv, p);
            for (int i = 0; i < aug.rows(); ++i) {
                if (i == r || aug.at(i, c) == 0) continue;
                i64 f = aug.at(i, c);
                for (int j = 0; j < aug.cols(); ++j)
                    aug.at(i, j) = sub_mod(aug.at(i, j), mul_mod(f, aug.at(r, j), p), p);
            }
            ++r;
        }
    }
    StarAlgebra A;
    A.p_ = p;
    A.m_ = m;
    Mat fb(aug.rows(), m * m, p);
    for (int i = 0; i < aug.rows(); ++i) {
        std::vector<i64> fv(m * m), gv(m * m);
        for (int j = 0; j < m * m; ++j) {
            fv[j] = aug.at(i, j);
            gv[j] = aug.at(i, m * m + j);
        }
        A.basis_.push_back(Mat::from_vector(fv, m, m, p));
        A.basis_star_.push_back(Mat::from_vector(gv, m, m, p));
        fb.set_row(i, fv);
    }
    A.span_ = RowSpan(fb);
    if (!A.contains(Mat::identity(m, p)))
        throw std::logic_error("adjoint_algebra: identity missing from the solution space");
    return A;
}

std::vector<Mat> sym_basis(const StarAlgebra& A) {
    int d = A.dim();
    int m = A.ambient();
    i64 p = A.p();
    // coordinates of star: star(F_i) = basis_star_[i], expressed over basis
    Mat S(d, d, p);
    for (int i = 0; i < d; ++i) {
        auto co = A.to_coords(A.basis_star()[i]);
        if (!co) throw std::logic_error("sym_basis: star image escapes the algebra");
        S.set_row(i, *co);
    }
    // fixed space {c : c S = c}
    Mat M = S - Mat::identity(d, p);
    Mat fixed = left_kernel(M);
    std::vector<Mat> out;
    Mat rows(fixed.rows(), m * m, p);
    for (int i = 0; i < fixed.rows(); ++i) {
        Mat x(m, m, p);
        for (int j = 0; j < d; ++j)
            if (fixed.at(i, j) != 0) x = x + A.basis()[j].scaled(fixed.at(i, j));
        rows.set_row(i, x.vectorize());
    }
    rref(rows);
    for (int i = 0; i < rows.rows(); ++i) out.push_back(Mat::from_vector(rows.row(i), m, m, p));
    return out;
}

std::pair<Mat, Mat> trace_norm(const StarAlgebra& A, const Mat& x) {
    Mat xs = A.star(x);
    return {x + xs, x * xs};
}

bool is_isometry(const StarAlgebra& A, const Mat& phi) {
    if (!inverse(phi)) throw std::invalid_argument("is_isometry: singular operator");
    if (!A.contains(phi)) return false;
    return (phi * A.star(phi)).is_identity();
}

Mat jordan_product(const Mat& x, const Mat& y) {
    i64 half = inv_mod(2, x.p());
    return (x * y + y * x).scaled(half);
}

Mat quadratic_product(const Mat& y, const Mat& x) { return x * y * x; }

}  // namespace perpdec
