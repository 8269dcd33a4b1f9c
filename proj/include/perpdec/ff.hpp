// Exact linear algebra over prime fields GF(p), p an odd prime.
// Dense row-major matrices; row vectors act on the left throughout the
// library (u -> u*M), matching the right-action convention of the maps
// this kernel supports.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perpdec {

using i64 = std::int64_t;

struct FieldSpec {
    i64 p = 3;

    void validate() const;
};

bool is_prime(i64 n);

// scalar arithmetic mod p
inline i64 norm_mod(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}
inline i64 add_mod(i64 a, i64 b, i64 p) { return (a + b) % p; }
inline i64 sub_mod(i64 a, i64 b, i64 p) { return norm_mod(a - b, p); }
inline i64 mul_mod(i64 a, i64 b, i64 p) { return (a * b) % p; }
i64 inv_mod(i64 a, i64 p);
i64 pow_mod(i64 a, i64 e, i64 p);

// Least positive nonsquare mod p (p odd prime).
i64 least_nonsquare(i64 p);

// square test for a nonzero scalar of GF(q), q an odd prime power given with
// its value in the prime field (q == p). Extension-field elements are handled
// where they live, as matrices in a commutative subalgebra (see addresses).
bool is_square_mod(i64 a, i64 p);

// Dense matrix over GF(p).
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols, i64 p)
        : rows_(rows), cols_(cols), p_(p), a_(static_cast<size_t>(rows) * cols, 0) {}

    static Mat identity(int n, i64 p);
    static Mat zero(int rows, int cols, i64 p) { return Mat(rows, cols, p); }
    static Mat from_rows(const std::vector<std::vector<i64>>& rows, i64 p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    i64 p() const { return p_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    i64& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    i64 at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat operator*(const Mat& o) const;
    Mat scaled(i64 s) const;
    Mat transpose() const;
    Mat pow(i64 e) const;

    bool is_zero() const;
    bool is_identity() const;
    bool is_symmetric() const;
    bool is_skew_symmetric_zero_diag() const;
    i64 trace() const;

    // row-major flattening as a 1 x (rows*cols) row vector
    std::vector<i64> vectorize() const { return a_; }
    static Mat from_vector(const std::vector<i64>& v, int rows, int cols, i64 p);

    // Kronecker product, index order (i-1)*cols(B)+r so that blocks of B-size
    // sit consecutively per A-entry.
    static Mat kron(const Mat& A, const Mat& B);

    std::vector<i64> row(int r) const;
    void set_row(int r, const std::vector<i64>& v);

    std::string to_string() const;

  private:
    int rows_ = 0, cols_ = 0;
    i64 p_ = 3;
    std::vector<i64> a_;
};

// in-place reduced row echelon form; returns pivot column per row kept
int rref(Mat& m, std::vector<int>* pivots = nullptr);

int rank_of(Mat m);

// basis of {x row vector : x*A = 0}
Mat left_kernel(const Mat& A);
// basis of {x column, returned as rows : A*x = 0}
Mat right_kernel(const Mat& A);

std::optional<Mat> inverse(const Mat& A);
i64 determinant(Mat A);

// one solution of A*x = b (x, b columns) plus right-kernel basis rows
struct LinearSolution {
    bool solvable = false;
    std::vector<i64> x;  // a particular solution
    Mat kernel;          // rows span the homogeneous solutions
};
LinearSolution solve_linear(const Mat& A, const std::vector<i64>& rhs);

// Row span with membership and coordinate queries against the original rows.
class RowSpan {
  public:
    RowSpan() = default;
    explicit RowSpan(const Mat& rows);

    int dim() const { return rr_.rows(); }
    i64 p() const { return rr_.p(); }
    int ambient() const { return rr_.cols(); }
    const Mat& rref_basis() const { return rr_; }

    bool contains(const std::vector<i64>& v) const;
    // residue of v modulo the span
    std::vector<i64> reduce(std::vector<i64> v) const;
    // coordinates over the *original* rows, if v lies in the span
    std::optional<std::vector<i64>> coords(const std::vector<i64>& v) const;

  private:
    Mat rr_;              // rref rows
    Mat t_;               // rr_ = t_ * original
    std::vector<int> piv_;
};

// characteristic polynomial of a square matrix, coefficients ascending
// (c[0] constant .. c[n] = 1). Division-free Samuelson-Berkowitz, valid for
// every characteristic.
std::vector<i64> char_poly(const Mat& M);

// Samuelson-Berkowitz gives c_j as the coefficient functions used by the
// layered radical computation: c_j(M) = (-1)^j * [t^{n-j}] det(tI - M).
i64 char_poly_coeff(const Mat& M, int j);

}  // namespace perpdec
