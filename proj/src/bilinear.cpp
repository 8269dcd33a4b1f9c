#include "perpdec/bilinear.hpp"

#include <algorithm>

namespace perpdec {

namespace {

Mat stacked_grams(const BilinearMap& b) {
    // dimV x (dimW * dimV): [B_1 | B_2 | ... ]
    Mat s(b.dimV, b.dimW * b.dimV, b.p);
    for (int k = 0; k < b.dimW; ++k)
        for (int i = 0; i < b.dimV; ++i)
            for (int j = 0; j < b.dimV; ++j)
                s.at(i, k * b.dimV + j) = b.grams[k].at(i, j);
    return s;
}

Mat gram_rows(const BilinearMap& b) {
    // dimW x dimV^2: gram matrices as row vectors
    Mat g(b.dimW, b.dimV * b.dimV, b.p);
    for (int k = 0; k < b.dimW; ++k) g.set_row(k, b.grams[k].vectorize());
    return g;
}

}  // namespace

ValidationReport validate(const BilinearMap& b) {
    ValidationReport r;
    FieldSpec{b.p}.validate();
    if (b.sign != 1 && b.sign != -1) {
        r.ok = false;
        r.violations.push_back("sign must be +1 or -1");
        return r;
    }
    if (static_cast<int>(b.grams.size()) != b.dimW) {
        r.ok = false;
        r.violations.push_back("gram count != dimW");
        return r;
    }
    for (const Mat& g : b.grams) {
        if (g.rows() != b.dimV || g.cols() != b.dimV) {
            r.ok = false;
            r.violations.push_back("gram shape mismatch");
            return r;
        }
        bool good = (b.sign == 1) ? g.is_symmetric() : g.is_skew_symmetric_zero_diag();
        if (!good) {
            r.symmetry_ok = false;
            r.ok = false;
            r.violations.push_back(b.sign == 1 ? "gram not symmetric" : "gram not alternating");
        }
    }
    if (b.dimW > 0 && rank_of(gram_rows(b)) != b.dimW) {
        r.fullness_ok = false;
        r.ok = false;
        r.violations.push_back("grams linearly dependent: W != b(V,V)");
    }
    r.radical_dim = radical(b).dim();
    return r;
}

void require_valid_nondegenerate(const BilinearMap& b, const char* who) {
    if (b.degenerate_flag)
        throw std::invalid_argument(std::string(who) + ": map flagged as degenerate restriction");
    ValidationReport r = validate(b);
    if (!r.ok) throw std::invalid_argument(std::string(who) + ": invalid bilinear map: " + r.violations.front());
    if (r.radical_dim != 0) throw std::invalid_argument(std::string(who) + ": degenerate bilinear map");
}

Subspace radical(const BilinearMap& b) {
    if (b.dimW == 0) return Subspace{Mat::identity(b.dimV, b.p)};
    // left radical {u : u B_k = 0 for all k}; for sign = +-1 maps it equals
    // the right radical
    Mat basis = left_kernel(stacked_grams(b));
    rref(basis);
    return Subspace{basis};
}

Restriction restrict_map(const BilinearMap& b, const Subspace& X) {
    if (X.dim() == 0) throw std::invalid_argument("restrict_map: zero subspace");
    if (X.ambient() != b.dimV) throw std::invalid_argument("restrict_map: ambient mismatch");
    const Mat& R = X.basis;
    std::vector<Mat> gr;
    gr.reserve(b.grams.size());
    for (const Mat& g : b.grams) gr.push_back(R * g * R.transpose());
    // re-span W so fullness holds for the restriction
    int d = X.dim();
    Mat rows(b.dimW, d * d, b.p);
    for (int k = 0; k < b.dimW; ++k) rows.set_row(k, gr[k].vectorize());
    Mat rr = rows;
    std::vector<int> piv;
    int w2 = rref(rr, &piv);
    Restriction out;
    out.map.p = b.p;
    out.map.sign = b.sign;
    out.map.dimV = d;
    out.map.dimW = w2;
    Mat basis(w2, d * d, b.p);
    for (int l = 0; l < w2; ++l) {
        basis.set_row(l, rr.row(l));
        out.map.grams.push_back(Mat::from_vector(rr.row(l), d, d, b.p));
    }
    // old W coordinate k maps to the coordinates of gr[k] over the new basis
    RowSpan span(basis);
    out.w_change = Mat(b.dimW, w2, b.p);
    for (int k = 0; k < b.dimW; ++k) {
        auto co = span.coords(rows.row(k));
        if (!co) throw std::logic_error("restrict_map: span coordination failed");
        out.w_change.set_row(k, *co);
    }
    out.map.degenerate_flag = (w2 == 0) || (radical(out.map).dim() != 0);
    return out;
}

BilinearMap direct_sum(const BilinearMap& b, const BilinearMap& c) {
    if (b.p != c.p) throw std::invalid_argument("direct_sum: field mismatch");
    if (b.sign != c.sign) throw std::invalid_argument("direct_sum: sign mismatch");
    BilinearMap r;
    r.p = b.p;
    r.sign = b.sign;
    r.dimV = b.dimV + c.dimV;
    r.dimW = b.dimW + c.dimW;
    for (int k = 0; k < b.dimW; ++k) {
        Mat g(r.dimV, r.dimV, r.p);
        for (int i = 0; i < b.dimV; ++i)
            for (int j = 0; j < b.dimV; ++j) g.at(i, j) = b.grams[k].at(i, j);
        r.grams.push_back(g);
    }
    for (int k = 0; k < c.dimW; ++k) {
        Mat g(r.dimV, r.dimV, r.p);
        for (int i = 0; i < c.dimV; ++i)
            for (int j = 0; j < c.dimV; ++j) g.at(b.dimV + i, b.dimV + j) = c.grams[k].at(i, j);
        r.grams.push_back(g);
    }
    return r;
}

BilinearMap tensor(const BilinearMap& d, const BilinearMap& b) {
    if (d.p != b.p) throw std::invalid_argument("tensor: field mismatch");
    if (d.sign != 1 || d.dimW != 1) throw std::invalid_argument("tensor: d must be a symmetric form (dimW == 1)");
    if (radical(d).dim() != 0) throw std::invalid_argument("tensor: degenerate symmetric form");
    BilinearMap r;
    r.p = b.p;
    r.sign = b.sign;
    r.dimV = d.dimV * b.dimV;
    r.dimW = b.dimW;
    for (const Mat& g : b.grams) r.grams.push_back(Mat::kron(d.grams[0], g));
    return r;
}

BilinearMap exterior_square(int n, i64 p) {
    if (n < 2) throw std::invalid_argument("exterior_square: n must be >= 2");
    BilinearMap b;
    b.p = p;
    b.sign = -1;
    b.dimV = n;
    b.dimW = n * (n - 1) / 2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat g(n, n, p);
            g.at(i, j) = 1;
            g.at(j, i) = p - 1;
            b.grams.push_back(g);
        }
    return b;
}

BilinearMap standard_alternating(int n, i64 p) {
    if (n != 2) throw std::invalid_argument("standard_alternating: dimension 2 only");
    return exterior_square(2, p);
}

BilinearMap exchange_map(int n, i64 p) {
    if (n < 2)
        throw std::invalid_argument(
            "exchange_map: n must be >= 2 (n = 1 degenerates to the non-degenerate alternating form)");
    BilinearMap b;
    b.p = p;
    b.sign = -1;
    b.dimV = 1 + n;
    b.dimW = n;
    for (int k = 0; k < n; ++k) {
        Mat g(1 + n, 1 + n, p);
        g.at(0, 1 + k) = 1;
        g.at(1 + k, 0) = p - 1;
        b.grams.push_back(g);
    }
    return b;
}

BilinearMap dot_form(int n, i64 p, Disc disc) {
    if (n < 1) throw std::invalid_argument("dot_form: n must be >= 1");
    BilinearMap b;
    b.p = p;
    b.sign = 1;
    b.dimV = n;
    b.dimW = 1;
    Mat g = Mat::identity(n, p);
    if (disc == Disc::nonsquare) g.at(n - 1, n - 1) = least_nonsquare(p);
    b.grams.push_back(g);
    return b;
}

CentralPower central_power(const BilinearMap& b, int n) {
    if (n < 1) throw std::invalid_argument("central_power: n must be >= 1");
    require_valid_nondegenerate(b, "central_power");
    CentralPower out;
    out.map = tensor(dot_form(n, b.p, Disc::square), b);
    for (int i = 0; i < n; ++i) {
        Mat rows(b.dimV, out.map.dimV, b.p);
        for (int r = 0; r < b.dimV; ++r) rows.at(r, i * b.dimV + r) = 1;
        out.blocks.push_back(Subspace{rows});
    }
    return out;
}

bool check_pseudo_isometry(const BilinearMap& b, const BilinearMap& c, const PseudoIsometry& pi) {
    if (b.p != c.p || b.dimV != c.dimV || b.dimW != c.dimW)
        throw std::invalid_argument("check_pseudo_isometry: dimension mismatch");
    if (!inverse(pi.alpha) || !inverse(pi.alpha_hat))
        throw std::invalid_argument("check_pseudo_isometry: singular alpha or alpha_hat");
    // b'(u a, v a) = b(u,v) a_hat  <=>  A C_k A^T = sum_l B_l (a_hat)_{lk}
    for (int k = 0; k < b.dimW; ++k) {
        Mat lhs = pi.alpha * c.grams[k] * pi.alpha.transpose();
        Mat rhs(b.dimV, b.dimV, b.p);
        for (int l = 0; l < b.dimW; ++l) {
            i64 w = pi.alpha_hat.at(l, k);
            if (w != 0) rhs = rhs + b.grams[l].scaled(w);
        }
        if (lhs != rhs) return false;
    }
    return true;
}

std::vector<i64> eval_map(const BilinearMap& b, const std::vector<i64>& u, const std::vector<i64>& v) {
    if (static_cast<int>(u.size()) != b.dimV || static_cast<int>(v.size()) != b.dimV)
        throw std::invalid_argument("eval_map: vector length mismatch");
    std::vector<i64> w(b.dimW, 0);
    for (int k = 0; k < b.dimW; ++k) {
        i64 acc = 0;
        for (int i = 0; i < b.dimV; ++i) {
            if (u[i] == 0) continue;
            i64 rowacc = 0;
            for (int j = 0; j < b.dimV; ++j)
                rowacc = (rowacc + b.grams[k].at(i, j) * v[j]) % b.p;
            acc = (acc + u[i] * rowacc) % b.p;
        }
        w[k] = acc;
    }
    return w;
}

Mat map_image(const BilinearMap& b, const Mat& xrows, const Mat& yrows) {
    Mat vals(xrows.rows() * yrows.rows(), b.dimW, b.p);
    int r = 0;
    for (int i = 0; i < xrows.rows(); ++i)
        for (int j = 0; j < yrows.rows(); ++j) {
            vals.set_row(r++, eval_map(b, xrows.row(i), yrows.row(j)));
        }
    rref(vals);
    int rk = 0;
    for (int i = 0; i < vals.rows(); ++i) {
        bool nz = false;
        for (int j = 0; j < vals.cols(); ++j) nz |= vals.at(i, j) != 0;
        if (nz) ++rk;
    }
    Mat out(rk, b.dimW, b.p);
    for (int i = 0; i < rk; ++i) out.set_row(i, vals.row(i));
    return out;
}

}  // namespace perpdec
