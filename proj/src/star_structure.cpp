#include "perpdec/star_structure.hpp"

#include <algorithm>
#include <sstream>

namespace perpdec {

namespace {

Mat rows_from_mats(const std::vector<Mat>& mats, int m, i64 p) {
    Mat rows(static_cast<int>(mats.size()), m * m, p);
    for (size_t i = 0; i < mats.size(); ++i) rows.set_row(static_cast<int>(i), mats[i].vectorize());
    return rows;
}

std::vector<Mat> mats_from_rref(Mat rows, int m, i64 p) {
    rref(rows);
    std::vector<Mat> out;
    for (int i = 0; i < rows.rows(); ++i) {
        bool nz = false;
        for (int j = 0; j < rows.cols(); ++j) nz |= rows.at(i, j) != 0;
        if (nz) out.push_back(Mat::from_vector(rows.row(i), m, m, p));
    }
    return out;
}

int isqrt_exact(int v) {
    int s = 0;
    while ((s + 1) * (s + 1) <= v) ++s;
    return s * s == v ? s : -1;
}

}  // namespace

ModRad ModRad::from_mats(const std::vector<Mat>& mats, int m, i64 p) {
    return ModRad(rows_from_mats(mats, m, p), m, p);
}

RadicalData jacobson_radical(const StarAlgebra& A) {
    const int m = A.ambient();
    const i64 p = A.p();
    std::vector<Mat> layer = A.basis();
    // layered coefficient functions c_{p^i}, i = 0..l with p^l <= m
    for (i64 pi = 1; pi <= m; pi *= p) {
        if (layer.empty()) break;
        int d = static_cast<int>(layer.size());
        Mat sys(d, d, p);  // row = y index, col = x index
        for (int b = 0; b < d; ++b)
            for (int a = 0; a < d; ++a)
                sys.at(b, a) = char_poly_coeff(layer[a] * layer[b], static_cast<int>(pi));
        Mat ker = right_kernel(sys);
        std::vector<Mat> next;
        for (int i = 0; i < ker.rows(); ++i) {
            Mat x(m, m, p);
            for (int a = 0; a < d; ++a)
                if (ker.at(i, a) != 0) x = x + layer[a].scaled(ker.at(i, a));
            next.push_back(x);
        }
        next = mats_from_rref(rows_from_mats(next, m, p), m, p);
        // the coefficient functions are linear on the layer; verify directly
        for (const Mat& x : next)
            for (const Mat& y : layer)
                if (char_poly_coeff(x * y, static_cast<int>(pi)) != 0)
                    throw std::logic_error("jacobson_radical: layer kernel verification failed");
        layer = std::move(next);
    }
    RadicalData rad;
    rad.basis = layer;
    // verification: two-sided star-closed nilpotent ideal
    ModRad mod = ModRad::from_mats(rad.basis, m, p);
    for (const Mat& r : rad.basis) {
        for (const Mat& a : A.basis()) {
            if (!mod.is_zero(r * a) || !mod.is_zero(a * r))
                throw std::logic_error("jacobson_radical: candidate is not a two-sided ideal");
        }
        if (!mod.is_zero(A.star(r)))
            throw std::logic_error("jacobson_radical: candidate is not star-closed");
    }
    // nilpotency and power chain
    if (!rad.basis.empty()) {
        std::vector<Mat> cur = rad.basis;
        rad.power_rows.push_back(rows_from_mats(cur, m, p));
        int k = 1;
        while (!cur.empty()) {
            std::vector<Mat> prod;
            for (const Mat& x : cur)
                for (const Mat& r : rad.basis) prod.push_back(x * r);
            cur = mats_from_rref(rows_from_mats(prod, m, p), m, p);
            ++k;
            if (!cur.empty()) rad.power_rows.push_back(rows_from_mats(cur, m, p));
            if (k > A.dim() + 1)
                throw std::logic_error("jacobson_radical: candidate is not nilpotent");
        }
        rad.nilindex = k;
    } else {
        rad.nilindex = 1;
    }
    return rad;
}

Poly min_poly_mod(const Mat& x, const Mat& c, const ModRad& mod) {
    const i64 p = mod.p();
    const int m = mod.m();
    Mat rr(0, m * m, p);
    std::vector<std::vector<i64>> combos;
    Mat cur = c;
    for (int k = 0;; ++k) {
        std::vector<i64> v = mod.reduce(cur).vectorize();
        RowSpan span(rr);
        auto coords = span.coords(v);
        if (coords) {
            std::vector<i64> coeff(k + 1, 0);
            for (int i = 0; i < static_cast<int>(coords->size()); ++i) {
                if ((*coords)[i] == 0) continue;
                for (int j = 0; j <= k; ++j)
                    if (j < static_cast<int>(combos[i].size()))
                        coeff[j] = add_mod(coeff[j], mul_mod((*coords)[i], combos[i][j], p), p);
            }
            std::vector<i64> mc(k + 1, 0);
            for (int j = 0; j < k; ++j) mc[j] = norm_mod(-coeff[j], p);
            mc[k] = 1;
            return Poly(std::move(mc), p);
        }
        Mat rr2(rr.rows() + 1, m * m, p);
        for (int i = 0; i < rr.rows(); ++i) rr2.set_row(i, rr.row(i));
        rr2.set_row(rr.rows(), v);
        rr = rr2;
        std::vector<i64> cb(k + 1, 0);
        cb[k] = 1;
        combos.push_back(cb);
        cur = cur * x;
        if (k > m * m + 1) throw std::logic_error("min_poly_mod: no dependency found");
    }
}

Mat idempotent_from_primary_split(const Mat& x, const Mat& c, const Poly& m, const Poly& target) {
    auto [quot, rem] = divmod(m, target);
    if (!rem.is_zero()) throw std::invalid_argument("idempotent_from_primary_split: target does not divide m");
    Poly g1 = target, g2 = quot;
    PolyXgcd xg = poly_xgcd(g1, g2);
    if (xg.g.degree() != 0) throw std::invalid_argument("idempotent_from_primary_split: factors not coprime");
    // h = v*g2 with u*g1 + v*g2 = 1; h == 1 mod g1, 0 mod g2
    Poly h = poly_mod(xg.v * g2, m);
    // evaluate with x^0 = c
    Mat r = Mat::zero(x.rows(), x.cols(), x.p());
    for (auto it = h.c.rbegin(); it != h.c.rend(); ++it) {
        r = r * x;
        if (*it != 0) r = r + c.scaled(*it);
    }
    return r;
}

std::vector<Mat> sym_part_mod(const StarAlgebra& A, const std::vector<Mat>& span, const ModRad& mod) {
    if (span.empty()) return {};
    const i64 p = mod.p();
    int d = static_cast<int>(span.size());
    int amb = mod.m() * mod.m();
    // constraints: sum xi_i * reduce(star(b_i) - b_i) = 0
    Mat sys(amb, d, p);
    for (int i = 0; i < d; ++i) {
        Mat diff = mod.reduce(A.star(span[i]) - span[i]);
        auto v = diff.vectorize();
        for (int r = 0; r < amb; ++r) sys.at(r, i) = v[r];
    }
    Mat ker = right_kernel(sys);
    std::vector<Mat> out;
    for (int i = 0; i < ker.rows(); ++i) {
        Mat x(mod.m(), mod.m(), p);
        for (int j = 0; j < d; ++j)
            if (ker.at(i, j) != 0) x = x + span[j].scaled(ker.at(i, j));
        out.push_back(mod.reduce(x));
    }
    return mats_from_rref(rows_from_mats(out, mod.m(), p), mod.m(), p);
}

std::vector<Mat> corner_basis_mod(const std::vector<Mat>& span, const Mat& e, const ModRad& mod) {
    std::vector<Mat> prods;
    prods.reserve(span.size());
    for (const Mat& x : span) prods.push_back(mod.reduce(e * x * e));
    return mats_from_rref(rows_from_mats(prods, mod.m(), mod.p()), mod.m(), mod.p());
}

std::vector<Mat> between_basis_mod(const std::vector<Mat>& span, const Mat& f, const Mat& e, const ModRad& mod) {
    std::vector<Mat> prods;
    prods.reserve(span.size());
    for (const Mat& x : span) prods.push_back(mod.reduce(f * x * e));
    return mats_from_rref(rows_from_mats(prods, mod.m(), mod.p()), mod.m(), mod.p());
}

std::optional<Mat> solve_left_multiplier(const std::vector<Mat>& candidates, const Mat& x, const Mat& rhs,
                                         const ModRad& mod) {
    if (candidates.empty()) return std::nullopt;
    const i64 p = mod.p();
    int d = static_cast<int>(candidates.size());
    int amb = mod.m() * mod.m();
    Mat sys(amb, d, p);
    for (int i = 0; i < d; ++i) {
        auto v = mod.reduce(candidates[i] * x).vectorize();
        for (int r = 0; r < amb; ++r) sys.at(r, i) = v[r];
    }
    auto sol = solve_linear(sys, mod.reduce(rhs).vectorize());
    if (!sol.solvable) return std::nullopt;
    Mat z(mod.m(), mod.m(), p);
    for (int i = 0; i < d; ++i)
        if (sol.x[i] != 0) z = z + candidates[i].scaled(sol.x[i]);
    return mod.reduce(z);
}

namespace {

// center of the span (mod rad): {x : [x, b_j] == 0 mod rad}
std::vector<Mat> center_mod(const std::vector<Mat>& span, const ModRad& mod) {
    if (span.empty()) return {};
    const i64 p = mod.p();
    int d = static_cast<int>(span.size());
    int amb = mod.m() * mod.m();
    Mat sys(amb * d, d, p);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto v = mod.reduce(span[i] * span[j] - span[j] * span[i]).vectorize();
            for (int r = 0; r < amb; ++r) sys.at(j * amb + r, i) = v[r];
        }
    Mat ker = right_kernel(sys);
    std::vector<Mat> out;
    for (int i = 0; i < ker.rows(); ++i) {
        Mat x(mod.m(), mod.m(), p);
        for (int j = 0; j < d; ++j)
            if (ker.at(i, j) != 0) x = x + span[j].scaled(ker.at(i, j));
        out.push_back(mod.reduce(x));
    }
    return mats_from_rref(rows_from_mats(out, mod.m(), p), mod.m(), p);
}

struct CommBlock {
    Mat idem;                 // block identity (idempotent mod rad)
    std::vector<Mat> basis;   // basis of the block of the commutative algebra
};

// split a commutative semisimple algebra (mod rad) into primitive idempotents
std::vector<Mat> split_commutative(const std::vector<Mat>& zbasis, const Mat& one, const ModRad& mod, Rng rng) {
    std::vector<CommBlock> work{{one, zbasis}};
    std::vector<Mat> out;
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 4096) throw std::logic_error("split_commutative: did not terminate");
        CommBlock blk = work.back();
        work.pop_back();
        int dim = static_cast<int>(blk.basis.size());
        if (dim <= 1) {
            out.push_back(blk.idem);
            continue;
        }
        bool done = false;
        for (int attempt = 0; attempt < 64 * dim && !done; ++attempt) {
            Mat z(mod.m(), mod.m(), mod.p());
            for (const Mat& bmat : blk.basis)
                z = z + bmat.scaled(static_cast<i64>(rng.below(static_cast<u64>(mod.p()))));
            z = mod.reduce(z);
            Poly mp = min_poly_mod(z, blk.idem, mod);
            auto fac = factor_poly(mp, rng.next());
            if (fac.size() == 1 && fac[0].mult == 1 && mp.degree() == dim) {
                // field certificate: single generator with irreducible min poly
                out.push_back(blk.idem);
                done = true;
            } else if (fac.size() >= 2) {
                for (const auto& pf : fac) {
                    Poly primary = pf.f;
                    for (int t = 1; t < pf.mult; ++t) primary = primary * pf.f;
                    Mat eh = mod.reduce(idempotent_from_primary_split(z, blk.idem, mp, primary));
                    CommBlock nb;
                    nb.idem = eh;
                    std::vector<Mat> nbasis;
                    for (const Mat& bmat : blk.basis) nbasis.push_back(mod.reduce(eh * bmat));
                    nb.basis = mats_from_rref(rows_from_mats(nbasis, mod.m(), mod.p()), mod.m(), mod.p());
                    work.push_back(nb);
                }
                done = true;
            }
            // single repeated primary factor of low degree: draw again
        }
        if (!done) throw std::logic_error("split_commutative: splitting element not found");
    }
    return out;
}

// deterministic primitive self-adjoint idempotent below `start` (mod rad)
Mat primitive_descend(const StarAlgebra& A, const std::vector<Mat>& factor_basis, const Mat& start, int cdim_p,
                      const ModRad& mod, Rng rng) {
    Mat cur = start;
    int guard = 0;
    for (;;) {
        if (++guard > 256) throw std::logic_error("primitive_descend: did not terminate");
        std::vector<Mat> corner = corner_basis_mod(factor_basis, cur, mod);
        if (static_cast<int>(corner.size()) <= cdim_p) return cur;
        std::vector<Mat> hpart = sym_part_mod(A, corner, mod);
        bool split = false;
        for (int attempt = 0; attempt < 128 && !split; ++attempt) {
            Mat z(mod.m(), mod.m(), mod.p());
            for (const Mat& bmat : hpart)
                z = z + bmat.scaled(static_cast<i64>(rng.below(static_cast<u64>(mod.p()))));
            z = mod.reduce(z);
            Poly mp = min_poly_mod(z, cur, mod);
            auto fac = factor_poly(mp, rng.next());
            if (fac.size() < 2) continue;
            Poly primary = fac[0].f;
            for (int t = 1; t < fac[0].mult; ++t) primary = primary * fac[0].f;
            Mat eh = mod.reduce(idempotent_from_primary_split(z, cur, mp, primary));
            if (mod.is_zero(eh) || mod.eq(eh, cur)) continue;
            cur = eh;
            split = true;
        }
        if (!split) throw std::logic_error("primitive_descend: no splitting element found");
    }
}

void classify_factor(const StarAlgebra& A, const ModRad& mod, SimpleStarFactor& f) {
    f.center_basis = center_mod(f.basis, mod);
    f.sym_corner = sym_part_mod(A, f.basis, mod);
    int zdim = static_cast<int>(f.center_basis.size());
    std::vector<Mat> zfixed = sym_part_mod(A, f.center_basis, mod);
    int zfix = static_cast<int>(zfixed.size());
    f.dim_p = static_cast<int>(f.basis.size());
    int hdim_p = static_cast<int>(f.sym_corner.size());
    if (zfix == zdim) {
        // first kind: K = Z
        f.e = zdim;
        i64 q = 1;
        for (int i = 0; i < f.e; ++i) q *= A.p();
        f.q = q;
        int total = f.dim_p / f.e;
        int h = hdim_p / f.e;
        int s = isqrt_exact(total);
        if (s < 0) throw std::logic_error("classify_factor: first-kind dimension not a square");
        if (2 * h == s * (s + 1)) {
            f.type = "orthogonal";
            f.n = s;
        } else if (s % 2 == 0 && 2 * h == s * (s - 1)) {
            f.type = "symplectic";
            f.n = s / 2;
        } else {
            throw std::logic_error("classify_factor: hermitian dimension matches no first-kind type");
        }
    } else if (2 * zfix == zdim) {
        f.e = zfix;
        i64 q = 1;
        for (int i = 0; i < f.e; ++i) q *= A.p();
        f.q = q;
        // unitary (Z a field) vs exchange (Z splits)
        Rng rng(splitmix64(0xabcdef12u + f.index));
        auto idems = split_commutative(f.center_basis, f.identity_rep, mod, rng);
        if (idems.size() == 1) {
            f.type = "unitary";
        } else if (idems.size() == 2) {
            f.type = "exchange";
            if (!mod.eq(A.star(idems[0]), idems[1]))
                throw std::logic_error("classify_factor: exchange center idempotents not swapped by star");
        } else {
            throw std::logic_error("classify_factor: center splits into more than two pieces");
        }
        int total2 = f.dim_p / f.e;  // dim over K
        int n2 = isqrt_exact(total2 / 2);
        if (n2 < 0 || hdim_p / f.e != n2 * n2)
            throw std::logic_error("classify_factor: second-kind dimension check failed");
        f.n = n2;
    } else {
        throw std::logic_error("classify_factor: star-fixed center has unexpected dimension");
    }
    if (f.type == "orthogonal") {
        int cdim_p = f.e;
        Rng rng(splitmix64(0x517cc1b7u + f.index));
        f.anchor = primitive_descend(A, f.basis, f.identity_rep, cdim_p, mod, rng);
    }
}

}  // namespace

std::vector<SimpleStarFactor> star_ideal_decomposition(const StarAlgebra& A, const RadicalData& rad) {
    const int m = A.ambient();
    const i64 p = A.p();
    ModRad mod = ModRad::from_mats(rad.basis, m, p);
    // complement basis of A mod rad
    std::vector<Mat> comp;
    {
        Mat rows = rows_from_mats(rad.basis, m, p);
        for (const Mat& bmat : A.basis()) {
            Mat test(rows.rows() + 1, m * m, p);
            for (int i = 0; i < rows.rows(); ++i) test.set_row(i, rows.row(i));
            test.set_row(rows.rows(), bmat.vectorize());
            if (rank_of(test) > rows.rows()) {
                comp.push_back(bmat);
                rows = test;
                rref(rows);
            }
        }
    }
    std::vector<Mat> zbasis = center_mod(comp, mod);
    Rng rng(splitmix64(0x9d2c5680u + static_cast<u64>(A.dim())));
    auto idems = split_commutative(zbasis, A.identity(), mod, rng);
    // canonical order
    std::sort(idems.begin(), idems.end(),
              [](const Mat& a, const Mat& b) { return a.vectorize() < b.vectorize(); });
    // merge star orbits
    std::vector<SimpleStarFactor> factors;
    std::vector<char> used(idems.size(), 0);
    for (size_t i = 0; i < idems.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        Mat eps = idems[i];
        Mat st = mod.reduce(A.star(idems[i]));
        if (!mod.eq(st, idems[i])) {
            bool found = false;
            for (size_t j = i + 1; j < idems.size(); ++j) {
                if (!used[j]) {
                    if (mod.eq(st, idems[j])) {
                        used[j] = 1;
                        eps = mod.reduce(eps + idems[j]);
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw std::logic_error("star_ideal_decomposition: star orbit of idempotent incomplete");
        }
        SimpleStarFactor f;
        f.index = static_cast<int>(factors.size());
        f.identity_rep = eps;
        std::vector<Mat> cb;
        for (const Mat& x : comp) cb.push_back(mod.reduce(eps * x * eps));
        f.basis = mats_from_rref(rows_from_mats(cb, m, p), m, p);
        factors.push_back(std::move(f));
    }
    int total = 0;
    for (auto& f : factors) total += static_cast<int>(f.basis.size());
    if (total + static_cast<int>(rad.basis.size()) != A.dim())
        throw std::logic_error("star_ideal_decomposition: dimension accounting failed");
    for (auto& f : factors) classify_factor(A, mod, f);
    return factors;
}

StarStructure analyze_structure(const BilinearMap& b) {
    StarStructure s;
    s.b = b;
    s.A = adjoint_algebra(b);
    s.sym = sym_basis(s.A);
    s.rad = jacobson_radical(s.A);
    s.mod = ModRad::from_mats(s.rad.basis, s.A.ambient(), s.A.p());
    s.factors = star_ideal_decomposition(s.A, s.rad);
    return s;
}

StructureReport summarize(const StarStructure& s) {
    StructureReport r;
    r.radical_dim = static_cast<int>(s.rad.basis.size());
    r.adj_dim = s.A.dim();
    r.sym_dim = static_cast<int>(s.sym.size());
    for (const auto& f : s.factors) r.factors.push_back({f.type, f.n, f.q});
    r.indecomposable = (s.factors.size() == 1 && s.factors[0].n == 1);
    if (r.indecomposable) r.indecomposable_type = s.factors[0].type;
    r.p3_orthogonal_caveat = (s.A.p() == 3 && r.indecomposable && r.indecomposable_type == "orthogonal");
    r.isom_shape = isometry_shape(r);
    return r;
}

IndecomposabilityVerdict indecomposability_certificate(const BilinearMap& b) {
    StarStructure s = analyze_structure(b);
    StructureReport r = summarize(s);
    IndecomposabilityVerdict v;
    v.indecomposable = r.indecomposable;
    v.type = r.indecomposable_type;
    v.evidence = r;
    return v;
}

std::string isometry_shape(const StructureReport& r) {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : r.factors) {
        if (!first) os << " × ";
        first = false;
        if (f.type == "orthogonal")
            os << "GO(" << f.n << "," << f.q << ")";
        else if (f.type == "unitary")
            os << "GU(" << f.n << "," << f.q << ")";
        else if (f.type == "exchange")
            os << "GL(" << f.n << "," << f.q << ")";
        else
            os << "Sp(" << 2 * f.n << "," << f.q << ")";
    }
    if (r.radical_dim > 0) os << " ⋉ O_p(dim " << r.radical_dim << ")";
    return os.str();
}

}  // namespace perpdec
