#include "perpdec/jordan.hpp"

#include "perpdec/addresses.hpp"

#include <algorithm>
#include <map>

namespace perpdec {

namespace {

Mat random_combo(const std::vector<Mat>& basis, int m, i64 p, Rng& rng) {
    Mat x(m, m, p);
    for (const Mat& b : basis) {
        i64 c = static_cast<i64>(rng.below(static_cast<u64>(p)));
        if (c != 0) x = x + b.scaled(c);
    }
    return x;
}

// split a proper self-adjoint idempotent off x using its minimal polynomial,
// identity c, equality mod `mod`; nullopt when the polynomial is primary
std::optional<Mat> split_idempotent(const Mat& x, const Mat& c, const ModRad& mod, u64 seed) {
    Poly mp = min_poly_mod(x, c, mod);
    auto fac = factor_poly(mp, seed);
    if (fac.size() < 2) return std::nullopt;
    Poly primary = fac[0].f;
    for (int t = 1; t < fac[0].mult; ++t) primary = primary * fac[0].f;
    Mat e = mod.reduce(idempotent_from_primary_split(x, c, mp, primary));
    if (mod.is_zero(e) || mod.eq(e, c)) return std::nullopt;
    return e;
}

}  // namespace

bool is_sym_idempotent(const BilinearMap& b, const Mat& e) {
    if (e.rows() != b.dimV || e.cols() != b.dimV) return false;
    if (e * e != e) return false;
    for (const Mat& g : b.grams)
        if (e * g != g * e.transpose()) return false;
    return true;
}

Mat embed_operator(const Mat& sub_op, const Mat& xbasis, const Mat& compbasis) {
    int m = xbasis.cols();
    i64 p = xbasis.p();
    int d = xbasis.rows();
    Mat T(m, m, p);
    for (int i = 0; i < d; ++i) T.set_row(i, xbasis.row(i));
    for (int i = 0; i < compbasis.rows(); ++i) T.set_row(d + i, compbasis.row(i));
    auto Tinv = inverse(T);
    if (!Tinv) throw std::logic_error("embed_operator: bases do not span");
    Mat block(m, m, p);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) block.at(i, j) = sub_op.at(i, j);
    return *Tinv * block * T;
}

PeirceSplit peirce_split(const BilinearMap& b, const Mat& e) {
    if (!is_sym_idempotent(b, e)) throw std::invalid_argument("peirce_split: not a self-adjoint idempotent");
    if (e.is_zero() || e.is_identity()) throw std::invalid_argument("peirce_split: idempotent must be proper");
    Mat one = Mat::identity(b.dimV, b.p);
    Mat imb = e;
    rref(imb);
    Mat kerb = one - e;
    rref(kerb);
    int d = rank_of(e);
    Mat xrows(d, b.dimV, b.p), yrows(b.dimV - d, b.dimV, b.p);
    for (int i = 0; i < d; ++i) xrows.set_row(i, imb.row(i));
    for (int i = 0; i < b.dimV - d; ++i) yrows.set_row(i, kerb.row(i));
    PeirceSplit ps;
    ps.im = Subspace{xrows};
    ps.ker = Subspace{yrows};
    if (map_image(b, xrows, yrows).rows() != 0)
        throw std::logic_error("peirce_split: b(Ve, V(1-e)) != 0");
    ps.on_im = restrict_map(b, ps.im);
    ps.on_ker = restrict_map(b, ps.ker);
    if (!ps.on_im.map.degenerate_flag) ps.jordan_im = sym_basis(adjoint_algebra(ps.on_im.map));
    if (!ps.on_ker.map.degenerate_flag) ps.jordan_ker = sym_basis(adjoint_algebra(ps.on_ker.map));
    return ps;
}

std::optional<Mat> find_proper_idempotent(const BilinearMap& b, const StarAlgebra& A,
                                          const std::vector<Mat>& sym, u64 seed) {
    Rng rng(seed);
    ModRad exact(Mat(0, A.ambient() * A.ambient(), A.p()), A.ambient(), A.p());
    int budget = 8 * static_cast<int>(sym.size());
    for (int round = 0;; ++round) {
        for (int attempt = 0; attempt < budget; ++attempt) {
            Mat x = random_combo(sym, A.ambient(), A.p(), rng);
            auto e = split_idempotent(x, A.identity(), exact, rng.next());
            if (e) {
                if ((*e) * (*e) != *e) throw std::logic_error("find_proper_idempotent: inexact idempotent");
                if (!is_sym_idempotent(b, *e))
                    throw std::logic_error("find_proper_idempotent: split left Sym(b)");
                return e;
            }
        }
        auto cert = indecomposability_certificate(b);
        if (cert.indecomposable) return std::nullopt;
        // decomposable but unlucky draws: extend the budget with fresh seeds
        budget *= 2;
        rng = rng.split(0xdecff00dULL + round);
        if (round > 16) throw std::logic_error("find_proper_idempotent: search failed on a decomposable map");
    }
}

Mat lift_idempotent(const Mat& e_hat, const ModRad& nil) {
    if (!nil.is_zero(e_hat * e_hat - e_hat))
        throw std::invalid_argument("lift_idempotent: not an idempotent mod the nil ideal");
    Mat e = e_hat;
    for (int it = 0; it < 64; ++it) {
        if (e * e == e) return e;
        e = (e * e).scaled(3) - (e * e * e).scaled(2);
    }
    throw std::logic_error("lift_idempotent: no convergence (ideal not nil?)");
}

Mat lift_involution(const Mat& u_hat, const ModRad& nil) {
    i64 p = u_hat.p();
    Mat one = Mat::identity(u_hat.rows(), p);
    if (!nil.is_zero(u_hat * u_hat - one))
        throw std::invalid_argument("lift_involution: not an involution mod the nil ideal");
    i64 half = inv_mod(2, p);
    Mat e = lift_idempotent((one + u_hat).scaled(half), nil);
    Mat v = e.scaled(2) - one;
    if (v * v != one) throw std::logic_error("lift_involution: lift failed");
    return v;
}

Mat involution_from_nil(const Mat& e, const Mat& z) {
    Mat one = Mat::identity(e.rows(), e.p());
    if (e * e != e) throw std::invalid_argument("involution_from_nil: e not idempotent");
    if (!(z * z).is_zero()) throw std::invalid_argument("involution_from_nil: z^2 != 0");
    Mat f = e + z;
    if (f * f != f) throw std::invalid_argument("involution_from_nil: e + z not idempotent");
    Mat v = one - e.scaled(2) - z;
    if (v * v != one) throw std::logic_error("involution_from_nil: v^2 != 1");
    return v;
}

namespace {

struct RawMember {
    Mat idem;
    std::string cert_type;
};

std::vector<RawMember> frame_rec(const BilinearMap& b, u64 seed) {
    auto A = adjoint_algebra(b);
    auto sym = sym_basis(A);
    auto e = find_proper_idempotent(b, A, sym, seed);
    if (!e) {
        auto cert = indecomposability_certificate(b);
        if (!cert.indecomposable) throw std::logic_error("frame_rec: verdicts disagree");
        return {{Mat::identity(b.dimV, b.p), cert.type}};
    }
    PeirceSplit ps = peirce_split(b, *e);
    Rng rng(seed);
    auto left = frame_rec(ps.on_im.map, rng.split(1).next());
    auto right = frame_rec(ps.on_ker.map, rng.split(2).next());
    std::vector<RawMember> out;
    for (auto& mmb : left)
        out.push_back({embed_operator(mmb.idem, ps.im.basis, ps.ker.basis), mmb.cert_type});
    for (auto& mmb : right)
        out.push_back({embed_operator(mmb.idem, ps.ker.basis, ps.im.basis), mmb.cert_type});
    return out;
}

void verify_frame_axioms(const BilinearMap& b, const std::vector<Mat>& idem) {
    Mat sum(b.dimV, b.dimV, b.p);
    for (size_t i = 0; i < idem.size(); ++i) {
        if (!is_sym_idempotent(b, idem[i])) throw std::logic_error("frame: member not a Sym idempotent");
        sum = sum + idem[i];
        for (size_t j = 0; j < idem.size(); ++j)
            if (i != j && !(idem[i] * idem[j]).is_zero())
                throw std::logic_error("frame: members not orthogonal");
    }
    if (!sum.is_identity()) throw std::logic_error("frame: members do not sum to 1");
}

}  // namespace

Frame find_frame(const StarStructure& s, u64 seed) {
    auto raw = frame_rec(s.b, seed);
    std::vector<Mat> idem;
    std::vector<std::string> types;
    for (auto& mmb : raw) {
        idem.push_back(mmb.idem);
        types.push_back(mmb.cert_type);
    }
    verify_frame_axioms(s.b, idem);
    Frame f;
    f.idem = idem;
    f.cert_types = types;
    annotate_frame(s, f);
    // canonical order: *-ideal index, then lexicographic row space
    std::vector<int> order(f.idem.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto key = [&](int i) {
        Mat rows = f.idem[i];
        rref(rows);
        return std::make_tuple(f.ideal[i], rows.vectorize());
    };
    std::sort(order.begin(), order.end(), [&](int a, int b2) { return key(a) < key(b2); });
    Frame g;
    for (int i : order) {
        g.idem.push_back(f.idem[i]);
        g.ideal.push_back(f.ideal[i]);
        g.addr.push_back(f.addr[i]);
        g.cert_types.push_back(f.cert_types[i]);
    }
    return g;
}

std::vector<Subspace> frame_decomposition(const Frame& f) {
    std::vector<Subspace> out;
    for (const Mat& e : f.idem) {
        Mat rows = e;
        rref(rows);
        int d = rank_of(e);
        Mat basis(d, e.cols(), e.p());
        for (int i = 0; i < d; ++i) basis.set_row(i, rows.row(i));
        out.push_back(Subspace{basis});
    }
    return out;
}

std::optional<Mat> sqrt_in_span(const std::vector<Mat>& basis, const Mat& target, const ModRad& mod) {
    if (basis.empty()) return std::nullopt;
    i64 p = mod.p();
    int d = static_cast<int>(basis.size());
    double total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(p);
    if (total > (1 << 17)) throw std::logic_error("sqrt_in_span: field too large for enumeration");
    std::vector<i64> co(d, 0);
    for (;;) {
        Mat t(mod.m(), mod.m(), p);
        for (int i = 0; i < d; ++i)
            if (co[i] != 0) t = t + basis[i].scaled(co[i]);
        if (mod.eq(t * t, target)) return mod.reduce(t);
        int i = 0;
        while (i < d && ++co[i] == p) co[i++] = 0;
        if (i == d) return std::nullopt;
    }
}

std::optional<Mat> invert_in_span(const std::vector<Mat>& basis, const Mat& x, const Mat& c, const ModRad& mod) {
    auto y = solve_left_multiplier(basis, x, c, mod);
    if (!y) return std::nullopt;
    if (!mod.eq(x * *y, c)) return std::nullopt;
    return y;
}

std::optional<Mat> normalized_corner(const StarStructure& s, int factor, const Mat& ebar, const Mat& fbar,
                                     Rng& rng) {
    const auto& fac = s.factors[factor];
    const ModRad& mod = s.mod;
    auto between = between_basis_mod(fac.basis, fbar, ebar, mod);
    if (between.empty()) return std::nullopt;
    auto corner_e = corner_basis_mod(fac.basis, ebar, mod);
    auto sym_e = sym_part_mod(s.A, corner_e, mod);
    for (int attempt = 0; attempt < 240; ++attempt) {
        Mat c = attempt < static_cast<int>(between.size())
                    ? between[attempt]
                    : mod.reduce(random_combo(between, mod.m(), mod.p(), rng));
        Mat nu = mod.reduce(s.A.star(c) * c);
        if (mod.is_zero(nu)) continue;
        Mat scl = attempt < static_cast<int>(between.size())
                      ? ebar
                      : mod.reduce(random_combo(corner_e, mod.m(), mod.p(), rng));
        Mat M = mod.reduce(s.A.star(scl) * nu * scl);
        auto Minv = invert_in_span(sym_e, M, ebar, mod);
        if (!Minv) continue;
        auto t = sqrt_in_span(sym_e, *Minv, mod);
        if (!t) continue;
        Mat bhat = mod.reduce(c * scl * *t);
        if (!mod.eq(s.A.star(bhat) * bhat, ebar)) continue;
        if (!mod.eq(bhat * s.A.star(bhat), fbar)) continue;
        return bhat;
    }
    return std::nullopt;
}

Mat unipotent_sqrt(const Mat& c) {
    i64 p = c.p();
    i64 half = inv_mod(2, p);
    Mat y = Mat::identity(c.rows(), p);
    for (int it = 0; it < 64; ++it) {
        if (y * y == c) return y;
        auto yinv = inverse(y);
        if (!yinv) throw std::logic_error("unipotent_sqrt: iterate not invertible");
        y = (y + *yinv * c).scaled(half);
    }
    throw std::logic_error("unipotent_sqrt: no convergence (argument not unipotent?)");
}

std::optional<TransportResult> transport_frames(const StarStructure& s, const Frame& E, const Frame& F) {
    if (E.idem.size() != F.idem.size()) return std::nullopt;
    Frame Ea = E, Fa = F;
    annotate_frame(s, Ea);
    annotate_frame(s, Fa);
    const ModRad& mod = s.mod;
    int r = static_cast<int>(Ea.idem.size());
    // address-respecting matching: group by (factor, class)
    std::map<std::pair<int, int>, std::vector<int>> egroups, fgroups;
    for (int i = 0; i < r; ++i) {
        egroups[{Ea.ideal[i], Ea.addr[i]}].push_back(i);
        fgroups[{Fa.ideal[i], Fa.addr[i]}].push_back(i);
    }
    if (egroups.size() != fgroups.size()) return std::nullopt;
    for (auto& [k, v] : egroups) {
        auto it = fgroups.find(k);
        if (it == fgroups.end() || it->second.size() != v.size()) return std::nullopt;
    }
    std::vector<int> eorder, forder;
    for (auto& [k, v] : egroups) {
        auto& fv = fgroups.at(k);
        for (size_t i = 0; i < v.size(); ++i) {
            eorder.push_back(v[i]);
            forder.push_back(fv[i]);
        }
    }
    std::vector<Mat> cur, targets;
    for (int i = 0; i < r; ++i) {
        cur.push_back(Ea.idem[eorder[i]]);
        targets.push_back(Fa.idem[forder[i]]);
    }
    Rng rng(splitmix64(0x7a5b0a7fULL));
    std::vector<Mat> philist;
    Mat one = s.A.identity();
    // semisimple stage: psi = sum of normalized corners conjugates every
    // member class at once; a unipotent square root makes it exact
    {
        Mat psi(mod.m(), mod.m(), mod.p());
        for (int i = 0; i < r; ++i) {
            int fi = Fa.ideal[forder[i]];
            Mat ebar = mod.reduce(cur[i]);
            Mat fbar = mod.reduce(targets[i]);
            auto bhat = normalized_corner(s, fi, fbar, ebar, rng);  // in ebar A fbar
            if (!bhat) throw std::logic_error("transport_frames: no normalized corner for a matched pair");
            psi = psi + *bhat;
        }
        if (!mod.eq(psi * s.A.star(psi), one))
            throw std::logic_error("transport_frames: corner sum is not a mod-rad isometry");
        Mat y = unipotent_sqrt(psi * s.A.star(psi));
        Mat phi_ss = *inverse(y) * psi;
        if (!is_isometry(s.A, phi_ss))
            throw std::logic_error("transport_frames: unitarized corner sum is not an isometry");
        Mat phi_ss_inv = *inverse(phi_ss);
        for (auto& c : cur) c = phi_ss_inv * c * phi_ss;
        philist.push_back(phi_ss);
        for (int i = 0; i < r; ++i)
            if (!mod.eq(cur[i], targets[i]))
                throw std::logic_error("transport_frames: semisimple stage failed to align a member");
    }
    // nil stage through the radical power filtration
    int nil = s.rad.nilindex;
    for (int a = 1; a < nil; a *= 2) {
        ModRad mod2a = (2 * a < nil) ? ModRad(s.rad.power_rows[2 * a - 1], mod.m(), mod.p())
                                     : ModRad(Mat(0, mod.m() * mod.m(), mod.p()), mod.m(), mod.p());
        for (int i = 0; i < r; ++i) {
            Mat z = targets[i] - cur[i];
            if (mod2a.is_zero(z)) continue;
            Mat v = one - cur[i].scaled(2) - z;
            Mat w = lift_involution(v, mod2a);
            for (auto& c : cur) c = w * c * w;
            philist.push_back(w);
        }
        for (int i = 0; i < r; ++i)
            if (!mod2a.is_zero(targets[i] - cur[i]))
                throw std::logic_error("transport_frames: nil stage did not tighten congruence");
    }
    for (int i = 0; i < r; ++i)
        if (cur[i] != targets[i]) throw std::logic_error("transport_frames: final match not exact");
    Mat phi = one;
    for (const Mat& w : philist) phi = phi * w;
    if (!is_isometry(s.A, phi)) throw std::logic_error("transport_frames: certificate phi phi* = 1 failed");
    Mat phi_inv = *inverse(phi);
    TransportResult res;
    res.phi = phi;
    res.matching.assign(r, -1);
    for (int i = 0; i < r; ++i) res.matching[eorder[i]] = forder[i];
    for (int i = 0; i < r; ++i)
        if (phi_inv * Ea.idem[eorder[i]] * phi != Fa.idem[forder[i]])
            throw std::logic_error("transport_frames: conjugation certificate failed");
    return res;
}

}  // namespace perpdec
