#include "perpdec/addresses.hpp"

#include <algorithm>

namespace perpdec {

namespace {

Mat half_symmetrize(const StarAlgebra& A, const Mat& x) {
    return (x + A.star(x)).scaled(inv_mod(2, x.p()));
}

// equality of the relative address of two primitive idempotents in the same
// orthogonal factor: the norm class of a connecting corner element
bool same_class(const StarStructure& s, int factor, const Mat& ebar, const Mat& fbar) {
    const auto& fac = s.factors[factor];
    const ModRad& mod = s.mod;
    if (mod.eq(ebar, fbar)) return true;
    auto between = between_basis_mod(fac.basis, fbar, ebar, mod);
    if (between.empty()) throw std::logic_error("relative_address: empty corner inside one simple factor");
    for (const Mat& a0 : between) {
        Mat w = mod.reduce(s.A.star(a0) * a0);
        if (mod.is_zero(w)) continue;
        Mat wp = w.pow((fac.q - 1) / 2);
        if (mod.eq(wp, ebar)) return true;
        if (mod.eq(wp, -ebar)) return false;
        throw std::logic_error("relative_address: norm not in the residue field");
    }
    throw std::logic_error("relative_address: no anisotropic corner element");
}

struct Mix {
    Mat g1, g2;  // exact idempotents replacing the pair
};

// mix two equal-address members by a plane rotation of nonsquare scale
Mix mix_pair(const StarStructure& s, int factor, const Mat& e1, const Mat& e2, Rng& rng) {
    const ModRad& mod = s.mod;
    i64 p = mod.p();
    Mat ebar = mod.reduce(e1), fbar = mod.reduce(e2);
    auto bhat = normalized_corner(s, factor, ebar, fbar, rng);
    if (!bhat) throw std::logic_error("mix_pair: no normalized corner (addresses unequal?)");
    i64 w = least_nonsquare(p);
    i64 al = -1, be = -1;
    for (i64 a = 1; a < p && al < 0; ++a)
        for (i64 b = 1; b < p; ++b)
            if (norm_mod(a * a + b * b, p) == w) {
                al = a;
                be = b;
                break;
            }
    if (al < 0) throw std::logic_error("mix_pair: omega is not a sum of two squares");
    i64 winv = inv_mod(w, p);
    Mat u = mod.reduce(*bhat + s.A.star(*bhat));
    Mat g1bar = mod.reduce((ebar.scaled(mul_mod(al, al, p)) + fbar.scaled(mul_mod(be, be, p)) +
                            u.scaled(mul_mod(al, be, p)))
                               .scaled(winv));
    Mat g2bar = mod.reduce((ebar.scaled(mul_mod(be, be, p)) + fbar.scaled(mul_mod(al, al, p)) -
                            u.scaled(mul_mod(al, be, p)))
                               .scaled(winv));
    if (!mod.eq(g1bar * g1bar, g1bar) || !mod.eq(g2bar * g2bar, g2bar) ||
        !mod.eq(g1bar + g2bar, ebar + fbar) || !mod.is_zero(g1bar * g2bar))
        throw std::logic_error("mix_pair: mixed idempotents failed mod-rad checks");
    // exactify inside the corner of the exact block idempotent h = e1 + e2
    Mat h = e1 + e2;
    Mat rep = h * half_symmetrize(s.A, g1bar) * h;
    Mix out;
    out.g1 = lift_idempotent(rep, mod);
    out.g2 = h - out.g1;
    if (s.A.star(out.g1) != out.g1) throw std::logic_error("mix_pair: lift lost self-adjointness");
    if (!(out.g1 * out.g2).is_zero()) throw std::logic_error("mix_pair: lifted pair not orthogonal");
    return out;
}

Subspace subspace_of(const Mat& idem) {
    Mat rows = idem;
    rref(rows);
    int d = rank_of(idem);
    Mat basis(d, idem.cols(), idem.p());
    for (int i = 0; i < d; ++i) basis.set_row(i, rows.row(i));
    return Subspace{basis};
}

}  // namespace

int surviving_factor(const StarStructure& s, const Mat& e) {
    Mat ebar = s.mod.reduce(e);
    int found = -1;
    for (const auto& fac : s.factors) {
        if (!s.mod.is_zero(ebar * fac.identity_rep)) {
            if (found >= 0) throw std::invalid_argument("surviving_factor: idempotent not primitive");
            found = fac.index;
        }
    }
    if (found < 0) throw std::invalid_argument("surviving_factor: idempotent vanishes mod rad");
    return found;
}

RelAddress relative_address(const StarStructure& s, const Mat& e, const Mat& f) {
    int fe = surviving_factor(s, e);
    int ff = surviving_factor(s, f);
    if (fe != ff) return RelAddress::incomparable;
    if (s.factors[fe].type != "orthogonal") return RelAddress::equal;
    return same_class(s, fe, s.mod.reduce(e), s.mod.reduce(f)) ? RelAddress::equal : RelAddress::unequal;
}

int address_class(const StarStructure& s, int factor, const Mat& e) {
    const auto& fac = s.factors[factor];
    if (fac.type != "orthogonal") return -1;
    return same_class(s, factor, s.mod.reduce(e), fac.anchor) ? 0 : 1;
}

void annotate_frame(const StarStructure& s, Frame& f) {
    f.ideal.assign(f.idem.size(), -1);
    f.addr.assign(f.idem.size(), -1);
    for (size_t i = 0; i < f.idem.size(); ++i) {
        f.ideal[i] = surviving_factor(s, f.idem[i]);
        f.addr[i] = address_class(s, f.ideal[i], f.idem[i]);
    }
    if (f.cert_types.size() != f.idem.size()) f.cert_types.assign(f.idem.size(), "");
}

std::map<int, std::optional<AddressPair>> address_multiset(const StarStructure& s, const Frame& f) {
    Frame g = f;
    annotate_frame(s, g);
    std::map<int, std::optional<AddressPair>> out;
    for (const auto& fac : s.factors) {
        if (fac.type != "orthogonal") {
            bool present = false;
            for (size_t i = 0; i < g.idem.size(); ++i) present |= g.ideal[i] == fac.index;
            if (present) out[fac.index] = std::nullopt;
            continue;
        }
        AddressPair ap;
        bool present = false;
        for (size_t i = 0; i < g.idem.size(); ++i) {
            if (g.ideal[i] != fac.index) continue;
            present = true;
            if (g.addr[i] == 0)
                ++ap.square;
            else
                ++ap.nonsquare;
        }
        if (present) out[fac.index] = ap;
    }
    return out;
}

Disc discriminant(const AddressPair& a) { return (a.nonsquare % 2 == 1) ? Disc::nonsquare : Disc::square; }

int count_addresses(int n, Disc disc) {
    if (n < 1) throw std::invalid_argument("count_addresses: n must be >= 1");
    int c = disc == Disc::square ? 0 : 1;
    return 1 + (n - c) / 2;
}

std::vector<std::vector<AddressPair>> pseudo_orbit_classes(int n, const std::vector<AddressPair>& addrs) {
    for (const auto& a : addrs)
        if (a.square + a.nonsquare != n) throw std::invalid_argument("pseudo_orbit_classes: address has wrong rank");
    std::vector<std::vector<AddressPair>> classes;
    std::vector<std::pair<int, int>> keys;
    for (const auto& a : addrs) {
        std::pair<int, int> k{a.square, a.nonsquare};
        if (n % 2 == 0) k = {std::min(a.square, a.nonsquare), std::max(a.square, a.nonsquare)};
        auto it = std::find(keys.begin(), keys.end(), k);
        if (it == keys.end()) {
            keys.push_back(k);
            classes.push_back({a});
        } else {
            classes[static_cast<size_t>(it - keys.begin())].push_back(a);
        }
    }
    return classes;
}

Frame readdress(const StarStructure& s, const Frame& f, int factor, int target_s, u64 seed) {
    if (factor < 0 || factor >= static_cast<int>(s.factors.size()))
        throw std::invalid_argument("readdress: no such factor");
    if (s.factors[factor].type != "orthogonal")
        throw std::invalid_argument("readdress: factor is not of orthogonal type");
    Frame g = f;
    annotate_frame(s, g);
    int cur_s = 0, members = 0;
    for (size_t i = 0; i < g.idem.size(); ++i)
        if (g.ideal[i] == factor) {
            ++members;
            cur_s += g.addr[i] == 1;
        }
    if (target_s < 0 || target_s > members) throw std::invalid_argument("readdress: target out of range");
    if ((target_s - cur_s) % 2 != 0)
        throw std::invalid_argument("readdress: target address has the wrong parity");
    Rng rng(seed);
    while (cur_s != target_s) {
        int want = target_s > cur_s ? 0 : 1;  // mix two members of this class
        int i1 = -1, i2 = -1;
        for (size_t i = 0; i < g.idem.size(); ++i) {
            if (g.ideal[i] != factor || g.addr[i] != want) continue;
            if (i1 < 0)
                i1 = static_cast<int>(i);
            else {
                i2 = static_cast<int>(i);
                break;
            }
        }
        if (i1 < 0 || i2 < 0) throw std::logic_error("readdress: parity invariant violated");
        Mix mx = mix_pair(s, factor, g.idem[i1], g.idem[i2], rng);
        g.idem[i1] = mx.g1;
        g.idem[i2] = mx.g2;
        int c1 = address_class(s, factor, mx.g1);
        int c2 = address_class(s, factor, mx.g2);
        if (c1 != 1 - want || c2 != 1 - want) throw std::logic_error("readdress: mixing moved the wrong way");
        g.addr[i1] = c1;
        g.addr[i2] = c2;
        cur_s += want == 0 ? 2 : -2;
    }
    annotate_frame(s, g);
    return g;
}

SemiRefinement semirefine(const StarStructure& s, const Frame& f) {
    Frame g = f;
    annotate_frame(s, g);
    const ModRad& mod = s.mod;
    int r = static_cast<int>(g.idem.size());
    SemiRefinement out;
    std::vector<char> paired(r, 0);
    std::vector<std::pair<int, int>> pairs;
    Rng rng(splitmix64(0x5e71f1aeULL));
    for (const auto& fac : s.factors) {
        if (fac.type != "orthogonal") continue;
        for (int cls = 0; cls < 2; ++cls) {
            std::vector<int> idx;
            for (int i = 0; i < r; ++i)
                if (g.ideal[i] == fac.index && g.addr[i] == cls) idx.push_back(i);
            for (size_t k = 0; k + 1 < idx.size(); k += 2) {
                pairs.push_back({idx[k], idx[k + 1]});
                paired[idx[k]] = paired[idx[k + 1]] = 1;
            }
        }
    }
    // assemble the involution: exact block swaps on pairs, identity elsewhere
    Mat rho(mod.m(), mod.m(), mod.p());
    for (auto& [i, j] : pairs) {
        Mat ebar = mod.reduce(g.idem[i]), fbar = mod.reduce(g.idem[j]);
        auto bhat = normalized_corner(s, g.ideal[i], ebar, fbar, rng);
        if (!bhat) throw std::logic_error("semirefine: equal-address pair without corner");
        Mat h = g.idem[i] + g.idem[j];
        Mat u = h * half_symmetrize(s.A, mod.reduce(*bhat + s.A.star(*bhat))) * h;
        // (h+u)/2 is an idempotent mod rad; lift and fold back to an involution
        Mat q = lift_idempotent((h + u).scaled(inv_mod(2, mod.p())), mod);
        Mat w = q.scaled(2) - h;
        if (w * w != h) throw std::logic_error("semirefine: block involution lift failed");
        if (s.A.star(w) != w) throw std::logic_error("semirefine: block involution not self-adjoint");
        rho = rho + w;
        // exact rho-adapted split of the block certifies the c perp c shape
        Mat x = (g.idem[i] + w * (h - g.idem[i]) * w).scaled(inv_mod(2, mod.p()));
        Mat esplit = x;
        for (int it = 0; it < 64 && esplit * esplit != esplit; ++it)
            esplit = (esplit * esplit).scaled(3) - (esplit * esplit * esplit).scaled(2);
        if (esplit * esplit != esplit || w * esplit * w != h - esplit)
            throw std::logic_error("semirefine: rho-adapted split failed");
    }
    for (int i = 0; i < r; ++i)
        if (!paired[i]) rho = rho + g.idem[i];
    if (rho * rho != Mat::identity(mod.m(), mod.p())) throw std::logic_error("semirefine: rho^2 != 1");
    if (!is_isometry(s.A, rho)) throw std::logic_error("semirefine: rho is not an isometry");
    out.rho = rho;
    for (auto& [i, j] : pairs) {
        out.members.push_back(subspace_of(g.idem[i] + g.idem[j]));
        out.parts.push_back({i, j});
    }
    for (int i = 0; i < r; ++i) {
        if (paired[i]) continue;
        out.members.push_back(subspace_of(g.idem[i]));
        out.parts.push_back({i});
        if (s.factors[g.ideal[i]].type == "orthogonal") out.fixed.push_back(i);
    }
    return out;
}

InvariantsReport invariants(const StarStructure& s, const Frame& f) {
    Frame g = f;
    annotate_frame(s, g);
    InvariantsReport rep;
    rep.member_count = static_cast<int>(g.idem.size());
    for (size_t i = 0; i < g.idem.size(); ++i) ++rep.per_ideal[g.ideal[i]];
    for (const Mat& e : g.idem) {
        auto restr = restrict_map(s.b, subspace_of(e));
        MemberInvariants mi;
        mi.dim_v = rank_of(e);
        mi.dim_w = restr.map.dimW;
        mi.rad_dim = restr.map.dimW == 0 ? mi.dim_v : radical(restr.map).dim();
        mi.order_exp = mi.dim_v + mi.dim_w;
        mi.center_exp = mi.dim_w + mi.rad_dim;
        rep.members.push_back(mi);
    }
    rep.addresses = address_multiset(s, g);
    for (auto& [idx, ap] : rep.addresses)
        if (ap) rep.discriminants[idx] = discriminant(*ap) == Disc::square ? "square" : "nonsquare";
    return rep;
}

OrbitReport verify_many_orbits(int n, i64 p, u64 seed) {
    if (n < 1) throw std::invalid_argument("verify_many_orbits: n must be >= 1");
    FieldSpec{p}.validate();
    auto cp = central_power(exterior_square(3, p), 2 * n);
    StarStructure s = analyze_structure(cp.map);
    if (s.factors.size() != 1 || s.factors[0].type != "orthogonal" || s.factors[0].n != 2 * n)
        throw std::logic_error("verify_many_orbits: unexpected structure for the flagship family");
    OrbitReport rep;
    rep.n = n;
    rep.p = p;
    rep.p3_caveat = (p == 3);
    // canonical frame of coordinate blocks
    Frame base;
    for (int i = 0; i < 2 * n; ++i) {
        Mat e(cp.map.dimV, cp.map.dimV, p);
        for (int r2 = 0; r2 < 3; ++r2) e.at(3 * i + r2, 3 * i + r2) = 1;
        base.idem.push_back(e);
    }
    annotate_frame(s, base);
    int s0 = 0;
    for (size_t i = 0; i < base.idem.size(); ++i) s0 += base.addr[i] == 1;
    if (s0 != 0 && s0 != 2 * n) throw std::logic_error("verify_many_orbits: canonical blocks not equal-address");
    Rng rng(seed);
    std::vector<Frame> frames;
    std::vector<AddressPair> realized;
    for (int m = 0; m <= n; ++m) {
        int target = s0 == 0 ? 2 * m : 2 * n - 2 * m;
        frames.push_back(readdress(s, base, 0, target, rng.next()));
        auto am = address_multiset(s, frames.back());
        if (!am.count(0) || !am[0]) throw std::logic_error("verify_many_orbits: missing address");
        realized.push_back(*am[0]);
    }
    rep.addresses_realized = realized;
    // expected set {(2n-2m : 2m)}, possibly with the class labels flipped
    {
        std::vector<std::pair<int, int>> want, got;
        for (int m = 0; m <= n; ++m) want.push_back({2 * n - 2 * m, 2 * m});
        for (auto& a : realized) got.push_back({a.square, a.nonsquare});
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got) throw std::logic_error("verify_many_orbits: realized addresses differ from expected");
    }
    std::vector<AddressPair> distinct;
    for (auto& a : realized) {
        bool seen = false;
        for (auto& d : distinct) seen |= (d.square == a.square && d.nonsquare == a.nonsquare);
        if (!seen) distinct.push_back(a);
    }
    rep.isometry_orbits = static_cast<int>(distinct.size());
    rep.aut_orbit_classes = static_cast<int>(pseudo_orbit_classes(2 * n, distinct).size());
    // transports fail across distinct addresses, succeed within one
    rep.transport_across_none = true;
    for (size_t a = 0; a < frames.size(); ++a)
        for (size_t b2 = a + 1; b2 < frames.size(); ++b2)
            if (transport_frames(s, frames[a], frames[b2])) rep.transport_across_none = false;
    Frame random_frame = find_frame(s, rng.next());
    auto ram = address_multiset(s, random_frame);
    int rs = ram[0] ? ram[0]->nonsquare : -1;
    rep.transport_within_ok = false;
    for (auto& fr : frames) {
        auto fm = address_multiset(s, fr);
        if (fm[0] && fm[0]->nonsquare == rs) {
            auto t = transport_frames(s, fr, random_frame);
            rep.transport_within_ok = t.has_value();
            break;
        }
    }
    // global pseudo-isometry pairing m <-> n-m from blockwise plane rotations
    i64 w = least_nonsquare(p);
    i64 al = -1, be = -1;
    for (i64 a = 1; a < p && al < 0; ++a)
        for (i64 b2 = 1; b2 < p; ++b2)
            if (norm_mod(a * a + b2 * b2, p) == w) {
                al = a;
                be = b2;
                break;
            }
    Mat phi(cp.map.dimV, cp.map.dimV, p);
    for (int j = 0; j < n; ++j)
        for (int r2 = 0; r2 < 3; ++r2) {
            int x = 6 * j + r2, y = 6 * j + 3 + r2;
            phi.at(x, x) = al;
            phi.at(x, y) = be;
            phi.at(y, x) = be;
            phi.at(y, y) = norm_mod(-al, p);
        }
    PseudoIsometry pi{phi, Mat::identity(cp.map.dimW, p).scaled(w)};
    rep.pseudo_pairing_ok = check_pseudo_isometry(cp.map, cp.map, pi);
    if (rep.pseudo_pairing_ok) {
        Mat phi_inv = *inverse(phi);
        for (int m = 0; m <= n && rep.pseudo_pairing_ok; ++m) {
            Frame moved = frames[m];
            for (auto& e : moved.idem) e = phi_inv * e * phi;
            auto am = address_multiset(s, moved);
            auto bm = address_multiset(s, frames[n - m]);
            rep.pseudo_pairing_ok = am[0].has_value() && bm[0].has_value() && am[0]->square == bm[0]->square &&
                                    am[0]->nonsquare == bm[0]->nonsquare;
        }
    }
    return rep;
}

}  // namespace perpdec
