#include "perpdec/groups.hpp"

#include <algorithm>

namespace perpdec {

GroupElement grp_identity(const BilinearMap& b) {
    return {std::vector<i64>(b.dimV, 0), std::vector<i64>(b.dimW, 0)};
}

GroupElement grp_multiply(const BilinearMap& b, const GroupElement& x, const GroupElement& y) {
    if (static_cast<int>(x.v.size()) != b.dimV || static_cast<int>(y.v.size()) != b.dimV)
        throw std::invalid_argument("grp_multiply: element shape mismatch");
    i64 half = inv_mod(2, b.p);
    GroupElement r = grp_identity(b);
    for (int i = 0; i < b.dimV; ++i) r.v[i] = add_mod(x.v[i], y.v[i], b.p);
    auto bxy = eval_map(b, x.v, y.v);
    for (int k = 0; k < b.dimW; ++k)
        r.w[k] = add_mod(add_mod(x.w[k], y.w[k], b.p), mul_mod(half, bxy[k], b.p), b.p);
    return r;
}

GroupElement grp_inverse(const BilinearMap& b, const GroupElement& x) {
    GroupElement r = x;
    for (auto& c : r.v) c = norm_mod(-c, b.p);
    for (auto& c : r.w) c = norm_mod(-c, b.p);
    return r;
}

GroupElement grp_power(const BilinearMap& b, const GroupElement& x, i64 n) {
    GroupElement acc = grp_identity(b);
    n = norm_mod(n, b.p);  // exponent p
    for (i64 i = 0; i < n; ++i) acc = grp_multiply(b, acc, x);
    return acc;
}

GroupElement grp_commutator(const BilinearMap& b, const GroupElement& x, const GroupElement& y) {
    GroupElement r = grp_identity(b);
    r.w = eval_map(b, x.v, y.v);
    return r;
}

BiExtraction bi_from_presentation(const GroupPresentation& pres) {
    FieldSpec{pres.p}.validate();
    if (pres.ngens < 1) throw std::invalid_argument("bi_from_presentation: need at least one generator");
    if (pres.ncentral < 0) throw std::invalid_argument("bi_from_presentation: negative central rank");
    int r = pres.ngens, sdim = pres.ncentral;
    BiExtraction out;
    out.full.p = pres.p;
    out.full.sign = -1;
    out.full.dimV = r;
    out.full.dimW = sdim;
    for (int k = 0; k < sdim; ++k) out.full.grams.push_back(Mat(r, r, pres.p));
    Mat cvecs(static_cast<int>(pres.commutators.size()), std::max(sdim, 1), pres.p);
    int row = 0;
    for (const auto& [ij, coeffs] : pres.commutators) {
        auto [i, j] = ij;
        if (i < 0 || j <= i || j >= r) throw std::invalid_argument("bi_from_presentation: bad commutator index");
        if (static_cast<int>(coeffs.size()) != sdim)
            throw std::invalid_argument("bi_from_presentation: commutator coefficient length mismatch");
        for (int k = 0; k < sdim; ++k) {
            out.full.grams[k].at(i, j) = norm_mod(coeffs[k], pres.p);
            out.full.grams[k].at(j, i) = norm_mod(-coeffs[k], pres.p);
            cvecs.at(row, k) = norm_mod(coeffs[k], pres.p);
        }
        ++row;
    }
    if (sdim > 0 && rank_of(cvecs) != sdim)
        throw std::invalid_argument(
            "bi_from_presentation: commutator vectors do not span the centre; re-present with P' = <z>");
    // radical = Z(P)/P'; canonical complement from the non-pivot coordinates
    Subspace rad = radical(out.full);
    out.rad_basis = rad.basis;
    out.abelian_rank = rad.dim();
    std::vector<int> piv;
    Mat rr = rad.basis;
    rref(rr, &piv);
    std::vector<char> is_piv(r, 0);
    for (int c : piv) is_piv[c] = 1;
    out.complement = Mat(r - rad.dim(), r, pres.p);
    int cr = 0;
    for (int c = 0; c < r; ++c)
        if (!is_piv[c]) out.complement.at(cr++, c) = 1;
    if (sdim == 0) {
        out.nondeg = out.full;  // the zero map on an abelian group
        return out;
    }
    auto restr = restrict_map(out.full, Subspace{out.complement});
    if (restr.map.dimW != sdim)
        throw std::logic_error("bi_from_presentation: complement lost part of the commutator image");
    out.nondeg = restr.map;
    return out;
}

GroupPresentation presentation_of(const BilinearMap& b) {
    if (b.sign != -1) throw std::invalid_argument("presentation_of: map must be alternating");
    GroupPresentation pres;
    pres.p = b.p;
    pres.ngens = b.dimV;
    pres.ncentral = b.dimW;
    for (int i = 0; i < b.dimV; ++i)
        for (int j = i + 1; j < b.dimV; ++j) {
            std::vector<i64> c(b.dimW);
            bool nz = false;
            for (int k = 0; k < b.dimW; ++k) {
                c[k] = b.grams[k].at(i, j);
                nz |= c[k] != 0;
            }
            if (nz) pres.commutators[{i, j}] = c;
        }
    return pres;
}

GroupPresentation free_class2_presentation(int rank, i64 p) {
    return presentation_of(exterior_square(rank, p));
}

GroupPresentation extraspecial_presentation(int n, i64 p) {
    if (n < 1) throw std::invalid_argument("extraspecial_presentation: n must be >= 1");
    return presentation_of(tensor(dot_form(n, p, Disc::square), standard_alternating(2, p)));
}

namespace {

// does the decomposition minus one member still generate Grp(full)?
bool generates(const BilinearMap& full, const CentralDecomposition& d, int skip) {
    i64 p = full.p;
    std::vector<std::vector<i64>> vrows, wrows;
    for (int i = 0; i < static_cast<int>(d.members.size()); ++i) {
        if (i == skip) continue;
        const auto& m = d.members[i];
        for (int r2 = 0; r2 < m.vgens.rows(); ++r2) vrows.push_back(m.vgens.row(r2));
        for (int r2 = 0; r2 < m.wgens.rows(); ++r2) wrows.push_back(m.wgens.row(r2));
    }
    Mat vmat = vrows.empty() ? Mat(0, full.dimV, p) : Mat::from_rows(vrows, p);
    if (rank_of(vmat) != full.dimV) return false;
    if (full.dimW == 0) return true;
    Mat vr = vmat;
    rref(vr);
    Mat img = map_image(full, vr, vr);
    for (int r2 = 0; r2 < img.rows(); ++r2) wrows.push_back(img.row(r2));
    Mat wmat = wrows.empty() ? Mat(0, full.dimW, p) : Mat::from_rows(wrows, p);
    return rank_of(wmat) == full.dimW;
}

}  // namespace

GroupVerification verify_central_decomposition(const GroupPresentation& pres, const CentralDecomposition& d) {
    GroupVerification out;
    BiExtraction ext = bi_from_presentation(pres);
    const BilinearMap& full = ext.full;
    if (d.members.empty()) {
        out.violations.push_back("empty decomposition");
        return out;
    }
    // (a) distinct members commute elementwise
    for (size_t i = 0; i < d.members.size(); ++i)
        for (size_t j = i + 1; j < d.members.size(); ++j) {
            Mat img = map_image(full, d.members[i].vgens, d.members[j].vgens);
            if (img.rows() != 0)
                out.violations.push_back("members " + std::to_string(i) + " and " + std::to_string(j) +
                                         " do not commute");
        }
    // (b) generation
    if (!generates(full, d, -1)) out.violations.push_back("members do not generate the group");
    // (c) irredundancy
    if (out.violations.empty()) {
        for (size_t i = 0; i < d.members.size(); ++i)
            if (generates(full, d, static_cast<int>(i)))
                out.violations.push_back("member " + std::to_string(i) + " is redundant");
    }
    out.ok = out.violations.empty();
    if (!out.ok) return out;
    // full refinement: non-central members restrict to indecomposable maps,
    // central members are single generators
    out.fully_refined = true;
    for (const auto& m : d.members) {
        Mat vr = m.vgens;
        rref(vr);
        int dim = rank_of(m.vgens);
        Mat rows(dim, full.dimV, full.p);
        for (int r2 = 0; r2 < dim; ++r2) rows.set_row(r2, vr.row(r2));
        auto rest = restrict_map(full, Subspace{rows});
        if (rest.map.dimW == 0) {
            if (dim != 1) out.fully_refined = false;
            continue;
        }
        if (rest.map.degenerate_flag) {
            out.fully_refined = false;  // a central direct factor is glued into the member
            continue;
        }
        if (!indecomposability_certificate(rest.map).indecomposable) out.fully_refined = false;
    }
    return out;
}

GroupDecomposition central_decomposition(const GroupPresentation& pres, u64 seed) {
    BiExtraction ext = bi_from_presentation(pres);
    GroupDecomposition out;
    InvariantsReport rep;
    if (ext.nondeg.dimW > 0) {
        StarStructure s = analyze_structure(ext.nondeg);
        Frame frame = find_frame(s, seed);
        rep = invariants(s, frame);
        auto dec = frame_decomposition(frame);
        for (const auto& X : dec) {
            DecompositionMember m;
            m.vgens = X.basis * ext.complement;  // back into the full coordinates
            m.wgens = map_image(ext.full, m.vgens, m.vgens);
            out.decomposition.members.push_back(m);
        }
    }
    // abelian part: one singleton of order p per radical direction
    for (int i = 0; i < ext.abelian_rank; ++i) {
        DecompositionMember m;
        m.vgens = Mat(1, ext.full.dimV, pres.p);
        m.vgens.set_row(0, ext.rad_basis.row(i));
        m.wgens = Mat(0, ext.full.dimW, pres.p);
        out.decomposition.members.push_back(m);
        MemberInvariants mi;
        mi.dim_v = 1;
        mi.dim_w = 0;
        mi.rad_dim = 1;
        mi.order_exp = 1;
        mi.center_exp = 1;
        rep.members.push_back(mi);
        ++rep.member_count;
        ++rep.per_ideal[-1];
    }
    out.decomposition.abelian_members = ext.abelian_rank;
    out.invariants = rep;
    auto ver = verify_central_decomposition(pres, out.decomposition);
    if (!ver.ok || !ver.fully_refined)
        throw std::logic_error("central_decomposition: output failed self-verification");
    return out;
}

std::string to_string(GroupClass c) {
    switch (c) {
        case GroupClass::Abelian: return "Abelian";
        case GroupClass::Orthogonal: return "Orthogonal";
        case GroupClass::Unitary: return "Unitary";
        case GroupClass::Exchange: return "Exchange";
        case GroupClass::Symplectic: return "Symplectic";
        default: return "Decomposable";
    }
}

GroupClassification classify_group(const GroupPresentation& pres) {
    GroupClassification out;
    if (pres.ngens == 1 && pres.ncentral == 0) {
        out.verdict = GroupClass::Abelian;
        return out;
    }
    if (pres.ncentral == 0) {
        out.verdict = GroupClass::Decomposable;  // elementary abelian of rank > 1
        return out;
    }
    BiExtraction ext = bi_from_presentation(pres);
    if (ext.abelian_rank > 0) {
        out.verdict = GroupClass::Decomposable;
        return out;
    }
    auto cert = indecomposability_certificate(ext.nondeg);
    if (!cert.indecomposable) {
        out.verdict = GroupClass::Decomposable;
        return out;
    }
    if (cert.type == "orthogonal") {
        out.verdict = GroupClass::Orthogonal;
        out.p3_orthogonal_caveat = (pres.p == 3);
    } else if (cert.type == "unitary") {
        out.verdict = GroupClass::Unitary;
    } else if (cert.type == "exchange") {
        out.verdict = GroupClass::Exchange;
    } else {
        out.verdict = GroupClass::Symplectic;
    }
    return out;
}

}  // namespace perpdec
