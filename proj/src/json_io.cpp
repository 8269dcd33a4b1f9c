#include "perpdec/json_io.hpp"

#include <sstream>

namespace perpdec {

ojson matrix_to_json(const Mat& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

Mat matrix_from_json(const ojson& j, i64 p) {
    if (!j.is_array()) throw std::invalid_argument("matrix json: expected array of rows");
    std::vector<std::vector<i64>> rows;
    for (const auto& r : j) rows.push_back(r.get<std::vector<i64>>());
    return Mat::from_rows(rows, p);
}

ojson map_to_json(const BilinearMap& b) {
    ojson j;
    j["p"] = b.p;
    j["sign"] = b.sign;
    j["dimV"] = b.dimV;
    j["dimW"] = b.dimW;
    ojson grams = ojson::array();
    for (const Mat& g : b.grams) grams.push_back(matrix_to_json(g));
    j["grams"] = grams;
    return j;
}

BilinearMap map_from_json(const ojson& j) {
    BilinearMap b;
    b.p = j.at("p").get<i64>();
    b.sign = j.at("sign").get<int>();
    b.dimV = j.at("dimV").get<int>();
    b.dimW = j.at("dimW").get<int>();
    for (const auto& g : j.at("grams")) {
        Mat m = matrix_from_json(g, b.p);
        if (m.rows() != b.dimV || m.cols() != b.dimV)
            throw std::invalid_argument("map json: gram shape mismatch");
        b.grams.push_back(m);
    }
    if (static_cast<int>(b.grams.size()) != b.dimW)
        throw std::invalid_argument("map json: gram count mismatch");
    return b;
}

ojson presentation_to_json(const GroupPresentation& pres) {
    ojson j;
    j["p"] = pres.p;
    j["ngens"] = pres.ngens;
    j["ncentral"] = pres.ncentral;
    ojson comms = ojson::array();
    for (const auto& [ij, coeffs] : pres.commutators) {
        ojson c;
        c["i"] = ij.first + 1;
        c["j"] = ij.second + 1;
        c["coeffs"] = coeffs;
        comms.push_back(c);
    }
    j["commutators"] = comms;
    return j;
}

GroupPresentation presentation_from_json(const ojson& j) {
    GroupPresentation pres;
    pres.p = j.at("p").get<i64>();
    pres.ngens = j.at("ngens").get<int>();
    pres.ncentral = j.at("ncentral").get<int>();
    for (const auto& c : j.at("commutators")) {
        int i = c.at("i").get<int>() - 1;
        int jj = c.at("j").get<int>() - 1;
        pres.commutators[{i, jj}] = c.at("coeffs").get<std::vector<i64>>();
    }
    return pres;
}

ojson frame_to_json(const StarStructure& s, const Frame& f) {
    Frame g = f;
    annotate_frame(s, g);
    ojson j;
    ojson idem = ojson::array(), ideal = ojson::array(), address = ojson::array();
    for (size_t i = 0; i < g.idem.size(); ++i) {
        idem.push_back(matrix_to_json(g.idem[i]));
        ideal.push_back(g.ideal[i]);
        if (g.addr[i] < 0)
            address.push_back(nullptr);
        else
            address.push_back(g.addr[i] == 0 ? "square" : "nonsquare");
    }
    j["idempotents"] = idem;
    j["ideal"] = ideal;
    j["address"] = address;
    return j;
}

Frame frame_from_json(const ojson& j, const BilinearMap& b) {
    Frame f;
    for (const auto& m : j.at("idempotents")) {
        Mat e = matrix_from_json(m, b.p);
        if (e.rows() != b.dimV || e.cols() != b.dimV)
            throw std::invalid_argument("frame json: idempotent shape mismatch");
        f.idem.push_back(e);
    }
    return f;
}

ojson report_to_json(const StructureReport& r) {
    ojson j;
    j["radical_dim"] = r.radical_dim;
    ojson factors = ojson::array();
    for (const auto& f : r.factors) {
        ojson x;
        x["type"] = f.type;
        x["n"] = f.n;
        x["q"] = f.q;
        factors.push_back(x);
    }
    j["factors"] = factors;
    j["indecomposable"] = r.indecomposable;
    if (r.indecomposable) j["indecomposable_type"] = r.indecomposable_type;
    j["adj_dim"] = r.adj_dim;
    j["sym_dim"] = r.sym_dim;
    j["isom_shape"] = r.isom_shape;
    if (r.p3_orthogonal_caveat)
        j["caveat"] = "algebra-level classification; group-level p=3 caveat applies";
    return j;
}

ojson invariants_to_json(const InvariantsReport& r) {
    ojson j;
    j["member_count"] = r.member_count;
    ojson per = ojson::array();
    for (const auto& [idx, cnt] : r.per_ideal) {
        ojson x;
        x["ideal"] = idx;
        x["count"] = cnt;
        per.push_back(x);
    }
    j["per_ideal"] = per;
    ojson mem = ojson::array();
    for (const auto& m : r.members) {
        ojson x;
        x["dim_v"] = m.dim_v;
        x["dim_w"] = m.dim_w;
        x["order_exp"] = m.order_exp;
        x["center_exp"] = m.center_exp;
        mem.push_back(x);
    }
    j["members"] = mem;
    ojson addr = ojson::array();
    for (const auto& [idx, ap] : r.addresses) {
        ojson x;
        x["ideal"] = idx;
        if (ap) {
            x["square"] = ap->square;
            x["nonsquare"] = ap->nonsquare;
            x["discriminant"] = r.discriminants.at(idx);
        } else {
            x["address"] = nullptr;
        }
        addr.push_back(x);
    }
    j["addresses"] = addr;
    return j;
}

ojson decomposition_to_json(const CentralDecomposition& d) {
    ojson j;
    ojson members = ojson::array();
    for (const auto& m : d.members) {
        ojson x;
        x["vgens"] = matrix_to_json(m.vgens);
        x["wgens"] = matrix_to_json(m.wgens);
        members.push_back(x);
    }
    j["members"] = members;
    j["abelian_members"] = d.abelian_members;
    return j;
}

CentralDecomposition decomposition_from_json(const ojson& j, i64 p) {
    CentralDecomposition d;
    for (const auto& m : j.at("members")) {
        DecompositionMember mm;
        mm.vgens = matrix_from_json(m.at("vgens"), p);
        mm.wgens = matrix_from_json(m.at("wgens"), p);
        d.members.push_back(mm);
    }
    d.abelian_members = j.value("abelian_members", 0);
    return d;
}

ojson orbit_report_to_json(const OrbitReport& r) {
    ojson j;
    j["n"] = r.n;
    j["p"] = r.p;
    if (r.p3_caveat) j["caveat"] = "algebra-level classification; group-level p=3 caveat applies";
    ojson addrs = ojson::array();
    for (const auto& a : r.addresses_realized) {
        ojson x;
        x["square"] = a.square;
        x["nonsquare"] = a.nonsquare;
        addrs.push_back(x);
    }
    j["addresses_realized"] = addrs;
    j["isometry_orbits"] = r.isometry_orbits;
    j["aut_orbit_classes"] = r.aut_orbit_classes;
    j["transport_within_ok"] = r.transport_within_ok;
    j["transport_across_none"] = r.transport_across_none;
    j["pseudo_pairing_ok"] = r.pseudo_pairing_ok;
    return j;
}

namespace {

void render(const ojson& j, std::ostream& os, int depth) {
    std::string pad(2 * static_cast<size_t>(depth), ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object() || (it->is_array() && !it->empty() && (*it)[0].is_structured())) {
                os << pad << it.key() << ":\n";
                render(*it, os, depth + 1);
            } else {
                os << pad << it.key() << ": " << it->dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        int idx = 0;
        for (const auto& x : j) {
            if (x.is_structured()) {
                os << pad << "- [" << idx << "]\n";
                render(x, os, depth + 1);
            } else {
                os << pad << "- " << x.dump() << "\n";
            }
            ++idx;
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

}  // namespace

std::string render_table(const ojson& j) {
    std::ostringstream os;
    render(j, os, 0);
    return os.str();
}

}  // namespace perpdec
