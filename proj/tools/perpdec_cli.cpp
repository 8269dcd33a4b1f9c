// perpdec: orthogonal decompositions of bilinear maps over GF(p) and central
// decompositions of p-groups of class 2 and exponent p.
#include "perpdec/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace perpdec;

namespace {

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // json | table
    void emit(const ojson& j) const {
        std::string body = format == "table" ? render_table(j) : j.dump(2) + "\n";
        if (path.empty()) {
            std::cout << body;
        } else {
            std::ofstream os(path, std::ios::binary);
            if (!os) throw std::invalid_argument("cannot open output file " + path);
            os << body;
        }
    }
};

ojson slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open input file " + path);
    ojson j;
    is >> j;
    return j;
}

// family strings like "exterior-square:3", "dot:2:nonsquare", "exchange:2"
BilinearMap map_from_family(const std::string& spec, i64 p) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    const std::string& fam = parts[0];
    auto arg = [&](size_t i, int dflt) { return parts.size() > i ? std::stoi(parts[i]) : dflt; };
    if (fam == "exterior-square") return exterior_square(arg(1, 3), p);
    if (fam == "standard-alternating") return standard_alternating(2, p);
    if (fam == "exchange") return exchange_map(arg(1, 2), p);
    if (fam == "dot") {
        Disc d = (parts.size() > 2 && parts[2] == "nonsquare") ? Disc::nonsquare : Disc::square;
        return dot_form(arg(1, 2), p, d);
    }
    throw std::invalid_argument("unknown map family: " + fam);
}

int run(int argc, char** argv) {
    CLI::App app{"fully refined orthogonal decompositions of bilinear maps over GF(p)\n"
                 "and central decompositions of p-groups of class 2 and exponent p"};
    app.require_subcommand(1);
    u64 seed = 0;
    bool oracle = false;
    std::string format = "json";
    app.add_option("--seed", seed, "seed for all randomized searches (default 0)");
    app.add_flag("--oracle", oracle, "embed brute-force oracle results where available");
    app.add_option("--format", format, "output format: json | table")
        ->check(CLI::IsMember({"json", "table"}));

    auto* c = app.add_subcommand("construct", "construct a map or presentation file");
    c->fallthrough();
    std::string family, base_spec, file_a, file_b, out_path;
    i64 p = 5;
    int n = 3, copies = 2, rank = 3;
    std::string disc = "square";
    c->add_option("family", family,
                  "exterior-square | standard-alternating | exchange | dot | central-power | direct-sum | "
                  "tensor | presentation-free | presentation-extraspecial | presentation-of")
        ->required();
    c->add_option("--p", p, "field characteristic (odd prime)");
    c->add_option("--n", n, "size parameter of the family");
    c->add_option("--rank", rank, "rank for presentation-free");
    c->add_option("--copies", copies, "number of central-power copies");
    c->add_option("--disc", disc, "square | nonsquare (dot form)")
        ->check(CLI::IsMember({"square", "nonsquare"}));
    c->add_option("--base", base_spec, "base family spec for central-power, e.g. exterior-square:3");
    c->add_option("--a", file_a, "left input file (direct-sum) / map file (tensor, presentation-of)");
    c->add_option("--b", file_b, "right input file (direct-sum, tensor)");
    c->add_option("--out", out_path, "output file (default stdout)");

    auto* an = app.add_subcommand("analyze", "adjoint and star-structure report of a map file");
    an->fallthrough();
    std::string an_map, an_out;
    an->add_option("map", an_map, "map JSON file")->required();
    an->add_option("--out", an_out, "output file");

    auto* de = app.add_subcommand("decompose", "fully refined perpendicular decomposition of a map file");
    de->fallthrough();
    std::string de_map, de_prefix, de_out;
    de->add_option("map", de_map, "map JSON file")->required();
    de->add_option("--out-prefix", de_prefix,
                   "write <prefix>.frame.json / .decomposition.json / .invariants.json");
    de->add_option("--out", de_out, "combined output file");

    auto* se = app.add_subcommand("semirefine", "semi-refined decomposition from a frame of a map");
    se->fallthrough();
    std::string se_map, se_frame, se_out;
    se->add_option("map", se_map, "map JSON file")->required();
    se->add_option("--frame", se_frame, "frame JSON file (default: compute one with --seed)");
    se->add_option("--out", se_out, "output file");

    auto* tr = app.add_subcommand("transport", "isometry carrying one frame to another");
    tr->fallthrough();
    std::string tr_map, tr_a, tr_b, tr_out;
    tr->add_option("map", tr_map, "map JSON file")->required();
    tr->add_option("frameA", tr_a, "frame JSON file")->required();
    tr->add_option("frameB", tr_b, "frame JSON file")->required();
    tr->add_option("--out", tr_out, "output file");

    auto* gd = app.add_subcommand("group-decompose", "fully refined central decomposition of a presentation");
    gd->fallthrough();
    std::string gd_pres, gd_out, gd_check;
    gd->add_option("presentation", gd_pres, "presentation JSON file")->required();
    gd->add_option("--check", gd_check, "verify this decomposition JSON instead of computing one");
    gd->add_option("--out", gd_out, "output file");

    auto* vo = app.add_subcommand("verify-orbits", "orbit counts of the central-power family");
    vo->fallthrough();
    int vo_n = 1;
    i64 vo_p = 5;
    std::string vo_out;
    vo->add_option("--n", vo_n, "number of glued pairs (2n copies of the rank-3 free map)")->required();
    vo->add_option("--p", vo_p, "field characteristic");
    vo->add_option("--out", vo_out, "output file");

    CLI11_PARSE(app, argc, argv);

    if (c->parsed()) {
        Output out{out_path, format};
        if (family == "presentation-free") {
            out.emit(presentation_to_json(free_class2_presentation(rank, p)));
        } else if (family == "presentation-extraspecial") {
            out.emit(presentation_to_json(extraspecial_presentation(n, p)));
        } else if (family == "presentation-of") {
            if (file_a.empty()) throw std::invalid_argument("presentation-of requires --a <map file>");
            out.emit(presentation_to_json(presentation_of(map_from_json(slurp(file_a)))));
        } else if (family == "central-power") {
            if (base_spec.empty()) throw std::invalid_argument("central-power requires --base");
            auto cp = central_power(map_from_family(base_spec, p), copies);
            out.emit(map_to_json(cp.map));
        } else if (family == "direct-sum") {
            if (file_a.empty() || file_b.empty()) throw std::invalid_argument("direct-sum requires --a and --b");
            out.emit(map_to_json(direct_sum(map_from_json(slurp(file_a)), map_from_json(slurp(file_b)))));
        } else if (family == "tensor") {
            if (file_a.empty() || file_b.empty()) throw std::invalid_argument("tensor requires --a and --b");
            out.emit(map_to_json(tensor(map_from_json(slurp(file_a)), map_from_json(slurp(file_b)))));
        } else {
            std::string spec = family;
            if (family == "exterior-square" || family == "exchange") spec += ":" + std::to_string(n);
            if (family == "dot") spec += ":" + std::to_string(n) + ":" + disc;
            out.emit(map_to_json(map_from_family(spec, p)));
        }
        return 0;
    }

    if (an->parsed()) {
        BilinearMap b = map_from_json(slurp(an_map));
        auto vr = validate(b);
        if (!vr.ok) {
            ojson j;
            j["valid"] = false;
            j["violations"] = vr.violations;
            Output{an_out, format}.emit(j);
            return 2;
        }
        if (vr.radical_dim != 0) {
            ojson j;
            j["valid"] = true;
            j["radical_dim"] = vr.radical_dim;
            j["error"] = "map is degenerate; structure analysis needs rad b = 0";
            Output{an_out, format}.emit(j);
            return 2;
        }
        StarStructure s = analyze_structure(b);
        ojson j = report_to_json(summarize(s));
        if (oracle) {
            ojson o;
            std::vector<Mat> qbasis;
            for (const auto& f : s.factors)
                for (const auto& x : f.basis) qbasis.push_back(x);
            auto sv = semisimplicity_oracle(qbasis, s.mod, {}, seed);
            o["quotient_semisimple"] = sv.semisimple;
            o["exhaustive"] = sv.exhaustive;
            double points = 1;
            for (size_t i = 0; i < s.sym.size(); ++i) points *= static_cast<double>(b.p);
            if (points <= OracleBudget{}.max_points) {
                auto idems = enumerate_idempotents(s.sym, b.dimV, b.p);
                o["idempotent_count"] = idems.size();
            } else {
                o["idempotent_count"] = nullptr;
            }
            j["oracle"] = o;
        }
        Output{an_out, format}.emit(j);
        return 0;
    }

    if (de->parsed()) {
        BilinearMap b = map_from_json(slurp(de_map));
        require_valid_nondegenerate(b, "decompose");
        StarStructure s = analyze_structure(b);
        Frame f = find_frame(s, seed);
        auto dec = frame_decomposition(f);
        ojson jdec;
        ojson members = ojson::array();
        for (const auto& X : dec) members.push_back(matrix_to_json(X.basis));
        jdec["members"] = members;
        if (f.idem.size() == 1) jdec["notice"] = "map is perpendicular-indecomposable";
        ojson jf = frame_to_json(s, f);
        ojson ji = invariants_to_json(invariants(s, f));
        if (!de_prefix.empty()) {
            Output{de_prefix + ".frame.json", format}.emit(jf);
            Output{de_prefix + ".decomposition.json", format}.emit(jdec);
            Output{de_prefix + ".invariants.json", format}.emit(ji);
        } else {
            ojson j;
            j["frame"] = jf;
            j["decomposition"] = jdec;
            j["invariants"] = ji;
            Output{de_out, format}.emit(j);
        }
        return 0;
    }

    if (se->parsed()) {
        BilinearMap b = map_from_json(slurp(se_map));
        require_valid_nondegenerate(b, "semirefine");
        StarStructure s = analyze_structure(b);
        Frame f = se_frame.empty() ? find_frame(s, seed) : frame_from_json(slurp(se_frame), b);
        if (!se_frame.empty())
            for (const Mat& e : f.idem)
                if (!is_sym_idempotent(b, e))
                    throw std::invalid_argument("semirefine: frame file member is not a Sym(b) idempotent");
        auto sr = semirefine(s, f);
        ojson j;
        ojson members = ojson::array();
        for (const auto& X : sr.members) members.push_back(matrix_to_json(X.basis));
        j["members"] = members;
        j["parts"] = sr.parts;
        j["fixed"] = sr.fixed;
        j["rho"] = matrix_to_json(sr.rho);
        Output{se_out, format}.emit(j);
        return 0;
    }

    if (tr->parsed()) {
        BilinearMap b = map_from_json(slurp(tr_map));
        require_valid_nondegenerate(b, "transport");
        StarStructure s = analyze_structure(b);
        Frame fa = frame_from_json(slurp(tr_a), b);
        Frame fb = frame_from_json(slurp(tr_b), b);
        for (const Frame* f : {&fa, &fb})
            for (const Mat& e : f->idem)
                if (!is_sym_idempotent(b, e))
                    throw std::invalid_argument("transport: frame file member is not a Sym(b) idempotent");
        auto t = transport_frames(s, fa, fb);
        ojson j;
        if (t) {
            j["transported"] = true;
            j["alpha"] = matrix_to_json(t->phi);
            j["matching"] = t->matching;
        } else {
            j["transported"] = false;
            j["reason"] = "address obstruction";
        }
        Output{tr_out, format}.emit(j);
        return 0;
    }

    if (gd->parsed()) {
        GroupPresentation pres = presentation_from_json(slurp(gd_pres));
        if (!gd_check.empty()) {
            auto d = decomposition_from_json(slurp(gd_check), pres.p);
            auto ver = verify_central_decomposition(pres, d);
            ojson j;
            j["ok"] = ver.ok;
            j["fully_refined"] = ver.fully_refined;
            j["violations"] = ver.violations;
            Output{gd_out, format}.emit(j);
            return ver.ok ? 0 : 1;
        }
        auto g = central_decomposition(pres, seed);
        ojson j;
        j["decomposition"] = decomposition_to_json(g.decomposition);
        j["invariants"] = invariants_to_json(g.invariants);
        Output{gd_out, format}.emit(j);
        return 0;
    }

    if (vo->parsed()) {
        auto rep = verify_many_orbits(vo_n, vo_p, seed);
        Output{vo_out, format}.emit(orbit_report_to_json(rep));
        bool ok = rep.transport_within_ok && rep.transport_across_none && rep.pseudo_pairing_ok &&
                  rep.isometry_orbits == 1 + vo_n && rep.aut_orbit_classes == 1 + vo_n / 2;
        return ok ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    }
}
