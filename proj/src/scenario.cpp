#include "enrlat/scenario.hpp"

#include <map>
#include <set>
#include <sstream>

namespace enrlat {

namespace {

std::string profile_str(const LatticeProfile& p) {
    std::ostringstream os;
    os << "(rank " << p.rank << ", det " << p.determinant << ", sig (" << p.signature.n_plus << ","
       << p.signature.n_zero << "," << p.signature.n_minus << "), " << (p.is_even ? "even" : "odd") << ")";
    return os.str();
}

struct Runner {
    ScenarioReport report;

    void check(const std::string& label, const std::string& expected, const std::string& got) {
        report.assertions.push_back({label, expected == got, expected, got});
    }
    void check_bool(const std::string& label, bool ok, const std::string& got_detail = "") {
        report.assertions.push_back({label, ok, "true", ok ? "true" : (got_detail.empty() ? "false" : got_detail)});
    }
};

const LatticeProfile kE10Profile{10, Rat(-1), Signature{1, 0, 9}, true};

void check_e10_profile(Runner& r, const AmbientModel& model) {
    LatticeProfile p = lattice_profile(model.lattice);
    r.check("ambient lattice is the even unimodular hyperbolic lattice of rank 10",
            profile_str(kE10Profile), profile_str(p));
}

std::string witness_str(const std::vector<std::string>& names, const VecQ& w) {
    std::ostringstream os;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) os << " ";
        os << names[i] << ":" << w[static_cast<Index>(i)];
    }
    return os.str();
}

std::string slice_counts_str(const PhiResult& p) {
    std::ostringstream os;
    os << "phi " << p.value << ", slice sizes";
    for (const auto& s : p.slices) os << " t" << s.degree << ":" << s.classes.size();
    return os.str();
}

// ---------------------------------------------------------------- E8_tilde

ScenarioReport run_e8(const std::string& dir) {
    Runner r;
    r.report.name = "E8_tilde";
    ScenarioConfig sc = load_config(dir + "/e8_tilde.cfg");
    GramLattice cg = curve_gram(sc.cfg);
    r.report.structural_ok = true;
    if (rank_of(cg.gram) != 10) {
        r.report.structural_ok = false;
        r.report.structural_notes.push_back("curve span rank != 10");
        return r.report;
    }
    AmbientModel model = build_ambient(sc.cfg);
    check_e10_profile(r, model);

    const auto& seq = sc.sequence("main");
    auto v = validate_sequence(sc.cfg, model, seq);
    r.check_bool("the declared decomposition is a 1-degenerate 10-sequence",
                 v.valid && v.degeneracy == 1,
                 v.violations.empty() ? "degeneracy mismatch" : v.violations.front());
    if (!v.valid) return r.report;

    SequenceEntries se = expand_sequence(sc.cfg, model, seq);
    DivClass sum = VecQ::Zero(10);
    for (const auto& e : se.entries) sum += e;
    r.check("the entry sum has square 90", "90", pair(model.lattice, sum, sum).str());

    FanoReport fano = fano_from_sequence(sc.cfg, model, seq);
    r.check_bool("the entry sum is 3-divisible with H^2 = 10 and H nef",
                 fano.h_square_ten && fano.nef);
    PhiResult p = phi(model, fano.h);
    r.check("phi(H) = 3 by slice enumeration, lower slices empty",
            "phi 3, slice sizes t1:0 t2:0 t3:10", slice_counts_str(p));
    bool f1_in_slice = false;
    for (const auto& cls : p.slices.back().classes) f1_in_slice |= cls == se.halffibers[0];
    r.check_bool("the degree-3 slice contains the half-fiber class", f1_in_slice);

    // H is orthogonal to exactly the tail curves; the branch B has degree 1.
    std::map<std::string, Rat> deg;
    for (Index c = 0; c < model.n_curves; ++c)
        deg[sc.cfg.curves[static_cast<size_t>(c)]] = pair(model.lattice, fano.h, model.curve_class(c));
    bool orth_ok = deg["B"] == Rat(1);
    for (int k = 1; k <= 9; ++k) orth_ok &= deg["R1_" + std::to_string(k)].is_zero();
    r.check_bool("H.R = 0 exactly on the nine tail curves and H.B = 1", orth_ok);
    r.check_bool("tails reassembled from H match the declared decomposition", fano.tails_match_declaration);

    ReyeResult reye = reye_criterion(sc.cfg, model, seq, "F1", sc.cfg.curves, sc.resolve_guard(model));
    r.check_bool("H - 2(F1 + T1) is effective over the ten curves", reye.witness.has_value());
    if (reye.witness) {
        r.check("effective witness coefficients match the labelled values",
                "R1_1:1 R1_2:2 R1_3:3 R1_4:4 R1_5:5 R1_6:6 R1_7:7 R1_8:4 R1_9:1 B:4",
                witness_str(sc.cfg.curves, *reye.witness));
        r.check_bool("the witness divisor is negative definite", reye.witness_negative_definite);
    }

    // Degree pattern of the one curve with H.R = 1.
    PatternReport pat = pattern_check(model.lattice, fano.h, class_of(sc.cfg, model, "B"), se);
    r.check_bool("the branch curve meets exactly three entries once (forced square -2)",
                 pat.matches && pat.square == Rat(-2));

    // Weyl reduction of the largest entry recovers the half-fiber.
    DivClass top = se.entries.back();
    ReductionTrace trace = weyl_reduce(model, top, sc.resolve_guard(model));
    bool weyl_ok = trace.result == se.halffibers[0];
    for (int k = 1; k <= 9; ++k) weyl_ok &= trace.multiplicities["R1_" + std::to_string(k)] == 1;
    weyl_ok &= trace.multiplicities.count("B") == 0 || trace.multiplicities["B"] == 0;
    r.check_bool("F1 + T1 reduces to F1 with multiplicity one on each tail curve", weyl_ok);
    return r.report;
}

// ---------------------------------------------------------------- D8_tilde

ScenarioReport run_d8(const std::string& dir) {
    Runner r;
    r.report.name = "D8_tilde";
    ScenarioConfig sc = load_config(dir + "/d8_tilde.cfg");
    GramLattice cg = curve_gram(sc.cfg);
    r.report.structural_ok = rank_of(cg.gram) == 10;
    if (!r.report.structural_ok) {
        r.report.structural_notes.push_back("curve span rank != 10");
        return r.report;
    }
    AmbientModel model = build_ambient(sc.cfg);
    check_e10_profile(r, model);

    DivClass g2 = class_of(sc.cfg, model, "G2");
    auto f2 = divide_in_lattice(model.lattice, g2, 2);
    r.check_bool("the type II* fiber halves in the ambient lattice", f2.has_value());
    if (f2) {
        r.check_bool("the declared half generator equals the halved fiber",
                     *f2 == class_of(sc.cfg, model, "F2"));
        r.check_bool("the half-fiber is primitive", is_primitive(model.lattice, *f2));
    }

    const auto& seq = sc.sequence("main");
    auto v = validate_sequence(sc.cfg, model, seq);
    r.check_bool("the declared decomposition is a 2-degenerate 10-sequence",
                 v.valid && v.degeneracy == 2,
                 v.violations.empty() ? "degeneracy mismatch" : v.violations.front());
    if (!v.valid) return r.report;

    SequenceEntries se = expand_sequence(sc.cfg, model, seq);
    DivClass sum = VecQ::Zero(10);
    for (const auto& e : se.entries) sum += e;
    r.check("the entry sum has square 90", "90", pair(model.lattice, sum, sum).str());

    FanoReport fano = fano_from_sequence(sc.cfg, model, seq);
    r.check_bool("H is integral, nef, of square 10", fano.h_square_ten && fano.nef);
    PhiResult p = phi(model, fano.h);
    r.check("phi(H) = 3 by slice enumeration, lower slices empty",
            "phi 3, slice sizes t1:0 t2:0 t3:10", slice_counts_str(p));

    std::map<std::string, Rat> deg;
    for (Index c = 0; c < model.n_curves; ++c)
        deg[sc.cfg.curves[static_cast<size_t>(c)]] = pair(model.lattice, fano.h, model.curve_class(c));
    bool deg_ok = deg["u1"] == Rat(1) && deg["u2"] == Rat(2);
    for (const auto& nm : {"R1_1", "R2_1", "R2_2", "R2_3", "R2_4", "R2_5", "R2_6", "R2_7"})
        deg_ok &= deg[nm].is_zero();
    r.check_bool("H.R = 0 exactly on the tails, H.u1 = 1, H.u2 = 2", deg_ok);
    r.check_bool("tails reassembled from H match the declared decomposition", fano.tails_match_declaration);

    ReyeResult reye = reye_criterion(sc.cfg, model, seq, "F1", sc.cfg.curves, sc.resolve_guard(model));
    r.check_bool("H - 2(F1 + T1) is effective over the ten curves", reye.witness.has_value());
    if (reye.witness) {
        // The u2 coefficient carries no label in the classification diagram; the
        // exact solve pins it to 0 and it is asserted as computed.
        r.check("effective witness coefficients match the labelled values (u2 computed)",
                "R1_1:1 u1:4 R2_6:6 R2_5:5 R2_4:4 R2_3:3 R2_2:2 u2:0 R2_7:3 R2_1:1",
                witness_str(sc.cfg.curves, *reye.witness));
        r.check_bool("the witness divisor is negative definite", reye.witness_negative_definite);
    }

    PatternReport pat1 = pattern_check(model.lattice, fano.h, class_of(sc.cfg, model, "u1"), se);
    PatternReport pat2 = pattern_check(model.lattice, fano.h, class_of(sc.cfg, model, "u2"), se);
    r.check_bool("degree patterns: u1 meets three entries once, u2 meets six entries once",
                 pat1.matches && pat1.square == Rat(-2) && pat2.matches && pat2.square == Rat(-2));

    bool nef_iff_full = true;
    for (size_t b = 0; b < seq.blocks.size(); ++b) {
        DivClass e = se.halffibers[b];
        size_t len = seq.blocks[b].tail.size();
        for (size_t k = 0; k <= len; ++k) {
            if (k > 0) e += model.curve_class(sc.cfg.curve_index(seq.blocks[b].tail[k - 1]));
            bool nef = is_nef_against(model, fano.h - e);
            if (nef != (k == len)) nef_iff_full = false;
        }
    }
    r.check_bool("H - (F + partial tail) is nef exactly at the full tail", nef_iff_full);
    return r.report;
}

// ---------------------------------------------------------------- E7_tilde

ScenarioReport run_e7(const std::string& dir) {
    Runner r;
    r.report.name = "E7_tilde";
    ScenarioConfig sc = load_config(dir + "/e7_tilde.cfg");
    GramLattice cg = curve_gram(sc.cfg);
    r.report.structural_ok = rank_of(cg.gram) == 10 && sc.cfg.n_curves() == 11;
    if (!r.report.structural_ok) {
        r.report.structural_notes.push_back("eleven curves spanning rank 10 expected");
        return r.report;
    }
    AmbientModel model = build_ambient(sc.cfg);
    check_e10_profile(r, model);

    DivClass g2 = class_of(sc.cfg, model, "G2");
    auto f2 = divide_in_lattice(model.lattice, g2, 2);
    r.check_bool("the type II* fiber halves in the ambient lattice", f2.has_value());
    if (f2)
        r.check_bool("the declared half generator equals the halved fiber",
                     *f2 == class_of(sc.cfg, model, "F2"));

    // The two half-fibers of the pencil carried by F1's class coincide.
    DivClass other = class_of(sc.cfg, model, "u1") + class_of(sc.cfg, model, "R2_1");
    r.check_bool("F1 equals u1 + R2_1 (two half-fibers of one pencil)",
                 other == class_of(sc.cfg, model, "F1"));

    const auto& seq = sc.sequence("main");
    auto v = validate_sequence(sc.cfg, model, seq);
    r.check_bool("the declared decomposition is a 2-degenerate 10-sequence",
                 v.valid && v.degeneracy == 2,
                 v.violations.empty() ? "degeneracy mismatch" : v.violations.front());
    if (!v.valid) return r.report;

    SequenceEntries se = expand_sequence(sc.cfg, model, seq);
    DivClass sum = VecQ::Zero(10);
    for (const auto& e : se.entries) sum += e;
    r.check("the entry sum has square 90", "90", pair(model.lattice, sum, sum).str());

    FanoReport fano = fano_from_sequence(sc.cfg, model, seq);
    r.check_bool("H is integral, nef, of square 10", fano.h_square_ten && fano.nef);
    PhiResult p = phi(model, fano.h);
    r.check("phi(H) = 3 by slice enumeration, lower slices empty",
            "phi 3, slice sizes t1:0 t2:0 t3:10", slice_counts_str(p));

    std::map<std::string, Rat> deg;
    for (Index c = 0; c < model.n_curves; ++c)
        deg[sc.cfg.curves[static_cast<size_t>(c)]] = pair(model.lattice, fano.h, model.curve_class(c));
    bool deg_ok = deg["u0"] == Rat(1) && deg["u2"] == Rat(1) && deg["u1"] == Rat(3);
    for (const auto& nm : {"R1_1", "R1_2", "R1_3", "R1_4", "R1_5", "R1_6", "R1_7", "R2_1"})
        deg_ok &= deg[nm].is_zero();
    r.check_bool("H.R = 0 exactly on the tails; H.u0 = 1, H.u2 = 1, H.u1 = 3", deg_ok);

    ReyeResult reye = reye_criterion(sc.cfg, model, seq, "F2", sc.cfg.curves, sc.resolve_guard(model));
    r.check_bool("H - 2(F2 + T2) is effective over the eleven curves", reye.witness.has_value());
    if (reye.witness) {
        // Coefficient 1 on the nine labelled curves; u2 and R2_1 computed 0.
        r.check("effective witness coefficients match the labelled values (u2, R2_1 computed)",
                "u0:1 R1_7:1 R1_6:1 R1_5:1 u2:0 R1_4:1 R1_3:1 R1_2:1 R1_1:1 u1:1 R2_1:0",
                witness_str(sc.cfg.curves, *reye.witness));
        r.check_bool("the witness divisor is negative definite", reye.witness_negative_definite);
    }

    PatternReport pat0 = pattern_check(model.lattice, fano.h, class_of(sc.cfg, model, "u0"), se);
    PatternReport pat2b = pattern_check(model.lattice, fano.h, class_of(sc.cfg, model, "u2"), se);
    r.check_bool("degree patterns at u0 and u2: three entries met once each",
                 pat0.matches && pat0.square == Rat(-2) && pat2b.matches && pat2b.square == Rat(-2));

    // Nefness of H - (F + partial tail) holds exactly at the full tail.
    bool nef_iff_full = true;
    for (size_t b = 0; b < seq.blocks.size(); ++b) {
        DivClass e = se.halffibers[b];
        size_t len = seq.blocks[b].tail.size();
        for (size_t k = 0; k <= len; ++k) {
            if (k > 0) e += model.curve_class(sc.cfg.curve_index(seq.blocks[b].tail[k - 1]));
            bool nef = is_nef_against(model, fano.h - e);
            if (nef != (k == len)) nef_iff_full = false;
        }
    }
    r.check_bool("H - (F + partial tail) is nef exactly at the full tail", nef_iff_full);
    return r.report;
}

// ------------------------------------------------------------ type VII

bool type_vii_structure(const CurveConfig& cfg, std::vector<std::string>& notes) {
    GramLattice cg = curve_gram(cfg);
    bool ok = true;
    std::map<std::string, Index> idx;
    for (Index i = 0; i < cfg.n_curves(); ++i) idx[cfg.curves[static_cast<size_t>(i)]] = i;
    for (int e = 1; e <= 15; ++e) {
        std::string nm = "E" + std::to_string(e);
        if (!idx.count(nm)) { notes.push_back("missing curve " + nm); return false; }
        int simple = 0, doubled = 0;
        for (Index j = 0; j < cfg.n_curves(); ++j) {
            if (j == idx[nm]) continue;
            Rat g = cg.gram(idx[nm], j);
            if (g == Rat(1)) ++simple;
            if (g == Rat(2)) ++doubled;
        }
        if (simple != 4 || doubled != 1) {
            ok = false;
            notes.push_back(nm + " degree pattern wrong: " + std::to_string(simple) + " simple, " +
                            std::to_string(doubled) + " double");
        }
    }
    for (int k = 1; k <= 5; ++k) {
        std::string nm = "K" + std::to_string(k);
        if (!idx.count(nm)) { notes.push_back("missing curve " + nm); return false; }
        int e_doubles = 0, k_doubles = 0;
        for (Index j = 0; j < cfg.n_curves(); ++j) {
            if (j == idx[nm]) continue;
            Rat g = cg.gram(idx[nm], j);
            std::string other = cfg.curves[static_cast<size_t>(j)];
            if (g == Rat(2)) {
                if (other[0] == 'E') ++e_doubles;
                else ++k_doubles;
            } else if (!g.is_zero()) {
                ok = false;
                notes.push_back(nm + " has a non-double bond");
            }
        }
        if (e_doubles != 3 || k_doubles != 4) {
            ok = false;
            notes.push_back(nm + " degree pattern wrong");
        }
    }
    if (rank_of(cg.gram) != 10) {
        ok = false;
        notes.push_back("curve span rank != 10");
    }
    return ok;
}

ScenarioReport run_vii_fano(const std::string& dir) {
    Runner r;
    r.report.name = "typeVII_fano";
    ScenarioConfig sc = load_config(dir + "/type_vii.cfg");
    r.report.structural_ok = type_vii_structure(sc.cfg, r.report.structural_notes);
    if (!r.report.structural_ok) return r.report;
    AmbientModel model = build_ambient(sc.cfg);
    check_e10_profile(r, model);

    for (int n = 1; n <= 5; ++n) {
        std::string nm = "H" + std::to_string(n);
        DivClass h = class_of(sc.cfg, model, nm);
        r.check_bool(nm + " is an integral class", is_integral(h));
        r.check(nm + " has square 10", "10", pair(model.lattice, h, h).str());
        bool ample = true;
        for (Index c = 0; c < model.n_curves; ++c)
            ample &= pair(model.lattice, h, model.curve_class(c)).sign() > 0;
        r.check_bool(nm + " has positive degree on all twenty curves", ample);
        PhiResult p = phi(model, h);
        r.check("phi(" + nm + ") = 3 by rank-9 coset enumeration",
                "phi 3, slice sizes t1:0 t2:0 t3:10", slice_counts_str(p));
    }
    return r.report;
}

ScenarioReport run_vii_counterexample(const std::string& dir) {
    Runner r;
    r.report.name = "typeVII_counterexample";
    ScenarioConfig sc = load_config(dir + "/type_vii.cfg");
    r.report.structural_ok = type_vii_structure(sc.cfg, r.report.structural_notes);
    if (!r.report.structural_ok) return r.report;
    AmbientModel model = build_ambient(sc.cfg);

    DivClass g = class_of(sc.cfg, model, "G");
    auto f = divide_in_lattice(model.lattice, g, 2);
    r.check_bool("the plumbing cycle E1+E2+E9+E10+E12 halves in the lattice", f.has_value());
    if (!f) return r.report;
    r.check_bool("the half-fiber F is primitive", is_primitive(model.lattice, *f));

    DivClass h1 = class_of(sc.cfg, model, "H1");
    r.check("H1.F = 3", "3", pair(model.lattice, h1, *f).str());
    r.check_bool("F sits in the degree-3 slice of H1", check_E_membership(model.lattice, h1, *f));

    DivClass d = h1 - Rat(2) * *f;
    bool signs = true;
    std::ostringstream got;
    for (int i : {3, 8, 14, 15}) {
        Rat v = pair(model.lattice, d, class_of(sc.cfg, model, "E" + std::to_string(i)));
        got << "E" << i << ":" << v << " ";
        signs &= v.sign() < 0;
    }
    r.check_bool("(H1 - 2F).Ei < 0 for i in {3, 8, 14, 15} [" + got.str() + "]", signs);

    DivClass d2 = d;
    for (int i : {3, 8, 14, 15}) d2 -= class_of(sc.cfg, model, "E" + std::to_string(i));
    Rat gp = pair(model.lattice, d2, class_of(sc.cfg, model, "Gp"));
    r.check_bool("(H1 - 2F - E3 - E8 - E14 - E15).(E1+...+E9) < 0 [" + gp.str() + "]", gp.sign() < 0);

    std::vector<DivClass> curves;
    for (Index c = 0; c < model.n_curves; ++c) curves.push_back(model.curve_class(c));
    auto member = cone_membership(model.lattice, d, curves, sc.resolve_guard(model));
    r.check_bool("H1 - 2F is not a non-negative combination of the twenty curves", !member.has_value());
    return r.report;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"E8_tilde", "D8_tilde", "E7_tilde", "typeVII_fano", "typeVII_counterexample"};
}

std::string default_data_dir() {
#ifdef ENRLAT_DATA_DIR
    return ENRLAT_DATA_DIR;
#else
    return "data";
#endif
}

ScenarioReport run_scenario(const std::string& name, const std::string& data_dir) {
    if (name == "E8_tilde") return run_e8(data_dir);
    if (name == "D8_tilde") return run_d8(data_dir);
    if (name == "E7_tilde") return run_e7(data_dir);
    if (name == "typeVII_fano") return run_vii_fano(data_dir);
    if (name == "typeVII_counterexample") return run_vii_counterexample(data_dir);
    throw std::invalid_argument("unknown scenario: " + name);
}

std::vector<ScenarioReport> run_all(const std::string& data_dir) {
    std::vector<ScenarioReport> out;
    for (const auto& nm : scenario_names()) out.push_back(run_scenario(nm, data_dir));
    return out;
}

}  // namespace enrlat
