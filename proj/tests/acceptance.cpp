// Acceptance suite: every criterion below re-derives a bundled computation
// or property at its exact expected value and prints one pass/fail line.

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "enrlat/config_io.hpp"
#include "enrlat/scenario.hpp"
#include "oracles.hpp"

using namespace enrlat;

namespace {

struct Criterion {
    std::string label;
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            details.push_back(what);
        }
    }
};

int failures = 0;

void run(const std::string& label, const std::function<void(Criterion&)>& body) {
    Criterion c;
    c.label = label;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.details.push_back(std::string("exception: ") + e.what());
    }
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.setf(std::ios::fixed);
    time.precision(2);
    time << dt;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << label << " (" << time.str() << "s)\n";
    for (const auto& d : c.details) std::cout << "       " << d << "\n";
    if (!c.pass) ++failures;
}

std::string fmt_witness(const std::vector<std::string>& names, const VecQ& w) {
    std::string s;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) s += " ";
        s += names[i] + ":" + w[static_cast<Index>(i)].str();
    }
    return s;
}

DivClass unit(Index n, Index i) {
    DivClass v = VecQ::Zero(n);
    v[i] = Rat(1);
    return v;
}

// ---------------------------------------------------------------- criteria

void criterion_profiles(Criterion& c) {
    for (const auto& file : {"e8_tilde.cfg", "d8_tilde.cfg", "e7_tilde.cfg", "type_vii.cfg"}) {
        ScenarioConfig sc = load_config(default_data_dir() + "/" + file);
        AmbientModel m = build_ambient(sc.cfg);
        LatticeProfile p = lattice_profile(m.lattice);
        bool ok = p.rank == 10 && p.determinant == Rat(-1) && p.signature == Signature{1, 0, 9} &&
                  p.is_even;
        c.require(ok, std::string(file) + ": ambient profile is not (10, -1, (1,0,9), even)");
    }
}

void criterion_e8(Criterion& c) {
    ScenarioConfig sc = load_config(default_data_dir() + "/e8_tilde.cfg");
    AmbientModel m = build_ambient(sc.cfg);
    const auto& seq = sc.sequence("main");
    auto v = validate_sequence(sc.cfg, m, seq);
    c.require(v.valid && v.degeneracy == 1, "sequence must validate with degeneracy 1");
    FanoReport f = fano_from_sequence(sc.cfg, m, seq);
    c.require(is_integral(f.h), "H = (sum E_i)/3 must be integral");
    PhiResult p = phi(m, f.h);
    c.require(p.value == 3, "phi(H) must be 3 by enumeration");
    c.require(p.slices[0].classes.empty() && p.slices[1].classes.empty(),
              "slices of degree 1 and 2 must be empty");
    ReyeResult reye = reye_criterion(sc.cfg, m, seq, "F1", sc.cfg.curves, sc.resolve_guard(m));
    c.require(reye.witness.has_value(), "H - 2(F1+T1) must be effective over the curves");
    if (reye.witness) {
        std::string got = fmt_witness(sc.cfg.curves, *reye.witness);
        std::string expect = "R1_1:1 R1_2:2 R1_3:3 R1_4:4 R1_5:5 R1_6:6 R1_7:7 R1_8:4 R1_9:1 B:4";
        c.require(got == expect, "witness mismatch: got " + got);
        c.require(reye.witness_negative_definite, "witness must be negative definite");
    }
}

void criterion_d8_e7(Criterion& c) {
    {
        ScenarioConfig sc = load_config(default_data_dir() + "/d8_tilde.cfg");
        AmbientModel m = build_ambient(sc.cfg);
        const auto& seq = sc.sequence("main");
        auto v = validate_sequence(sc.cfg, m, seq);
        c.require(v.valid && v.degeneracy == 2, "chain-with-pendants sequence must validate with degeneracy 2");
        ReyeResult reye = reye_criterion(sc.cfg, m, seq, "F1", sc.cfg.curves, sc.resolve_guard(m));
        c.require(reye.witness.has_value(), "H - 2(F1+R1_1) must be effective");
        if (reye.witness) {
            std::string got = fmt_witness(sc.cfg.curves, *reye.witness);
            // u2 carries no label in the classification diagram; the solve pins
            // it to 0 and that computed value is reported here.
            std::string expect = "R1_1:1 u1:4 R2_6:6 R2_5:5 R2_4:4 R2_3:3 R2_2:2 u2:0 R2_7:3 R2_1:1";
            c.require(got == expect, "witness mismatch: got " + got);
        }
    }
    {
        ScenarioConfig sc = load_config(default_data_dir() + "/e7_tilde.cfg");
        AmbientModel m = build_ambient(sc.cfg);
        const auto& seq = sc.sequence("main");
        auto v = validate_sequence(sc.cfg, m, seq);
        c.require(v.valid && v.degeneracy == 2, "double-edge sequence must validate with degeneracy 2");
        ReyeResult reye = reye_criterion(sc.cfg, m, seq, "F2", sc.cfg.curves, sc.resolve_guard(m));
        c.require(reye.witness.has_value(), "H - 2(F2+R2_1) must be effective");
        if (reye.witness) {
            std::string got = fmt_witness(sc.cfg.curves, *reye.witness);
            // nine labelled curves with coefficient 1; u2 and R2_1 computed 0
            std::string expect = "u0:1 R1_7:1 R1_6:1 R1_5:1 u2:0 R1_4:1 R1_3:1 R1_2:1 R1_1:1 u1:1 R2_1:0";
            c.require(got == expect, "witness mismatch: got " + got);
        }
    }
}

void criterion_vii_fano(Criterion& c) {
    ScenarioConfig sc = load_config(default_data_dir() + "/type_vii.cfg");
    AmbientModel m = build_ambient(sc.cfg);
    for (int n = 1; n <= 5; ++n) {
        std::string nm = "H" + std::to_string(n);
        DivClass h = class_of(sc.cfg, m, nm);
        c.require(is_integral(h), nm + " must be integral");
        c.require(pair(m.lattice, h, h) == Rat(10), nm + "^2 must be 10");
        bool ample = true;
        for (Index k = 0; k < m.n_curves; ++k)
            ample &= pair(m.lattice, h, m.curve_class(k)).sign() > 0;
        c.require(ample, nm + " must pair > 0 with all twenty curves");
        PhiResult p = phi(m, h);
        c.require(p.value == 3, "phi(" + nm + ") must be 3 by rank-9 coset enumeration");
    }
}

void criterion_vii_counterexample(Criterion& c) {
    ScenarioConfig sc = load_config(default_data_dir() + "/type_vii.cfg");
    AmbientModel m = build_ambient(sc.cfg);
    DivClass g = class_of(sc.cfg, m, "G");
    auto f = divide_in_lattice(m.lattice, g, 2);
    c.require(f.has_value(), "F = G/2 must be integral");
    if (!f) return;
    c.require(is_primitive(m.lattice, *f), "F must be primitive");
    DivClass h1 = class_of(sc.cfg, m, "H1");
    c.require(pair(m.lattice, h1, *f) == Rat(3), "H1.F must be 3");
    DivClass d = h1 - Rat(2) * *f;
    for (int i : {3, 8, 14, 15}) {
        Rat vi = pair(m.lattice, d, class_of(sc.cfg, m, "E" + std::to_string(i)));
        c.require(vi.sign() < 0, "(H1-2F).E" + std::to_string(i) + " must be negative, got " + vi.str());
    }
    DivClass d2 = d;
    for (int i : {3, 8, 14, 15}) d2 -= class_of(sc.cfg, m, "E" + std::to_string(i));
    Rat gp = pair(m.lattice, d2, class_of(sc.cfg, m, "Gp"));
    c.require(gp.sign() < 0, "reduced class must pair negatively with the nine-cycle, got " + gp.str());
    std::vector<DivClass> curves;
    for (Index k = 0; k < m.n_curves; ++k) curves.push_back(m.curve_class(k));
    auto member = cone_membership(m.lattice, d, curves, sc.resolve_guard(m));
    c.require(!member.has_value(), "H1 - 2F must not be a non-negative curve combination");
}

void criterion_weyl_property(Criterion& c) {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> mult(0, 4);
    int done = 0;
    std::vector<std::string> files = {"e8_tilde.cfg", "d8_tilde.cfg", "e7_tilde.cfg", "type_vii.cfg"};
    for (size_t fi = 0; done < 200; fi = (fi + 1) % files.size()) {
        ScenarioConfig sc = load_config(default_data_dir() + "/" + files[fi]);
        AmbientModel m = build_ambient(sc.cfg);
        DivClass guard = sc.resolve_guard(m);
        // nef base class: the bundled polarization of the scenario
        DivClass base = files[fi] == "type_vii.cfg"
                            ? class_of(sc.cfg, m, "H1")
                            : fano_from_sequence(sc.cfg, m, sc.sequence("main")).h;
        for (int trial = 0; trial < 13 && done < 200; ++trial) {
            DivClass d = base;
            for (Index k = 0; k < m.n_curves; ++k) d += Rat(mult(rng)) * m.curve_class(k);
            Rat before = pair(m.lattice, d, d);
            if (before.sign() < 0 || pair(m.lattice, d, guard).sign() <= 0) continue;
            ReductionTrace t = weyl_reduce(m, d, guard);
            c.require(pair(m.lattice, t.result, t.result) == before, "square not preserved");
            c.require(is_nef_against(m, t.result), "result not nef");
            c.require(weyl_reduce(m, t.result, guard).steps.empty(), "result not a fixed point");
            DivClass back = t.result;
            for (const auto& [nm, k] : t.multiplicities)
                back += Rat(k) * m.curve_class(sc.cfg.curve_index(nm));
            c.require(back == d, "multiplicities do not reconstruct the input");
            ++done;
        }
    }
    c.require(done == 200, "insufficient random inputs");
}

void criterion_phi_oracle(Criterion& c) {
    // Complete box-oracle agreement runs on a rank-4 hyperbolic model, where
    // a radius-12 coordinate box is exhaustive within the time budget; the
    // rank-10 model is cross-checked against the independent root-catalogue
    // construction of its small slices.
    GramLattice l4;
    l4.basis_names = {"e", "f", "c", "d"};
    l4.gram = MatQ::Zero(4, 4);
    l4.gram(0, 1) = l4.gram(1, 0) = Rat(1);
    l4.gram(2, 2) = l4.gram(3, 3) = Rat(-2);
    std::vector<DivClass> iso = {unit(4, 0), unit(4, 1), unit(4, 0) + unit(4, 1) + unit(4, 2),
                                 unit(4, 0) + unit(4, 1) + unit(4, 3)};
    std::mt19937 rng(103);
    std::uniform_int_distribution<int> coef(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        DivClass h = VecQ::Zero(4);
        for (const auto& v : iso) h += Rat(coef(rng)) * v;
        Rat h2 = pair(l4, h, h);
        if (h2.sign() <= 0) {
            c.require(false, "generated class is not big");
            continue;
        }
        Int bound = isqrt_floor(h2);
        auto brute = oracles::slices_by_box(l4, h, 12);
        for (Int t = 1; t <= bound; t += 1) {
            IsotropicSlice s = enumerate_isotropic_slice(l4, h, t);
            const auto& expected = brute[t];
            bool same = s.classes.size() == expected.size();
            if (same)
                for (size_t i = 0; i < expected.size(); ++i) same &= s.classes[i] == expected[i];
            c.require(same, "slice mismatch at degree " + t.get_str());
        }
    }

    GramLattice l10 = hyperbolic_e10();
    DivClass h10 = unit(10, 0) + unit(10, 1);
    IsotropicSlice s1 = enumerate_isotropic_slice(l10, h10, 1);
    c.require(s1.classes.size() == 2, "degree-1 slice of e+f must be {e, f}");
    IsotropicSlice s2 = enumerate_isotropic_slice(l10, h10, 2);
    c.require(s2.classes.size() == 240, "degree-2 slice of e+f must have 240 classes");
    auto roots = oracles::e8_roots_negative();
    c.require(roots.size() == 240, "root catalogue size");
    std::set<std::string> expect;
    for (const auto& r : roots) {
        DivClass fv = h10;
        for (Index i = 0; i < 8; ++i) fv[2 + i] = r[i];
        expect.insert(to_string(fv));
    }
    bool all_found = true;
    for (const auto& fv : s2.classes) all_found &= expect.count(to_string(fv)) == 1;
    c.require(all_found, "degree-2 slice must consist of e+f+root");

    // Randomized big-and-nef classes in the rank-10 model: defining equations,
    // primitivity and the phi bound hold for every enumerated class.
    auto seq10 = oracles::synthetic_ten_sequence(l10);
    std::uniform_int_distribution<int> coef10(1, 2);
    for (int trial = 0; trial < 10; ++trial) {
        DivClass h = VecQ::Zero(10);
        for (const auto& v : seq10) h += Rat(coef10(rng)) * v;
        PhiResult p = phi(l10, h);
        c.require(Rat(Int(p.value * p.value)) <= pair(l10, h, h), "phi(H)^2 must be at most H^2");
        for (const auto& s : p.slices)
            for (const auto& fv : s.classes) {
                c.require(pair(l10, fv, fv).is_zero(), "slice class not isotropic");
                c.require(pair(l10, h, fv) == Rat(s.degree), "slice class degree wrong");
                c.require(is_primitive(l10, fv), "slice class not primitive");
            }
    }
}

void criterion_negdef_property(Criterion& c) {
    // The witness divisors of the three chain scenarios, the affine
    // null-vector counterexample, and random small divisors.
    struct Case {
        std::string file, halffiber;
    };
    for (const Case& k : {Case{"e8_tilde.cfg", "F1"}, Case{"d8_tilde.cfg", "F1"}, Case{"e7_tilde.cfg", "F2"}}) {
        ScenarioConfig sc = load_config(default_data_dir() + "/" + k.file);
        AmbientModel m = build_ambient(sc.cfg);
        ReyeResult reye = reye_criterion(sc.cfg, m, sc.sequence("main"), k.halffiber, sc.cfg.curves,
                                         sc.resolve_guard(m));
        if (!reye.witness) {
            c.require(false, k.file + ": no witness");
            continue;
        }
        GramLattice cg = curve_gram(sc.cfg);
        NegDefResult fast = is_negative_definite_divisor(cg, *reye.witness);
        auto slow = oracles::negdef_by_box(cg, *reye.witness);
        c.require(fast.negative_definite && slow.negative_definite,
                  k.file + ": witness must be negative definite by both searches");
    }

    ScenarioConfig e8 = load_config(default_data_dir() + "/e8_tilde.cfg");
    GramLattice cg8 = curve_gram(e8.cfg);
    VecQ nullvec =
        affine_null_class(e8.cfg, {"R1_2", "R1_3", "R1_4", "R1_5", "R1_6", "R1_7", "R1_8", "R1_9", "B"});
    NegDefResult nd = is_negative_definite_divisor(cg8, nullvec);
    c.require(!nd.negative_definite, "affine null divisor must not be negative definite");
    c.require(nd.witness_square.is_zero(), "counterexample witness must have square 0");
    auto ndslow = oracles::negdef_by_box(cg8, nullvec);
    c.require(!ndslow.negative_definite, "oracle agrees on the null divisor");

    std::mt19937 rng(107);
    std::uniform_int_distribution<int> coefd(0, 2);
    int done = 0;
    std::vector<std::string> files = {"e8_tilde.cfg", "d8_tilde.cfg", "e7_tilde.cfg"};
    for (size_t fi = 0; done < 50; fi = (fi + 1) % files.size()) {
        ScenarioConfig sc = load_config(default_data_dir() + "/" + files[fi]);
        GramLattice cg = curve_gram(sc.cfg);
        for (int trial = 0; trial < 17 && done < 50; ++trial, ++done) {
            VecQ coeffs(cg.rank());
            for (Index i = 0; i < cg.rank(); ++i) coeffs[i] = Rat(coefd(rng));
            NegDefResult fast = is_negative_definite_divisor(cg, coeffs);
            auto slow = oracles::negdef_by_box(cg, coeffs);
            c.require(fast.negative_definite == slow.negative_definite,
                      "pruned and unpruned searches disagree");
        }
    }
}

void criterion_identities(Criterion& c) {
    // (sum E_i)^2 = 90 for every bundled sequence.
    for (const auto& file : {"e8_tilde.cfg", "d8_tilde.cfg", "e7_tilde.cfg"}) {
        ScenarioConfig sc = load_config(default_data_dir() + "/" + file);
        AmbientModel m = build_ambient(sc.cfg);
        SequenceEntries se = expand_sequence(sc.cfg, m, sc.sequence("main"));
        DivClass sum = VecQ::Zero(10);
        for (const auto& e : se.entries) sum += e;
        c.require(pair(m.lattice, sum, sum) == Rat(90),
                  std::string(file) + ": entry sum square must be 90");
    }
    // Synthetic sequence: the same identity plus the tilt invariants.
    GramLattice l = hyperbolic_e10();
    auto seq = oracles::synthetic_ten_sequence(l);
    DivClass sum = VecQ::Zero(10);
    for (const auto& s : seq) sum += s;
    c.require(pair(l, sum, sum) == Rat(90), "synthetic entry sum square must be 90");
    auto h = divide_in_lattice(l, sum, 3);
    c.require(h.has_value(), "synthetic entry sum must be 3-divisible");
    if (!h) return;
    for (int a = 0; a < 3; ++a) {
        std::array<DivClass, 3> fs = {seq[static_cast<size_t>(a)], seq[static_cast<size_t>(a + 3)],
                                      seq[static_cast<size_t>(a + 6)]};
        // pairwise degree-1 triple with trivial tails
        HatReport rep = hat_transform(l, *h, fs, fs, {}, std::nullopt);
        c.require(rep.hat_h_square == Rat(10), "tilt square must be 10");
        c.require(rep.h_dot_hat_h == Rat(11), "H.tilt must be 11");
        c.require(rep.phi_value == 3, "tilt must have phi 3");
    }
}

}  // namespace

int main() {
    run("criterion 1: all four bundled configurations have ambient profile (10, -1, (1,0,9), even)",
        criterion_profiles);
    run("criterion 2: chain scenario reproduces its sequence, phi and witness exactly", criterion_e8);
    run("criterion 3: pendant and double-edge scenarios reproduce their labelled witnesses",
        criterion_d8_e7);
    run("criterion 4: all five degree-10 classes are ample with phi 3", criterion_vii_fano);
    run("criterion 5: the twenty-curve counterexample has the asserted signs and no witness",
        criterion_vii_counterexample);
    run("criterion 6: Weyl reduction property suite on 200 randomized inputs", criterion_weyl_property);
    run("criterion 7: slice enumeration agrees with the exhaustive box oracle", criterion_phi_oracle);
    run("criterion 8: negative definiteness agrees with the unpruned exhaustive search",
        criterion_negdef_property);
    run("criterion 9: algebraic identities (entry sum square 90, tilt invariants 10 and 11)",
        criterion_identities);
    if (failures) {
        std::cout << failures << " criteria FAILED\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
