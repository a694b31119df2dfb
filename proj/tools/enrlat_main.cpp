#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "enrlat/report_json.hpp"
#include "enrlat/scenario.hpp"

using namespace enrlat;
using nlohmann::json;

namespace {

json named_coeffs_json(const std::vector<std::string>& names, const VecQ& v) {
    json o = json::object();
    for (size_t i = 0; i < names.size(); ++i) o[names[i]] = rat_to_json(v[static_cast<Index>(i)]);
    return o;
}

std::string named_coeffs_str(const std::vector<std::string>& names, const VecQ& v) {
    std::string s;
    for (size_t i = 0; i < names.size(); ++i) {
        if (!v[static_cast<Index>(i)].is_zero()) {
            if (!s.empty()) s += "  ";
            s += names[i] + ": " + v[static_cast<Index>(i)].str();
        }
    }
    return s.empty() ? "(zero)" : s;
}

struct Ctx {
    std::string config_path;
    std::string data_dir = default_data_dir();
    bool as_json = false;
};

int cmd_check(const Ctx& ctx) {
    ScenarioConfig sc = load_config(ctx.config_path);
    AmbientModel model = build_ambient(sc.cfg);
    LatticeProfile p = lattice_profile(model.lattice);
    if (ctx.as_json) {
        json o{{"name", sc.cfg.name},
               {"rank", p.rank},
               {"determinant", rat_to_json(p.determinant)},
               {"signature", {p.signature.n_plus, p.signature.n_zero, p.signature.n_minus}},
               {"even", p.is_even},
               {"curves", sc.cfg.curves.size()},
               {"generators", model.generator_names.size()}};
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "configuration " << sc.cfg.name << "\n"
                  << "  curves:      " << sc.cfg.curves.size() << "\n"
                  << "  generators:  " << model.generator_names.size() << "\n"
                  << "  ambient:     rank " << p.rank << ", det " << p.determinant << ", signature ("
                  << p.signature.n_plus << "," << p.signature.n_zero << "," << p.signature.n_minus
                  << "), " << (p.is_even ? "even" : "odd") << "\n";
    }
    return 0;
}

int cmd_phi(const Ctx& ctx, const std::string& class_name) {
    ScenarioConfig sc = load_config(ctx.config_path);
    AmbientModel model = build_ambient(sc.cfg);
    DivClass h = class_of(sc.cfg, model, class_name);
    PhiResult p = phi(model, h);
    if (ctx.as_json) {
        json slices = json::array();
        for (const auto& s : p.slices) slices.push_back({{"degree", s.degree.get_str()}, {"count", s.classes.size()}});
        json o{{"class", class_name},
               {"phi", p.value.get_str()},
               {"witness", vec_to_json(p.witness)},
               {"slices", slices}};
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "phi(" << class_name << ") = " << p.value.get_str() << "\n"
                  << "  witness class (ambient coordinates): " << to_string(p.witness) << "\n";
        for (const auto& s : p.slices)
            std::cout << "  degree " << s.degree.get_str() << " slice: " << s.classes.size() << " classes\n";
    }
    return 0;
}

int cmd_reduce(const Ctx& ctx, const std::string& class_name) {
    ScenarioConfig sc = load_config(ctx.config_path);
    AmbientModel model = build_ambient(sc.cfg);
    DivClass d = class_of(sc.cfg, model, class_name);
    ReductionTrace t = weyl_reduce(model, d, sc.resolve_guard(model));
    if (ctx.as_json) {
        json steps = json::array();
        for (const auto& s : t.steps) steps.push_back({{"curve", s.curve}, {"pairing", rat_to_json(s.pairing)}});
        json mult = json::object();
        for (const auto& [nm, m] : t.multiplicities) mult[nm] = m.get_str();
        json o{{"class", class_name}, {"steps", steps}, {"multiplicities", mult}, {"result", vec_to_json(t.result)}};
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "reduction of " << class_name << ": " << t.steps.size() << " reflections\n";
        for (const auto& s : t.steps)
            std::cout << "  reflect at " << s.curve << " (pairing " << s.pairing << ")\n";
        std::cout << "  multiplicities: ";
        bool first = true;
        for (const auto& [nm, m] : t.multiplicities) {
            if (!first) std::cout << ", ";
            std::cout << nm << ": " << m.get_str();
            first = false;
        }
        std::cout << "\n  nef representative (ambient coordinates): " << to_string(t.result) << "\n";
    }
    return 0;
}

int cmd_negdef(const Ctx& ctx, const std::string& class_name) {
    ScenarioConfig sc = load_config(ctx.config_path);
    auto it = sc.cfg.named_classes.find(class_name);
    if (it == sc.cfg.named_classes.end()) throw std::invalid_argument("unknown class: " + class_name);
    const Index m = sc.cfg.n_curves();
    VecQ coeffs = VecQ::Zero(m);
    for (Index i = 0; i < it->second.size(); ++i) {
        if (i < m) {
            coeffs[i] = it->second[i];
        } else if (!it->second[i].is_zero()) {
            throw std::invalid_argument("negdef: class must be a combination of curves only");
        }
    }
    GramLattice cg = curve_gram(sc.cfg);
    NegDefResult res = is_negative_definite_divisor(cg, coeffs);
    if (ctx.as_json) {
        json o{{"class", class_name}, {"negative_definite", res.negative_definite}};
        if (!res.negative_definite) {
            o["witness"] = named_coeffs_json(sc.cfg.curves, res.witness);
            o["witness_square"] = rat_to_json(res.witness_square);
        }
        std::cout << o.dump(2) << "\n";
    } else {
        if (res.negative_definite) {
            std::cout << class_name << " is negative definite\n";
        } else {
            std::cout << class_name << " is not negative definite\n"
                      << "  witness subdivisor of square " << res.witness_square << ": "
                      << named_coeffs_str(sc.cfg.curves, res.witness) << "\n";
        }
    }
    return res.negative_definite ? 0 : 1;
}

int cmd_fano(const Ctx& ctx, const std::string& seq_name) {
    ScenarioConfig sc = load_config(ctx.config_path);
    AmbientModel model = build_ambient(sc.cfg);
    const auto& seq = sc.sequence(seq_name);
    SequenceValidation v = validate_sequence(sc.cfg, model, seq);
    if (!v.valid) {
        if (ctx.as_json) {
            json o{{"sequence", seq_name}, {"valid", false}, {"violations", v.violations}};
            std::cout << o.dump(2) << "\n";
        } else {
            std::cout << "sequence " << seq_name << " is invalid:\n";
            for (const auto& viol : v.violations) std::cout << "  " << viol << "\n";
        }
        return 1;
    }
    FanoReport f = fano_from_sequence(sc.cfg, model, seq);
    if (ctx.as_json) {
        json tails = json::array();
        for (const auto& t : f.tails) tails.push_back(t);
        json o{{"sequence", seq_name},
               {"valid", true},
               {"degeneracy", v.degeneracy},
               {"H", vec_to_json(f.h)},
               {"phi", f.phi_value.get_str()},
               {"nef", f.nef},
               {"is_fano", f.is_fano},
               {"tails", tails},
               {"tails_match_declaration", f.tails_match_declaration}};
        std::cout << o.dump(2) << "\n";
    } else {
        std::cout << "sequence " << seq_name << ": valid, degeneracy " << v.degeneracy << "\n"
                  << "  H (ambient coordinates): " << to_string(f.h) << "\n"
                  << "  H^2 = 10, phi(H) = " << f.phi_value.get_str() << ", nef: " << (f.nef ? "yes" : "no")
                  << ", Fano: " << (f.is_fano ? "yes" : "no") << "\n";
        for (size_t i = 0; i < f.tails.size(); ++i) {
            std::cout << "  tail of " << seq.blocks[i].halffiber << ":";
            for (const auto& t : f.tails[i]) std::cout << " " << t;
            std::cout << "\n";
        }
    }
    return f.is_fano ? 0 : 1;
}

int cmd_reye(const Ctx& ctx, const std::string& seq_name, const std::string& halffiber) {
    ScenarioConfig sc = load_config(ctx.config_path);
    AmbientModel model = build_ambient(sc.cfg);
    const auto& seq = sc.sequence(seq_name);
    ReyeResult res =
        reye_criterion(sc.cfg, model, seq, halffiber, sc.cfg.curves, sc.resolve_guard(model));
    if (ctx.as_json) {
        json o{{"sequence", seq_name}, {"halffiber", halffiber}, {"effective", res.witness.has_value()}};
        if (res.witness) {
            o["witness"] = named_coeffs_json(res.generator_names, *res.witness);
            o["witness_negative_definite"] = res.witness_negative_definite;
        }
        std::cout << o.dump(2) << "\n";
    } else {
        if (res.witness) {
            std::cout << "H - 2(" << halffiber << " + tail) is effective; the polarization is of Reye type\n"
                      << "  witness: " << named_coeffs_str(res.generator_names, *res.witness) << "\n"
                      << "  witness negative definite: " << (res.witness_negative_definite ? "yes" : "no")
                      << "\n";
        } else {
            std::cout << "H - 2(" << halffiber << " + tail) is not effective over the declared generators\n";
        }
    }
    return res.witness ? 0 : 1;
}

int cmd_paper_verify(const Ctx& ctx) {
    auto reports = run_all(ctx.data_dir);
    bool all = true;
    if (ctx.as_json) {
        json arr = json::array();
        for (const auto& r : reports) {
            json asserts = json::array();
            for (const auto& a : r.assertions)
                asserts.push_back(
                    {{"label", a.label}, {"pass", a.pass}, {"expected", a.expected}, {"got", a.got}});
            arr.push_back({{"name", r.name},
                           {"structural_ok", r.structural_ok},
                           {"structural_notes", r.structural_notes},
                           {"assertions", asserts},
                           {"pass", r.all_pass()}});
            all &= r.all_pass();
        }
        std::cout << json{{"scenarios", arr}, {"pass", all}}.dump(2) << "\n";
    } else {
        int npass = 0;
        for (const auto& r : reports) {
            bool ok = r.all_pass();
            all &= ok;
            npass += ok ? 1 : 0;
            std::cout << (ok ? "[pass] " : "[FAIL] ") << r.name << "\n";
            if (!r.structural_ok)
                for (const auto& n : r.structural_notes) std::cout << "    structural: " << n << "\n";
            for (const auto& a : r.assertions) {
                std::cout << "    " << (a.pass ? "ok   " : "FAIL ") << a.label << "\n";
                if (!a.pass)
                    std::cout << "        expected: " << a.expected << "\n        got:      " << a.got << "\n";
            }
        }
        std::cout << npass << "/" << reports.size() << " scenarios pass\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice computations for divisor classes on Enriques surfaces"};
    app.require_subcommand(1);
    Ctx ctx;
    app.add_flag("--json", ctx.as_json, "machine-readable output");

    std::string class_name, seq_name, halffiber;

    auto* check = app.add_subcommand("check", "validate a configuration and print its lattice profile");
    check->add_option("--config", ctx.config_path, "configuration file")->required();

    auto* phi_cmd = app.add_subcommand("phi", "minimal isotropic degree of a class, with witness");
    phi_cmd->add_option("--config", ctx.config_path, "configuration file")->required();
    phi_cmd->add_option("class", class_name, "named class")->required();

    auto* reduce = app.add_subcommand("reduce", "Weyl reduction of a class to its nef representative");
    reduce->add_option("--config", ctx.config_path, "configuration file")->required();
    reduce->add_option("class", class_name, "named class")->required();

    auto* negdef = app.add_subcommand("negdef", "negative definiteness of an effective divisor");
    negdef->add_option("--config", ctx.config_path, "configuration file")->required();
    negdef->add_option("class", class_name, "named class (non-negative curve combination)")->required();

    auto* fano = app.add_subcommand("fano", "validate a 10-sequence and verify its polarization");
    fano->add_option("--config", ctx.config_path, "configuration file")->required();
    fano->add_option("sequence", seq_name, "named sequence")->required();

    auto* reye = app.add_subcommand("reye", "effectivity criterion for H - 2(F + T)");
    reye->add_option("--config", ctx.config_path, "configuration file")->required();
    reye->add_option("sequence", seq_name, "named sequence")->required();
    reye->add_option("halffiber", halffiber, "half-fiber name from the sequence")->required();

    auto* paper = app.add_subcommand("paper-verify", "re-run all bundled verification scenarios");
    paper->add_option("--data-dir", ctx.data_dir, "directory with the bundled configuration files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(ctx);
        if (phi_cmd->parsed()) return cmd_phi(ctx, class_name);
        if (reduce->parsed()) return cmd_reduce(ctx, class_name);
        if (negdef->parsed()) return cmd_negdef(ctx, class_name);
        if (fano->parsed()) return cmd_fano(ctx, seq_name);
        if (reye->parsed()) return cmd_reye(ctx, seq_name, halffiber);
        if (paper->parsed()) return cmd_paper_verify(ctx);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
