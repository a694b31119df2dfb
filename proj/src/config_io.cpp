#include "enrlat/config_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace enrlat {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

Rat parse_rational(const std::string& tok, int line) {
    auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(tok));
        Int num(tok.substr(0, slash));
        Int den(tok.substr(slash + 1));
        if (den <= 0) throw ParseError(line, "denominator must be positive in '" + tok + "'");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError(line, "bad rational '" + tok + "'");
    }
}

}  // namespace

const IsotropicSequence& ScenarioConfig::sequence(const std::string& name) const {
    for (const auto& s : sequences)
        if (s.name == name) return s;
    throw std::invalid_argument(cfg.name + ": unknown sequence " + name);
}

DivClass ScenarioConfig::resolve_guard(const AmbientModel& model) const {
    if (guard_class) return class_of(cfg, model, *guard_class);
    VecQ targets;
    if (guard_targets) {
        targets = *guard_targets;
    } else {
        targets = VecQ::Zero(model.n_curves);
        for (Index i = 0; i < model.n_curves; ++i) targets[i] = Rat(1);
    }
    return solve_curve_degrees(model, targets);
}

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig sc;
    // Named classes collected as coefficient vectors over (curves, gens) the
    // way the config builds them up; curves may be referenced before use only
    // inside `class` lines that combine earlier declarations.
    std::map<std::string, VecQ> pending_classes;  // over curves only
    struct PendingGen {
        std::string name;
        std::vector<std::pair<Rat, std::string>> terms;  // explicit
        std::vector<std::string> half_of;                // halfgen support
        int line = 0;
    };
    std::vector<PendingGen> pending_gens;
    struct PendingFiber {
        std::string name;
        std::vector<std::string> support;
        int line = 0;
    };
    std::vector<PendingFiber> pending_fibers;
    struct PendingClass {
        std::string name;
        std::vector<std::pair<Rat, std::string>> terms;
        int line = 0;
    };
    std::vector<PendingClass> pending_named;
    std::optional<std::vector<Rat>> guard_targets;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        auto expect_colon = [&](size_t pos) {
            if (pos >= toks.size() || toks[pos] != ":")
                throw ParseError(lineno, head + ": expected ':'");
        };
        if (head == "name") {
            if (toks.size() != 2) throw ParseError(lineno, "name: one identifier expected");
            sc.cfg.name = toks[1];
        } else if (head == "curve") {
            if (toks.size() < 2) throw ParseError(lineno, "curve: at least one name expected");
            for (size_t i = 1; i < toks.size(); ++i) sc.cfg.curves.push_back(toks[i]);
        } else if (head == "edge") {
            if (toks.size() != 4) throw ParseError(lineno, "edge: expected '<a> <b> <multiplicity>'");
            if (toks[1] == toks[2]) throw ParseError(lineno, "edge: self-loop at " + toks[1]);
            int mult = 0;
            try {
                mult = std::stoi(toks[3]);
            } catch (...) {
                throw ParseError(lineno, "edge: bad multiplicity '" + toks[3] + "'");
            }
            sc.cfg.edges.push_back({toks[1], toks[2], mult});
        } else if (head == "gen") {
            if (toks.size() < 5) throw ParseError(lineno, "gen: expected '<name> : <coef> <curve> ...'");
            expect_colon(2);
            PendingGen g;
            g.name = toks[1];
            g.line = lineno;
            if ((toks.size() - 3) % 2 != 0) throw ParseError(lineno, "gen: coefficient/name pairs expected");
            for (size_t i = 3; i + 1 < toks.size(); i += 2)
                g.terms.emplace_back(parse_rational(toks[i], lineno), toks[i + 1]);
            pending_gens.push_back(std::move(g));
        } else if (head == "halfgen") {
            if (toks.size() < 4) throw ParseError(lineno, "halfgen: expected '<name> : <curve> ...'");
            expect_colon(2);
            PendingGen g;
            g.name = toks[1];
            g.line = lineno;
            for (size_t i = 3; i < toks.size(); ++i) g.half_of.push_back(toks[i]);
            pending_gens.push_back(std::move(g));
        } else if (head == "fiber") {
            if (toks.size() < 4) throw ParseError(lineno, "fiber: expected '<name> : <curve> ...'");
            expect_colon(2);
            PendingFiber f;
            f.name = toks[1];
            f.line = lineno;
            for (size_t i = 3; i < toks.size(); ++i) f.support.push_back(toks[i]);
            pending_fibers.push_back(std::move(f));
        } else if (head == "class") {
            if (toks.size() < 5) throw ParseError(lineno, "class: expected '<name> : <coef> <ref> ...'");
            expect_colon(2);
            PendingClass c;
            c.name = toks[1];
            c.line = lineno;
            if ((toks.size() - 3) % 2 != 0) throw ParseError(lineno, "class: coefficient/name pairs expected");
            for (size_t i = 3; i + 1 < toks.size(); i += 2)
                c.terms.emplace_back(parse_rational(toks[i], lineno), toks[i + 1]);
            pending_named.push_back(std::move(c));
        } else if (head == "sequence") {
            if (toks.size() < 4) throw ParseError(lineno, "sequence: expected '<name> : <blocks>'");
            expect_colon(2);
            IsotropicSequence seq;
            seq.name = toks[1];
            SequenceBlock block;
            for (size_t i = 3; i < toks.size(); ++i) {
                if (toks[i] == ";") {
                    if (block.halffiber.empty()) throw ParseError(lineno, "sequence: empty block");
                    seq.blocks.push_back(block);
                    block = SequenceBlock{};
                } else if (block.halffiber.empty()) {
                    block.halffiber = toks[i];
                } else {
                    block.tail.push_back(toks[i]);
                }
            }
            if (block.halffiber.empty()) throw ParseError(lineno, "sequence: empty block");
            seq.blocks.push_back(block);
            sc.sequences.push_back(std::move(seq));
        } else if (head == "guard") {
            if (toks.size() < 3) throw ParseError(lineno, "guard: expected 'targets ...' or 'class <name>'");
            if (toks[1] == "targets") {
                std::vector<Rat> t;
                for (size_t i = 2; i < toks.size(); ++i) t.push_back(parse_rational(toks[i], lineno));
                guard_targets = std::move(t);
            } else if (toks[1] == "class") {
                if (toks.size() != 3) throw ParseError(lineno, "guard class: one name expected");
                sc.guard_class = toks[2];
            } else {
                throw ParseError(lineno, "guard: unknown form '" + toks[1] + "'");
            }
        } else {
            throw ParseError(lineno, "unknown directive '" + head + "'");
        }
    }

    const Index m = sc.cfg.n_curves();
    if (m == 0) throw ParseError(lineno, "no curves declared");
    try {
        // Curve-level validation first so diagnostics name the offending edge.
        CurveConfig probe = sc.cfg;
        probe.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }

    auto curve_vec = [&](const std::vector<std::pair<Rat, std::string>>& terms,
                         int at_line) {
        VecQ v = VecQ::Zero(m);
        for (const auto& [coef, nm] : terms) {
            bool found = false;
            for (Index i = 0; i < m; ++i)
                if (sc.cfg.curves[static_cast<size_t>(i)] == nm) {
                    v[i] += coef;
                    found = true;
                }
            if (!found) throw ParseError(at_line, "unknown curve '" + nm + "'");
        }
        return v;
    };

    // Computed fiber classes (null vectors of affine sub-diagrams).
    std::map<std::string, VecQ> curve_level;  // name -> coefficients over curves
    for (const auto& f : pending_fibers) {
        try {
            curve_level[f.name] = affine_null_class(sc.cfg, f.support);
        } catch (const std::exception& e) {
            throw ParseError(f.line, e.what());
        }
    }

    // Extra generators: explicit combinations or computed half null vectors.
    for (const auto& g : pending_gens) {
        VecQ coeffs;
        if (!g.half_of.empty()) {
            try {
                coeffs = affine_null_class(sc.cfg, g.half_of) / Rat(2);
            } catch (const std::exception& e) {
                throw ParseError(g.line, e.what());
            }
        } else {
            coeffs = curve_vec(g.terms, g.line);
        }
        sc.cfg.extra_generators.push_back({g.name, coeffs});
        curve_level[g.name] = coeffs;
    }

    // Named classes over anything declared so far (curves, fibers, gens,
    // earlier classes), stored over the generator list (curves + gens).
    const Index ngen = sc.cfg.n_generators();
    auto as_gen_vec = [&](const std::string& nm, int at_line) -> VecQ {
        VecQ v = VecQ::Zero(ngen);
        if (auto gi = sc.cfg.generator_index(nm)) {
            v[*gi] = Rat(1);
            return v;
        }
        auto it = sc.cfg.named_classes.find(nm);
        if (it != sc.cfg.named_classes.end()) return it->second;
        auto cl = curve_level.find(nm);
        if (cl != curve_level.end()) {
            for (Index i = 0; i < m; ++i) v[i] = cl->second[i];
            return v;
        }
        throw ParseError(at_line, "unknown name '" + nm + "'");
    };
    // Fibers become named classes as well.
    for (const auto& f : pending_fibers) {
        VecQ v = VecQ::Zero(ngen);
        for (Index i = 0; i < m; ++i) v[i] = curve_level[f.name][i];
        sc.cfg.named_classes[f.name] = v;
    }
    for (const auto& c : pending_named) {
        VecQ v = VecQ::Zero(ngen);
        for (const auto& [coef, nm] : c.terms) v += coef * as_gen_vec(nm, c.line);
        sc.cfg.named_classes[c.name] = v;
    }

    if (guard_targets) {
        if (static_cast<Index>(guard_targets->size()) != m)
            throw ParseError(lineno, "guard targets: one value per curve expected");
        VecQ t(m);
        for (Index i = 0; i < m; ++i) t[i] = (*guard_targets)[static_cast<size_t>(i)];
        sc.guard_targets = t;
    }
    return sc;
}

ScenarioConfig parse_config_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_config(ss);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

}  // namespace enrlat
