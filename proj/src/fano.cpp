#include "enrlat/fano.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace enrlat {

SequenceEntries expand_sequence(const CurveConfig& cfg, const AmbientModel& model,
                                const IsotropicSequence& seq) {
    SequenceEntries out;
    for (const auto& block : seq.blocks) {
        DivClass f = class_of(cfg, model, block.halffiber);
        out.halffibers.push_back(f);
        out.tails.push_back(block.tail);
        DivClass cur = f;
        out.entries.push_back(cur);
        for (const auto& r : block.tail) {
            cur += model.curve_class(cfg.curve_index(r));
            out.entries.push_back(cur);
        }
    }
    if (out.entries.size() != 10)
        throw std::invalid_argument(seq.name + ": decomposition has " +
                                    std::to_string(out.entries.size()) + " entries, expected 10");
    return out;
}

SequenceValidation validate_sequence(const CurveConfig& cfg, const AmbientModel& model,
                                     const IsotropicSequence& seq) {
    SequenceValidation v;
    v.degeneracy = seq.degeneracy();
    SequenceEntries se = expand_sequence(cfg, model, seq);
    const GramLattice& l = model.lattice;
    auto fail = [&](const std::string& msg) {
        v.valid = false;
        v.violations.push_back(msg);
    };

    const size_t c = seq.blocks.size();
    for (size_t i = 0; i < c; ++i) {
        const DivClass& f = se.halffibers[i];
        if (!is_integral(f)) fail(seq.blocks[i].halffiber + " is not integral");
        if (!pair(l, f, f).is_zero()) fail(seq.blocks[i].halffiber + " is not isotropic");
        if (is_integral(f) && !is_primitive(l, f)) fail(seq.blocks[i].halffiber + " is not primitive");
    }
    for (size_t i = 0; i < c; ++i)
        for (size_t j = i + 1; j < c; ++j) {
            Rat p = pair(l, se.halffibers[i], se.halffibers[j]);
            if (p != Rat(1))
                fail(seq.blocks[i].halffiber + "." + seq.blocks[j].halffiber + " = " + p.str() + ", expected 1");
        }

    // Tail chain adjacency and cross-tail orthogonality.
    for (size_t i = 0; i < c; ++i) {
        const auto& ti = seq.blocks[i].tail;
        for (size_t a = 0; a < ti.size(); ++a) {
            DivClass ra = model.curve_class(cfg.curve_index(ti[a]));
            for (size_t j = i; j < c; ++j) {
                const auto& tj = seq.blocks[j].tail;
                for (size_t b = (i == j ? a + 1 : 0); b < tj.size(); ++b) {
                    DivClass rb = model.curve_class(cfg.curve_index(tj[b]));
                    Rat p = pair(l, ra, rb);
                    Rat expect = (i == j && b == a + 1) ? Rat(1) : Rat(0);
                    if (p != expect)
                        fail(ti[a] + "." + tj[b] + " = " + p.str() + ", expected " + expect.str());
                }
            }
        }
    }

    // Half-fiber against tail curves: 1 on the root of its own tail, 0 else.
    for (size_t i = 0; i < c; ++i) {
        const DivClass& f = se.halffibers[i];
        for (size_t j = 0; j < c; ++j) {
            const auto& tj = seq.blocks[j].tail;
            for (size_t b = 0; b < tj.size(); ++b) {
                Rat p = pair(l, f, model.curve_class(cfg.curve_index(tj[b])));
                Rat expect = (i == j && b == 0) ? Rat(1) : Rat(0);
                if (p != expect)
                    fail(seq.blocks[i].halffiber + "." + tj[b] + " = " + p.str() + ", expected " + expect.str());
            }
        }
    }

    // The entry pairings E_i.E_j = 1 - delta_ij follow from the above but are
    // asserted directly as the defining contract.
    for (size_t i = 0; i < 10; ++i)
        for (size_t j = 0; j < 10; ++j) {
            Rat p = pair(l, se.entries[i], se.entries[j]);
            Rat expect = (i == j) ? Rat(0) : Rat(1);
            if (p != expect)
                fail("entry pairing (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                     p.str() + ", expected " + expect.str());
        }
    return v;
}

namespace {

// Reassemble the tail of each half-fiber from scratch: the curves orthogonal
// to H, chained by pairing 1, rooted at the half-fiber.
std::vector<std::vector<std::string>> assemble_tails(const CurveConfig& cfg, const AmbientModel& model,
                                                     const DivClass& h,
                                                     const std::vector<DivClass>& halffibers) {
    const GramLattice& l = model.lattice;
    std::vector<Index> orth;
    for (Index c = 0; c < model.n_curves; ++c)
        if (pair(l, h, model.curve_class(c)).is_zero()) orth.push_back(c);
    std::set<Index> used;
    std::vector<std::vector<std::string>> tails;
    for (const auto& f : halffibers) {
        std::vector<std::string> tail;
        // Root: the unique orthogonal curve meeting F once.
        Index cur = -1;
        for (Index c : orth) {
            if (used.count(c)) continue;
            if (pair(l, f, model.curve_class(c)) == Rat(1)) {
                if (cur >= 0) throw std::domain_error("tail assembly: root is not unique");
                cur = c;
            }
        }
        if (cur < 0) {
            tails.push_back(tail);
            continue;
        }
        used.insert(cur);
        tail.push_back(cfg.curves[static_cast<size_t>(cur)]);
        bool extended = true;
        while (extended) {
            extended = false;
            for (Index c : orth) {
                if (used.count(c)) continue;
                if (pair(l, model.curve_class(cur), model.curve_class(c)) == Rat(1) &&
                    pair(l, f, model.curve_class(c)).is_zero()) {
                    used.insert(c);
                    tail.push_back(cfg.curves[static_cast<size_t>(c)]);
                    cur = c;
                    extended = true;
                    break;
                }
            }
        }
        tails.push_back(tail);
    }
    return tails;
}

}  // namespace

FanoReport fano_from_sequence(const CurveConfig& cfg, const AmbientModel& model,
                              const IsotropicSequence& seq) {
    SequenceValidation v = validate_sequence(cfg, model, seq);
    if (!v.valid) throw std::invalid_argument(seq.name + ": sequence is not a valid 10-sequence");
    SequenceEntries se = expand_sequence(cfg, model, seq);
    const GramLattice& l = model.lattice;
    DivClass sum = VecQ::Zero(l.rank());
    for (const auto& e : se.entries) sum += e;
    auto h = divide_in_lattice(l, sum, 3);
    if (!h) throw std::domain_error(seq.name + ": entry sum is not 3-divisible");
    FanoReport report;
    report.h = *h;
    report.h_square_ten = pair(l, report.h, report.h) == Rat(10);
    if (!report.h_square_ten) throw std::domain_error(seq.name + ": H^2 != 10");
    report.nef = is_nef_against(model, report.h);
    PhiResult p = phi(l, report.h);
    report.phi_value = p.value;
    if (report.phi_value != 3)
        throw std::domain_error(seq.name + ": phi(H) = " + report.phi_value.get_str() + ", expected 3");
    report.is_fano = report.nef && report.h_square_ten && report.phi_value == 3;
    report.tails = assemble_tails(cfg, model, report.h, se.halffibers);
    report.tails_match_declaration = true;
    if (report.tails.size() == se.tails.size()) {
        for (size_t i = 0; i < report.tails.size(); ++i)
            if (report.tails[i] != se.tails[i]) report.tails_match_declaration = false;
    } else {
        report.tails_match_declaration = false;
    }
    // Every curve orthogonal to H must have been absorbed into some tail.
    size_t n_orth = 0;
    for (Index c = 0; c < model.n_curves; ++c)
        if (pair(l, report.h, model.curve_class(c)).is_zero()) ++n_orth;
    size_t n_tail = 0;
    for (const auto& t : report.tails) n_tail += t.size();
    if (n_orth != n_tail) report.tails_match_declaration = false;
    return report;
}

bool check_E_membership(const GramLattice& l, const DivClass& h, const DivClass& e) {
    if (!pair(l, e, e).is_zero())
        throw std::invalid_argument("check_E_membership: class is not isotropic");
    return pair(l, h, e) == Rat(3);
}

Rat square_from_pattern(const std::vector<Int>& v) {
    Int s = 0, sq = 0;
    for (const auto& x : v) {
        s += x;
        sq += x * x;
    }
    return Rat(s * s, 9) - Rat(sq);
}

PatternReport pattern_check(const GramLattice& l, const DivClass& h, const DivClass& r,
                            const SequenceEntries& entries) {
    if (pair(l, r, r) != Rat(-2))
        throw std::invalid_argument("pattern_check: R must be a (-2)-class");
    Rat hr = pair(l, h, r);
    if (hr != Rat(1) && hr != Rat(2))
        throw std::invalid_argument("pattern_check: H.R must be 1 or 2, got " + hr.str());
    PatternReport rep;
    for (const auto& e : entries.entries) {
        Rat p = pair(l, r, e);
        if (!p.is_integer()) throw std::domain_error("pattern_check: non-integral degree");
        rep.degrees.push_back(p.num());
    }
    std::sort(rep.degrees.begin(), rep.degrees.end(), [](const Int& a, const Int& b) { return a > b; });
    rep.square = square_from_pattern(rep.degrees);
    size_t ones = (hr == Rat(1)) ? 3 : 6;
    rep.matches = true;
    for (size_t i = 0; i < rep.degrees.size(); ++i) {
        Int expect = (i < ones) ? 1 : 0;
        if (rep.degrees[i] != expect) rep.matches = false;
    }
    return rep;
}

ReyeResult reye_criterion(const CurveConfig& cfg, const AmbientModel& model,
                          const IsotropicSequence& seq, const std::string& halffiber,
                          const std::vector<std::string>& generators,
                          const std::optional<DivClass>& guard) {
    FanoReport fano = fano_from_sequence(cfg, model, seq);
    if (!fano.is_fano) throw std::invalid_argument(seq.name + ": not a Fano polarization");
    SequenceEntries se = expand_sequence(cfg, model, seq);
    int block = -1;
    for (size_t i = 0; i < seq.blocks.size(); ++i)
        if (seq.blocks[i].halffiber == halffiber) block = static_cast<int>(i);
    if (block < 0) throw std::invalid_argument(seq.name + ": no block rooted at " + halffiber);

    const GramLattice& l = model.lattice;
    DivClass ft = se.halffibers[static_cast<size_t>(block)];
    for (const auto& r : seq.blocks[static_cast<size_t>(block)].tail)
        ft += model.curve_class(cfg.curve_index(r));
    if (!is_nef_against(model, fano.h - ft))
        throw std::invalid_argument(seq.name + ": declared tail of " + halffiber +
                                    " is not full (H - (F+T) is not nef)");

    ReyeResult out;
    out.divisor = fano.h - Rat(2) * ft;
    out.generator_names = generators;
    std::vector<DivClass> gens;
    bool curves_only = true;
    for (const auto& g : generators) {
        gens.push_back(class_of(cfg, model, g));
        bool is_curve = false;
        for (const auto& c : cfg.curves) is_curve |= (c == g);
        curves_only &= is_curve;
    }
    out.witness = cone_membership(l, out.divisor, gens, guard);
    if (out.witness && curves_only) {
        GramLattice cg = curve_gram(cfg);
        VecQ coeffs = VecQ::Zero(cfg.n_curves());
        for (size_t i = 0; i < generators.size(); ++i)
            coeffs[cfg.curve_index(generators[i])] += (*out.witness)[static_cast<Index>(i)];
        out.witness_negative_definite = is_negative_definite_divisor(cg, coeffs).negative_definite;
    }
    return out;
}

HatReport hat_transform(const GramLattice& l, const DivClass& h,
                        const std::array<DivClass, 3>& halffibers,
                        const std::array<DivClass, 3>& full_entries,
                        const std::vector<DivClass>& generators,
                        const std::optional<DivClass>& guard) {
    DivClass naked = h;
    for (const auto& f : halffibers) naked -= f;
    if (auto w = cone_membership(l, naked, generators, guard); w.has_value())
        throw std::invalid_argument(
            "hat_transform: H - F1 - F2 - F3 is effective over the declared generators; "
            "use H directly");
    HatReport rep;
    rep.nef = true;  // no curve list in the plain-lattice variant
    rep.hat_h = Rat(2) * h;
    for (const auto& e : full_entries) rep.hat_h -= e;
    rep.hat_h_square = pair(l, rep.hat_h, rep.hat_h);
    rep.h_dot_hat_h = pair(l, h, rep.hat_h);
    if (rep.hat_h_square != Rat(10)) throw std::domain_error("hat_transform: hat H squared != 10");
    if (rep.h_dot_hat_h != Rat(11)) throw std::domain_error("hat_transform: H.hat H != 11");
    PhiResult p = phi(l, rep.hat_h);
    rep.phi_value = p.value;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        DivClass e = h - full_entries[static_cast<size_t>(j)] - full_entries[static_cast<size_t>(k)];
        rep.inherited.push_back(e);
        rep.inherited_squares.push_back(pair(l, e, e));
        rep.inherited_degrees.push_back(pair(l, rep.hat_h, e));
    }
    return rep;
}

HatReport hat_transform(const CurveConfig& cfg, const AmbientModel& model,
                        const IsotropicSequence& seq, const std::array<int, 3>& block_ids,
                        const std::vector<std::string>& generators,
                        const std::optional<DivClass>& guard) {
    FanoReport fano = fano_from_sequence(cfg, model, seq);
    if (!fano.is_fano) throw std::invalid_argument(seq.name + ": not a Fano polarization");
    SequenceEntries se = expand_sequence(cfg, model, seq);
    std::array<DivClass, 3> fs, fts;
    for (int i = 0; i < 3; ++i) {
        int b = block_ids[static_cast<size_t>(i)];
        if (b < 0 || b >= static_cast<int>(seq.blocks.size()))
            throw std::invalid_argument("hat_transform: block index out of range");
        fs[static_cast<size_t>(i)] = se.halffibers[static_cast<size_t>(b)];
        DivClass ft = se.halffibers[static_cast<size_t>(b)];
        for (const auto& r : seq.blocks[static_cast<size_t>(b)].tail)
            ft += model.curve_class(cfg.curve_index(r));
        if (!is_nef_against(model, fano.h - ft))
            throw std::invalid_argument("hat_transform: tail of block " + std::to_string(b) + " is not full");
        fts[static_cast<size_t>(i)] = ft;
    }
    std::vector<DivClass> gens;
    for (const auto& g : generators) gens.push_back(class_of(cfg, model, g));
    HatReport rep = hat_transform(model.lattice, fano.h, fs, fts, gens, guard);
    rep.nef = is_nef_against(model, rep.hat_h);
    return rep;
}

std::optional<VecQ> special_triple_check(const GramLattice& l, const DivClass& f1,
                                         const DivClass& f2, const DivClass& f3,
                                         const std::vector<DivClass>& generators,
                                         const std::optional<DivClass>& guard) {
    const std::array<const DivClass*, 3> fs = {&f1, &f2, &f3};
    for (int i = 0; i < 3; ++i) {
        if (!is_integral(*fs[static_cast<size_t>(i)]))
            throw std::invalid_argument("special_triple_check: classes must be integral");
        if (!pair(l, *fs[static_cast<size_t>(i)], *fs[static_cast<size_t>(i)]).is_zero())
            throw std::invalid_argument("special_triple_check: classes must be isotropic");
        if (!is_primitive(l, *fs[static_cast<size_t>(i)]))
            throw std::invalid_argument("special_triple_check: classes must be primitive");
        for (int j = i + 1; j < 3; ++j)
            if (pair(l, *fs[static_cast<size_t>(i)], *fs[static_cast<size_t>(j)]) != Rat(1))
                throw std::invalid_argument("special_triple_check: pairwise products must be 1");
    }
    return cone_membership(l, f2 + f3 - f1, generators, guard);
}

}  // namespace enrlat
