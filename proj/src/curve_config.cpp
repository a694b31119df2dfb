#include "enrlat/curve_config.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace enrlat {

Index CurveConfig::curve_index(const std::string& nm) const {
    for (Index i = 0; i < n_curves(); ++i)
        if (curves[static_cast<size_t>(i)] == nm) return i;
    throw std::invalid_argument("unknown curve: " + nm);
}

std::optional<Index> CurveConfig::generator_index(const std::string& nm) const {
    for (Index i = 0; i < n_curves(); ++i)
        if (curves[static_cast<size_t>(i)] == nm) return i;
    for (size_t k = 0; k < extra_generators.size(); ++k)
        if (extra_generators[k].name == nm) return n_curves() + static_cast<Index>(k);
    return std::nullopt;
}

void CurveConfig::validate() const {
    if (curves.empty()) throw std::invalid_argument(name + ": no curves");
    std::set<std::string> seen;
    for (const auto& c : curves)
        if (!seen.insert(c).second) throw std::invalid_argument(name + ": duplicate curve name " + c);
    for (const auto& g : extra_generators) {
        if (!seen.insert(g.name).second)
            throw std::invalid_argument(name + ": generator name collides: " + g.name);
        if (g.coeffs.size() != n_curves())
            throw std::invalid_argument(name + ": generator " + g.name + " has wrong length");
    }
    for (const auto& e : edges) {
        if (e.a == e.b) throw std::invalid_argument(name + ": self-loop at " + e.a);
        curve_index(e.a);
        curve_index(e.b);
        if (e.multiplicity < 1) throw std::invalid_argument(name + ": bad edge multiplicity");
    }
}

GramLattice curve_gram(const CurveConfig& cfg) {
    cfg.validate();
    const Index n = cfg.n_curves();
    GramLattice l;
    l.basis_names = cfg.curves;
    l.gram = MatQ::Zero(n, n);
    for (Index i = 0; i < n; ++i) l.gram(i, i) = Rat(-2);
    for (const auto& e : cfg.edges) {
        Index i = cfg.curve_index(e.a), j = cfg.curve_index(e.b);
        l.gram(i, j) += Rat(e.multiplicity);
        l.gram(j, i) += Rat(e.multiplicity);
    }
    return l;
}

VecQ affine_null_class(const CurveConfig& cfg, const std::vector<std::string>& support) {
    GramLattice cg = curve_gram(cfg);
    const Index s = static_cast<Index>(support.size());
    MatQ sub(s, s);
    std::vector<Index> ids;
    for (const auto& nm : support) ids.push_back(cfg.curve_index(nm));
    for (Index i = 0; i < s; ++i)
        for (Index j = 0; j < s; ++j) sub(i, j) = cg.gram(ids[static_cast<size_t>(i)], ids[static_cast<size_t>(j)]);
    auto ker = kernel_basis(sub);
    if (ker.size() != 1)
        throw std::invalid_argument(cfg.name + ": sub-diagram kernel is not one-dimensional");
    VecQ v = ker[0];
    Int lcm = 1;
    for (Index i = 0; i < s; ++i) {
        Int d = v[i].den();
        lcm = lcm / gcd_int(lcm, d) * d;
    }
    for (Index i = 0; i < s; ++i) v[i] *= Rat(lcm);
    Int g = content(v);
    for (Index i = 0; i < s; ++i) v[i] = Rat(Int(v[i].num() / g));
    int pos = 0, neg = 0;
    for (Index i = 0; i < s; ++i) {
        if (v[i].sign() > 0) ++pos;
        if (v[i].sign() < 0) ++neg;
    }
    if (neg > pos)
        for (Index i = 0; i < s; ++i) v[i] = -v[i];
    for (Index i = 0; i < s; ++i)
        if (v[i].sign() <= 0)
            throw std::invalid_argument(cfg.name + ": null vector not strictly positive on the support");
    VecQ full = VecQ::Zero(cfg.n_curves());
    for (Index i = 0; i < s; ++i) full[ids[static_cast<size_t>(i)]] = v[i];
    return full;
}

namespace {

// Reduction mod the radical of the curve Gram: kernel pivots eliminated, the
// complementary "free" coordinates kept. The restricted Gram on the free
// coordinates is automatically nonsingular.
struct RadicalQuotient {
    std::vector<Index> free_cols;
    MatQ kernel_rref;            // rows in rref, one per kernel pivot
    std::vector<Index> kernel_pivots;
    MatQ gram_free;

    VecQ reduce(const VecQ& x) const {
        VecQ y = x;
        for (size_t k = 0; k < kernel_pivots.size(); ++k) {
            Index c = kernel_pivots[k];
            Rat f = y[c];
            if (!f.is_zero())
                for (Index j = 0; j < y.size(); ++j) y[j] -= f * kernel_rref(static_cast<Index>(k), j);
        }
        VecQ out(static_cast<Index>(free_cols.size()));
        for (size_t i = 0; i < free_cols.size(); ++i) out[static_cast<Index>(i)] = y[free_cols[i]];
        return out;
    }
};

RadicalQuotient radical_quotient(const MatQ& gram) {
    RadicalQuotient q;
    auto ker = kernel_basis(gram);
    const Index m = gram.rows();
    if (ker.empty()) {
        q.kernel_rref = MatQ::Zero(0, m);
        for (Index i = 0; i < m; ++i) q.free_cols.push_back(i);
    } else {
        MatQ kerm(static_cast<Index>(ker.size()), m);
        for (size_t i = 0; i < ker.size(); ++i) kerm.row(static_cast<Index>(i)) = ker[i].transpose();
        q.kernel_rref = rref(kerm, &q.kernel_pivots);
        std::set<Index> pivset(q.kernel_pivots.begin(), q.kernel_pivots.end());
        for (Index i = 0; i < m; ++i)
            if (!pivset.count(i)) q.free_cols.push_back(i);
    }
    const Index r = static_cast<Index>(q.free_cols.size());
    q.gram_free = MatQ(r, r);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) q.gram_free(i, j) = gram(q.free_cols[static_cast<size_t>(i)], q.free_cols[static_cast<size_t>(j)]);
    return q;
}

MatQ scale_to_integral_rows(const std::vector<VecQ>& rows, Int* lcm_out) {
    Int lcm = 1;
    for (const auto& v : rows)
        for (Index i = 0; i < v.size(); ++i) {
            Int d = v[i].den();
            lcm = lcm / gcd_int(lcm, d) * d;
        }
    MatQ m(static_cast<Index>(rows.size()), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (Index j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), j) = rows[i][j] * Rat(lcm);
    if (lcm_out) *lcm_out = lcm;
    return m;
}

// One pass of even saturation: enlarge the lattice with basis rows `b` (over
// the free coordinates, Gram `gf`) by every discriminant class of even
// square, provided those classes pair integrally with one another. Returns
// true when the basis grew.
bool glue_even_overlattice(MatQ& b, const MatQ& gf) {
    const Index r = b.rows();
    MatQ gb(r, r);
    {
        MatQ tmp = b * gf;
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < r; ++j) {
                Rat acc(0);
                for (Index k = 0; k < gf.cols(); ++k) acc += tmp(i, k) * b(j, k);
                gb(i, j) = acc;
            }
    }
    Rat dd = determinant(gb);
    if (dd.is_zero()) throw std::domain_error("saturation: degenerate lattice");
    Int order = abs(dd.num());
    if (order == 1) return false;
    if (order > 100000) throw std::domain_error("saturation: discriminant group too large");
    // Even-square glue is only class-invariant on even lattices; odd lattices
    // are left as generated.
    for (Index i = 0; i < r; ++i) {
        Int diag = gb(i, i).num();
        if (mpz_odd_p(diag.get_mpz_t())) return false;
    }
    // Representatives of the discriminant group via Smith form of the Gram:
    // Z^r / gb Z^r with coset representatives u^{-1} * (residue vector).
    SmithResult sm = smith_normal_form(gb);
    MatQ uinv = inverse(sm.u);
    MatQ gbi = inverse(gb);
    std::vector<VecQ> glue;
    std::vector<Int> divs;
    for (Index i = 0; i < r; ++i) divs.push_back(abs(sm.d(i, i).num()));
    std::vector<Int> idx(static_cast<size_t>(r), Int(0));
    while (true) {
        bool nonzero = false;
        for (const auto& t : idx)
            if (t != 0) nonzero = true;
        if (nonzero) {
            VecQ kvec(r);
            for (Index i = 0; i < r; ++i) kvec[i] = Rat(idx[static_cast<size_t>(i)]);
            VecQ k = uinv * kvec;
            VecQ x = gbi * k;  // element of the dual, in basis coordinates
            VecQ frac(r);
            bool trivial = true;
            for (Index i = 0; i < r; ++i) {
                Int num = x[i].num(), den = x[i].den();
                Int rm;
                mpz_fdiv_r(rm.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                frac[i] = Rat(rm, den);
                if (!frac[i].is_zero()) trivial = false;
            }
            if (!trivial) {
                Rat q(0);
                for (Index i = 0; i < r; ++i)
                    for (Index j = 0; j < r; ++j) q += frac[i] * gb(i, j) * frac[j];
                // even square means q = 0 in Q / 2Z
                Rat q2 = q / Rat(2);
                if (q2.is_integer()) glue.push_back(frac);
            }
        }
        // odometer over the elementary divisor boxes
        Index pos = 0;
        while (pos < r) {
            idx[static_cast<size_t>(pos)] += 1;
            if (idx[static_cast<size_t>(pos)] < divs[static_cast<size_t>(pos)]) break;
            idx[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == r) break;
    }
    if (glue.empty()) return false;
    for (size_t i = 0; i < glue.size(); ++i)
        for (size_t j = 0; j < glue.size(); ++j) {
            Rat bij(0);
            for (Index a = 0; a < r; ++a)
                for (Index c = 0; c < r; ++c) bij += glue[i][a] * gb(a, c) * glue[j][c];
            if (!bij.is_integer())
                throw std::domain_error(
                    "saturation is ambiguous: even overlattice classes pair non-integrally; "
                    "declare the intended half-classes as extra generators");
        }
    std::vector<VecQ> rows;
    for (Index i = 0; i < r; ++i) rows.push_back(b.row(i).transpose());
    for (const auto& g : glue) {
        VecQ row = VecQ::Zero(b.cols());
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < b.cols(); ++j) row[j] += g[i] * b(i, j);
        rows.push_back(row);
    }
    Int lcm = 1;
    MatQ stacked = scale_to_integral_rows(rows, &lcm);
    MatQ h = hnf_rows(stacked);
    if (h.rows() != r) throw std::domain_error("saturation: rank changed");
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < b.cols(); ++j) b(i, j) = h(i, j) / Rat(lcm);
    return true;
}

}  // namespace

AmbientModel build_ambient(const CurveConfig& cfg) {
    cfg.validate();
    GramLattice cg = curve_gram(cfg);
    const Index m = cfg.n_curves();
    const Index ngen = cfg.n_generators();

    // Generators as coefficient vectors over the curves.
    std::vector<VecQ> gens;
    for (Index i = 0; i < m; ++i) {
        VecQ e = VecQ::Zero(m);
        e[i] = Rat(1);
        gens.push_back(e);
    }
    for (const auto& g : cfg.extra_generators) gens.push_back(g.coeffs);

    // Half-classes must pair integrally with every curve.
    for (const auto& g : cfg.extra_generators) {
        VecQ p = cg.gram * g.coeffs;
        for (Index i = 0; i < m; ++i)
            if (!p[i].is_integer())
                throw std::invalid_argument(cfg.name + ": generator " + g.name +
                                            " pairs non-integrally with curve " + cfg.curves[static_cast<size_t>(i)]);
    }

    RadicalQuotient q = radical_quotient(cg.gram);
    const Index r = static_cast<Index>(q.free_cols.size());

    std::vector<VecQ> images;
    for (const auto& g : gens) images.push_back(q.reduce(g));
    Int lcm = 1;
    MatQ stacked = scale_to_integral_rows(images, &lcm);
    MatQ basis = hnf_rows(stacked);
    if (basis.rows() != r)
        throw std::domain_error(cfg.name + ": generators do not span the nondegenerate quotient");
    MatQ b(r, r);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) b(i, j) = basis(i, j) / Rat(lcm);

    while (glue_even_overlattice(b, q.gram_free)) {}

    AmbientModel model;
    model.n_curves = m;
    model.generator_names = cfg.curves;
    for (const auto& g : cfg.extra_generators) model.generator_names.push_back(g.name);

    MatQ gb(r, r);
    MatQ tmp = b * q.gram_free;
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) {
            Rat acc(0);
            for (Index k = 0; k < r; ++k) acc += tmp(i, k) * b(j, k);
            gb(i, j) = acc;
        }
    model.lattice.gram = gb;
    for (Index i = 0; i < r; ++i) model.lattice.basis_names.push_back("b" + std::to_string(i + 1));
    model.lattice.validate();

    MatQ binv = inverse(b);
    model.embed = MatQ(r, ngen);
    for (Index g = 0; g < ngen; ++g) {
        // coordinates a with a^T b = image^T, i.e. a = b^{-T} image
        VecQ img = images[static_cast<size_t>(g)];
        VecQ a = binv.transpose() * img;
        model.embed.col(g) = a;
        if (!is_integral(a))
            throw std::domain_error(cfg.name + ": generator " + model.generator_names[static_cast<size_t>(g)] +
                                    " is not integral in the ambient lattice");
    }

    // Pairings must be carried over exactly.
    for (Index i = 0; i < ngen; ++i)
        for (Index j = 0; j < ngen; ++j) {
            Rat expect(0);
            for (Index a = 0; a < m; ++a)
                for (Index c = 0; c < m; ++c) expect += gens[static_cast<size_t>(i)][a] * cg.gram(a, c) * gens[static_cast<size_t>(j)][c];
            Rat got = pair(model.lattice, model.embed.col(i), model.embed.col(j));
            if (expect != got) throw std::domain_error(cfg.name + ": ambient embedding does not preserve pairings");
        }
    return model;
}

DivClass AmbientModel::to_ambient(const VecQ& coeffs) const {
    if (coeffs.size() != embed.cols()) throw std::invalid_argument("to_ambient: coefficient length mismatch");
    return embed * coeffs;
}

DivClass class_of(const CurveConfig& cfg, const AmbientModel& model, const std::string& name) {
    if (auto gi = cfg.generator_index(name)) return model.embed.col(*gi);
    auto it = cfg.named_classes.find(name);
    if (it == cfg.named_classes.end()) throw std::invalid_argument(cfg.name + ": unknown class " + name);
    return model.to_ambient(it->second);
}

DivClass solve_curve_degrees(const AmbientModel& model, const VecQ& targets) {
    const Index r = model.lattice.rank();
    const Index m = model.n_curves;
    if (targets.size() != m) throw std::invalid_argument("solve_curve_degrees: one target per curve required");
    MatQ rows(m, r);
    for (Index c = 0; c < m; ++c) rows.row(c) = (model.lattice.gram * model.embed.col(c)).transpose();
    auto sol = solve_linear(rows, targets);
    if (!sol)
        throw std::invalid_argument("solve_curve_degrees: targets inconsistent with curve relations");
    return *sol;
}

}  // namespace enrlat
