#include "enrlat/divisor.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace enrlat {

bool is_nef_against(const AmbientModel& model, const DivClass& d) {
    for (Index c = 0; c < model.n_curves; ++c)
        if (pair(model.lattice, d, model.curve_class(c)).sign() < 0) return false;
    return true;
}

ReductionTrace weyl_reduce(const AmbientModel& model, const DivClass& d, const DivClass& guard) {
    if (!is_integral(d)) throw std::invalid_argument("weyl_reduce: class must be integral");
    if (pair(model.lattice, d, d).sign() < 0)
        throw std::invalid_argument("weyl_reduce: class must have non-negative square");
    for (Index c = 0; c < model.n_curves; ++c)
        if (pair(model.lattice, guard, model.curve_class(c)).sign() <= 0)
            throw std::invalid_argument("weyl_reduce: guard does not pair positively with every curve");
    if (pair(model.lattice, d, guard).sign() <= 0)
        throw std::invalid_argument("weyl_reduce: class does not pair positively with the guard");

    ReductionTrace trace;
    trace.result = d;
    Rat degree = pair(model.lattice, trace.result, guard);
    while (true) {
        Index worst = -1;
        Rat worst_pairing(0);
        for (Index c = 0; c < model.n_curves; ++c) {
            Rat p = pair(model.lattice, trace.result, model.curve_class(c));
            if (p.sign() < 0 && (worst < 0 || p < worst_pairing)) {
                worst = c;
                worst_pairing = p;
            }
        }
        if (worst < 0) break;
        const std::string& name = model.generator_names[static_cast<size_t>(worst)];
        trace.steps.push_back({name, worst_pairing});
        trace.result += worst_pairing * model.curve_class(worst);
        trace.multiplicities[name] += -worst_pairing.num();
        Rat next_degree = pair(model.lattice, trace.result, guard);
        if (!(next_degree < degree))
            throw std::runtime_error("weyl_reduce: guard degree failed to decrease (invalid input)");
        degree = next_degree;
    }
    return trace;
}

namespace {

// Extended gcd over the entries of an integral vector: g = gcd(v) together
// with u such that v . u = g.
Int vector_gcd_combination(const VecQ& v, VecQ& u) {
    const Index n = v.size();
    u = VecQ::Zero(n);
    Int cur = 0;
    for (Index i = 0; i < n; ++i) {
        Int a = v[i].num();
        if (a == 0) continue;
        if (cur == 0) {
            cur = abs(a);
            u[i] = Rat(a > 0 ? 1 : -1);
        } else {
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cur.get_mpz_t(), a.get_mpz_t());
            for (Index k = 0; k < n; ++k) u[k] *= Rat(s);
            u[i] += Rat(t);
            cur = g;
        }
    }
    return cur;
}

// Integer points y with (y - center)^T a (y - center) == value, a positive
// definite. Exact depth-first interval enumeration on the LDL^T form.
void enum_ellipsoid_equal(const MatQ& a, const VecQ& center, const Rat& value,
                          const std::function<void(const VecQ&)>& emit) {
    const Index n = a.rows();
    if (n == 0) {
        if (value.is_zero()) emit(VecQ::Zero(0));
        return;
    }
    LdltResult f = ldlt_posdef(a);
    VecQ y = VecQ::Zero(n);
    std::function<void(Index, const Rat&)> rec = [&](Index i, const Rat& rem) {
        if (i < 0) {
            if (rem.is_zero()) emit(y);
            return;
        }
        // z = center_i - sum_{j>i} mu(i,j) (y_j - center_j)
        Rat z = center[i];
        for (Index j = i + 1; j < n; ++j)
            if (!f.mu(i, j).is_zero()) z -= f.mu(i, j) * (y[j] - center[j]);
        const Rat& di = f.d[static_cast<size_t>(i)];
        Rat bound = rem / di;
        Int s = isqrt_floor(bound);
        Int lo = (z - Rat(s)).ceil() - 1;
        Int hi = (z + Rat(s)).floor() + 1;
        for (Int k = lo; k <= hi; k += 1) {
            Rat diff = Rat(k) - z;
            Rat used = di * diff * diff;
            if (used <= rem) {
                y[i] = Rat(k);
                rec(i - 1, rem - used);
            }
        }
        y[i] = Rat(0);
    };
    rec(n - 1, value);
}

}  // namespace

IsotropicSlice enumerate_isotropic_slice(const GramLattice& l, const DivClass& h, const Int& t) {
    if (t <= 0) throw std::invalid_argument("enumerate_isotropic_slice: degree must be positive");
    if (!is_integral(h)) throw std::invalid_argument("enumerate_isotropic_slice: H must be integral");
    Rat h2 = pair(l, h, h);
    if (h2.sign() <= 0) throw std::invalid_argument("enumerate_isotropic_slice: H^2 must be positive");

    IsotropicSlice slice;
    slice.degree = t;

    const Index n = l.rank();
    VecQ sh = l.gram * h;  // integral
    VecQ u;
    Int g = vector_gcd_combination(sh, u);
    if (g == 0) throw std::domain_error("enumerate_isotropic_slice: degenerate model");
    Int rem;
    mpz_fdiv_r(rem.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t());
    if (rem != 0) return slice;  // degree not attained by any lattice class

    VecQ f0 = u * Rat(Int(t / g));

    // Integer basis of the orthogonal complement of H.
    MatQ shrow(1, n);
    shrow.row(0) = sh.transpose();
    std::vector<VecQ> kb = integer_kernel(shrow);
    const Index kd = static_cast<Index>(kb.size());

    if (kd == 0) {
        Rat sq = pair(l, f0, f0);
        if (sq.is_zero() && content(f0) == 1) slice.classes.push_back(f0);
        return slice;
    }

    MatQ k(n, kd);
    for (Index j = 0; j < kd; ++j) k.col(j) = kb[static_cast<size_t>(j)];

    // Positive definite Gram of the complement; LLL-reduce to keep the
    // enumeration intervals tight.
    MatQ gk(kd, kd);
    {
        MatQ gkcols = l.gram * k;
        for (Index i = 0; i < kd; ++i)
            for (Index j = 0; j < kd; ++j) {
                Rat acc(0);
                for (Index r = 0; r < n; ++r) acc += k(r, i) * gkcols(r, j);
                gk(i, j) = -acc;
            }
    }
    LllResult red = lll_reduce_gram(gk);
    MatQ kred = k * red.t.transpose();  // columns = reduced kernel basis in lattice coords

    // F = F0 + kred y ; F^2 = 0 becomes (y + c)^T A (y + c) = rho with A the
    // reduced positive definite Gram.
    VecQ b(kd);
    {
        VecQ gf0 = l.gram * f0;
        for (Index j = 0; j < kd; ++j) {
            Rat acc(0);
            for (Index r = 0; r < n; ++r) acc += kred(r, j) * gf0[r];
            b[j] = -acc;
        }
    }
    Rat c0 = -pair(l, f0, f0);
    MatQ ai = inverse(red.gram);
    VecQ center = -(ai * b);
    Rat rho(0);
    for (Index i = 0; i < kd; ++i)
        for (Index j = 0; j < kd; ++j) rho += b[i] * ai(i, j) * b[j];
    rho -= c0;
    if (rho.sign() < 0) return slice;

    enum_ellipsoid_equal(red.gram, center, rho, [&](const VecQ& y) {
        VecQ f = f0 + kred * y;
        if (content(f) == 1) slice.classes.push_back(f);
    });

    std::sort(slice.classes.begin(), slice.classes.end(), [](const VecQ& x, const VecQ& y) {
        for (Index i = 0; i < x.size(); ++i) {
            if (x[i] != y[i]) return x[i] < y[i];
        }
        return false;
    });
    return slice;
}

PhiResult phi(const GramLattice& l, const DivClass& h) {
    Rat h2 = pair(l, h, h);
    if (h2.sign() <= 0) throw std::invalid_argument("phi: H^2 must be positive");
    if (!is_integral(h)) throw std::invalid_argument("phi: H must be integral");
    Int bound = isqrt_floor(h2);
    PhiResult out;
    out.value = 0;
    Int first_nonempty = 0;
    for (Int t = 1; t <= bound; t += 1) {
        IsotropicSlice s = enumerate_isotropic_slice(l, h, t);
        if (!s.classes.empty()) {
            if (first_nonempty == 0) first_nonempty = t;
            if (out.value == 0 || t < out.value) {
                out.value = t;
                out.witness = s.classes.front();
            }
        }
        out.slices.push_back(std::move(s));
    }
    if (out.value == 0)
        throw std::domain_error("phi: no isotropic class found up to floor(sqrt(H^2)); "
                                "the model is not a hyperbolic even unimodular lattice");
    if (out.value != first_nonempty)
        throw std::logic_error("phi: minimum disagrees with first nonempty slice");
    return out;
}

PhiResult phi(const AmbientModel& model, const DivClass& h) {
    if (!is_nef_against(model, h))
        throw std::invalid_argument("phi: class is not nef against the configuration");
    return phi(model.lattice, h);
}

namespace {

// Exhaustive coefficient-box search with interval pruning; finds a vector
// 0 <= a <= c, a != 0, with q(a) >= 0 if one exists. Values are tracked in
// exact integers throughout.
struct BoxSearch {
    const MatQ& gram;
    std::vector<Int> cap;
    Index n;
    std::vector<Int> a;
    std::vector<Int> grad;  // (gram * a) for the fixed prefix
    std::optional<std::pair<std::vector<Int>, Int>> hit;

    BoxSearch(const MatQ& g, const std::vector<Int>& c)
        : gram(g), cap(c), n(g.rows()), a(static_cast<size_t>(g.rows()), Int(0)),
          grad(static_cast<size_t>(g.rows()), Int(0)) {}

    Int gij(Index i, Index j) const { return gram(i, j).num(); }

    // Upper bound for q over the subtree with coordinates < k fixed:
    //   q(a) = q_fixed + sum_{j>=k} (2 a_j grad_j + g_jj a_j^2)
    //        + 2 sum_{k<=j<l} g_jl a_j a_l
    // each free term maximised independently over its box.
    Int upper_bound(Index k, const Int& qfixed) const {
        Int ub = qfixed;
        for (Index j = k; j < n; ++j) {
            const Int& cj = cap[static_cast<size_t>(j)];
            if (cj == 0) continue;
            Int gjj = gij(j, j);
            Int best = 0;  // a_j = 0 admissible
            // maximise 2 s a + g a^2 over integers [0, c]: endpoints plus, for
            // the concave case, the two integers around the parabola vertex.
            auto eval = [&](const Int& t) -> Int { return 2 * grad[static_cast<size_t>(j)] * t + gjj * t * t; };
            std::vector<Int> cands = {Int(0), cj};
            if (gjj < 0) {
                Int v;  // floor(s / -g)
                Int num = grad[static_cast<size_t>(j)];
                Int den = -gjj;
                mpz_fdiv_q(v.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (v >= 0 && v <= cj) cands.push_back(v);
                Int v1 = v + 1;
                if (v1 >= 0 && v1 <= cj) cands.push_back(v1);
            }
            for (const auto& t : cands) {
                Int val = eval(t);
                if (val > best) best = val;
            }
            ub += best;
            for (Index l = j + 1; l < n; ++l) {
                Int gjl = gij(j, l);
                if (gjl > 0) ub += 2 * gjl * cj * cap[static_cast<size_t>(l)];
            }
        }
        return ub;
    }

    void rec(Index k, const Int& qfixed) {
        if (hit) return;
        if (k == n) {
            bool zero = true;
            for (const auto& t : a)
                if (t != 0) { zero = false; break; }
            if (!zero && qfixed >= 0) hit = std::make_pair(a, qfixed);
            return;
        }
        if (upper_bound(k, qfixed) < 0) return;  // every completion stays negative
        const Int ck = cap[static_cast<size_t>(k)];
        for (Int t = 0; t <= ck; t += 1) {
            a[static_cast<size_t>(k)] = t;
            Int q2 = qfixed + 2 * grad[static_cast<size_t>(k)] * t + gij(k, k) * t * t;
            for (Index j = 0; j < n; ++j) grad[static_cast<size_t>(j)] += gij(j, k) * t;
            rec(k + 1, q2);
            for (Index j = 0; j < n; ++j) grad[static_cast<size_t>(j)] -= gij(j, k) * t;
            if (hit) { a[static_cast<size_t>(k)] = 0; return; }
        }
        a[static_cast<size_t>(k)] = 0;
    }
};

}  // namespace

NegDefResult is_negative_definite_divisor(const GramLattice& curve_lattice, const VecQ& coeffs) {
    const Index n = curve_lattice.rank();
    if (coeffs.size() != n) throw std::invalid_argument("is_negative_definite_divisor: dimension mismatch");
    std::vector<Int> cap;
    std::vector<Index> support;
    for (Index i = 0; i < n; ++i) {
        if (!coeffs[i].is_integer() || coeffs[i].sign() < 0)
            throw std::invalid_argument("is_negative_definite_divisor: coefficients must be non-negative integers");
        cap.push_back(coeffs[i].num());
        if (coeffs[i].sign() > 0) support.push_back(i);
    }
    NegDefResult out;
    if (support.empty()) return out;  // zero divisor has no nonzero sub-divisor

    // Fast path: negative definite support Gram settles every sub-divisor.
    MatQ sub(static_cast<Index>(support.size()), static_cast<Index>(support.size()));
    for (size_t i = 0; i < support.size(); ++i)
        for (size_t j = 0; j < support.size(); ++j)
            sub(static_cast<Index>(i), static_cast<Index>(j)) = curve_lattice.gram(support[i], support[j]);
    if (is_negative_definite(sub)) return out;

    MatQ g(static_cast<Index>(support.size()), static_cast<Index>(support.size()));
    g = sub;
    std::vector<Int> caps;
    for (Index i : support) caps.push_back(coeffs[i].num());
    BoxSearch search(g, caps);
    search.rec(0, Int(0));
    if (search.hit) {
        out.negative_definite = false;
        out.witness = VecQ::Zero(n);
        for (size_t i = 0; i < support.size(); ++i) out.witness[support[i]] = Rat(search.hit->first[i]);
        out.witness_square = Rat(search.hit->second);
    }
    return out;
}

std::optional<VecQ> cone_membership(const GramLattice& l, const DivClass& d,
                                    const std::vector<DivClass>& gens,
                                    const std::optional<DivClass>& guard) {
    const Index n = l.rank();
    const Index k = static_cast<Index>(gens.size());
    if (d.size() != n) throw std::invalid_argument("cone_membership: dimension mismatch");
    for (const auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("cone_membership: generator dimension mismatch");
    if (k == 0) {
        if (is_zero(d)) return VecQ::Zero(0);
        return std::nullopt;
    }

    MatQ a(n, k);
    for (Index j = 0; j < k; ++j) a.col(j) = gens[static_cast<size_t>(j)];
    auto particular = solve_linear(a, d);
    if (!particular) return std::nullopt;
    auto ker = kernel_basis(a);

    if (ker.empty()) {
        const VecQ& sol = *particular;
        for (Index i = 0; i < k; ++i)
            if (!sol[i].is_integer() || sol[i].sign() < 0) return std::nullopt;
        return sol;
    }

    // Dependent generators: bounded search, coefficients capped by the guard
    // degree of the remainder. Once the unfixed suffix is linearly
    // independent the search collapses to an exact solve.
    if (!guard) throw std::invalid_argument("cone_membership: dependent generators require a guard class");
    std::vector<Rat> w;
    for (const auto& g : gens) {
        Rat wi = pair(l, *guard, g);
        if (wi.sign() <= 0)
            throw std::invalid_argument("cone_membership: guard must pair strictly positively with every generator");
        w.push_back(wi);
    }
    Rat total = pair(l, *guard, d);
    if (total.sign() < 0) return std::nullopt;

    std::vector<bool> suffix_independent(static_cast<size_t>(k) + 1, false);
    suffix_independent[static_cast<size_t>(k)] = true;
    for (Index j = k - 1; j >= 0; --j) {
        MatQ suf(n, k - j);
        for (Index c = j; c < k; ++c) suf.col(c - j) = gens[static_cast<size_t>(c)];
        suffix_independent[static_cast<size_t>(j)] = rank_of(suf) == k - j;
    }

    VecQ acc = VecQ::Zero(k);
    VecQ remainder = d;
    Rat remdeg = total;
    std::optional<VecQ> found;
    std::function<void(Index)> rec = [&](Index j) {
        if (found) return;
        if (j == k) {
            if (is_zero(remainder)) found = acc;
            return;
        }
        if (suffix_independent[static_cast<size_t>(j)]) {
            MatQ suf(n, k - j);
            for (Index c = j; c < k; ++c) suf.col(c - j) = gens[static_cast<size_t>(c)];
            auto sol = solve_linear(suf, remainder);
            if (sol) {
                bool ok = true;
                for (Index c = 0; c < k - j && ok; ++c)
                    if (!(*sol)[c].is_integer() || (*sol)[c].sign() < 0) ok = false;
                // An independent suffix admits a unique expansion; verify it
                // reproduces the remainder before accepting.
                if (ok && is_zero(remainder - suf * *sol)) {
                    for (Index c = j; c < k; ++c) acc[c] = (*sol)[c - j];
                    found = acc;
                    for (Index c = j; c < k; ++c) acc[c] = Rat(0);
                }
            }
            return;
        }
        Int cap = (remdeg / w[static_cast<size_t>(j)]).floor();
        for (Int t = 0; t <= cap && !found; t += 1) {
            acc[j] = Rat(t);
            VecQ saved_rem = remainder;
            Rat saved_deg = remdeg;
            remainder -= Rat(t) * gens[static_cast<size_t>(j)];
            remdeg -= Rat(t) * w[static_cast<size_t>(j)];
            if (remdeg.sign() >= 0) rec(j + 1);
            remainder = saved_rem;
            remdeg = saved_deg;
        }
        acc[j] = Rat(0);
    };
    rec(0);
    return found;
}

}  // namespace enrlat
