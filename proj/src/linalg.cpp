#include "enrlat/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace enrlat {

namespace {

void swap_rows(MatQ& a, Index i, Index j) {
    if (i != j) a.row(i).swap(a.row(j));
}

}  // namespace

MatQ rref(MatQ a, std::vector<Index>* pivots) {
    const Index n = a.rows(), m = a.cols();
    Index r = 0;
    for (Index c = 0; c < m && r < n; ++c) {
        Index p = -1;
        for (Index i = r; i < n; ++i) {
            if (!a(i, c).is_zero()) { p = i; break; }
        }
        if (p < 0) continue;
        swap_rows(a, r, p);
        Rat inv = Rat(1) / a(r, c);
        for (Index k = 0; k < m; ++k) a(r, k) *= inv;
        for (Index i = 0; i < n; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Rat f = a(i, c);
            for (Index k = 0; k < m; ++k) a(i, k) -= f * a(r, k);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return a;
}

Index rank_of(MatQ a) {
    std::vector<Index> piv;
    rref(std::move(a), &piv);
    return static_cast<Index>(piv.size());
}

Rat determinant(MatQ a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: square matrix required");
    const Index n = a.rows();
    Rat det(1);
    for (Index c = 0; c < n; ++c) {
        Index p = -1;
        for (Index i = c; i < n; ++i) {
            if (!a(i, c).is_zero()) { p = i; break; }
        }
        if (p < 0) return Rat(0);
        if (p != c) { swap_rows(a, c, p); det = -det; }
        det *= a(c, c);
        Rat inv = Rat(1) / a(c, c);
        for (Index i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            Rat f = a(i, c) * inv;
            for (Index k = c; k < n; ++k) a(i, k) -= f * a(c, k);
        }
    }
    return det;
}

std::vector<VecQ> kernel_basis(const MatQ& a) {
    std::vector<Index> piv;
    MatQ r = rref(a, &piv);
    const Index m = a.cols();
    std::vector<bool> is_piv(m, false);
    for (Index c : piv) is_piv[c] = true;
    std::vector<VecQ> basis;
    for (Index fc = 0; fc < m; ++fc) {
        if (is_piv[fc]) continue;
        VecQ v = VecQ::Zero(m);
        v[fc] = Rat(1);
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(static_cast<Index>(k), fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<VecQ> solve_linear(const MatQ& a, const VecQ& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve_linear: dimension mismatch");
    MatQ aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    std::vector<Index> piv;
    MatQ r = rref(std::move(aug), &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;  // inconsistent
    VecQ x = VecQ::Zero(a.cols());
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(static_cast<Index>(k), a.cols());
    return x;
}

MatQ inverse(const MatQ& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: square matrix required");
    const Index n = a.rows();
    MatQ aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = MatQ::Identity(n, n);
    std::vector<Index> piv;
    MatQ r = rref(std::move(aug), &piv);
    if (static_cast<Index>(piv.size()) != n || piv.back() != n - 1)
        throw std::invalid_argument("inverse: singular matrix");
    return r.rightCols(n);
}

MatQ hnf_rows(const MatQ& a) {
    if (!is_integral(a)) throw std::invalid_argument("hnf_rows: integral matrix required");
    const Index n = a.rows(), m = a.cols();
    MatQ w = a;
    Index r = 0;
    for (Index c = 0; c < m && r < n; ++c) {
        Index p = -1;
        for (Index i = r; i < n; ++i) {
            if (!w(i, c).is_zero()) { p = i; break; }
        }
        if (p < 0) continue;
        swap_rows(w, r, p);
        // Euclid the rows below until column c is cleared.
        bool again = true;
        while (again) {
            again = false;
            for (Index i = r + 1; i < n; ++i) {
                if (w(i, c).is_zero()) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w(i, c).num().get_mpz_t(), w(r, c).num().get_mpz_t());
                if (q != 0)
                    for (Index k = 0; k < m; ++k) w(i, k) -= Rat(q) * w(r, k);
                if (!w(i, c).is_zero()) {
                    w.row(r).swap(w.row(i));
                    again = true;
                }
            }
        }
        if (w(r, c).sign() < 0)
            for (Index k = 0; k < m; ++k) w(r, k) = -w(r, k);
        // Reduce the rows above.
        for (Index i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w(i, c).num().get_mpz_t(), w(r, c).num().get_mpz_t());
            if (q != 0)
                for (Index k = 0; k < m; ++k) w(i, k) -= Rat(q) * w(r, k);
        }
        ++r;
    }
    return w.topRows(r);
}

std::vector<VecQ> integer_kernel(const MatQ& a) {
    if (!is_integral(a)) throw std::invalid_argument("integer_kernel: integral matrix required");
    const Index n = a.rows(), m = a.cols();
    // Column-style reduction of a^T tracked by a unimodular transform; the
    // transform rows whose image vanishes form a basis of the kernel lattice.
    MatQ w(m, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) w(i, j) = a(j, i);
    MatQ t = MatQ::Identity(m, m);
    Index r = 0;
    for (Index c = 0; c < n && r < m; ++c) {
        Index p = -1;
        for (Index i = r; i < m; ++i) {
            if (!w(i, c).is_zero()) { p = i; break; }
        }
        if (p < 0) continue;
        w.row(r).swap(w.row(p));
        t.row(r).swap(t.row(p));
        bool again = true;
        while (again) {
            again = false;
            for (Index i = r + 1; i < m; ++i) {
                if (w(i, c).is_zero()) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w(i, c).num().get_mpz_t(), w(r, c).num().get_mpz_t());
                if (q != 0) {
                    for (Index k = 0; k < n; ++k) w(i, k) -= Rat(q) * w(r, k);
                    for (Index k = 0; k < m; ++k) t(i, k) -= Rat(q) * t(r, k);
                }
                if (!w(i, c).is_zero()) {
                    w.row(r).swap(w.row(i));
                    t.row(r).swap(t.row(i));
                    again = true;
                }
            }
        }
        ++r;
    }
    std::vector<VecQ> basis;
    for (Index i = r; i < m; ++i) basis.push_back(t.row(i).transpose());
    return basis;
}

SmithResult smith_normal_form(MatQ a) {
    if (!is_integral(a)) throw std::invalid_argument("smith_normal_form: integral matrix required");
    const Index n = a.rows(), m = a.cols();
    MatQ u = MatQ::Identity(n, n), v = MatQ::Identity(m, m);
    auto add_row = [&](Index i, Index j, const Int& f) {  // row i += f * row j
        for (Index k = 0; k < m; ++k) a(i, k) += Rat(f) * a(j, k);
        for (Index k = 0; k < n; ++k) u(i, k) += Rat(f) * u(j, k);
    };
    auto add_col = [&](Index i, Index j, const Int& f) {  // col i += f * col j
        for (Index k = 0; k < n; ++k) a(k, i) += Rat(f) * a(k, j);
        for (Index k = 0; k < m; ++k) v(k, i) += Rat(f) * v(k, j);
    };
    auto swap_r = [&](Index i, Index j) {
        if (i != j) { a.row(i).swap(a.row(j)); u.row(i).swap(u.row(j)); }
    };
    auto swap_c = [&](Index i, Index j) {
        if (i != j) { a.col(i).swap(a.col(j)); v.col(i).swap(v.col(j)); }
    };
    Index t = 0;
    const Index lim = std::min(n, m);
    while (t < lim) {
        // Smallest nonzero entry in the trailing block as pivot.
        Index pi = -1, pj = -1;
        for (Index i = t; i < n; ++i)
            for (Index j = t; j < m; ++j) {
                if (a(i, j).is_zero()) continue;
                if (pi < 0 || abs(a(i, j).num()) < abs(a(pi, pj).num())) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        swap_r(t, pi);
        swap_c(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (Index i = t + 1; i < n; ++i) {
                if (a(i, t).is_zero()) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).num().get_mpz_t(), a(t, t).num().get_mpz_t());
                add_row(i, t, -q);
                if (!a(i, t).is_zero()) { swap_r(t, i); dirty = true; }
            }
            for (Index j = t + 1; j < m; ++j) {
                if (a(t, j).is_zero()) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).num().get_mpz_t(), a(t, t).num().get_mpz_t());
                add_col(j, t, -q);
                if (!a(t, j).is_zero()) { swap_c(t, j); dirty = true; }
            }
        }
        // Divisibility: fold any non-multiple into the pivot and retry.
        bool retry = false;
        for (Index i = t + 1; i < n && !retry; ++i)
            for (Index j = t + 1; j < m && !retry; ++j) {
                if (a(i, j).is_zero()) continue;
                Int rmod;
                mpz_mod(rmod.get_mpz_t(), a(i, j).num().get_mpz_t(), a(t, t).num().get_mpz_t());
                if (rmod != 0) {
                    add_row(t, i, 1);
                    retry = true;
                }
            }
        if (retry) continue;
        if (a(t, t).sign() < 0) {
            for (Index k = 0; k < m; ++k) a(t, k) = -a(t, k);
            for (Index k = 0; k < n; ++k) u(t, k) = -u(t, k);
        }
        ++t;
    }
    return SmithResult{std::move(u), std::move(a), std::move(v)};
}

LllResult lll_reduce_gram(const MatQ& g) {
    const Index n = g.rows();
    MatQ t = MatQ::Identity(n, n);
    MatQ cur = g;
    // Gram-Schmidt data recomputed from the current Gram; ranks here are tiny.
    MatQ mu(n, n);
    std::vector<Rat> bstar(static_cast<size_t>(n));
    auto gso = [&]() {
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < i; ++j) {
                Rat r = cur(i, j);
                for (Index k = 0; k < j; ++k) r -= mu(j, k) * mu(i, k) * bstar[k];
                if (bstar[j].is_zero()) throw std::domain_error("lll_reduce_gram: not positive definite");
                mu(i, j) = r / bstar[j];
            }
            Rat b = cur(i, i);
            for (Index k = 0; k < i; ++k) b -= mu(i, k) * mu(i, k) * bstar[k];
            if (b.sign() <= 0) throw std::domain_error("lll_reduce_gram: not positive definite");
            bstar[i] = b;
        }
    };
    auto apply_unit = [&](Index i, Index j, const Int& q) {
        // basis_i -= q * basis_j  (Gram and transform updated symmetrically)
        if (q == 0) return;
        Rat f(q);
        for (Index k = 0; k < n; ++k) t(i, k) -= f * t(j, k);
        for (Index k = 0; k < n; ++k) cur(i, k) -= f * cur(j, k);
        for (Index k = 0; k < n; ++k) cur(k, i) -= f * cur(k, j);
    };
    const Rat delta(3, 4);
    gso();
    Index k = 1;
    while (k < n) {
        for (Index j = k - 1; j >= 0; --j) {
            Int q = mu(k, j).round_nearest();
            if (q != 0) { apply_unit(k, j, q); gso(); }
        }
        Rat lhs = bstar[k];
        Rat rhs = (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            t.row(k).swap(t.row(k - 1));
            cur.row(k).swap(cur.row(k - 1));
            cur.col(k).swap(cur.col(k - 1));
            gso();
            k = std::max<Index>(k - 1, 1);
        }
    }
    return LllResult{std::move(cur), std::move(t)};
}

LdltResult ldlt_posdef(const MatQ& g) {
    const Index n = g.rows();
    MatQ a = g;
    LdltResult out;
    out.d.resize(static_cast<size_t>(n));
    out.mu = MatQ::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        Rat piv = a(i, i);
        if (piv.sign() <= 0) throw std::domain_error("ldlt_posdef: not positive definite");
        out.d[static_cast<size_t>(i)] = piv;
        for (Index j = i + 1; j < n; ++j) out.mu(i, j) = a(i, j) / piv;
        for (Index j = i + 1; j < n; ++j)
            for (Index k = j; k < n; ++k) {
                a(j, k) -= a(i, j) * a(i, k) / piv;
                a(k, j) = a(j, k);
            }
    }
    return out;
}

Signature signature_of(MatQ g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("signature_of: square matrix required");
    Signature sig;
    std::vector<Index> alive;
    for (Index i = 0; i < g.rows(); ++i) alive.push_back(i);
    while (!alive.empty()) {
        Index p = -1;
        for (Index i : alive)
            if (!g(i, i).is_zero()) { p = i; break; }
        if (p >= 0) {
            Rat d = g(p, p);
            if (d.sign() > 0) ++sig.n_plus; else ++sig.n_minus;
            for (Index r : alive) {
                if (r == p || g(r, p).is_zero()) continue;
                Rat f = g(r, p) / d;
                for (Index c : alive) g(r, c) -= f * g(p, c);
            }
            for (Index c : alive) g(p, c) = Rat(0);
            alive.erase(std::find(alive.begin(), alive.end(), p));
            continue;
        }
        // Zero diagonal: look for an off-diagonal entry; a hyperbolic pair
        // contributes one positive and one negative square.
        Index hi = -1, hj = -1;
        for (size_t x = 0; x < alive.size() && hi < 0; ++x)
            for (size_t y = x + 1; y < alive.size(); ++y)
                if (!g(alive[x], alive[y]).is_zero()) { hi = alive[x]; hj = alive[y]; break; }
        if (hi < 0) {
            sig.n_zero += static_cast<int>(alive.size());
            break;
        }
        for (Index r : alive) g(r, hi) += g(r, hj);
        for (Index c : alive) g(hi, c) += g(hj, c);
        // Now g(hi,hi) = 2*g_old(hi,hj) != 0 and the diagonal loop resumes.
    }
    return sig;
}

bool is_negative_definite(const MatQ& g) {
    Signature s = signature_of(g);
    return s.n_plus == 0 && s.n_zero == 0;
}

}  // namespace enrlat
