#pragma once

// Independent oracles used by the test suites. Everything here deliberately
// avoids the library's own search machinery: determinants by Leibniz
// expansion, slices by raw coordinate boxes, the E8 roots from their
// epsilon-coordinate description, negative definiteness by an unpruned
// odometer scan.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "enrlat/lattice.hpp"

namespace oracles {

using namespace enrlat;

// Determinant by full permutation expansion; ranks <= 6 only.
inline Rat determinant_leibniz(const MatQ& a) {
    const Index n = a.rows();
    std::vector<Index> perm;
    for (Index i = 0; i < n; ++i) perm.push_back(i);
    Rat det(0);
    do {
        int inversions = 0;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inversions;
        Rat term(inversions % 2 == 0 ? 1 : -1);
        for (Index i = 0; i < n; ++i) term *= a(i, perm[static_cast<size_t>(i)]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// All integral, primitive F in the coordinate box [-radius, radius]^rank
// with F^2 = 0 and H.F >= 1, grouped by degree. One odometer sweep with the
// square, the gradient and the H-degree maintained incrementally; practical
// for rank <= 4.
inline std::map<Int, std::vector<VecQ>> slices_by_box(const GramLattice& l, const DivClass& h,
                                                      int radius) {
    const Index n = l.rank();
    std::vector<Int> a(static_cast<size_t>(n), Int(0));
    std::vector<Int> grad(static_cast<size_t>(n), Int(0));  // gram * a
    std::vector<Int> hrow(static_cast<size_t>(n));          // gram * h
    for (Index i = 0; i < n; ++i) {
        Rat acc(0);
        for (Index j = 0; j < n; ++j) acc += l.gram(i, j) * h[j];
        hrow[static_cast<size_t>(i)] = acc.num();
    }
    Int q = 0, hdeg = 0;
    auto bump = [&](Index pos, int delta) {
        Int d(delta);
        q += 2 * d * grad[static_cast<size_t>(pos)] + l.gram(pos, pos).num() * d * d;
        for (Index j = 0; j < n; ++j) grad[static_cast<size_t>(j)] += l.gram(j, pos).num() * d;
        hdeg += d * hrow[static_cast<size_t>(pos)];
        a[static_cast<size_t>(pos)] += d;
    };
    for (Index i = 0; i < n; ++i)
        while (a[static_cast<size_t>(i)] > -radius) bump(i, -1);
    std::map<Int, std::vector<VecQ>> out;
    while (true) {
        if (q == 0 && hdeg >= 1) {
            Int g = 0;
            for (const auto& x : a) g = gcd_int(g, x);
            if (g == 1) {
                VecQ f(n);
                for (Index i = 0; i < n; ++i) f[i] = Rat(a[static_cast<size_t>(i)]);
                out[hdeg].push_back(std::move(f));
            }
        }
        Index pos = 0;
        while (pos < n) {
            if (a[static_cast<size_t>(pos)] < radius) {
                bump(pos, 1);
                break;
            }
            while (a[static_cast<size_t>(pos)] > -radius) bump(pos, -1);
            ++pos;
        }
        if (pos == n) break;
    }
    for (auto& [t, v] : out)
        std::sort(v.begin(), v.end(), [](const VecQ& x, const VecQ& y) {
            for (Index i = 0; i < x.size(); ++i)
                if (x[i] != y[i]) return x[i] < y[i];
            return false;
        });
    return out;
}

// The 240 roots of E8 in the coordinate system of the chain basis
// a1..a7 with a8 attached to a5, derived from the epsilon-coordinate
// description of the root system: +-e_i +- e_j and half-integer vectors with
// an even number of minus signs. The chain realization used here:
//   a1 = e7-e6, a2 = e6-e5, a3 = e5-e4, a4 = e4-e3, a5 = e3-e2, a6 = e2-e1,
//   a7 = (e1+e8)/2 - (e2+...+e7)/2, a8 = e1+e2.
inline std::vector<VecQ> e8_roots_negative() {
    // epsilon-coordinates of the chosen basis, rows = basis vectors
    MatQ basis(8, 8);
    basis.setConstant(Rat(0));
    for (int i = 0; i < 6; ++i) {
        basis(i, 6 - i) = Rat(1);
        basis(i, 5 - i) = Rat(-1);
    }
    basis(6, 0) = Rat(1, 2);
    basis(6, 7) = Rat(1, 2);
    for (int j = 1; j < 7; ++j) basis(6, j) = Rat(-1, 2);
    basis(7, 0) = Rat(1);
    basis(7, 1) = Rat(1);
    MatQ binv = inverse(basis.transpose());  // coordinates: x = binv * eps

    std::vector<VecQ> roots;
    auto push_if_integral = [&](const VecQ& eps) {
        VecQ x = binv * eps;
        if (is_integral(x)) roots.push_back(x);
    };
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    VecQ eps = VecQ::Zero(8);
                    eps[i] = Rat(si);
                    eps[j] = Rat(sj);
                    push_if_integral(eps);
                }
    for (int mask = 0; mask < 256; ++mask) {
        int minus = __builtin_popcount(mask);
        if (minus % 2 != 0) continue;
        VecQ eps(8);
        for (int i = 0; i < 8; ++i) eps[i] = Rat((mask >> i) & 1 ? -1 : 1, 2);
        push_if_integral(eps);
    }
    return roots;
}

// Unpruned exhaustive negative-definiteness scan over the full coefficient
// box, maintaining the quadratic form incrementally.
struct BoxNegDef {
    bool negative_definite = true;
    VecQ witness;
    Rat witness_square;
};

inline BoxNegDef negdef_by_box(const GramLattice& curve_lattice, const VecQ& coeffs) {
    const Index n = curve_lattice.rank();
    std::vector<Int> cap;
    for (Index i = 0; i < n; ++i) cap.push_back(coeffs[i].num());
    std::vector<Int> a(static_cast<size_t>(n), Int(0));
    std::vector<Int> grad(static_cast<size_t>(n), Int(0));  // gram * a
    Int q = 0;
    BoxNegDef out;
    auto bump = [&](Index pos, int delta) {
        // a[pos] += delta, updating q = a^T G a and grad = G a
        Int d(delta);
        q += 2 * d * grad[static_cast<size_t>(pos)] + curve_lattice.gram(pos, pos).num() * d * d;
        for (Index j = 0; j < n; ++j) grad[static_cast<size_t>(j)] += curve_lattice.gram(j, pos).num() * d;
        a[static_cast<size_t>(pos)] += d;
    };
    while (true) {
        Index pos = 0;
        while (pos < n) {
            if (a[static_cast<size_t>(pos)] < cap[static_cast<size_t>(pos)]) {
                bump(pos, 1);
                break;
            }
            while (a[static_cast<size_t>(pos)] > 0) bump(pos, -1);
            ++pos;
        }
        if (pos == n) break;
        if (q >= 0) {
            out.negative_definite = false;
            out.witness = VecQ(n);
            for (Index i = 0; i < n; ++i) out.witness[i] = Rat(a[static_cast<size_t>(i)]);
            out.witness_square = Rat(q);
            return out;
        }
    }
    return out;
}

// Greedy synthetic 10-sequence of pairwise-meeting isotropic classes in the
// standard rank-10 model: e, f, then e + f + r over roots r compatible with
// everything chosen so far.
inline std::vector<DivClass> synthetic_ten_sequence(const GramLattice& e10) {
    std::vector<DivClass> seq;
    DivClass e = VecQ::Zero(10), f = VecQ::Zero(10);
    e[0] = Rat(1);
    f[1] = Rat(1);
    seq.push_back(e);
    seq.push_back(f);
    for (const auto& r : e8_roots_negative()) {
        DivClass cand = e + f;
        for (Index i = 0; i < 8; ++i) cand[2 + i] = r[i];
        bool ok = true;
        for (const auto& s : seq) ok &= pair(e10, cand, s) == Rat(1);
        if (ok) seq.push_back(cand);
        if (seq.size() == 10) break;
    }
    return seq;
}

}  // namespace oracles
