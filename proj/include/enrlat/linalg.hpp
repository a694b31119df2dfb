#pragma once

#include <optional>
#include <vector>

#include "enrlat/types.hpp"

namespace enrlat {

// Exact dense linear algebra over Rat. Everything here is deterministic and
// allocation-heavy rather than clever; ranks in this project stay below ~25.

Index rank_of(MatQ a);

Rat determinant(MatQ a);

// Reduced row echelon form; pivot column indices appended to `pivots`.
MatQ rref(MatQ a, std::vector<Index>* pivots = nullptr);

// Basis of { x : a x = 0 }.
std::vector<VecQ> kernel_basis(const MatQ& a);

// One solution of a x = b, or nullopt when inconsistent.
std::optional<VecQ> solve_linear(const MatQ& a, const VecQ& b);

MatQ inverse(const MatQ& a);

// Row-style Hermite normal form of an integral matrix. Returns the
// full-row-rank basis of the row lattice (r x n, r = rank).
MatQ hnf_rows(const MatQ& a);

// Integer basis of { x in Z^n : a x = 0 } for an integral matrix a.
std::vector<VecQ> integer_kernel(const MatQ& a);

// u a v = d with u, v unimodular and d diagonal (elementary divisors in
// order, each dividing the next).
struct SmithResult {
    MatQ u, d, v;
};
SmithResult smith_normal_form(MatQ a);

// LLL on a positive definite Gram matrix (delta = 3/4). Returns the reduced
// Gram together with the unimodular transform t, reduced = t * g * t^T.
struct LllResult {
    MatQ gram;
    MatQ t;
};
LllResult lll_reduce_gram(const MatQ& g);

// LDL^T of a positive definite matrix:
//   Q(y) = sum_i d[i] * (y_i + sum_{j>i} mu(i,j) y_j)^2.
// Throws if the matrix is not positive definite.
struct LdltResult {
    std::vector<Rat> d;
    MatQ mu;
};
LdltResult ldlt_posdef(const MatQ& g);

// Signature (n_plus, n_zero, n_minus) of a symmetric matrix by exact
// symmetric reduction, pivoting on nonzero diagonal entries and falling back
// to hyperbolic 2x2 blocks when the diagonal vanishes.
struct Signature {
    int n_plus = 0;
    int n_zero = 0;
    int n_minus = 0;
    bool operator==(const Signature&) const = default;
};
Signature signature_of(MatQ g);

bool is_negative_definite(const MatQ& g);

}  // namespace enrlat
