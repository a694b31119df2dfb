#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enrlat/linalg.hpp"
#include "enrlat/types.hpp"

namespace enrlat {

// An integral lattice presented by a symmetric Gram matrix over a named
// basis. Divisor classes are plain coordinate vectors over that basis; the
// lattice is passed explicitly to every operation so that several lattices
// (curve span, ambient model, standard hyperbolic model) can coexist.
struct GramLattice {
    std::vector<std::string> basis_names;
    MatQ gram;

    Index rank() const { return gram.rows(); }
    void validate() const;
};

using DivClass = VecQ;

// Intersection product x^T * gram * y.
Rat pair(const GramLattice& l, const DivClass& x, const DivClass& y);

struct LatticeProfile {
    Index rank = 0;
    Rat determinant;
    Signature signature;
    bool is_even = false;
    bool operator==(const LatticeProfile&) const = default;
};

LatticeProfile lattice_profile(const GramLattice& l);

// x/n when that is again an integral class, otherwise nullopt.
std::optional<DivClass> divide_in_lattice(const GramLattice& l, const DivClass& x, const Int& n);

// True when x is not divisible by any integer >= 2.
bool is_primitive(const GramLattice& l, const DivClass& x);

// The standard even hyperbolic lattice of rank 10: a hyperbolic plane
// spanned by e, f followed by a negated E8 root lattice on a1..a8.
GramLattice hyperbolic_e10();

// Hyperbolic plane U and the negated E8 block on their own.
GramLattice hyperbolic_plane();
GramLattice e8_negative();

}  // namespace enrlat
