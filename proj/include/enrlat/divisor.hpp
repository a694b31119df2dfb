#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enrlat/curve_config.hpp"
#include "enrlat/lattice.hpp"

namespace enrlat {

// True when D pairs >= 0 with every curve of the configuration. This
// certifies nefness only when the configuration lists all (-2)-curves of the
// surface, which holds for the bundled figures.
bool is_nef_against(const AmbientModel& model, const DivClass& d);

struct ReductionStep {
    std::string curve;
    Rat pairing;  // value of pair(D, R) at the time of the reflection
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    std::map<std::string, Int> multiplicities;
    DivClass result;
};

// Iterated reflection in (-2)-curves: while some curve pairs negatively,
// reflect across the one with the most negative pairing (ties broken by
// declared curve order). `guard` must pair positively with every curve; its
// degree strictly decreases each step, which bounds the loop.
ReductionTrace weyl_reduce(const AmbientModel& model, const DivClass& d, const DivClass& guard);

struct IsotropicSlice {
    Int degree;                    // t = H.F
    std::vector<DivClass> classes; // canonically ordered, primitive, F^2 = 0, H.F = t
};

// Complete list of primitive integral F with F^2 = 0 and H.F = t. The search
// runs over the coset of H-degree t in the rank (n-1) negative definite
// complement of H, by exact completion of squares on an LLL-reduced basis.
IsotropicSlice enumerate_isotropic_slice(const GramLattice& l, const DivClass& h, const Int& t);

struct PhiResult {
    Int value;
    DivClass witness;
    std::vector<IsotropicSlice> slices;  // all degrees 1..floor(sqrt(H^2))
};

// Minimal positive degree of a primitive isotropic lattice class against H.
//
// For a nef H of positive square on an Enriques surface this equals the
// minimum of H.F over half-fibers F: every primitive isotropic class of
// positive degree is numerically effective there, and Weyl reduction moves
// it to a nef representative -- a half-fiber -- without increasing the
// H-degree, so the lattice minimum and the geometric minimum agree. The
// search stops at floor(sqrt(H^2)), below which a half-fiber always exists.
// Every slice up to the bound is enumerated and the minimum is cross-checked
// against the first nonempty slice rather than short-circuited.
PhiResult phi(const GramLattice& l, const DivClass& h);

// phi with the nefness precondition checked against the configuration.
PhiResult phi(const AmbientModel& model, const DivClass& h);

struct NegDefResult {
    bool negative_definite = true;
    // When false: a sub-divisor 0 <= a <= c with (sum a_i R_i)^2 >= 0 and its square.
    VecQ witness;
    Rat witness_square;
};

// Decides whether every nonzero effective sub-divisor of C = sum c_i R_i has
// negative square. The support Gram being negative definite settles it
// immediately; otherwise the coefficient box is searched with a
// branch-and-bound upper bound on the form. This is deliberately not the
// support-Gram test: a divisor can be negative definite while its support
// spans an indefinite sublattice.
NegDefResult is_negative_definite_divisor(const GramLattice& curve_lattice, const VecQ& coeffs);

// Non-negative integral coefficients with sum a_i * gens_i = D, if any.
// Independent generator sets reduce to an exact solve; dependent sets are
// searched with coefficient bounds taken from the guard degree (the guard
// must then pair strictly positively with every generator).
//
// "Numerically effective" is always decided relative to the declared
// generators. For the bundled configurations this is sound and complete:
// each lists every (-2)-curve of its surface, and the classes tested there
// decompose over those curves (plus declared isotropic classes) whenever
// they are effective at all.
std::optional<VecQ> cone_membership(const GramLattice& l, const DivClass& d,
                                    const std::vector<DivClass>& gens,
                                    const std::optional<DivClass>& guard = std::nullopt);

}  // namespace enrlat
