#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enrlat/lattice.hpp"

namespace enrlat {

// A dual graph of (-2)-curves with edge multiplicities, plus optional extra
// rational generators (half-fiber classes) and named classes given as
// rational combinations of curves and generators.
struct CurveConfig {
    std::string name;
    std::vector<std::string> curves;
    struct Edge {
        std::string a, b;
        int multiplicity = 1;
    };
    std::vector<Edge> edges;
    struct ExtraGen {
        std::string name;
        VecQ coeffs;  // over curves
    };
    std::vector<ExtraGen> extra_generators;
    // Named classes as coefficient vectors over (curves, extra generators).
    std::map<std::string, VecQ> named_classes;

    Index n_curves() const { return static_cast<Index>(curves.size()); }
    Index n_generators() const { return n_curves() + static_cast<Index>(extra_generators.size()); }
    Index curve_index(const std::string& name) const;
    std::optional<Index> generator_index(const std::string& name) const;
    void validate() const;
};

// Gram matrix of the curves alone: -2 diagonal, edge multiplicity off the
// diagonal.
GramLattice curve_gram(const CurveConfig& cfg);

// Primitive non-negative null vector of the Gram restricted to `support`
// (the half-fiber of an affine sub-diagram), as a coefficient vector over
// all curves. Throws unless the restricted kernel is one-dimensional with a
// strictly positive generator on the support.
VecQ affine_null_class(const CurveConfig& cfg, const std::vector<std::string>& support);

// The ambient integral model: an integral basis of the saturation of the
// group generated by the curves and the extra generators inside the
// nondegenerate quotient of their span, together with the embedding that
// sends generator coefficient vectors to ambient coordinates.
struct AmbientModel {
    GramLattice lattice;
    MatQ embed;  // rank x n_generators
    std::vector<std::string> generator_names;
    Index n_curves = 0;

    // Ambient coordinates of a coefficient vector over the generators.
    DivClass to_ambient(const VecQ& coeffs) const;
    DivClass generator_class(Index g) const { return embed.col(g); }
    DivClass curve_class(Index c) const { return embed.col(c); }
};

AmbientModel build_ambient(const CurveConfig& cfg);

// Ambient class of a named curve, generator or declared class.
DivClass class_of(const CurveConfig& cfg, const AmbientModel& model, const std::string& name);

// Solve pair(A, curve_i) = targets_i for a reference class used as the
// Weyl reduction guard and the cone search weight. Throws when the targets
// are inconsistent with the relations among the curves.
DivClass solve_curve_degrees(const AmbientModel& model, const VecQ& targets);

}  // namespace enrlat
