#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enrlat/divisor.hpp"

namespace enrlat {

// A candidate c-degenerate 10-sequence, given by its decomposition: one
// block per half-fiber, each block naming the half-fiber class and the
// ordered chain of tail curves. Block i contributes the entries
//   F_i, F_i + R_{i,1}, ..., F_i + R_{i,1} + ... + R_{i,r_i}.
struct SequenceBlock {
    std::string halffiber;
    std::vector<std::string> tail;
};

struct IsotropicSequence {
    std::string name;
    std::vector<SequenceBlock> blocks;
    int degeneracy() const { return static_cast<int>(blocks.size()); }
};

// The ten expanded entries in ambient coordinates, plus bookkeeping.
struct SequenceEntries {
    std::vector<DivClass> entries;          // exactly 10 when well formed
    std::vector<DivClass> halffibers;       // one per block
    std::vector<std::vector<std::string>> tails;
};

SequenceEntries expand_sequence(const CurveConfig& cfg, const AmbientModel& model,
                                const IsotropicSequence& seq);

struct SequenceValidation {
    bool valid = true;
    int degeneracy = 0;
    std::vector<std::string> violations;
};

// Checks every defining condition: F_i.F_j = 1 - delta_ij, tail chain
// adjacency, cross-tail orthogonality, F_i.R_{i,1} = 1 and F_i.R_{k,l} = 0
// otherwise, and that each F_i is a primitive integral isotropic class.
SequenceValidation validate_sequence(const CurveConfig& cfg, const AmbientModel& model,
                                     const IsotropicSequence& seq);

struct FanoReport {
    DivClass h;
    Int phi_value;
    bool h_square_ten = false;
    bool nef = false;
    bool is_fano = false;
    // Tails reassembled from the curves orthogonal to H, chained by pairing,
    // rooted at each half-fiber; cross-checked against the declared data.
    std::vector<std::vector<std::string>> tails;
    bool tails_match_declaration = false;
};

// H = (sum of entries)/3 with the full Fano verification. Throws when the
// sum fails to be 3-divisible.
FanoReport fano_from_sequence(const CurveConfig& cfg, const AmbientModel& model,
                              const IsotropicSequence& seq);

// H.E = 3 test for an effective isotropic class. Throws when E^2 != 0.
bool check_E_membership(const GramLattice& l, const DivClass& h, const DivClass& e);

struct PatternReport {
    std::vector<Int> degrees;  // R.E_i sorted descending
    bool matches = false;      // (1,1,1,0,...) for H.R = 1; six ones for H.R = 2
    Rat square;                // square of sum v_i (H/3 - E_i)
};

// Degree pattern of a (-2)-class against the sequence entries, for
// H.R in {1, 2}, together with the square the pattern forces through the
// dual-basis identity.
PatternReport pattern_check(const GramLattice& l, const DivClass& h, const DivClass& r,
                            const SequenceEntries& entries);

// Square of sum v_i (H/3 - E_i) for an arbitrary degree pattern v:
// s^2/9 - sum v_i^2 with s = sum v_i.
Rat square_from_pattern(const std::vector<Int>& v);

struct ReyeResult {
    DivClass divisor;                  // H - 2(F + T)
    std::optional<VecQ> witness;       // coefficients over the declared generators
    std::vector<std::string> generator_names;
    bool witness_negative_definite = false;
};

// Effectivity test for H - 2(F_i + T_i) over the declared generators. The
// tail must be full (H - (F_i + T_i) nef). A witness supported on curves is
// additionally certified negative definite.
ReyeResult reye_criterion(const CurveConfig& cfg, const AmbientModel& model,
                          const IsotropicSequence& seq, const std::string& halffiber,
                          const std::vector<std::string>& generators,
                          const std::optional<DivClass>& guard);

struct HatReport {
    DivClass hat_h;
    Rat hat_h_square;
    Rat h_dot_hat_h;
    bool nef = false;
    Int phi_value;
    std::vector<DivClass> inherited;  // H - (F_j+T_j) - (F_k+T_k), entry degree 3 against hat H
    std::vector<Rat> inherited_squares;
    std::vector<Rat> inherited_degrees;
};

// The tilt 2H - (F_1+T_1) - (F_2+T_2) - (F_3+T_3) for three full-tail
// sequence entries, verified to be a Fano polarization. Requires that
// H - F_1 - F_2 - F_3 is not effective over the declared generators; throws
// when a witness exists.
HatReport hat_transform(const CurveConfig& cfg, const AmbientModel& model,
                        const IsotropicSequence& seq, const std::array<int, 3>& block_ids,
                        const std::vector<std::string>& generators,
                        const std::optional<DivClass>& guard);

// Plain-lattice variant for synthetic models without a curve configuration:
// entries are given directly (full tails folded into the classes).
HatReport hat_transform(const GramLattice& l, const DivClass& h,
                        const std::array<DivClass, 3>& halffibers,
                        const std::array<DivClass, 3>& full_entries,
                        const std::vector<DivClass>& generators,
                        const std::optional<DivClass>& guard);

// Membership of F_2 + F_3 - F_1 over the declared generators for a
// non-degenerate 3-sequence of primitive isotropic classes.
std::optional<VecQ> special_triple_check(const GramLattice& l, const DivClass& f1,
                                         const DivClass& f2, const DivClass& f3,
                                         const std::vector<DivClass>& generators,
                                         const std::optional<DivClass>& guard);

}  // namespace enrlat
