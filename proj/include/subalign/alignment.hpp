#pragma once

#include "subalign/channel.hpp"
#include "subalign/diag_map.hpp"
#include "subalign/subspace.hpp"

#include <cstddef>
#include <vector>

namespace subalign {

// Extension e_M^n V = V + MV + ... + M^n V and contraction c_M^n V =
// V ∩ MV ∩ ... ∩ M^n V, computed incrementally (each step adds one image of
// the previous power rather than re-spanning from scratch). n = 0 returns V.
Subspace extend(const Subspace& v, const DiagMap& m, std::size_t n = 1);
Subspace contract(const Subspace& v, const DiagMap& m, std::size_t n = 1);

// Alignment width of V under M: how much of V fails to align with its image.
// Both defining formulas are computed and cross-checked.
struct WidthReport {
    long width = 0;
    long dim_before = 0;
    long dim_after_extend = 0;
    long dim_after_contract = 0;
};

WidthReport alignment_width(const Subspace& v, const DiagMap& m);

// Change of the width under M1 caused by one extension (resp. contraction)
// along M2. Either value may be negative; ext2 <= con2 always holds.
struct SecondOrderReport {
    long ext2 = 0;
    long con2 = 0;
};

SecondOrderReport second_order(const Subspace& v, const DiagMap& m1, const DiagMap& m2);

/// (1/M) * sum of widths of V under each family member, as an exact rational.
Rational average_width(const Subspace& v, const TFamily& family);

/// Span of {prod_i M_i^(a_i) x : 0 <= a_i <= ns[i]}. For generic map pairs the
/// dimension is min(prod(ns[i]+1), ||x||_0).
Subspace grid_span(const RowVector& x, const std::vector<DiagMap>& maps,
                   const std::vector<std::size_t>& ns);

enum class WalkMode { extension, contraction };
enum class WalkCase { contraction_break, full_extension };

struct WalkStep {
    char op = 'e'; // 'e' extend, 'c' contract
    std::size_t index = 0; // 1-based family index
};

struct WalkResult {
    Subspace w_tilde;
    std::size_t n_tilde = 0;
    Rational delta; // 2 * (avg width of W + thresholds[0..n_tilde-2])
    WalkCase case_tag = WalkCase::full_extension;
    std::vector<WalkStep> op_sequence;
};

// Adaptive operator walk. At each step picks the smallest family index in `s`
// whose width on the current subspace is at most twice the average width, then
// either applies the mode's operator and recurses on the remaining thresholds,
// or breaks with one application of the opposite operator when that step would
// move the average width past the next threshold. Guarantees (checked by the
// test suite): |dim(w_tilde) - dim(w)| <= delta, and block sparsity degrades by
// at most delta.
//
// Preconditions: s holds distinct 1-based family indices; |thresholds| = n with
// n <= |s| - M/2; thresholds strictly increasing with thresholds[0] greater
// than the average width of w.
//
// The case tags are named after the extension mode: full_extension means all n
// steps of the mode's own operator were applied (for contraction mode these
// are contractions); contraction_break means the walk stopped early with one
// application of the opposite operator.
WalkResult adaptive_walk(const Subspace& w, const TFamily& family,
                         std::vector<std::size_t> s,
                         const std::vector<Rational>& thresholds,
                         WalkMode mode = WalkMode::extension);

} // namespace subalign
