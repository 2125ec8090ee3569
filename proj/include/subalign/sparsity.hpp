#pragma once

#include "subalign/subspace.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace subalign {

/// Enumeration guard: n_sparsity refuses t*l above this.
inline constexpr std::size_t kSparsityEnumerationCap = 24;

// Result of an N-sparsity search. `value` is empty when N > dim V (infinite).
// For t = 1 the witness is a coordinate support set; for t > 1 it is one
// subspace of Q^t per coherence period whose dimensions sum to `value`.
// `heuristic` is set when the block search was restricted to coordinate
// allocations (t >= 3); for t <= 2 the search also enumerates the per-period
// lines spanned by RREF rows of every zero-pattern section of V.
struct SparsityResult {
    std::size_t n = 0;
    std::optional<std::size_t> value;
    std::vector<std::size_t> support;      // t = 1 witness, 1-based coordinates
    std::vector<Subspace> period_subspaces; // t > 1 witness, one per period
    bool heuristic = false;

    bool is_infinite() const { return !value.has_value(); }
};

/// sum_k dim(P_k V); equals max_{x in V} ||x||_0 when t = 1.
std::size_t support_dim(const Subspace& v, std::size_t l, std::size_t t);

/// N-sparsity: the minimal total size of a per-period allocation whose induced
/// coordinate-block subspace meets V in dimension >= n. Exhaustive over
/// supports in ascending size (t = 1); see SparsityResult for the t > 1 search.
SparsityResult n_sparsity(const Subspace& v, std::size_t n, std::size_t l, std::size_t t);

} // namespace subalign
