#pragma once

#include "subalign/diag_map.hpp"
#include "subalign/subspace.hpp"

#include <cstdint>
#include <random>

namespace subalign {

// Seeded generators shared by the self-test corpus, the random scheme search
// and the CLI. mt19937_64 with explicit reduction keeps draws identical across
// platforms (distribution classes are not portable).

/// Uniform integer in [lo, hi].
long draw_int(std::mt19937_64& rng, long lo, long hi);

/// Random subspace of the given dimension: span of `dim` rows with entries in
/// [-magnitude, magnitude]. Redraws rows until the rank is exactly `dim`.
Subspace random_subspace(std::mt19937_64& rng, std::size_t ambient, std::size_t dim,
                         long magnitude = 9);

/// Random invertible DiagMap with nonzero integer entries in [1, magnitude].
DiagMap random_diag_map(std::mt19937_64& rng, std::size_t l, std::size_t t,
                        long magnitude = 1 << 16);

/// Decorrelated stream seed for substream `index` of `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

} // namespace subalign
