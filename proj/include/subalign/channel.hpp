#pragma once

#include "subalign/diag_map.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace subalign {

// One sampled K-user channel: a K x K array of diagonal maps H[i][j] (receiver i,
// transmitter j), each with L positive integer coefficients <= 2^bits repeated
// over T coherence periods. A deterministic function of (k, l, t, bits, seed).
struct ChannelInstance {
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t t = 0;
    unsigned bits = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<DiagMap>> h; // h[i-1][j-1]

    const DiagMap& at(std::size_t i, std::size_t j) const; // 1-based
    std::size_t ambient_dim() const { return t * l; }

    /// Seeded sampling; coefficients uniform over {1..2^bits}. Requires k >= 3.
    static ChannelInstance sample(std::size_t k, std::size_t l, std::size_t t,
                                  unsigned bits, std::uint64_t seed);

    /// Hand-built instance (k >= 2 allowed); maps must all share (l, t).
    static ChannelInstance from_maps(std::size_t k, std::size_t l, std::size_t t,
                                     std::vector<std::vector<DiagMap>> maps,
                                     unsigned bits = 0, std::uint64_t seed = 0);
};

// The cross-ratio maps of one transmitter, in lexicographic (j, k) order.
struct TFamily {
    std::size_t user = 2;
    std::vector<DiagMap> members;
    std::vector<std::pair<std::size_t, std::size_t>> labels; // (j, k) per member

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

/// T_ijk = H_1i^-1 H_1k H_jk^-1 H_ji. Indices must be distinct and all != 1.
DiagMap derive_t(const ChannelInstance& instance, std::size_t i, std::size_t j, std::size_t k);

/// {T_ujk : j,k in {3..K}\{u}, j != k} with u = 2; size (K-2)(K-3).
TFamily t_family(const ChannelInstance& instance, std::size_t user = 2);

using ExponentVector = std::vector<long>;

/// True iff the monomial images {prod_i T_i^(x_i) v : x in exponents} span a
/// space of dimension min(|exponents|, sp(v)), where sp counts the coherence
/// periods on which v is nonzero (= ||v||_0 when T = 1). This is the exact-rank
/// form of the (block) linear independence condition for this exponent set.
bool check_lin_indep(const std::vector<DiagMap>& maps,
                     const std::vector<ExponentVector>& exponents,
                     const RowVector& v);

/// DiagMap acting on T*L coordinates with period-L repetition of `entries`.
DiagMap block_lift(std::vector<Rational> entries, std::size_t t);

struct GenericSample {
    ChannelInstance instance;
    unsigned resamples = 0; // degenerate draws rejected before this instance
};

/// Samples an instance and rejects draws whose first two cross-ratio maps fail
/// an independence battery on small exponent boxes (seed is incremented per
/// rejection). Degeneracy has never been observed with bits >= 8; the counter
/// is reported so callers can log it.
GenericSample sample_generic_instance(std::size_t k, std::size_t l, std::size_t t,
                                      unsigned bits, std::uint64_t seed,
                                      unsigned max_attempts = 64);

} // namespace subalign
