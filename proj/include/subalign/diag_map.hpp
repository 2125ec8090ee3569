#pragma once

#include "subalign/rational.hpp"
#include "subalign/subspace.hpp"

#include <cstddef>

namespace subalign {

// Invertible diagonal transform with block-fading structure I_T (x) diag(entries).
// Acts on Q^(T*L); coordinate j (0-based) is scaled by entries[j mod L], so the
// L entries repeat over the T coherence-period copies. T = 1 is plain diag.
class DiagMap {
public:
    /// All entries must be nonzero (the map is invertible by construction).
    DiagMap(std::vector<Rational> entries, std::size_t t = 1);

    static DiagMap identity(std::size_t l, std::size_t t = 1);

    std::size_t l() const { return entries_.size(); }
    std::size_t t() const { return t_; }
    std::size_t acting_dim() const { return t_ * entries_.size(); }
    const std::vector<Rational>& entries() const { return entries_; }

    const Rational& scale_at(std::size_t coord0) const { return entries_[coord0 % entries_.size()]; }

    DiagMap inverse() const;
    DiagMap pow(long e) const;
    bool is_identity() const;

    RowVector apply_vector(const RowVector& x) const;

    bool operator==(const DiagMap& other) const;
    bool operator!=(const DiagMap& other) const { return !(*this == other); }

private:
    std::vector<Rational> entries_;
    std::size_t t_;
};

/// Entry-wise product; both maps must share (L, T).
DiagMap operator*(const DiagMap& a, const DiagMap& b);

/// Image subspace {Mx : x in V}. Dimension is preserved (M is invertible).
Subspace apply(const DiagMap& m, const Subspace& v);

// Coordinate projection onto one coherence period: selects the T coordinates
// {L*(i-1)+k : i = 1..T} (1-based) of a vector in Q^(T*L).
class BlockProjection {
public:
    BlockProjection(std::size_t period, std::size_t l, std::size_t t);

    std::size_t period() const { return period_; }

    /// The selected 1-based coordinates, ascending.
    std::vector<std::size_t> selected_coords() const;

    RowVector project_vector(const RowVector& x) const;

    /// P_k V as a subspace of Q^T.
    Subspace project(const Subspace& v) const;

    /// P_k^t W: embeds a subspace of Q^T back into Q^(T*L) on this period's coordinates.
    Subspace embed(const Subspace& w) const;

private:
    std::size_t period_, l_, t_;
};

} // namespace subalign
