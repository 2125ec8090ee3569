#pragma once

#include "subalign/rational.hpp"

#include <cstddef>
#include <vector>

namespace subalign {

// A linear subspace of Q^n stored as its reduced row-echelon basis. The RREF
// basis is a canonical form: two Subspace values represent the same subspace
// iff their bases are identical entry-wise, so operator== is exact equality.
class Subspace {
public:
    /// Canonicalizes the row span of `rows`. Rows must all have length `ambient_dim`.
    Subspace(RowMatrix rows, std::size_t ambient_dim);

    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    /// Span of the unit vectors e_i for i in `indices` (1-based coordinates).
    static Subspace coordinate(const std::vector<std::size_t>& indices, std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return basis_.size(); }
    const RowMatrix& basis() const { return basis_; }

    bool is_zero() const { return basis_.empty(); }
    bool contains(const RowVector& x) const;
    bool contains(const Subspace& other) const;

    /// 1-based coordinates where some vector of the subspace is nonzero.
    std::vector<std::size_t> support() const;

    bool operator==(const Subspace& other) const;
    bool operator!=(const Subspace& other) const { return !(*this == other); }

private:
    struct trusted_tag {};
    Subspace(trusted_tag, RowMatrix rref_rows, std::size_t ambient_dim);

    std::size_t ambient_dim_;
    RowMatrix basis_;

    friend Subspace sum(const Subspace&, const Subspace&);
    friend Subspace intersect(const Subspace&, const Subspace&);
};

Subspace sum(const Subspace& v, const Subspace& w);

/// Zassenhaus intersection: one RREF pass over the stacked block matrix [V V; W 0].
Subspace intersect(const Subspace& v, const Subspace& w);

/// In-place reduced row echelon form; returns the rank. Zero rows are dropped.
std::size_t rref(RowMatrix& rows);

/// Rank, but gives up counting at `bound + 1`. Used by enumeration-heavy callers.
std::size_t rank_at_most(RowMatrix rows, std::size_t bound);

/// A vector of maximal support in `v`: its support equals the support of the
/// whole subspace. Deterministic (smallest geometric combination that works).
RowVector max_support_vector(const Subspace& v);

/// Ambient dimensions above this cap are rejected with capacity_error.
std::size_t ambient_cap();
void set_ambient_cap(std::size_t cap);

} // namespace subalign
