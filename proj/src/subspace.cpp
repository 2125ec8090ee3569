#include "subalign/subspace.hpp"

#include "subalign/errors.hpp"

#include <algorithm>
#include <atomic>
#include <string>

namespace subalign {

namespace {

std::atomic<std::size_t> g_ambient_cap{64};

void check_ambient(std::size_t ambient_dim) {
    const std::size_t cap = ambient_cap();
    if (ambient_dim > cap)
        throw capacity_error("ambient dimension " + std::to_string(ambient_dim) +
                             " exceeds cap " + std::to_string(cap));
}

} // namespace

std::size_t ambient_cap() { return g_ambient_cap.load(); }

void set_ambient_cap(std::size_t cap) { g_ambient_cap.store(cap); }

std::size_t rref(RowMatrix& rows) {
    const std::size_t m = rows.size();
    if (m == 0) return 0;
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[rank], rows[pivot]);
        if (rows[rank][col] != 1) {
            const Rational inv = rows[rank][col];
            for (std::size_t j = col; j < n; ++j) rows[rank][j] /= inv;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rational factor = rows[r][col];
            for (std::size_t j = col; j < n; ++j) rows[r][j] -= factor * rows[rank][j];
        }
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

std::size_t rank_at_most(RowMatrix rows, std::size_t bound) {
    const std::size_t m = rows.size();
    if (m == 0) return 0;
    const std::size_t n = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[rank], rows[pivot]);
        if (rank + 1 > bound) return bound + 1;
        for (std::size_t r = rank + 1; r < m; ++r) {
            if (rows[r][col] == 0) continue;
            const Rational factor = rows[r][col] / rows[rank][col];
            for (std::size_t j = col; j < n; ++j) rows[r][j] -= factor * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

Subspace::Subspace(RowMatrix rows, std::size_t ambient_dim) : ambient_dim_(ambient_dim) {
    check_ambient(ambient_dim);
    for (const auto& row : rows)
        if (row.size() != ambient_dim)
            throw input_error("row length " + std::to_string(row.size()) +
                              " does not match ambient dimension " + std::to_string(ambient_dim));
    basis_ = std::move(rows);
    rref(basis_);
}

Subspace::Subspace(trusted_tag, RowMatrix rref_rows, std::size_t ambient_dim)
    : ambient_dim_(ambient_dim), basis_(std::move(rref_rows)) {}

Subspace Subspace::zero(std::size_t ambient_dim) {
    check_ambient(ambient_dim);
    return Subspace(trusted_tag{}, {}, ambient_dim);
}

Subspace Subspace::full(std::size_t ambient_dim) {
    check_ambient(ambient_dim);
    RowMatrix rows(ambient_dim, RowVector(ambient_dim, Rational(0)));
    for (std::size_t i = 0; i < ambient_dim; ++i) rows[i][i] = 1;
    return Subspace(trusted_tag{}, std::move(rows), ambient_dim);
}

Subspace Subspace::coordinate(const std::vector<std::size_t>& indices, std::size_t ambient_dim) {
    check_ambient(ambient_dim);
    std::vector<std::size_t> sorted(indices);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    RowMatrix rows;
    rows.reserve(sorted.size());
    for (std::size_t idx : sorted) {
        if (idx < 1 || idx > ambient_dim)
            throw input_error("coordinate index " + std::to_string(idx) +
                              " out of range 1.." + std::to_string(ambient_dim));
        RowVector row(ambient_dim, Rational(0));
        row[idx - 1] = 1;
        rows.push_back(std::move(row));
    }
    return Subspace(trusted_tag{}, std::move(rows), ambient_dim);
}

bool Subspace::contains(const RowVector& x) const {
    if (x.size() != ambient_dim_)
        throw input_error("vector length does not match ambient dimension");
    RowVector residual = x;
    for (const auto& row : basis_) {
        std::size_t pivot = 0;
        while (pivot < ambient_dim_ && row[pivot] == 0) ++pivot;
        if (residual[pivot] == 0) continue;
        const Rational factor = residual[pivot];
        for (std::size_t j = pivot; j < ambient_dim_; ++j) residual[j] -= factor * row[j];
    }
    for (const auto& entry : residual)
        if (entry != 0) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_)
        throw input_error("ambient dimension mismatch");
    for (const auto& row : other.basis_)
        if (!contains(row)) return false;
    return true;
}

std::vector<std::size_t> Subspace::support() const {
    std::vector<std::size_t> coords;
    for (std::size_t j = 0; j < ambient_dim_; ++j) {
        for (const auto& row : basis_) {
            if (row[j] != 0) {
                coords.push_back(j + 1);
                break;
            }
        }
    }
    return coords;
}

bool Subspace::operator==(const Subspace& other) const {
    return ambient_dim_ == other.ambient_dim_ && basis_ == other.basis_;
}

Subspace sum(const Subspace& v, const Subspace& w) {
    if (v.ambient_dim() != w.ambient_dim())
        throw input_error("ambient dimension mismatch in sum");
    RowMatrix rows = v.basis();
    rows.insert(rows.end(), w.basis().begin(), w.basis().end());
    rref(rows);
    return Subspace(Subspace::trusted_tag{}, std::move(rows), v.ambient_dim());
}

Subspace intersect(const Subspace& v, const Subspace& w) {
    const std::size_t n = v.ambient_dim();
    if (n != w.ambient_dim())
        throw input_error("ambient dimension mismatch in intersect");

    // Stacked block matrix [V V; W 0]: after one RREF pass the rows whose left
    // half vanished carry an intersection basis in their right half.
    RowMatrix stacked;
    stacked.reserve(v.dim() + w.dim());
    for (const auto& row : v.basis()) {
        RowVector wide(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            wide[j] = row[j];
            wide[n + j] = row[j];
        }
        stacked.push_back(std::move(wide));
    }
    for (const auto& row : w.basis()) {
        RowVector wide(2 * n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) wide[j] = row[j];
        stacked.push_back(std::move(wide));
    }
    const std::size_t total_rank = rref(stacked);

    RowMatrix meet;
    std::size_t sum_dim = 0;
    for (const auto& row : stacked) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (row[j] != 0) {
                left_zero = false;
                break;
            }
        }
        if (left_zero) {
            meet.emplace_back(row.begin() + static_cast<long>(n), row.end());
        } else {
            ++sum_dim;
        }
    }
    // dim(V+W) + dim(V∩W) = dim V + dim W, exactly.
    if (sum_dim + meet.size() != v.dim() + w.dim() || total_rank != v.dim() + w.dim())
        throw invariant_fault("dimension formula violated in intersection");
    rref(meet); // the block is already echelon; this renormalizes cheaply
    return Subspace(Subspace::trusted_tag{}, std::move(meet), n);
}

RowVector max_support_vector(const Subspace& v) {
    const auto& basis = v.basis();
    const std::size_t n = v.ambient_dim();
    if (basis.empty()) return RowVector(n, Rational(0));
    const std::size_t target = v.support().size();
    // Combine basis rows with weights t^i; finitely many t can hit a
    // cancellation on any fixed coordinate, so small t succeed quickly.
    for (long t = 1;; ++t) {
        RowVector candidate(n, Rational(0));
        Rational weight(1);
        for (const auto& row : basis) {
            for (std::size_t j = 0; j < n; ++j)
                if (row[j] != 0) candidate[j] += weight * row[j];
            weight *= t;
        }
        if (support_size(candidate) == target) return candidate;
    }
}

} // namespace subalign
