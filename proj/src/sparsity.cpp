#include "subalign/sparsity.hpp"

#include "subalign/diag_map.hpp"
#include "subalign/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

namespace subalign {

namespace {

void check_shape(const Subspace& v, std::size_t l, std::size_t t) {
    if (l == 0 || t == 0) throw input_error("l and t must be positive");
    if (v.ambient_dim() != l * t)
        throw input_error("ambient dimension " + std::to_string(v.ambient_dim()) +
                          " does not match t*l = " + std::to_string(l * t));
}

// dim(V ∩ R^S) = dim V - rank of the basis restricted to the complement of S.
bool section_dim_at_least(const RowMatrix& basis, const std::vector<std::size_t>& complement0,
                          std::size_t n) {
    const std::size_t d = basis.size();
    if (d < n) return false;
    if (complement0.empty()) return true;
    RowMatrix restricted;
    restricted.reserve(d);
    for (const auto& row : basis) {
        RowVector slim;
        slim.reserve(complement0.size());
        for (std::size_t j : complement0) slim.push_back(row[j]);
        restricted.push_back(std::move(slim));
    }
    return rank_at_most(std::move(restricted), d - n) <= d - n;
}

// Ascending-size, lexicographic subset search over 1-based coordinates.
// Returns the first support whose section has dimension >= n.
std::vector<std::size_t> minimal_support(const Subspace& v, std::size_t n) {
    const std::size_t total = v.ambient_dim();
    std::vector<std::size_t> chosen;
    for (std::size_t size = n; size <= total; ++size) {
        std::vector<std::size_t> subset(size);
        std::iota(subset.begin(), subset.end(), 0);
        while (true) {
            std::vector<std::size_t> complement0;
            complement0.reserve(total - size);
            std::size_t cursor = 0;
            for (std::size_t j = 0; j < total; ++j) {
                if (cursor < size && subset[cursor] == j) {
                    ++cursor;
                } else {
                    complement0.push_back(j);
                }
            }
            if (section_dim_at_least(v.basis(), complement0, n)) {
                chosen.reserve(size);
                for (std::size_t j : subset) chosen.push_back(j + 1);
                return chosen;
            }
            // next combination
            std::size_t i = size;
            while (i > 0 && subset[i - 1] == total - size + i - 1) --i;
            if (i == 0) break;
            ++subset[i - 1];
            for (std::size_t j = i; j < size; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    throw invariant_fault("support search exhausted below the full coordinate set");
}

std::size_t period_of_coord0(std::size_t coord0, std::size_t l) { return coord0 % l + 1; }
std::size_t copy_of_coord0(std::size_t coord0, std::size_t l) { return coord0 / l + 1; }

// --- t = 2 refined search -------------------------------------------------

struct SectionInfo {
    Subspace v0;                   // V with the zero-pattern periods killed
    std::vector<Subspace> proj;    // P_k v0 per period (ambient t)
};

class BlockSearch {
public:
    BlockSearch(const Subspace& v, std::size_t n, std::size_t l, std::size_t t)
        : v_(v), n_(n), l_(l), t_(t) {
        projections_.reserve(l_);
        for (std::size_t k = 1; k <= l_; ++k) projections_.emplace_back(k, l_, t_);
    }

    // Pattern enumeration in ascending total dimension; the first feasible
    // pattern (lexicographically smallest) wins.
    SparsityResult run() {
        SparsityResult result;
        result.n = n_;
        result.heuristic = false;

        // P_k V itself is always a feasible allocation; start from there.
        std::vector<Subspace> fallback;
        std::size_t fallback_value = 0;
        for (std::size_t k = 1; k <= l_; ++k) {
            Subspace pk = projections_[k - 1].project(v_);
            fallback_value += pk.dim();
            fallback.push_back(std::move(pk));
        }

        for (std::size_t m = n_; m < fallback_value; ++m) {
            std::vector<std::size_t> pattern(l_, 0);
            if (try_patterns(pattern, 0, m)) {
                result.value = m;
                result.period_subspaces = std::move(witness_);
                return result;
            }
        }
        result.value = fallback_value;
        result.period_subspaces = std::move(fallback);
        return result;
    }

private:
    bool try_patterns(std::vector<std::size_t>& pattern, std::size_t k, std::size_t remaining) {
        if (k == l_) return remaining == 0 && feasible(pattern);
        const std::size_t max_here = std::min(remaining, t_);
        for (std::size_t d = 0; d <= max_here; ++d) {
            pattern[k] = d;
            if (remaining - d <= (l_ - k - 1) * t_ && try_patterns(pattern, k + 1, remaining - d))
                return true;
        }
        pattern[k] = 0;
        return false;
    }

    const SectionInfo& section(const std::vector<std::size_t>& pattern) {
        std::uint32_t mask = 0;
        for (std::size_t k = 0; k < l_; ++k)
            if (pattern[k] > 0) mask |= (1u << k);
        auto it = sections_.find(mask);
        if (it != sections_.end()) return it->second;

        std::vector<std::size_t> alive;
        for (std::size_t k = 0; k < l_; ++k) {
            if (!(mask & (1u << k))) continue;
            for (std::size_t i = 0; i < t_; ++i) alive.push_back(l_ * i + k + 1);
        }
        SectionInfo info{intersect(v_, Subspace::coordinate(alive, l_ * t_)), {}};
        info.proj.reserve(l_);
        for (std::size_t k = 1; k <= l_; ++k)
            info.proj.push_back(projections_[k - 1].project(info.v0));
        return sections_.emplace(mask, std::move(info)).first->second;
    }

    bool feasible(const std::vector<std::size_t>& pattern) {
        const SectionInfo& info = section(pattern);
        if (info.v0.dim() < n_) return false;

        // Periods allotted one dimension whose section projection is full need
        // an explicit line; everything else is unconstrained.
        std::vector<std::size_t> constrained;
        for (std::size_t k = 0; k < l_; ++k) {
            if (pattern[k] == 1 && info.proj[k].dim() > 1) constrained.push_back(k);
        }

        std::vector<Subspace> lines(l_, Subspace::zero(t_));
        if (!place_lines(info, constrained, 0, info.v0, lines)) return false;

        witness_.clear();
        for (std::size_t k = 0; k < l_; ++k) {
            if (pattern[k] == 0) {
                witness_.push_back(Subspace::zero(t_));
            } else if (pattern[k] == t_) {
                witness_.push_back(Subspace::full(t_));
            } else if (std::find(constrained.begin(), constrained.end(), k) != constrained.end()) {
                witness_.push_back(lines[k]);
            } else {
                // projection is at most a line already; pad if it is zero
                witness_.push_back(info.proj[k].dim() == 1
                                       ? info.proj[k]
                                       : Subspace::coordinate({1}, t_));
            }
        }
        return true;
    }

    // Candidate lines per period: the coordinate axes plus the projections of
    // the section's RREF basis rows.
    std::vector<Subspace> candidate_lines(const SectionInfo& info, std::size_t k) const {
        std::vector<Subspace> lines;
        lines.push_back(Subspace::coordinate({1}, t_));
        lines.push_back(Subspace::coordinate({2}, t_));
        for (const auto& row : info.v0.basis()) {
            RowVector p = projections_[k].project_vector(row);
            if (support_size(p) == 0) continue;
            Subspace line({p}, t_);
            if (std::find(lines.begin(), lines.end(), line) == lines.end())
                lines.push_back(std::move(line));
        }
        return lines;
    }

    bool place_lines(const SectionInfo& info, const std::vector<std::size_t>& constrained,
                     std::size_t pos, const Subspace& current, std::vector<Subspace>& lines) {
        if (current.dim() < n_) return false;
        if (pos == constrained.size()) return true;
        const std::size_t k = constrained[pos];
        for (const Subspace& line : candidate_lines(info, k)) {
            Subspace restricted = restrict_to_line(current, k, line);
            if (restricted.dim() < n_) continue;
            lines[k] = line;
            if (place_lines(info, constrained, pos + 1, restricted, lines)) return true;
        }
        return false;
    }

    // {x in U : P_k x is a multiple of the line direction}: one linear
    // functional, so the result loses at most one dimension.
    Subspace restrict_to_line(const Subspace& u, std::size_t k, const Subspace& line) const {
        const RowVector& w = line.basis().front();
        std::vector<Rational> values;
        values.reserve(u.dim());
        for (const auto& row : u.basis()) {
            RowVector p = projections_[k].project_vector(row);
            values.push_back(w[1] * p[0] - w[0] * p[1]);
        }
        std::size_t pivot = values.size();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == values.size()) return u;
        RowMatrix rows;
        rows.reserve(u.dim() - 1);
        for (std::size_t i = 0; i < u.dim(); ++i) {
            if (i == pivot) continue;
            RowVector combo = u.basis()[i];
            const Rational factor = values[i] / values[pivot];
            if (factor != 0) {
                const RowVector& prow = u.basis()[pivot];
                for (std::size_t j = 0; j < combo.size(); ++j) combo[j] -= factor * prow[j];
            }
            rows.push_back(std::move(combo));
        }
        return Subspace(std::move(rows), u.ambient_dim());
    }

    const Subspace& v_;
    std::size_t n_, l_, t_;
    std::vector<BlockProjection> projections_;
    std::map<std::uint32_t, SectionInfo> sections_;
    std::vector<Subspace> witness_;
};

} // namespace

std::size_t support_dim(const Subspace& v, std::size_t l, std::size_t t) {
    check_shape(v, l, t);
    std::size_t total = 0;
    for (std::size_t k = 1; k <= l; ++k) total += BlockProjection(k, l, t).project(v).dim();
    return total;
}

SparsityResult n_sparsity(const Subspace& v, std::size_t n, std::size_t l, std::size_t t) {
    check_shape(v, l, t);
    if (n < 1) throw input_error("sparsity target must be at least 1");
    if (l * t > kSparsityEnumerationCap)
        throw capacity_error("t*l = " + std::to_string(l * t) + " exceeds the enumeration cap " +
                             std::to_string(kSparsityEnumerationCap));

    SparsityResult result;
    result.n = n;
    if (n > v.dim()) return result; // infinite

    if (t == 1) {
        result.support = minimal_support(v, n);
        result.value = result.support.size();
        return result;
    }

    if (t == 2) {
        BlockSearch search(v, n, l, t);
        return search.run();
    }

    // t >= 3: coordinate allocations only. The minimum over coordinate
    // structures is an upper bound on the true block sparsity.
    result.heuristic = true;
    const std::vector<std::size_t> support = minimal_support(v, n);
    result.value = support.size();
    std::vector<std::vector<std::size_t>> per_period(l);
    for (std::size_t coord : support)
        per_period[period_of_coord0(coord - 1, l) - 1].push_back(copy_of_coord0(coord - 1, l));
    for (std::size_t k = 0; k < l; ++k)
        result.period_subspaces.push_back(per_period[k].empty()
                                              ? Subspace::zero(t)
                                              : Subspace::coordinate(per_period[k], t));
    return result;
}

} // namespace subalign
