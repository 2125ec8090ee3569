#include "subalign/alignment.hpp"

#include "subalign/errors.hpp"

#include <algorithm>
#include <string>

namespace subalign {

Subspace extend(const Subspace& v, const DiagMap& m, std::size_t n) {
    if (m.acting_dim() != v.ambient_dim())
        throw input_error("dimension mismatch in extend");
    Subspace acc = v;
    Subspace image = v;
    for (std::size_t step = 0; step < n; ++step) {
        image = apply(m, image); // M^(step+1) V
        acc = sum(acc, image);
    }
    return acc;
}

Subspace contract(const Subspace& v, const DiagMap& m, std::size_t n) {
    if (m.acting_dim() != v.ambient_dim())
        throw input_error("dimension mismatch in contract");
    Subspace acc = v;
    Subspace image = v;
    for (std::size_t step = 0; step < n; ++step) {
        image = apply(m, image);
        acc = intersect(acc, image);
        if (acc.is_zero()) break; // further intersections stay zero
    }
    return acc;
}

WidthReport alignment_width(const Subspace& v, const DiagMap& m) {
    WidthReport report;
    report.dim_before = static_cast<long>(v.dim());
    report.dim_after_extend = static_cast<long>(extend(v, m, 1).dim());
    report.dim_after_contract = static_cast<long>(contract(v, m, 1).dim());
    const long by_extend = report.dim_after_extend - report.dim_before;
    const long by_contract = report.dim_before - report.dim_after_contract;
    if (by_extend != by_contract)
        throw invariant_fault("extension and contraction widths disagree");
    report.width = by_extend;
    return report;
}

SecondOrderReport second_order(const Subspace& v, const DiagMap& m1, const DiagMap& m2) {
    const long base = alignment_width(v, m1).width;
    SecondOrderReport report;
    report.ext2 = alignment_width(extend(v, m2, 1), m1).width - base;
    report.con2 = base - alignment_width(contract(v, m2, 1), m1).width;
    if (report.ext2 > report.con2)
        throw invariant_fault("second-order extension width exceeded contraction width");
    return report;
}

Rational average_width(const Subspace& v, const TFamily& family) {
    if (family.empty()) throw input_error("average width of an empty family");
    Rational total(0);
    for (const auto& m : family.members) total += alignment_width(v, m).width;
    return total / make_rational(static_cast<long>(family.size()));
}

Subspace grid_span(const RowVector& x, const std::vector<DiagMap>& maps,
                   const std::vector<std::size_t>& ns) {
    if (maps.size() != ns.size())
        throw input_error("grid_span needs one exponent range per map");
    if (maps.empty()) return Subspace({x}, x.size());
    const std::size_t dim = maps.front().acting_dim();
    for (const auto& m : maps)
        if (m.acting_dim() != dim) throw input_error("maps must share the acting dimension");
    if (x.size() != dim) throw input_error("vector length does not match acting dimension");

    // Walk the exponent box in mixed-radix order, reusing the previous image:
    // bumping digit i multiplies by M_i; resetting digits applies inverses once.
    RowMatrix rows;
    std::vector<std::size_t> alpha(maps.size(), 0);
    RowVector current = x;
    rows.push_back(current);
    while (true) {
        std::size_t digit = 0;
        while (digit < alpha.size() && alpha[digit] == ns[digit]) ++digit;
        if (digit == alpha.size()) break;
        for (std::size_t i = 0; i < digit; ++i) {
            current = maps[i].pow(-static_cast<long>(alpha[i])).apply_vector(current);
            alpha[i] = 0;
        }
        alpha[digit] += 1;
        current = maps[digit].apply_vector(current);
        rows.push_back(current);
    }
    return Subspace(std::move(rows), dim);
}

namespace {

struct WalkFrame {
    Subspace w;
    std::size_t n_tilde = 0;
    WalkCase case_tag = WalkCase::full_extension;
    std::vector<WalkStep> ops;
};

std::size_t eligible_index(const Subspace& w, const TFamily& family,
                           const std::vector<std::size_t>& s, const Rational& avg) {
    const Rational twice = 2 * avg;
    for (std::size_t idx : s) {
        if (alignment_width(w, family.members[idx - 1]).width <= twice) return idx;
    }
    throw invariant_fault("no family index with width at most twice the average");
}

WalkFrame walk_recurse(Subspace w, const TFamily& family, std::vector<std::size_t> s,
                       const std::vector<Rational>& thresholds, std::size_t level,
                       WalkMode mode) {
    if (level == thresholds.size()) return WalkFrame{std::move(w), 0, WalkCase::full_extension, {}};

    const Rational avg = average_width(w, family);
    const std::size_t k = eligible_index(w, family, s, avg);
    const DiagMap& m = family.members[k - 1];
    const bool extending = mode == WalkMode::extension;

    const Subspace stepped = extending ? extend(w, m, 1) : contract(w, m, 1);
    const Rational stepped_avg = average_width(stepped, family);
    // Break exactly when the mode's own step would push the average width past
    // the next threshold. The averaged second-order inequality then guarantees
    // the opposite operator brings the average width down to 2a_{n-1} - a_n.
    if (stepped_avg > thresholds[level]) {
        return WalkFrame{extending ? contract(w, m, 1) : extend(w, m, 1),
                         1,
                         WalkCase::contraction_break,
                         {WalkStep{extending ? 'c' : 'e', k}}};
    }

    std::vector<std::size_t> rest;
    rest.reserve(s.size() - 1);
    for (std::size_t idx : s)
        if (idx != k) rest.push_back(idx);
    WalkFrame child = walk_recurse(stepped, family, std::move(rest), thresholds, level + 1, mode);
    child.n_tilde += 1;
    child.ops.insert(child.ops.begin(), WalkStep{extending ? 'e' : 'c', k});
    return child;
}

} // namespace

WalkResult adaptive_walk(const Subspace& w, const TFamily& family,
                         std::vector<std::size_t> s,
                         const std::vector<Rational>& thresholds, WalkMode mode) {
    if (family.empty()) throw input_error("adaptive_walk needs a nonempty family");
    for (const auto& m : family.members)
        if (m.acting_dim() != w.ambient_dim())
            throw input_error("family acting dimension does not match the subspace");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw input_error("duplicate family indices in s");
    for (std::size_t idx : s)
        if (idx < 1 || idx > family.size())
            throw input_error("family index out of range");
    // n <= |s| - M/2, compared as 2n + M <= 2|s| to stay in integers.
    if (2 * thresholds.size() + family.size() > 2 * s.size())
        throw input_error("too many thresholds for the index budget |s| - M/2");
    const Rational base_avg = average_width(w, family);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const Rational& prev = i == 0 ? base_avg : thresholds[i - 1];
        if (thresholds[i] <= prev)
            throw input_error("thresholds must be strictly increasing and start above the average width");
    }

    WalkFrame frame = walk_recurse(w, family, std::move(s), thresholds, 0, mode);

    WalkResult result{std::move(frame.w), frame.n_tilde, Rational(0), frame.case_tag,
                      std::move(frame.ops)};
    if (result.n_tilde > 0) {
        result.delta = 2 * base_avg;
        for (std::size_t i = 0; i + 1 < result.n_tilde; ++i) result.delta += 2 * thresholds[i];
    }
    return result;
}

} // namespace subalign
