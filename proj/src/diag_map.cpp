#include "subalign/diag_map.hpp"

#include "subalign/errors.hpp"

#include <string>

namespace subalign {

DiagMap::DiagMap(std::vector<Rational> entries, std::size_t t) : entries_(std::move(entries)), t_(t) {
    if (entries_.empty()) throw input_error("DiagMap needs at least one entry");
    if (t_ == 0) throw input_error("coherence length must be positive");
    for (const auto& entry : entries_)
        if (entry == 0) throw input_error("DiagMap entries must be nonzero");
}

DiagMap DiagMap::identity(std::size_t l, std::size_t t) {
    return DiagMap(std::vector<Rational>(l, Rational(1)), t);
}

DiagMap DiagMap::inverse() const {
    std::vector<Rational> inv;
    inv.reserve(entries_.size());
    for (const auto& entry : entries_) inv.push_back(1 / entry);
    return DiagMap(std::move(inv), t_);
}

DiagMap DiagMap::pow(long e) const {
    if (e == 0) return identity(l(), t_);
    const DiagMap base = e > 0 ? *this : inverse();
    std::vector<Rational> acc(entries_.size(), Rational(1));
    long reps = e > 0 ? e : -e;
    for (long step = 0; step < reps; ++step)
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= base.entries_[i];
    return DiagMap(std::move(acc), t_);
}

bool DiagMap::is_identity() const {
    for (const auto& entry : entries_)
        if (entry != 1) return false;
    return true;
}

RowVector DiagMap::apply_vector(const RowVector& x) const {
    if (x.size() != acting_dim())
        throw input_error("vector length does not match acting dimension");
    RowVector out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * scale_at(j);
    return out;
}

bool DiagMap::operator==(const DiagMap& other) const {
    return t_ == other.t_ && entries_ == other.entries_;
}

DiagMap operator*(const DiagMap& a, const DiagMap& b) {
    if (a.l() != b.l() || a.t() != b.t())
        throw input_error("DiagMap shape mismatch in product");
    std::vector<Rational> prod;
    prod.reserve(a.l());
    for (std::size_t i = 0; i < a.l(); ++i) prod.push_back(a.entries()[i] * b.entries()[i]);
    return DiagMap(std::move(prod), a.t());
}

Subspace apply(const DiagMap& m, const Subspace& v) {
    if (m.acting_dim() != v.ambient_dim())
        throw input_error("DiagMap acting dimension " + std::to_string(m.acting_dim()) +
                          " does not match ambient " + std::to_string(v.ambient_dim()));
    RowMatrix rows;
    rows.reserve(v.dim());
    for (const auto& row : v.basis()) rows.push_back(m.apply_vector(row));
    Subspace image(std::move(rows), v.ambient_dim());
    if (image.dim() != v.dim())
        throw invariant_fault("invertible DiagMap changed subspace dimension");
    return image;
}

BlockProjection::BlockProjection(std::size_t period, std::size_t l, std::size_t t)
    : period_(period), l_(l), t_(t) {
    if (l_ == 0 || t_ == 0) throw input_error("BlockProjection needs positive l and t");
    if (period_ < 1 || period_ > l_)
        throw input_error("period index " + std::to_string(period_) + " out of range 1.." +
                          std::to_string(l_));
}

std::vector<std::size_t> BlockProjection::selected_coords() const {
    std::vector<std::size_t> coords;
    coords.reserve(t_);
    for (std::size_t i = 1; i <= t_; ++i) coords.push_back(l_ * (i - 1) + period_);
    return coords;
}

RowVector BlockProjection::project_vector(const RowVector& x) const {
    if (x.size() != l_ * t_) throw input_error("vector length does not match T*L");
    RowVector out;
    out.reserve(t_);
    for (std::size_t i = 0; i < t_; ++i) out.push_back(x[l_ * i + period_ - 1]);
    return out;
}

Subspace BlockProjection::project(const Subspace& v) const {
    if (v.ambient_dim() != l_ * t_) throw input_error("ambient dimension does not match T*L");
    RowMatrix rows;
    rows.reserve(v.dim());
    for (const auto& row : v.basis()) rows.push_back(project_vector(row));
    return Subspace(std::move(rows), t_);
}

Subspace BlockProjection::embed(const Subspace& w) const {
    if (w.ambient_dim() != t_) throw input_error("embed expects a subspace of Q^T");
    RowMatrix rows;
    rows.reserve(w.dim());
    for (const auto& short_row : w.basis()) {
        RowVector row(l_ * t_, Rational(0));
        for (std::size_t i = 0; i < t_; ++i) row[l_ * i + period_ - 1] = short_row[i];
        rows.push_back(std::move(row));
    }
    return Subspace(std::move(rows), l_ * t_);
}

} // namespace subalign
