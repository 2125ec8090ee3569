#include "subalign/subspace.hpp"

#include "subalign/errors.hpp"
#include "subalign/sampling.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace subalign;

namespace {

RowVector row(std::initializer_list<long> entries) {
    RowVector out;
    for (long e : entries) out.push_back(make_rational(e));
    return out;
}

Subspace span(std::initializer_list<std::initializer_list<long>> rows_in, std::size_t ambient) {
    RowMatrix rows;
    for (const auto& r : rows_in) rows.push_back(row(r));
    return Subspace(std::move(rows), ambient);
}

} // namespace

TEST_CASE("canonicalize reduces dependent rows") {
    const Subspace v = span({{2, 4}, {1, 2}}, 2);
    CHECK(v.dim() == 1);
    CHECK(v.basis() == RowMatrix{row({1, 2})});
    CHECK(oracles::naive_rank({row({2, 4}), row({1, 2})}) == 1);
}

TEST_CASE("canonicalize keeps an RREF basis as-is") {
    const Subspace v = span({{1, 0}, {0, 1}}, 2);
    CHECK(v.dim() == 2);
    CHECK(v == Subspace::full(2));
}

TEST_CASE("empty row set gives the zero subspace") {
    const Subspace v = Subspace({}, 3);
    CHECK(v.dim() == 0);
    CHECK(v.is_zero());
    CHECK(v == Subspace::zero(3));
}

TEST_CASE("ragged rows are rejected") {
    CHECK_THROWS_AS(Subspace({row({1, 2}), row({1, 2, 3})}, 2), input_error);
}

TEST_CASE("sum spans the union") {
    const Subspace e1 = Subspace::coordinate({1}, 2);
    const Subspace e2 = Subspace::coordinate({2}, 2);
    CHECK(sum(e1, e2) == Subspace::full(2));

    const Subspace v = span({{1, 1, 0}}, 3);
    CHECK(sum(v, v) == v);
    CHECK(sum(v, span({{0, 1, 1}}, 3)).dim() == 2);
    CHECK(oracles::naive_rank({row({1, 1, 0}), row({0, 1, 1})}) == 2);
    CHECK_THROWS_AS(sum(e1, Subspace::zero(3)), input_error);
}

TEST_CASE("intersection matches the kernel-method oracle") {
    const Subspace left = span({{1, 0, 0}, {0, 1, 0}}, 3);
    const Subspace right = span({{0, 1, 0}, {0, 0, 1}}, 3);
    const Subspace meet = intersect(left, right);
    CHECK(meet == Subspace::coordinate({2}, 3));
    for (const auto& x : oracles::intersection_vectors(left.basis(), right.basis(), 3))
        CHECK(meet.contains(x));

    CHECK(intersect(left, left) == left);
    CHECK(intersect(Subspace::coordinate({1}, 2), Subspace::coordinate({2}, 2)).is_zero());
    CHECK_THROWS_AS(intersect(left, Subspace::zero(2)), input_error);
}

TEST_CASE("membership reduction") {
    const Subspace v = span({{1, 0}, {0, 1}}, 2);
    CHECK(v.contains(row({1, 0})));
    CHECK(Subspace::coordinate({1}, 2).contains(row({0, 0})));
    CHECK_FALSE(Subspace::coordinate({1}, 2).contains(row({1, 1})));
    CHECK_THROWS_AS(v.contains(row({1, 0, 0})), input_error);
}

TEST_CASE("coordinate subspaces") {
    const Subspace v = Subspace::coordinate({1, 3}, 3);
    CHECK(v.dim() == 2);
    CHECK(v.contains(row({5, 0, -2})));
    CHECK_FALSE(v.contains(row({0, 1, 0})));
    CHECK(Subspace::coordinate({}, 3).is_zero());
    CHECK(Subspace::coordinate({1, 2, 3}, 3) == Subspace::full(3));
    CHECK_THROWS_AS(Subspace::coordinate({4}, 3), input_error);
    CHECK_THROWS_AS(Subspace::coordinate({0}, 3), input_error);
}

TEST_CASE("dimension formula holds exactly on random pairs") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        std::mt19937_64 rng(substream_seed(0xD1, i));
        const std::size_t l = static_cast<std::size_t>(draw_int(rng, 1, 10));
        const Subspace v =
            random_subspace(rng, l, static_cast<std::size_t>(draw_int(rng, 0, static_cast<long>(l))));
        const Subspace w =
            random_subspace(rng, l, static_cast<std::size_t>(draw_int(rng, 0, static_cast<long>(l))));
        CHECK(sum(v, w).dim() + intersect(v, w).dim() == v.dim() + w.dim());
        if (i < 50) CHECK(intersect(v, w).dim() == oracles::intersection_dim(v, w));
    }
}

TEST_CASE("canonicalize is a projection") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(substream_seed(0xD2, i));
        const Subspace v = random_subspace(rng, 8, static_cast<std::size_t>(draw_int(rng, 0, 8)));
        CHECK(Subspace(v.basis(), v.ambient_dim()) == v);
    }
}

TEST_CASE("sum and intersect are commutative and associative") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(substream_seed(0xD3, i));
        const std::size_t l = 6;
        const Subspace a = random_subspace(rng, l, static_cast<std::size_t>(draw_int(rng, 0, 4)));
        const Subspace b = random_subspace(rng, l, static_cast<std::size_t>(draw_int(rng, 0, 4)));
        const Subspace c = random_subspace(rng, l, static_cast<std::size_t>(draw_int(rng, 0, 4)));
        CHECK(sum(a, b) == sum(b, a));
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(sum(sum(a, b), c) == sum(a, sum(b, c)));
        CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    }
}

TEST_CASE("max_support_vector attains the subspace support") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(substream_seed(0xD4, i));
        const Subspace v = random_subspace(rng, 9, static_cast<std::size_t>(draw_int(rng, 1, 5)));
        const RowVector x = max_support_vector(v);
        CHECK(v.contains(x));
        CHECK(support_size(x) == v.support().size());
    }
}

TEST_CASE("ambient cap guards desk scale") {
    CHECK(ambient_cap() == 64);
    CHECK_THROWS_AS(Subspace::zero(65), capacity_error);
    set_ambient_cap(128);
    CHECK(Subspace::zero(65).ambient_dim() == 65);
    set_ambient_cap(64);
}
