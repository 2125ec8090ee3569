#include "subalign/diag_map.hpp"

#include "subalign/errors.hpp"
#include "subalign/sampling.hpp"

#include <doctest.h>

#include <random>

using namespace subalign;

namespace {

DiagMap diag(std::initializer_list<long> entries, std::size_t t = 1) {
    std::vector<Rational> values;
    for (long e : entries) values.push_back(make_rational(e));
    return DiagMap(std::move(values), t);
}

} // namespace

TEST_CASE("identity map leaves subspaces unchanged") {
    const Subspace v = Subspace({{make_rational(1), make_rational(1)}}, 2);
    CHECK(apply(DiagMap::identity(2), v) == v);
}

TEST_CASE("diagonal scaling renormalizes the basis") {
    const Subspace v = Subspace({{make_rational(1), make_rational(1)}}, 2);
    const Subspace image = apply(diag({2, 3}), v);
    CHECK(image.basis() == RowMatrix{{make_rational(1), make_rational(3, 2)}});
}

TEST_CASE("coordinate axes are eigendirections") {
    const Subspace e1 = Subspace::coordinate({1}, 2);
    CHECK(apply(diag({7, 9}), e1) == e1);
}

TEST_CASE("zero entries are rejected") {
    CHECK_THROWS_AS(diag({1, 0}), input_error);
    CHECK_THROWS_AS(DiagMap({}, 1), input_error);
}

TEST_CASE("powers, products and inverses act entry-wise") {
    const DiagMap m = diag({2, 3});
    CHECK(m.pow(0).is_identity());
    CHECK(m.pow(2).entries() == std::vector<Rational>{make_rational(4), make_rational(9)});
    CHECK(m.pow(-1).entries() ==
          std::vector<Rational>{make_rational(1, 2), make_rational(1, 3)});
    CHECK((m * m.inverse()).is_identity());
    CHECK_THROWS_AS(m * diag({1, 2, 3}), input_error);
}

TEST_CASE("applying a map then its inverse restores the subspace") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(substream_seed(0xE0, i));
        const std::size_t l = static_cast<std::size_t>(draw_int(rng, 1, 8));
        const Subspace v =
            random_subspace(rng, l, static_cast<std::size_t>(draw_int(rng, 0, static_cast<long>(l))));
        const DiagMap m = random_diag_map(rng, l, 1, 1 << 10);
        CHECK(apply(m, apply(m.inverse(), v)) == v);
    }
}

TEST_CASE("block maps repeat entries over coherence periods") {
    const DiagMap m = diag({5}, 2); // l = 1, t = 2 acts as diag(5, 5)
    CHECK(m.acting_dim() == 2);
    const RowVector image = m.apply_vector({make_rational(1), make_rational(2)});
    CHECK(image == RowVector{make_rational(5), make_rational(10)});
}

TEST_CASE("block projection selects one coherence period") {
    const BlockProjection p(1, 2, 2); // k = 1 with T = 2, L = 2
    CHECK(p.selected_coords() == std::vector<std::size_t>{1, 3});

    const RowVector x = {make_rational(10), make_rational(20), make_rational(30),
                         make_rational(40)};
    CHECK(p.project_vector(x) == RowVector{make_rational(10), make_rational(30)});
    CHECK_THROWS_AS(BlockProjection(3, 2, 2), input_error);
}

TEST_CASE("projection and embedding round-trip per period") {
    std::mt19937_64 rng(12);
    const std::size_t l = 3, t = 2;
    const Subspace w = random_subspace(rng, t, 1);
    for (std::size_t k = 1; k <= l; ++k) {
        const BlockProjection p(k, l, t);
        const Subspace embedded = p.embed(w);
        CHECK(embedded.dim() == w.dim());
        CHECK(p.project(embedded) == w);
        for (std::size_t other = 1; other <= l; ++other)
            if (other != k) CHECK(BlockProjection(other, l, t).project(embedded).is_zero());
    }
}
