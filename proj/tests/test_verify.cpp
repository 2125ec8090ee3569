#include "subalign/verify.hpp"

#include "subalign/errors.hpp"
#include "subalign/json_io.hpp"
#include "subalign/sampling.hpp"

#include <doctest.h>

#include <random>

using namespace subalign;
using nlohmann::json;

namespace {

// Alignment chain for three users over L = 2n+1: user 1 spans the n+1 powers
// of the circular cross link product; users 2 and 3 ride shifted copies so
// interference collapses to one n-dimensional space per receiver.
json three_user_chain(std::size_t n) {
    const json t_factors = json::array({json{{"h", {1, 2}}}, json{{"hinv", {2, 1}}},
                                        json{{"h", {2, 3}}}, json{{"hinv", {3, 2}}},
                                        json{{"h", {3, 1}}}, json{{"hinv", {1, 3}}}});
    json user1{{"vector", "ones"}, {"maps", json::array({t_factors})}, {"ns", {n}}};
    json user2{{"vector", "ones"},
               {"vector_maps", json::array({json{{"hinv", {3, 2}}}, json{{"h", {3, 1}}}})},
               {"maps", json::array({t_factors})},
               {"ns", {n - 1}}};
    json vm3 = json::array({json{{"hinv", {2, 3}}}, json{{"h", {2, 1}}}});
    for (const auto& f : t_factors) vm3.push_back(f);
    json user3{{"vector", "ones"},
               {"vector_maps", vm3},
               {"maps", json::array({t_factors})},
               {"ns", {n - 1}}};
    return json{{"users", json::array({user1, user2, user3})}};
}

} // namespace

TEST_CASE("orthogonal schemes are always feasible") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelInstance inst = ChannelInstance::sample(4, 8, 1, 16, seed);
        const Scheme scheme = build_orthogonal_scheme(4, 8, 1, 2);
        const VerifyReport report = verify_decoding(inst, scheme);
        CHECK(report.feasible);
        CHECK(report.dof == Rational(1)); // 4*2/8
        CHECK(*report.eps == make_rational(1, 2));
    }
}

TEST_CASE("full-space schemes fail at every receiver") {
    const ChannelInstance inst = ChannelInstance::sample(3, 2, 1, 8, 3);
    Scheme scheme;
    scheme.k = 3;
    scheme.l = 2;
    scheme.t = 1;
    scheme.subspaces.assign(3, Subspace::full(2));
    const VerifyReport report = verify_decoding(inst, scheme);
    CHECK_FALSE(report.feasible);
    for (const auto& r : report.per_receiver) CHECK(r.overlap_dim == 2);
}

TEST_CASE("random one-dimensional signals are generically feasible at K=3, L=3") {
    const ChannelInstance inst = ChannelInstance::sample(3, 3, 1, 16, 5);
    SearchStats stats;
    const auto scheme = random_search(inst, 1, 16, 5, &stats);
    REQUIRE(scheme.has_value());
    CHECK(verify_decoding(inst, *scheme).feasible);
    CHECK(stats.trials >= 1);
}

TEST_CASE("scheme and instance shapes must agree") {
    const ChannelInstance inst = ChannelInstance::sample(3, 3, 1, 16, 5);
    Scheme wrong = build_orthogonal_scheme(4, 3, 1, 0);
    CHECK_THROWS_AS(verify_decoding(inst, wrong), input_error);
}

TEST_CASE("width requirement passes on feasible schemes") {
    const ChannelInstance inst = ChannelInstance::sample(4, 8, 1, 16, 11);
    const Scheme scheme = build_orthogonal_scheme(4, 8, 1, 2);
    const auto checks = check_width_requirement(inst, scheme);
    CHECK(checks.size() == 6); // ordered triples from {2,3,4}
    for (const auto& c : checks) {
        CHECK(c.pass);
        CHECK(c.bound == Rational(8)); // 2 * (1/2) * 8
        CHECK(c.i >= 2);
        CHECK(c.j >= 2);
        CHECK(c.k >= 2);
    }
}

TEST_CASE("width requirement is empty for three users") {
    const ChannelInstance inst = ChannelInstance::sample(3, 4, 1, 16, 11);
    const Scheme scheme = build_orthogonal_scheme(3, 4, 1, 1);
    CHECK(check_width_requirement(inst, scheme).empty());
}

TEST_CASE("width requirement rejects infeasible and mixed schemes") {
    const ChannelInstance inst = ChannelInstance::sample(3, 2, 1, 8, 3);
    Scheme full;
    full.k = 3;
    full.l = 2;
    full.t = 1;
    full.subspaces.assign(3, Subspace::full(2));
    CHECK_THROWS_AS(check_width_requirement(inst, full), input_error);
}

TEST_CASE("sparsity requirement on schemes") {
    const ChannelInstance inst = ChannelInstance::sample(4, 8, 1, 16, 13);
    const auto checks = check_sparsity_requirement(inst, build_orthogonal_scheme(4, 8, 1, 2));
    CHECK(checks.size() == 8); // 4 users x N in {1, 2}
    for (const auto& c : checks) CHECK(c.pass);

    // zero-dimension schemes pass vacuously
    CHECK(check_sparsity_requirement(inst, build_orthogonal_scheme(4, 8, 1, 0)).empty());

    const ChannelInstance inst3 = ChannelInstance::sample(3, 6, 1, 16, 14);
    const auto found = random_search(inst3, 2, 32, 7);
    REQUIRE(found.has_value());
    for (const auto& c : check_sparsity_requirement(inst3, *found)) CHECK(c.pass);
}

TEST_CASE("grid witness in the large-eps regime") {
    // eps = 1/2, L = 4, D = 1: both grid exponents collapse to zero and the
    // inequality reduces to sp_1(V) >= 2.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::mt19937_64 rng(substream_seed(0xB0, seed));
        const Subspace v = random_subspace(rng, 4, 1, 9);
        const DiagMap m1 = random_diag_map(rng, 4, 1, 999);
        const DiagMap m2 = random_diag_map(rng, 4, 1, 999);
        const GridWitnessReport report = grid_witness(v, m1, m2, 1, make_rational(1, 2), 4);
        CHECK(report.n1 == 0);
        CHECK(report.n2 == 0);
        CHECK(report.grid_dim == 1);
        CHECK(report.inequality_holds);
        CHECK(report.sp_n >= 2);
    }
}

TEST_CASE("grid witness validates its hypotheses") {
    std::mt19937_64 rng(77);
    const Subspace v = random_subspace(rng, 4, 2, 9); // dim != (1-eps)L/2 for eps=1/2
    const DiagMap m1 = random_diag_map(rng, 4, 1, 999);
    const DiagMap m2 = random_diag_map(rng, 4, 1, 999);
    CHECK_THROWS_AS(grid_witness(v, m1, m2, 1, make_rational(1, 2), 4), input_error);
    CHECK_THROWS_AS(grid_witness(v, m1, m2, 1, Rational(0), 4), input_error);
}

TEST_CASE("orthogonal builder shapes") {
    const Scheme zero = build_orthogonal_scheme(3, 3, 1, 0);
    CHECK(zero.dims() == std::vector<std::size_t>{0, 0, 0});
    const Scheme unit = build_orthogonal_scheme(3, 3, 1, 1);
    CHECK(unit.subspaces[0] == Subspace::coordinate({1}, 3));
    CHECK(unit.subspaces[2] == Subspace::coordinate({3}, 3));
    CHECK_THROWS_AS(build_orthogonal_scheme(4, 3, 1, 1), input_error);
}

TEST_CASE("coordinate patterns reproduce the orthogonal scheme") {
    const ChannelInstance inst = ChannelInstance::sample(3, 3, 1, 16, 9);
    const json pattern{{"users", json::array({json{{"coords", {1}}}, json{{"coords", {2}}},
                                              json{{"coords", {3}}}})}};
    const Scheme chain = build_chain_scheme(inst, pattern);
    const Scheme orth = build_orthogonal_scheme(3, 3, 1, 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(chain.subspaces[i] == orth.subspaces[i]);
}

TEST_CASE("three-user chains meet the exact three-user curve") {
    // L = 3: dimensions (2,1,1), DoF 4/3; L = 5: (3,2,2), DoF 7/5. Both equal
    // the exact three-user value, so the verifier certifies optimal schemes.
    for (const auto& [l, n] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 1}, {5, 2}}) {
        const ChannelInstance inst = ChannelInstance::sample(3, l, 1, 16, 400 + l);
        const Scheme scheme = build_chain_scheme(inst, three_user_chain(n));
        CHECK(scheme.dims() == std::vector<std::size_t>{n + 1, n, n});
        const VerifyReport report = verify_decoding(inst, scheme);
        CHECK(report.feasible);
        CHECK(report.dof == eval_bounds(3, l, 1).eq1.lo);
        CHECK_FALSE(report.eps.has_value()); // mixed dimensions
    }
}

TEST_CASE("malformed patterns are rejected") {
    const ChannelInstance inst = ChannelInstance::sample(3, 3, 1, 16, 9);
    CHECK_THROWS_AS(build_chain_scheme(inst, json::array()), input_error);
    CHECK_THROWS_AS(build_chain_scheme(inst, json{{"users", json::array()}}), input_error);
    const json bad_factor{{"users", json::array({json{{"vector", "ones"},
                                                      {"maps", json::array({json::array(
                                                                   {json{{"q", {1, 2}}}})})},
                                                      {"ns", {1}}},
                                                 json{{"coords", {2}}}, json{{"coords", {3}}}})}};
    CHECK_THROWS_AS(build_chain_scheme(inst, bad_factor), input_error);
}

TEST_CASE("random search corner cases") {
    // one channel use: every nonzero signal overlaps all interference
    for (std::size_t k : {2, 3, 4}) {
        ChannelInstance inst = [&] {
            if (k >= 3) return ChannelInstance::sample(k, 1, 1, 8, 21);
            std::mt19937_64 rng(21);
            std::vector<std::vector<DiagMap>> maps(
                k, std::vector<DiagMap>(k, DiagMap::identity(1, 1)));
            for (auto& row : maps)
                for (auto& m : row) m = random_diag_map(rng, 1, 1, 255);
            return ChannelInstance::from_maps(k, 1, 1, std::move(maps), 8, 21);
        }();
        CHECK_FALSE(random_search(inst, 1, 8, 21).has_value());
    }

    // impossible dimension: no trials at all
    const ChannelInstance inst = ChannelInstance::sample(3, 2, 1, 8, 2);
    SearchStats stats;
    CHECK_FALSE(random_search(inst, 3, 8, 2, &stats).has_value());
    CHECK(stats.trials == 0);
    CHECK_THROWS_AS(random_search(inst, 0, 8, 2), input_error);

    // determinism
    const ChannelInstance inst3 = ChannelInstance::sample(3, 3, 1, 16, 5);
    const auto a = random_search(inst3, 1, 16, 5);
    const auto b = random_search(inst3, 1, 16, 5);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(scheme_to_json(*a) == scheme_to_json(*b));
}
