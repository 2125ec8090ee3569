#include "subalign/json_io.hpp"

#include "subalign/errors.hpp"
#include "subalign/sampling.hpp"

#include <doctest.h>

#include <cstdio>
#include <random>

using namespace subalign;
using nlohmann::json;

TEST_CASE("instances round-trip bit-exactly") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ChannelInstance inst = ChannelInstance::sample(3 + seed % 3, 1 + seed % 5,
                                                             1 + seed % 2, 16, seed);
        const json j = instance_to_json(inst);
        CHECK(instance_to_json(instance_from_json(j)).dump() == j.dump());
    }
}

TEST_CASE("schemes round-trip bit-exactly") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        Scheme scheme;
        scheme.k = 3;
        scheme.l = 4;
        scheme.t = 1;
        for (std::size_t i = 0; i < 3; ++i)
            scheme.subspaces.push_back(
                random_subspace(rng, 4, static_cast<std::size_t>(draw_int(rng, 0, 3))));
        const json j = scheme_to_json(scheme);
        CHECK(scheme_to_json(scheme_from_json(j)).dump() == j.dump());
    }
}

TEST_CASE("subspace rows accept integers and rational strings") {
    const Subspace v = subspace_from_json(json::parse(R"([[1, "1/2"], ["0", 1]])"), 2);
    CHECK(v.dim() == 2);
    CHECK_THROWS_AS(subspace_from_json(json::parse(R"([[1.5, 0]])"), 2), input_error);
    CHECK_THROWS_AS(subspace_from_json(json::parse(R"([[1, "x"]])"), 2), input_error);
}

TEST_CASE("scheme dims must match the basis ranks") {
    json j = scheme_to_json(build_orthogonal_scheme(3, 3, 1, 1));
    j["dims"] = {2, 1, 1};
    CHECK_THROWS_AS(scheme_from_json(j), input_error);
    j.erase("dims");
    CHECK_THROWS_AS(scheme_from_json(j), input_error);
}

TEST_CASE("instance JSON is validated") {
    const ChannelInstance inst = ChannelInstance::sample(3, 2, 1, 8, 1);
    json j = instance_to_json(inst);
    j["h"][0][0][1] = "0"; // zero coefficient
    CHECK_THROWS_AS(instance_from_json(j), input_error);
    j.erase("h");
    CHECK_THROWS_AS(instance_from_json(j), input_error);
}

TEST_CASE("infinite sparsity serializes as the string inf") {
    SparsityResult result;
    result.n = 5;
    const json j = sparsity_result_to_json(result);
    CHECK(j.at("value") == "inf");

    SparsityResult finite;
    finite.n = 1;
    finite.value = 3;
    finite.support = {1, 2, 4};
    const json f = sparsity_result_to_json(finite);
    CHECK(f.at("value") == 3);
    CHECK(f.at("support") == json::array({1, 2, 4}));
}

TEST_CASE("file round trip and error paths") {
    const std::string path = "/tmp/subalign_test_io.json";
    const json j{{"a", 1}, {"b", "2/3"}};
    save_json_file(path, j);
    CHECK(load_json_file(path) == j);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_json_file("/tmp/does_not_exist_subalign.json"), input_error);
}
