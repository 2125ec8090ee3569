#include "subalign/channel.hpp"

#include "subalign/errors.hpp"
#include "subalign/sparsity.hpp"

#include <random>
#include <string>

namespace subalign {

const DiagMap& ChannelInstance::at(std::size_t i, std::size_t j) const {
    if (i < 1 || i > k || j < 1 || j > k)
        throw input_error("channel index out of range 1.." + std::to_string(k));
    return h[i - 1][j - 1];
}

ChannelInstance ChannelInstance::sample(std::size_t k, std::size_t l, std::size_t t,
                                        unsigned bits, std::uint64_t seed) {
    if (k < 3) throw input_error("unsupported user count " + std::to_string(k) +
                                 ": sampling needs at least 3 users");
    if (l < 1 || t < 1) throw input_error("l and t must be positive");
    if (bits < 4 || bits > 30) throw input_error("bits must be in 4..30");

    std::mt19937_64 rng(seed);
    const unsigned shift = 64 - bits;
    std::vector<std::vector<DiagMap>> maps;
    maps.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<DiagMap> row;
        row.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<Rational> entries;
            entries.reserve(l);
            for (std::size_t p = 0; p < l; ++p) {
                const std::uint64_t draw = (rng() >> shift) + 1; // uniform over 1..2^bits
                entries.emplace_back(make_rational(static_cast<long>(draw)));
            }
            row.emplace_back(std::move(entries), t);
        }
        maps.push_back(std::move(row));
    }

    ChannelInstance instance;
    instance.k = k;
    instance.l = l;
    instance.t = t;
    instance.bits = bits;
    instance.seed = seed;
    instance.h = std::move(maps);
    return instance;
}

ChannelInstance ChannelInstance::from_maps(std::size_t k, std::size_t l, std::size_t t,
                                           std::vector<std::vector<DiagMap>> maps,
                                           unsigned bits, std::uint64_t seed) {
    if (k < 2) throw input_error("a channel needs at least 2 users");
    if (maps.size() != k) throw input_error("expected a K x K map array");
    for (const auto& row : maps) {
        if (row.size() != k) throw input_error("expected a K x K map array");
        for (const auto& m : row)
            if (m.l() != l || m.t() != t) throw input_error("map shape does not match (l, t)");
    }
    ChannelInstance instance;
    instance.k = k;
    instance.l = l;
    instance.t = t;
    instance.bits = bits;
    instance.seed = seed;
    instance.h = std::move(maps);
    return instance;
}

DiagMap derive_t(const ChannelInstance& instance, std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || i == k || j == k)
        throw input_error("cross-ratio indices must be distinct");
    if (i == 1 || j == 1 || k == 1)
        throw input_error("cross-ratio indices must differ from the anchor receiver 1");
    if (i > instance.k || j > instance.k || k > instance.k)
        throw input_error("cross-ratio index out of range");
    return instance.at(1, i).inverse() * instance.at(1, k) *
           instance.at(j, k).inverse() * instance.at(j, i);
}

TFamily t_family(const ChannelInstance& instance, std::size_t user) {
    if (user != 2)
        throw input_error("cross-ratio families are anchored at user 2");
    TFamily family;
    family.user = user;
    for (std::size_t j = 3; j <= instance.k; ++j) {
        for (std::size_t k = 3; k <= instance.k; ++k) {
            if (j == k) continue;
            family.members.push_back(derive_t(instance, user, j, k));
            family.labels.emplace_back(j, k);
        }
    }
    return family;
}

bool check_lin_indep(const std::vector<DiagMap>& maps,
                     const std::vector<ExponentVector>& exponents,
                     const RowVector& v) {
    if (maps.empty()) throw input_error("check_lin_indep needs at least one map");
    const std::size_t dim = maps.front().acting_dim();
    const std::size_t l = maps.front().l();
    const std::size_t t = maps.front().t();
    for (const auto& m : maps)
        if (m.acting_dim() != dim || m.l() != l)
            throw input_error("maps must share (l, t)");
    if (v.size() != dim) throw input_error("vector length does not match acting dimension");
    if (exponents.empty()) throw input_error("empty exponent set");
    if (exponents.size() > l)
        throw input_error("exponent set larger than the diversity L");
    for (std::size_t a = 0; a < exponents.size(); ++a)
        for (std::size_t b = a + 1; b < exponents.size(); ++b)
            if (exponents[a] == exponents[b])
                throw input_error("exponent vectors must be distinct");

    const std::size_t v_spread = support_dim(Subspace({v}, dim), l, t);
    if (exponents.size() > v_spread)
        throw input_error("exponent set larger than the vector's period support");

    RowMatrix images;
    images.reserve(exponents.size());
    for (const auto& x : exponents) {
        if (x.size() != maps.size())
            throw input_error("exponent vector length does not match map count");
        RowVector image = v;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            if (x[i] == 0) continue;
            image = maps[i].pow(x[i]).apply_vector(image);
        }
        images.push_back(std::move(image));
    }
    const std::size_t expected = std::min(exponents.size(), v_spread);
    return rref(images) == expected;
}

DiagMap block_lift(std::vector<Rational> entries, std::size_t t) {
    return DiagMap(std::move(entries), t);
}

GenericSample sample_generic_instance(std::size_t k, std::size_t l, std::size_t t,
                                      unsigned bits, std::uint64_t seed,
                                      unsigned max_attempts) {
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        ChannelInstance instance = ChannelInstance::sample(k, l, t, bits, seed + attempt);
        const TFamily family = t_family(instance);
        bool generic = true;
        if (family.size() >= 2) {
            const std::vector<DiagMap> pair{family.members[0], family.members[1]};
            const RowVector ones(instance.ambient_dim(), Rational(1));
            // Exponent boxes {0..a} x {0..b} with area capped by L.
            for (long a = 0; a <= 3 && generic; ++a) {
                for (long b = 0; b <= 3 && generic; ++b) {
                    if (static_cast<std::size_t>((a + 1) * (b + 1)) > l) continue;
                    std::vector<ExponentVector> box;
                    for (long x = 0; x <= a; ++x)
                        for (long y = 0; y <= b; ++y) box.push_back({x, y});
                    if (!check_lin_indep(pair, box, ones)) generic = false;
                }
            }
        }
        if (generic) return GenericSample{std::move(instance), attempt};
    }
    throw invariant_fault("no generic instance found in " + std::to_string(max_attempts) +
                          " attempts; this should be astronomically unlikely");
}

} // namespace subalign
