#include "subalign/sampling.hpp"

#include "subalign/errors.hpp"

namespace subalign {

long draw_int(std::mt19937_64& rng, long lo, long hi) {
    if (lo > hi) throw input_error("empty draw range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
}

Subspace random_subspace(std::mt19937_64& rng, std::size_t ambient, std::size_t dim,
                         long magnitude) {
    if (dim > ambient) throw input_error("subspace dimension exceeds ambient dimension");
    for (;;) {
        RowMatrix rows;
        rows.reserve(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            RowVector row;
            row.reserve(ambient);
            for (std::size_t j = 0; j < ambient; ++j)
                row.push_back(make_rational(draw_int(rng, -magnitude, magnitude)));
            rows.push_back(std::move(row));
        }
        Subspace candidate(std::move(rows), ambient);
        if (candidate.dim() == dim) return candidate;
    }
}

DiagMap random_diag_map(std::mt19937_64& rng, std::size_t l, std::size_t t, long magnitude) {
    std::vector<Rational> entries;
    entries.reserve(l);
    for (std::size_t i = 0; i < l; ++i)
        entries.push_back(make_rational(draw_int(rng, 1, magnitude)));
    return DiagMap(std::move(entries), t);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step over seed + golden-ratio stride
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace subalign
