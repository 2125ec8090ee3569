#pragma once

#include "subalign/bounds.hpp"
#include "subalign/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subalign {

// Grid sweep over (k, l, t, bits, d, scheme_kind, seed). Rows are evaluated
// independently (optionally in parallel) and always emitted in grid x seed
// order, so identical configs give byte-identical CSV output.
struct SweepConfig {
    std::vector<std::size_t> ks, ls, ts, ds;
    std::vector<unsigned> bits;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> scheme_kinds; // "orthogonal" | "chain:<file>" | "search"
    std::size_t restarts = 32;
    std::size_t parallel = 1;

    static SweepConfig from_json(const nlohmann::json& j);
};

struct SweepRow {
    std::size_t k = 0, l = 0, t = 0, d = 0;
    unsigned bits = 0;
    std::uint64_t seed = 0;
    std::string scheme_kind;

    std::string error;    // nonempty when this row failed to evaluate
    bool has_scheme = false;
    bool feasible = false;
    std::optional<Rational> dof;
    std::optional<Rational> eps;
    std::optional<long> max_width;
    std::optional<Rational> min_sparsity_margin;
    std::optional<BoundValue> bound_eq1, bound_thm1, bound_thm2, bound_thm3;
    std::optional<bool> consistent;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string sweep_csv_header();
std::string sweep_row_csv(const SweepRow& row);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// The grid shipped as configs/default_sweep.json (kept in sync by a test).
SweepConfig default_sweep_config();

} // namespace subalign
