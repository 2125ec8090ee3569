#include "subalign/sweep.hpp"

#include "subalign/errors.hpp"
#include "subalign/json_io.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

namespace subalign {

using nlohmann::json;

namespace {

// An empty axis is allowed: it empties the grid, and the sweep then emits a
// header-only CSV.
template <typename T>
std::vector<T> list_of(const json& j, const char* key) {
    if (!j.contains(key)) throw input_error(std::string("sweep config misses '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_array())
        throw input_error(std::string("sweep config '") + key + "' must be an array");
    return v.get<std::vector<T>>();
}

struct GridPoint {
    std::size_t k, l, t, d;
    unsigned bits;
    std::string kind;
    std::uint64_t seed;
};

std::string decimal20(const BoundValue& value) {
    mpfr_t x;
    mpfr_init2(x, 128);
    mpfr_set_q(x, value.lo.get_mpq_t(), MPFR_RNDD);
    char buffer[48];
    mpfr_snprintf(buffer, sizeof buffer, "%.19RDe", x);
    mpfr_clear(x);
    return std::string(buffer);
}

} // namespace

SweepConfig SweepConfig::from_json(const json& j) {
    SweepConfig config;
    config.ks = list_of<std::size_t>(j, "k");
    config.ls = list_of<std::size_t>(j, "l");
    config.ts = j.contains("t") ? list_of<std::size_t>(j, "t") : std::vector<std::size_t>{1};
    config.ds = list_of<std::size_t>(j, "d");
    config.bits = j.contains("bits") ? list_of<unsigned>(j, "bits") : std::vector<unsigned>{16};
    config.seeds = list_of<std::uint64_t>(j, "seeds");
    config.scheme_kinds = list_of<std::string>(j, "scheme_kinds");
    if (j.contains("restarts")) config.restarts = j.at("restarts").get<std::size_t>();
    if (j.contains("parallel")) config.parallel = j.at("parallel").get<std::size_t>();
    for (const auto& kind : config.scheme_kinds) {
        if (kind != "orthogonal" && kind != "search" && kind.rfind("chain:", 0) != 0)
            throw input_error("scheme kind must be orthogonal, search, or chain:<file>");
    }
    return config;
}

namespace {

SweepRow evaluate_row(const GridPoint& point, const SweepConfig& config,
                      const std::map<std::string, json>& patterns) {
    SweepRow row;
    row.k = point.k;
    row.l = point.l;
    row.t = point.t;
    row.d = point.d;
    row.bits = point.bits;
    row.seed = point.seed;
    row.scheme_kind = point.kind;

    try {
        const ChannelInstance instance =
            ChannelInstance::sample(point.k, point.l, point.t, point.bits, point.seed);

        std::optional<Scheme> scheme;
        if (point.kind == "orthogonal") {
            scheme = build_orthogonal_scheme(point.k, point.l, point.t, point.d);
        } else if (point.kind == "search") {
            scheme = random_search(instance, point.d, config.restarts, point.seed);
        } else {
            scheme = build_chain_scheme(instance, patterns.at(point.kind.substr(6)));
        }

        const BoundTable bounds = eval_bounds(point.k, point.l, point.t);
        if (point.k == 3) row.bound_eq1 = bounds.eq1;
        if (point.k >= 4) {
            row.bound_thm1 = bounds.thm1;
            row.bound_thm2 = bounds.thm2;
            row.bound_thm3 = bounds.thm3;
        }

        if (!scheme) return row; // search found nothing; not an error

        row.has_scheme = true;
        const VerifyReport report = verify_decoding(instance, *scheme);
        row.feasible = report.feasible;
        if (!report.feasible) return row;

        row.dof = report.dof;
        row.eps = report.eps;

        if (scheme->uniform_dims()) {
            if (point.k >= 4) {
                long max_width = 0;
                for (const auto& check : check_width_requirement(instance, *scheme))
                    max_width = std::max(max_width, check.width);
                row.max_width = max_width;
            }
            std::optional<Rational> margin;
            for (const auto& check : check_sparsity_requirement(instance, *scheme)) {
                const Rational gap = Rational(static_cast<long>(check.sp)) - check.bound;
                if (!margin || gap < *margin) margin = gap;
            }
            row.min_sparsity_margin = margin;
        }

        bool consistent = true;
        if (point.k == 3) {
            consistent = *row.dof <= bounds.eq1.lo;
        } else if (point.k >= 4) {
            consistent = *row.dof <= bounds.thm2.lo && *row.dof <= bounds.thm3.lo;
            if (point.t == 1) consistent = consistent && *row.dof <= bounds.thm1.lo;
        }
        row.consistent = consistent;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    // Chain patterns are loaded up front so row evaluation stays pure.
    std::map<std::string, json> patterns;
    for (const auto& kind : config.scheme_kinds)
        if (kind.rfind("chain:", 0) == 0 && !patterns.count(kind.substr(6)))
            patterns[kind.substr(6)] = load_json_file(kind.substr(6));

    std::vector<GridPoint> grid;
    for (std::size_t k : config.ks)
        for (std::size_t l : config.ls)
            for (std::size_t t : config.ts)
                for (unsigned bits : config.bits)
                    for (std::size_t d : config.ds)
                        for (const auto& kind : config.scheme_kinds)
                            for (std::uint64_t seed : config.seeds)
                                grid.push_back(GridPoint{k, l, t, d, bits, kind, seed});

    std::vector<SweepRow> rows(grid.size());
    const std::size_t workers = std::max<std::size_t>(1, config.parallel);
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            rows[i] = evaluate_row(grid[i], config, patterns);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= grid.size()) return;
                    rows[i] = evaluate_row(grid[i], config, patterns);
                }
            });
        }
        for (auto& worker : pool) worker.join();
    }
    return rows;
}

std::string sweep_csv_header() {
    return "k,l,t,bits,seed,scheme_kind,d,feasible,dof,eps,max_width,min_sparsity_margin,"
           "bound_eq1,bound_thm1,bound_thm2,bound_thm3,consistent,error";
}

std::string sweep_row_csv(const SweepRow& row) {
    std::ostringstream out;
    const auto opt_rational = [](const std::optional<Rational>& r) {
        return r ? rational_to_string(*r) : std::string("na");
    };
    const auto opt_bound = [](const std::optional<BoundValue>& b) {
        return b && b->applicable ? decimal20(*b) : std::string("na");
    };
    out << row.k << ',' << row.l << ',' << row.t << ',' << row.bits << ',' << row.seed << ','
        << row.scheme_kind << ',' << row.d << ',';
    if (!row.error.empty()) {
        out << "na,na,na,na,na,na,na,na,na,na,\"" << row.error << '"';
        return out.str();
    }
    out << (row.has_scheme ? (row.feasible ? "true" : "false") : "none") << ','
        << opt_rational(row.dof) << ',' << opt_rational(row.eps) << ','
        << (row.max_width ? std::to_string(*row.max_width) : "na") << ','
        << opt_rational(row.min_sparsity_margin) << ',' << opt_bound(row.bound_eq1) << ','
        << opt_bound(row.bound_thm1) << ',' << opt_bound(row.bound_thm2) << ','
        << opt_bound(row.bound_thm3) << ','
        << (row.consistent ? (*row.consistent ? "true" : "false") : "na") << ',';
    return out.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << sweep_csv_header() << '\n';
    for (const auto& row : rows) out << sweep_row_csv(row) << '\n';
    return out.str();
}

SweepConfig default_sweep_config() {
    SweepConfig config;
    config.ks = {3, 4};
    config.ls = {4, 6, 8};
    config.ts = {1};
    config.ds = {1};
    config.bits = {16};
    config.seeds = {101, 102, 103, 104, 105, 106, 107, 108, 109,
                    110, 111, 112, 113, 114, 115, 116, 117};
    config.scheme_kinds = {"orthogonal", "search"};
    config.restarts = 32;
    config.parallel = 1;
    return config;
}

} // namespace subalign
