#include "subalign/json_io.hpp"

#include "subalign/errors.hpp"

#include <fstream>

namespace subalign {

using nlohmann::json;

namespace {

json row_to_json(const RowVector& row) {
    json out = json::array();
    for (const auto& entry : row) out.push_back(rational_to_string(entry));
    return out;
}

RowVector row_from_json(const json& j) {
    if (!j.is_array()) throw input_error("expected a row array");
    RowVector row;
    row.reserve(j.size());
    for (const auto& entry : j) {
        if (entry.is_number_integer()) {
            row.push_back(make_rational(entry.get<long>()));
        } else if (entry.is_string()) {
            row.push_back(rational_from_string(entry.get<std::string>()));
        } else {
            throw input_error("row entries must be integers or 'p/q' strings");
        }
    }
    return row;
}

json bound_value_to_json(const BoundValue& value) {
    if (!value.applicable) return json{{"applicable", false}};
    return json{{"applicable", true},
                {"lo", rational_to_string(value.lo)},
                {"hi", rational_to_string(value.hi)},
                {"exact", value.exact},
                {"decimal", value.decimal()}};
}

} // namespace

json subspace_to_json(const Subspace& v) {
    json rows = json::array();
    for (const auto& row : v.basis()) rows.push_back(row_to_json(row));
    return rows;
}

Subspace subspace_from_json(const json& j, std::size_t ambient_dim) {
    if (!j.is_array()) throw input_error("subspace JSON must be an array of rows");
    RowMatrix rows;
    rows.reserve(j.size());
    for (const auto& row : j) rows.push_back(row_from_json(row));
    return Subspace(std::move(rows), ambient_dim);
}

json instance_to_json(const ChannelInstance& instance) {
    json h = json::array();
    for (std::size_t i = 0; i < instance.k; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < instance.k; ++j) {
            json entries = json::array();
            for (const auto& entry : instance.h[i][j].entries())
                entries.push_back(rational_to_string(entry));
            row.push_back(std::move(entries));
        }
        h.push_back(std::move(row));
    }
    return json{{"k", instance.k}, {"l", instance.l},       {"t", instance.t},
                {"bits", instance.bits}, {"seed", instance.seed}, {"h", std::move(h)}};
}

ChannelInstance instance_from_json(const json& j) {
    for (const char* key : {"k", "l", "t", "bits", "seed", "h"})
        if (!j.contains(key)) throw input_error(std::string("instance JSON misses '") + key + "'");
    const auto k = j.at("k").get<std::size_t>();
    const auto l = j.at("l").get<std::size_t>();
    const auto t = j.at("t").get<std::size_t>();
    const auto& h = j.at("h");
    if (!h.is_array() || h.size() != k) throw input_error("instance 'h' must be a K x K array");
    std::vector<std::vector<DiagMap>> maps;
    maps.reserve(k);
    for (const auto& row : h) {
        if (!row.is_array() || row.size() != k)
            throw input_error("instance 'h' must be a K x K array");
        std::vector<DiagMap> out_row;
        out_row.reserve(k);
        for (const auto& entries : row) {
            RowVector coeffs = row_from_json(entries);
            if (coeffs.size() != l) throw input_error("channel entry count does not match L");
            out_row.emplace_back(std::move(coeffs), t);
        }
        maps.push_back(std::move(out_row));
    }
    return ChannelInstance::from_maps(k, l, t, std::move(maps), j.at("bits").get<unsigned>(),
                                      j.at("seed").get<std::uint64_t>());
}

json scheme_to_json(const Scheme& scheme) {
    json bases = json::array();
    for (const auto& v : scheme.subspaces) bases.push_back(subspace_to_json(v));
    return json{{"k", scheme.k},
                {"l", scheme.l},
                {"t", scheme.t},
                {"ambient", scheme.ambient_dim()},
                {"dims", scheme.dims()},
                {"bases", std::move(bases)}};
}

Scheme scheme_from_json(const json& j) {
    for (const char* key : {"k", "l", "t", "dims", "bases"})
        if (!j.contains(key)) throw input_error(std::string("scheme JSON misses '") + key + "'");
    Scheme scheme;
    scheme.k = j.at("k").get<std::size_t>();
    scheme.l = j.at("l").get<std::size_t>();
    scheme.t = j.at("t").get<std::size_t>();
    const auto& bases = j.at("bases");
    if (!bases.is_array() || bases.size() != scheme.k)
        throw input_error("scheme 'bases' must hold one basis per user");
    for (const auto& basis : bases)
        scheme.subspaces.push_back(subspace_from_json(basis, scheme.ambient_dim()));
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (dims != scheme.dims())
        throw input_error("scheme 'dims' disagree with the basis ranks");
    return scheme;
}

json verify_report_to_json(const VerifyReport& report) {
    json receivers = json::array();
    for (const auto& r : report.per_receiver)
        receivers.push_back(json{{"signal_dim", r.signal_dim},
                                 {"interference_dim", r.interference_dim},
                                 {"overlap_dim", r.overlap_dim}});
    json out{{"feasible", report.feasible},
             {"per_receiver", std::move(receivers)},
             {"dof", rational_to_string(report.dof)}};
    if (report.eps) out["eps"] = rational_to_string(*report.eps);
    return out;
}

json width_checks_to_json(const std::vector<WidthCheck>& checks) {
    json rows = json::array();
    for (const auto& c : checks)
        rows.push_back(json{{"i", c.i},
                            {"j", c.j},
                            {"k", c.k},
                            {"width", c.width},
                            {"bound", rational_to_string(c.bound)},
                            {"pass", c.pass}});
    return rows;
}

json sparsity_checks_to_json(const std::vector<SparsityCheck>& checks) {
    json rows = json::array();
    for (const auto& c : checks)
        rows.push_back(json{{"user", c.user},
                            {"n", c.n},
                            {"sp", c.sp},
                            {"bound", rational_to_string(c.bound)},
                            {"pass", c.pass},
                            {"heuristic", c.heuristic}});
    return rows;
}

json sparsity_result_to_json(const SparsityResult& result) {
    json out{{"n", result.n}, {"heuristic", result.heuristic}};
    if (result.is_infinite()) {
        out["value"] = "inf";
    } else {
        out["value"] = *result.value;
    }
    if (!result.support.empty()) out["support"] = result.support;
    if (!result.period_subspaces.empty()) {
        json periods = json::array();
        for (const auto& w : result.period_subspaces) periods.push_back(subspace_to_json(w));
        out["period_subspaces"] = std::move(periods);
    }
    return out;
}

json walk_result_to_json(const WalkResult& result) {
    json ops = json::array();
    for (const auto& step : result.op_sequence)
        ops.push_back(json::array({std::string(1, step.op), step.index}));
    return json{{"n_tilde", result.n_tilde},
                {"delta", rational_to_string(result.delta)},
                {"case", result.case_tag == WalkCase::full_extension ? "full_extension"
                                                                     : "contraction_break"},
                {"dim", result.w_tilde.dim()},
                {"op_sequence", std::move(ops)},
                {"w_tilde", subspace_to_json(result.w_tilde)}};
}

json grid_witness_to_json(const GridWitnessReport& report) {
    return json{{"n1", report.n1},
                {"n2", report.n2},
                {"x", row_to_json(report.x)},
                {"x_support", report.x_support},
                {"sp_n", report.sp_n},
                {"dim_v", report.dim_v},
                {"grid_dim", report.grid_dim},
                {"inequality_holds", report.inequality_holds}};
}

json bound_table_to_json(const BoundTable& table) {
    json out{{"k", table.k},
             {"l", table.l},
             {"t", table.t},
             {"c", rational_to_string(table.c_for_eq2)},
             {"eq1", bound_value_to_json(table.eq1)},
             {"eq2", bound_value_to_json(table.eq2)},
             {"thm1", bound_value_to_json(table.thm1)},
             {"thm2", bound_value_to_json(table.thm2)},
             {"thm3", bound_value_to_json(table.thm3)}};
    if (table.eps) out["eps"] = rational_to_string(*table.eps);
    if (table.thm4_l_min) out["thm4_l_min"] = rational_to_string(*table.thm4_l_min);
    if (table.thm5_l_min) out["thm5_l_min"] = rational_to_string(*table.thm5_l_min);
    if (table.thm6_l_min) out["thm6_l_min"] = rational_to_string(*table.thm6_l_min);
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

} // namespace subalign
