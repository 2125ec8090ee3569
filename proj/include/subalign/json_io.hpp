#pragma once

#include "subalign/alignment.hpp"
#include "subalign/bounds.hpp"
#include "subalign/channel.hpp"
#include "subalign/sparsity.hpp"
#include "subalign/verify.hpp"

#include <json.hpp>

#include <string>

namespace subalign {

// JSON formats. Rationals are "p/q" strings ("p" when q = 1); subspaces are
// arrays of row arrays. Instances and schemes round-trip bit-exactly.

nlohmann::json subspace_to_json(const Subspace& v);
Subspace subspace_from_json(const nlohmann::json& j, std::size_t ambient_dim);

// {"k":..,"l":..,"t":..,"bits":..,"seed":..,"h":[[ [per-period strings] ]]}
nlohmann::json instance_to_json(const ChannelInstance& instance);
ChannelInstance instance_from_json(const nlohmann::json& j);

// {"k":..,"l":..,"t":..,"ambient":..,"dims":[..],"bases":[[row arrays]]}
nlohmann::json scheme_to_json(const Scheme& scheme);
Scheme scheme_from_json(const nlohmann::json& j);

nlohmann::json verify_report_to_json(const VerifyReport& report);
nlohmann::json width_checks_to_json(const std::vector<WidthCheck>& checks);
nlohmann::json sparsity_checks_to_json(const std::vector<SparsityCheck>& checks);
nlohmann::json sparsity_result_to_json(const SparsityResult& result); // infinite -> "inf"
nlohmann::json walk_result_to_json(const WalkResult& result);
nlohmann::json grid_witness_to_json(const GridWitnessReport& report);
nlohmann::json bound_table_to_json(const BoundTable& table);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

} // namespace subalign
