#pragma once

#include <string>

#include <json.hpp>

#include "calaw/fluxpdr.hpp"
#include "calaw/lattice.hpp"
#include "calaw/quantity.hpp"
#include "calaw/rules.hpp"

namespace calaw {

using Json = nlohmann::json;

// Rule file: {"dimension":D, "alphabet":A, "offsets":[[..],..], "table":[..],
// "meta":{..}}. Table indices follow the canonical mixed-radix encoding.
Json rule_to_json(const LocalRule& rule);
LocalRule rule_from_json(const Json& j);

// Quantity file: {"domain":"rational"|"vector"|"mod", "m"?, "K"?,
// "values":[..]} with rationals as "p/q" strings.
Json quantity_to_json(const Quantity& phi);
Quantity quantity_from_json(const Json& j);

// Sparse configuration: {"background":int, "overrides":[[x..., sym], ...]}.
// The dimension is carried by the override rows; fallback_dim settles the
// all-background case.
Json config_to_json(const Configuration& a);
Configuration config_from_json(const Json& j, int fallback_dim = 1);

// Torus: {"moduli":[..], "cells":[..]} row-major.
Json torus_to_json(const TorusConfig& a);
TorusConfig torus_from_json(const Json& j);
bool looks_like_torus(const Json& j);

// Displacement table: {"B":int, "alphabet":A, "entries":[{"pattern":[..],
// "d":{"offset":count, ..}}, ...]}, zero counts omitted.
Json pdr_to_json(const DisplacementRule& d);
DisplacementRule pdr_from_json(const Json& j);

Json total_to_json(const TotalValue& t);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace calaw
