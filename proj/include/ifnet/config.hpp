#pragma once

#include <string>

#include "json.hpp"
#include "ifnet/network.hpp"

namespace ifnet {

// Network config schema:
//   {"n": int, "gamma": num, "beta": num, "theta": num, "alpha": num,
//    "H": [[num, ...], ...]}
// "K" may replace "beta" (beta = K / gamma). Unknown keys are rejected.
// Throws ParseError (with line or field) or RejectConfig.
NetworkParams parse_network(const std::string& text, const std::string& source = "<string>");
NetworkParams network_from_json(const nlohmann::json& j);
NetworkParams load_config(const std::string& path);

nlohmann::ordered_json network_to_json(const NetworkParams& p);
// Pretty-printed config that reloads to an identical NetworkParams.
std::string dump_network(const NetworkParams& p);

}  // namespace ifnet
