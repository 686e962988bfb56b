#include "ifnet/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ifnet/errors.hpp"

namespace ifnet {

namespace {

const char* const kKeys[] = {"n", "gamma", "beta", "K", "theta", "alpha", "H"};

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

NetworkParams network_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), item.key()) == std::end(kKeys))
      throw ParseError("unknown field \"" + item.key() + "\"");
  }

  NetworkParams p;
  if (!j.contains("n")) throw ParseError("missing field \"n\"");
  const auto& n = j.at("n");
  if (!n.is_number_integer() || n.get<long long>() < 1)
    throw ParseError("field \"n\" must be a positive integer");
  p.n = static_cast<std::size_t>(n.get<long long>());
  p.gamma = number_field(j, "gamma");
  p.theta = number_field(j, "theta");
  p.alpha = number_field(j, "alpha");
  const bool has_beta = j.contains("beta"), has_k = j.contains("K");
  if (has_beta && has_k) throw ParseError("fields \"beta\" and \"K\" are mutually exclusive");
  if (has_beta) {
    p.beta = number_field(j, "beta");
  } else if (has_k) {
    const double k = number_field(j, "K");
    if (!(p.gamma > 0)) throw RejectConfig("gamma must be > 0");
    p.beta = k / p.gamma;
  } else {
    throw ParseError("missing field \"beta\" (or \"K\")");
  }

  if (!j.contains("H")) throw ParseError("missing field \"H\"");
  const auto& h = j.at("H");
  const std::string shape = "field \"H\" must be a " + std::to_string(p.n) + "x" + std::to_string(p.n) +
                            " array of numbers";
  if (!h.is_array() || h.size() != p.n) throw ParseError(shape);
  p.H = SquareMatrix(p.n);
  for (std::size_t r = 0; r < p.n; ++r) {
    const auto& row = h[r];
    if (!row.is_array() || row.size() != p.n) throw ParseError(shape + " (row " + std::to_string(r + 1) + ")");
    for (std::size_t c = 0; c < p.n; ++c) {
      if (!row[c].is_number()) throw ParseError(shape + " (entry " + std::to_string(r + 1) + "," +
                                                std::to_string(c + 1) + ")");
      p.H(r, c) = row[c].get<double>();
    }
  }
  return validate(std::move(p));
}

NetworkParams parse_network(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON");
  }
  try {
    return network_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

NetworkParams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str(), path);
}

nlohmann::ordered_json network_to_json(const NetworkParams& p) {
  nlohmann::ordered_json j;
  j["n"] = p.n;
  j["gamma"] = p.gamma;
  j["beta"] = p.beta;
  j["theta"] = p.theta;
  j["alpha"] = p.alpha;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < p.n; ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < p.n; ++c) row.push_back(p.H(r, c));
    rows.push_back(std::move(row));
  }
  j["H"] = std::move(rows);
  return j;
}

std::string dump_network(const NetworkParams& p) { return network_to_json(p).dump(2) + "\n"; }

}  // namespace ifnet
