#include "ifnet/sweep.hpp"

#include <charconv>
#include <cmath>

#include "ifnet/errors.hpp"
#include "ifnet/parallel.hpp"
#include "ifnet/reports.hpp"
#include "ifnet/rng.hpp"

namespace ifnet {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_num(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("bad number \"" + s + "\" in " + what);
  return v;
}

bool parse_entry(const std::string& param, std::size_t& j, std::size_t& i) {
  const auto parts = split(param, '_');
  if (parts.size() != 3 || parts[0] != "H") return false;
  unsigned long a = 0, b = 0;
  const auto r1 = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), a);
  const auto r2 = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), b);
  if (r1.ec != std::errc() || r1.ptr != parts[1].data() + parts[1].size()) return false;
  if (r2.ec != std::errc() || r2.ptr != parts[2].data() + parts[2].size()) return false;
  if (a == 0 || b == 0) return false;
  j = a - 1;
  i = b - 1;
  return true;
}

std::string status_of(const std::exception_ptr& e, std::string& message) {
  try {
    std::rethrow_exception(e);
  } catch (const ParseError& x) {
    message = x.what();
    return "config_error";
  } catch (const RejectConfig& x) {
    message = x.what();
    return "config_error";
  } catch (const HypothesisViolated& x) {
    message = x.what();
    return "hypothesis_violated";
  } catch (const NumericalStall& x) {
    message = x.what();
    return "numerical_stall";
  } catch (const std::exception& x) {
    message = x.what();
    return "error";
  }
}

}  // namespace

std::vector<double> GridAxis::values() const {
  std::vector<double> v;
  if (steps == 1) return {lo};
  for (std::size_t k = 0; k < steps; ++k)
    v.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1));
  return v;
}

GridAxis parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 4) throw ParseError("grid \"" + spec + "\" must be PARAM:LO:HI:STEPS");
  GridAxis a;
  a.param = parts[0];
  static const char* const known[] = {"gamma", "beta", "theta", "alpha", "K", "H"};
  bool ok = false;
  for (const char* k : known) ok = ok || a.param == k;
  std::size_t j = 0, i = 0;
  if (!ok && !parse_entry(a.param, j, i)) throw ParseError("unknown sweep parameter \"" + a.param + "\"");
  a.lo = parse_num(parts[1], "grid " + spec);
  a.hi = parse_num(parts[2], "grid " + spec);
  unsigned long steps = 0;
  const auto& s = parts[3];
  const auto res = std::from_chars(s.data(), s.data() + s.size(), steps);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || steps < 1)
    throw ParseError("grid \"" + spec + "\" needs a positive STEPS");
  a.steps = steps;
  return a;
}

NetworkParams apply_param(NetworkParams p, const std::string& param, double value) {
  if (param == "gamma") {
    p.gamma = value;
  } else if (param == "beta") {
    p.beta = value;
  } else if (param == "theta") {
    p.theta = value;
  } else if (param == "alpha") {
    p.alpha = value;
  } else if (param == "K") {
    p.beta = value / p.gamma;
  } else if (param == "H") {
    for (std::size_t j = 0; j < p.n; ++j)
      for (std::size_t i = 0; i < p.n; ++i)
        if (i != j) p.H(j, i) = value;
  } else {
    std::size_t j = 0, i = 0;
    if (!parse_entry(param, j, i)) throw ParseError("unknown sweep parameter \"" + param + "\"");
    if (j >= p.n || i >= p.n) throw ParseError("sweep parameter \"" + param + "\" out of range");
    p.H(j, i) = value;
  }
  return p;
}

CellCommand parse_cell_command(const std::string& name) {
  if (name == "analyze") return CellCommand::Analyze;
  if (name == "cycles") return CellCommand::Cycles;
  if (name == "synchro") return CellCommand::Synchro;
  if (name == "contract") return CellCommand::Contract;
  if (name == "expansion") return CellCommand::Expansion;
  throw ParseError("unknown cell command \"" + name + "\"");
}

const char* to_string(CellCommand c) noexcept {
  switch (c) {
    case CellCommand::Analyze: return "analyze";
    case CellCommand::Cycles: return "cycles";
    case CellCommand::Synchro: return "synchro";
    case CellCommand::Contract: return "contract";
    case CellCommand::Expansion: return "expansion";
  }
  return "?";
}

Json run_sweep(const NetworkParams& base, const std::vector<GridAxis>& axes, const SweepOptions& opts) {
  if (axes.empty() || axes.size() > 2) throw ParseError("sweep takes one or two --grid axes");
  std::vector<std::vector<double>> values;
  std::size_t cells = 1;
  for (const auto& a : axes) {
    values.push_back(a.values());
    cells *= values.back().size();
  }

  struct Cell {
    std::vector<double> coords;
    std::string status;
    std::string message;
    Json result;
  };
  std::vector<Cell> out(cells);
  parallel_for(cells, [&](std::size_t k) {
    Cell& cell = out[k];
    // row-major: the last axis varies fastest
    std::size_t rest = k;
    cell.coords.assign(axes.size(), 0.0);
    for (std::size_t a = axes.size(); a-- > 0;) {
      cell.coords[a] = values[a][rest % values[a].size()];
      rest /= values[a].size();
    }
    const std::uint64_t cell_seed = derive_seed(opts.seed, k);
    try {
      NetworkParams p = base;
      for (std::size_t a = 0; a < axes.size(); ++a) p = apply_param(std::move(p), axes[a].param, cell.coords[a]);
      const Network net(std::move(p));
      switch (opts.command) {
        case CellCommand::Analyze: cell.result = analyze_report(net, opts.pair); break;
        case CellCommand::Cycles: {
          CyclesResult r = cycles_report(net, opts.samples, opts.detect, cell_seed);
          cell.result = Json{{"summary", std::move(r.summary)}, {"cycles", std::move(r.cycles)}};
          break;
        }
        case CellCommand::Synchro: cell.result = synchro_report(net, opts.samples, cell_seed); break;
        case CellCommand::Contract: cell.result = contract_report(net, opts.samples, cell_seed); break;
        case CellCommand::Expansion: cell.result = expansion_report(net, opts.samples); break;
      }
      cell.status = "ok";
    } catch (...) {
      cell.status = status_of(std::current_exception(), cell.message);
      cell.result = nullptr;
    }
  });

  Json j;
  j["command"] = to_string(opts.command);
  j["seed"] = opts.seed;
  j["samples"] = opts.samples;
  Json ax = Json::array();
  for (const auto& a : axes)
    ax.push_back(Json{{"param", a.param}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
  j["axes"] = std::move(ax);
  Json arr = Json::array();
  for (std::size_t k = 0; k < cells; ++k) {
    Json c;
    c["cell"] = k;
    Json params;
    for (std::size_t a = 0; a < axes.size(); ++a) params[axes[a].param] = out[k].coords[a];
    c["params"] = std::move(params);
    c["status"] = out[k].status;
    if (!out[k].message.empty()) c["message"] = out[k].message;
    c["result"] = std::move(out[k].result);
    arr.push_back(std::move(c));
  }
  j["cells"] = std::move(arr);
  return j;
}

}  // namespace ifnet
