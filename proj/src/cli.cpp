#include "ifnet/cli.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ifnet/config.hpp"
#include "ifnet/contraction.hpp"
#include "ifnet/cycles.hpp"
#include "ifnet/dynamics.hpp"
#include "ifnet/errors.hpp"
#include "ifnet/output.hpp"
#include "ifnet/parallel.hpp"
#include "ifnet/reports.hpp"
#include "ifnet/rng.hpp"
#include "ifnet/sweep.hpp"

namespace ifnet {

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  double eta = 1e-6;
  double tol = 1e-13;
  std::size_t max_iter = 10000;
  std::optional<double> dt;
  std::optional<double> t_total;
  std::vector<std::string> grids;
  std::string start;
  std::size_t steps = 20;
  unsigned threads = 0;
  std::string cell_command = "analyze";
  std::string pair = "1,2";
  std::string mode = "auto";
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(std::string("bad value \"") + item + "\" in " + what);
    }
  }
  return v;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& s, std::size_t n) {
  const auto v = parse_list(s, "--pair");
  if (v.size() != 2 || v[0] < 1 || v[1] < 1 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
    throw ParseError("--pair needs two 1-based indices, e.g. 1,2");
  const auto i = static_cast<std::size_t>(v[0]) - 1, j = static_cast<std::size_t>(v[1]) - 1;
  if (i >= n || j >= n || i == j) throw ParseError("--pair indices must be distinct and at most n");
  return {i, j};
}

DetectMode parse_mode(const std::string& s) {
  if (s == "auto") return DetectMode::Auto;
  if (s == "certified") return DetectMode::Certified;
  if (s == "whole") return DetectMode::WholeSigma;
  throw ParseError("--mode must be auto, certified or whole");
}

DetectOptions detect_options(const Options& o) {
  DetectOptions d;
  d.max_iter = o.max_iter;
  d.eta = o.eta;
  d.tol = o.tol;
  d.mode = parse_mode(o.mode);
  return d;
}

std::string path_in(const Options& o, const std::string& name) {
  return (std::filesystem::path(o.out) / name).string();
}

void write_json(const Options& o, const std::string& name, const Json& j) {
  write_file(path_in(o, name), j.dump(2) + "\n");
}

State start_state(const Options& o, const Network& net) {
  if (!o.start.empty()) {
    State v = parse_list(o.start, "--start");
    check_state(net, v);
    return v;
  }
  CounterRng rng(o.seed, 0);
  return sample_section(net, rng, net.theta());
}

int simulate(const Options& o, const Network& net, std::ostream& out) {
  const State v0 = start_state(o, net);
  const auto steps = orbit(net, v0, o.steps);
  std::ostringstream csv;
  write_spike_csv(csv, steps);
  write_file(path_in(o, "spikes.csv"), csv.str());
  out << "spikes.csv: " << steps.size() << " returns from " << format_state(v0) << "\n";
  if (o.dt) {
    const double total = o.t_total.value_or(steps.empty() ? 0.0 : steps.back().cum_time);
    const auto rows = sample_trajectory(net, v0, *o.dt, total);
    std::ostringstream tcsv;
    write_trajectory_csv(tcsv, rows, net.size());
    write_file(path_in(o, "trajectory.csv"), tcsv.str());
    out << "trajectory.csv: " << rows.size() << " rows\n";
  }
  return kExitOk;
}

int analyze(const Options& o, const Network& net, std::ostream& out) {
  Json j;
  j["network"] = network_to_json(net.params());
  j["report"] = analyze_report(net, parse_pair(o.pair, std::max<std::size_t>(net.size(), 2)));
  write_json(o, "analysis.json", j);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cycles(const Options& o, const Network& net, std::ostream& out) {
  CyclesResult r = cycles_report(net, o.samples, detect_options(o), o.seed);
  write_json(o, "cycles.json", r.cycles);
  write_json(o, "census.json", r.summary);
  for (std::size_t k = 0; k < r.census.cycles.size(); ++k) {
    std::ostringstream csv;
    write_cycle_csv(csv, r.census.cycles[k].cycle);
    write_file(path_in(o, "cycle_" + std::to_string(k + 1) + ".csv"), csv.str());
  }
  out << r.summary.dump(2) << "\n";
  return kExitOk;
}

int run_command(const std::string& cmd, const Options& o, std::ostream& out) {
  if (o.threads > 0) set_thread_count(o.threads);
  if (o.samples < 1) throw ParseError("--samples must be positive");
  if (!(o.eta >= 0)) throw ParseError("--eta must be nonnegative");
  if (!(o.tol > 0)) throw ParseError("--tol must be positive");
  if (o.dt && !(*o.dt > 0)) throw ParseError("--dt must be positive");
  if (o.t_total && !(*o.t_total >= 0)) throw ParseError("--t-total must be nonnegative");
  std::filesystem::create_directories(o.out);

  const NetworkParams params = load_config(o.config);
  if (cmd == "sweep") {
    if (o.grids.empty()) throw ParseError("sweep needs at least one --grid");
    std::vector<GridAxis> axes;
    for (const auto& g : o.grids) axes.push_back(parse_grid(g));
    SweepOptions so;
    so.command = parse_cell_command(o.cell_command);
    so.samples = o.samples;
    so.seed = o.seed;
    so.detect = detect_options(o);
    so.pair = parse_pair(o.pair, std::max<std::size_t>(params.n, 2));
    const Json j = run_sweep(params, axes, so);
    write_json(o, "sweep.json", j);
    std::size_t bad = 0;
    for (const auto& c : j["cells"]) bad += c["status"] != "ok";
    out << "sweep.json: " << j["cells"].size() << " cells, " << bad << " failed\n";
    return kExitOk;
  }

  const Network net(params);
  if (cmd == "simulate") return simulate(o, net, out);
  if (cmd == "analyze") return analyze(o, net, out);
  if (cmd == "cycles") return cycles(o, net, out);
  Json j;
  std::string name;
  if (cmd == "synchro") {
    j = synchro_report(net, o.samples, o.seed);
    name = "synchro.json";
  } else if (cmd == "expansion") {
    j = expansion_report(net, o.samples);
    name = "expansion.json";
  } else {
    j = contract_report(net, o.samples, o.seed);
    name = "contract.json";
  }
  write_json(o, name, j);
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Event-driven integrate-and-fire network simulator and analyzer", "ifnet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "network config (JSON)")->required();
  app.add_option("--out", o.out, "output directory");
  app.add_option("--seed", o.seed, "root seed for all sampling");
  app.add_option("--samples", o.samples, "sample count (pairs, starts or grid points)");
  app.add_option("--eta", o.eta, "boundary-grazing threshold on the piece margin");
  app.add_option("--tol", o.tol, "cycle refinement tolerance");
  app.add_option("--max-iter", o.max_iter, "return-map steps per orbit before giving up");
  app.add_option("--dt", o.dt, "trajectory sampling step (simulate)");
  app.add_option("--t-total", o.t_total, "trajectory length (simulate)");
  app.add_option("--grid", o.grids, "sweep axis PARAM:LO:HI:STEPS (repeatable)");
  app.add_option("--start", o.start, "initial state, comma separated (simulate)");
  app.add_option("--steps", o.steps, "number of returns (simulate)");
  app.add_option("--threads", o.threads, "worker threads (overrides IFNET_THREADS)");
  app.add_option("--cell-command", o.cell_command, "per-cell analysis for sweep");
  app.add_option("--pair", o.pair, "neuron pair i,j for the period-two report");
  app.add_option("--mode", o.mode, "cycle detection: auto, certified or whole");

  const char* const commands[][2] = {
      {"simulate", "orbit to spikes.csv, optional trajectory.csv"},
      {"analyze", "derived constants and hypotheses to analysis.json"},
      {"cycles", "limit-cycle census to cycles.json, census.json and cycle_<k>.csv"},
      {"synchro", "global synchronization test to synchro.json"},
      {"expansion", "repellers and expansion witnesses to expansion.json"},
      {"contract", "contraction, absorption and adapted metric to contract.json"},
      {"sweep", "parameter grid to sweep.json"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run_command(cmd, o, out);
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RejectConfig& e) {
    err << "config rejected: " << e.what() << "\n";
    return kExitConfig;
  } catch (const HypothesisViolated& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const NumericalStall& e) {
    err << "numerical stall: " << e.what() << "\n";
    return kExitStall;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ifnet
