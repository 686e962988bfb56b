#include "ifnet/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "ifnet/errors.hpp"

namespace ifnet {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_set(const FiringSet& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ';';
    out += std::to_string(s[k] + 1);
  }
  return out;
}

std::string format_state(const State& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ';';
    out += format_double(v[k]);
  }
  return out;
}

void write_spike_csv(std::ostream& out, const std::vector<OrbitPoint>& steps) {
  out << "step,t_bar,cum_time,firing_set,V_after\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& s = steps[k];
    out << k + 1 << ',' << format_double(s.t_bar) << ',' << format_double(s.cum_time) << ','
        << format_set(s.fired) << ',' << format_state(s.state) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows, std::size_t n) {
  out << 't';
  for (std::size_t i = 0; i < n; ++i) out << ",V" << i + 1;
  out << ",post_spike\n";
  for (const auto& r : rows) {
    out << format_double(r.t);
    for (double x : r.v) out << ',' << format_double(x);
    out << ',' << (r.post_spike ? 1 : 0) << '\n';
  }
}

void write_cycle_csv(std::ostream& out, const LimitCycle& c) {
  const std::size_t n = c.points.empty() ? 0 : c.points.front().size();
  out << "point,piece,firing_set";
  for (std::size_t i = 0; i < n; ++i) out << ",V" << i + 1;
  out << '\n';
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    out << k << ',' << (k < c.itinerary.size() ? c.itinerary[k].label() : std::string("-")) << ','
        << format_set(c.firing_sets[k]);
    for (double x : c.points[k]) out << ',' << format_double(x);
    out << '\n';
  }
}

namespace {

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json state_json(const State& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Json set_json(const FiringSet& s) {
  Json a = Json::array();
  for (std::size_t i : s) a.push_back(i + 1);
  return a;
}

Json to_json(const DerivedConstants& k) {
  Json j;
  j["c_star"] = k.c_star;
  j["beta_plus"] = k.beta_plus;
  j["c_bar"] = k.c_bar;
  j["epsilon"] = k.epsilon;
  j["lambda_0"] = k.lambda_0;
  j["mu_jump"] = k.mu_jump;
  j["m_min_pos"] = opt(k.m_min_pos);
  j["min_abs_H"] = opt(k.min_abs_H);
  j["min_abs_offdiag"] = opt(k.min_abs_offdiag);
  j["p0"] = opt(k.p0);
  j["T_max"] = k.T_max;
  return j;
}

Json to_json(const HypothesisReport& h) {
  Json j;
  j["beta_below_beta_plus"] = h.beta_below_beta_plus;
  j["H3"] = h.H3;
  j["H4"] = h.H4;
  j["has_inhibitory"] = h.has_inhibitory;
  j["all_excitatory"] = h.all_excitatory;
  j["sync_size"] = h.sync_size;
  j["sync_neuron_bound"] = opt(h.sync_neuron_bound);
  Json pairs = Json::array();
  for (const auto& [i, k] : h.O_pairs) pairs.push_back(Json::array({i + 1, k + 1}));
  j["O_pairs"] = std::move(pairs);
  return j;
}

Json to_json(const LimitCycle& c, double basin_fraction) {
  Json j;
  j["period"] = c.period;
  j["time_period"] = num(c.time_period);
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(state_json(p));
  j["points"] = std::move(pts);
  Json it = Json::array();
  if (!c.itinerary.empty()) {
    for (const auto& piece : c.itinerary) it.push_back(piece.label());
  } else {
    for (const auto& f : c.firing_sets) it.push_back("fire:" + format_set(f));
  }
  j["itinerary"] = std::move(it);
  j["min_margin"] = c.certified ? num(c.min_margin) : Json(nullptr);
  j["certificate"] = {{"lambda", c.certified ? num(c.certificate.lambda) : Json(nullptr)},
                      {"ball_radius", c.certified ? num(c.certificate.ball_radius) : Json(nullptr)},
                      {"residual", num(c.certificate.residual)}};
  j["certified"] = c.certified;
  j["basin_fraction"] = num(basin_fraction);
  return j;
}

Json cycles_json(const CensusReport& r) {
  Json a = Json::array();
  for (const auto& e : r.cycles) a.push_back(to_json(e.cycle, e.basin_fraction));
  return a;
}

Json to_json(const CensusReport& r) {
  Json j;
  j["samples"] = r.samples;
  j["mode"] = r.mode == DetectMode::Certified ? "certified" : "whole_sigma";
  j["cycle_count"] = r.cycles.size();
  Json periods = Json::array(), basins = Json::array();
  for (const auto& e : r.cycles) {
    periods.push_back(e.cycle.period);
    basins.push_back(e.basin_fraction);
  }
  j["periods"] = std::move(periods);
  j["basin_fractions"] = std::move(basins);
  j["synchronized_fraction"] = r.synchronized_fraction;
  j["grazing_fraction"] = r.grazing_fraction;
  j["unresolved_fraction"] = r.unresolved_fraction;
  j["max_transient"] = r.max_transient;
  j["max_period"] = r.max_period;
  return j;
}

Json to_json(const SyncReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["samples"] = r.samples;
  j["failures"] = r.failures;
  j["max_returns"] = r.max_returns;
  j["bound_p"] = r.bound_p;
  j["max_time"] = r.max_time;
  j["bound_t_trans"] = r.bound_t_trans;
  return j;
}

Json to_json(const ContractionReport& r) {
  Json j;
  j["c"] = r.c;
  j["lambda_c"] = r.lambda_c;
  j["max_ratio"] = r.max_ratio;
  j["pairs"] = r.pairs;
  j["attempts"] = r.attempts;
  j["violations"] = r.violations.size();
  return j;
}

Json to_json(const AbsorptionReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["samples"] = r.samples;
  j["max_steps_outside"] = r.max_steps_outside;
  j["bound_p0_plus_1"] = r.bound_p0_plus_1;
  j["max_image_coord"] = r.max_image_coord;
  j["image_bound"] = r.image_bound;
  j["late_entries"] = r.late_entries;
  j["escapes"] = r.escapes;
  return j;
}

Json to_json(const LipschitzEstimate& r) {
  Json j;
  j["c_hat"] = r.c_hat;
  j["raw_sup"] = r.raw_sup;
  j["lambda"] = r.lambda;
  j["mu_tilde"] = r.mu_tilde;
  j["n0"] = r.n0;
  j["horizon"] = r.horizon;
  j["pairs"] = r.pairs;
  return j;
}

Json to_json(const AdaptedMetricReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["pairs"] = r.pairs;
  j["attempts"] = r.attempts;
  j["max_ratio"] = r.max_ratio;
  j["violations"] = r.violations;
  return j;
}

Json to_json(const OConditions& o) { return Json{{"O1", o.O1}, {"O2", o.O2}, {"O3", o.O3}}; }

Json to_json(const RepellerReport& r) {
  Json j;
  j["pair"] = Json::array({r.i + 1, r.j + 1});
  j["interval"] = Json::array({r.a, r.b});
  j["fixed_point"] = r.fixed_point;
  j["partner"] = r.partner;
  j["multiplier"] = r.multiplier;
  j["conditions"] = to_json(r.conditions);
  return j;
}

Json to_json(const PeriodTwo& r) {
  Json j;
  j["pair"] = Json::array({r.i + 1, r.j + 1});
  j["x_star"] = r.x_star;
  j["y_star"] = r.y_star;
  j["multiplier"] = r.multiplier;
  return j;
}

Json to_json(const FateReport& r) {
  Json j;
  j["outcome"] = to_string(r.outcome);
  j["step"] = r.step;
  j["transient_steps"] = r.transient_steps;
  if (r.outcome == Outcome::BoundaryGrazing) j["margin"] = num(r.margin);
  j["synchronized"] = r.synchronized;
  j["excitatory_death"] = r.excitatory_death;
  j["last_excitatory_step"] = opt(r.last_excitatory_step);
  j["cycle"] = r.cycle ? to_json(*r.cycle, std::nan("")) : Json(nullptr);
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace ifnet
