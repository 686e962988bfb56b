#include "ifnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifnet/errors.hpp"

namespace ifnet {

void check_state(const Network& net, const State& v) {
  if (v.size() != net.size())
    throw PreconditionFailed("state has " + std::to_string(v.size()) + " entries, expected " +
                             std::to_string(net.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] > net.theta() || v[i] < net.alpha())
      throw PreconditionFailed("coordinate " + std::to_string(i + 1) + " outside [alpha, theta]");
  }
}

State flow(const Network& net, const State& v, double t) {
  const double decay = std::exp(-net.gamma() * t);
  State out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - net.beta()) * decay + net.beta();
  return out;
}

SpontaneousFiring spontaneous_time(const Network& net, const State& v) {
  check_state(net, v);
  SpontaneousFiring s;
  s.leader = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  const double top = v[s.leader];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= top - net.tie_tolerance()) s.j0.push_back(i);
  // (1/gamma) ln((beta - V)/(beta - theta))
  s.t_bar = top >= net.theta() ? 0.0
                               : std::log1p((net.theta() - top) / (net.beta() - net.theta())) / net.gamma();
  return s;
}

State state_at_threshold(const Network& net, const State& v, std::size_t i) {
  const double beta = net.beta();
  const double frac = (net.theta() - v[i]) / (beta - v[i]);
  State out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] + (beta - v[k]) * frac;
  out[i] = net.theta();
  return out;
}

double positive_input(const Network& net, std::size_t k, const FiringSet& fired) {
  double s = 0.0;
  for (std::size_t j : fired) {
    const double h = net.H(j, k);
    if (h > 0) s += h;
  }
  return s;
}

namespace {

Avalanche cascade(const Network& net, const State& phi, const FiringSet& j0) {
  Avalanche a;
  a.fired = j0;
  std::vector<char> in(phi.size(), 0);
  for (std::size_t j : j0) in[j] = 1;
  FiringSet prev = j0;
  for (;;) {
    FiringSet added;
    for (std::size_t k = 0; k < phi.size(); ++k) {
      if (in[k]) continue;
      if (phi[k] + positive_input(net, k, prev) >= net.theta()) added.push_back(k);
    }
    if (added.empty()) break;
    for (std::size_t k : added) in[k] = 1;
    a.fired.insert(a.fired.end(), added.begin(), added.end());
    std::sort(a.fired.begin(), a.fired.end());
    prev = a.fired;
    ++a.rounds;
  }
  return a;
}

}  // namespace

Avalanche avalanche(const Network& net, const State& v) {
  const SpontaneousFiring s = spontaneous_time(net, v);
  return cascade(net, state_at_threshold(net, v, s.leader), s.j0);
}

ReturnStep return_map(const Network& net, const State& v) {
  const SpontaneousFiring s = spontaneous_time(net, v);
  const State phi = state_at_threshold(net, v, s.leader);
  Avalanche a = cascade(net, phi, s.j0);

  ReturnStep r;
  r.t_bar = s.t_bar;
  r.j0 = s.j0;
  r.rounds = a.rounds;
  r.next.assign(v.size(), 0.0);
  std::vector<char> in(v.size(), 0);
  for (std::size_t j : a.fired) in[j] = 1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (in[k]) continue;
    // positive part summed exactly as in the firing test so that the
    // non-fired result stays below theta after rounding
    const double pos = positive_input(net, k, a.fired);
    double neg = 0.0;
    for (std::size_t j : a.fired) {
      const double h = net.H(j, k);
      if (h < 0) neg += h;
    }
    r.next[k] = std::max(net.alpha(), phi[k] + (pos + neg));
  }
  r.fired = std::move(a.fired);
  return r;
}

State rho(const Network& net, const State& v) { return return_map(net, v).next; }

State rho_pow(const Network& net, State v, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) v = return_map(net, v).next;
  return v;
}

std::vector<OrbitPoint> orbit(const Network& net, const State& v0, std::size_t steps) {
  std::vector<OrbitPoint> out;
  out.reserve(steps);
  State v = v0;
  double cum = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    ReturnStep r = return_map(net, v);
    cum += r.t_bar;
    v = r.next;
    out.push_back({std::move(r.next), std::move(r.fired), r.t_bar, cum});
  }
  return out;
}

std::vector<TrajectoryRow> sample_trajectory(const Network& net, const State& v0, double dt,
                                             double t_total) {
  if (!(dt > 0) || !std::isfinite(dt)) throw PreconditionFailed("dt must be > 0");
  if (!(t_total >= 0) || !std::isfinite(t_total)) throw PreconditionFailed("t_total must be >= 0");
  check_state(net, v0);

  std::vector<TrajectoryRow> rows;
  State v = v0;
  double t_event = 0.0;
  std::size_t k = 0;
  auto grid = [&](std::size_t idx) { return static_cast<double>(idx) * dt; };

  for (;;) {
    const SpontaneousFiring s = spontaneous_time(net, v);
    const double t_next = t_event + s.t_bar;
    const double coincide = 1e-12 * std::max(1.0, t_next);
    while (grid(k) <= t_total && grid(k) < t_next - coincide) {
      rows.push_back({grid(k), flow(net, v, grid(k) - t_event), false});
      ++k;
    }
    if (t_next > t_total) break;
    if (grid(k) <= t_next + coincide) ++k;  // grid point absorbed into the spike pair
    const State left = state_at_threshold(net, v, s.leader);
    ReturnStep r = return_map(net, v);
    rows.push_back({t_next, left, false});
    rows.push_back({t_next, r.next, true});
    v = std::move(r.next);
    t_event = t_next;
  }
  return rows;
}

double sup_distance(const State& a, const State& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

double max_coord(const State& v) { return *std::max_element(v.begin(), v.end()); }

bool is_zero(const State& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace ifnet
