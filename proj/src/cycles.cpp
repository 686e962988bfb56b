#include "ifnet/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "ifnet/contraction.hpp"
#include "ifnet/errors.hpp"
#include "ifnet/parallel.hpp"
#include "ifnet/rng.hpp"

namespace ifnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxRefine = 100000;
constexpr std::size_t kPolish = 64;

bool fires_excitatory(const Network& net, const FiringSet& fired) {
  return std::any_of(fired.begin(), fired.end(), [&](std::size_t j) { return net.is_excitatory(j); });
}

}  // namespace

std::string PieceId::label() const {
  switch (kind) {
    case Kind::Sync: return "sync";
    case Kind::Inhib: return "inhib:" + std::to_string(neuron + 1);
    case Kind::Boundary: return "boundary";
  }
  return "?";
}

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Synchronized: return "synchronized";
    case Outcome::Cycle: return "cycle";
    case Outcome::BoundaryGrazing: return "boundary_grazing";
    case Outcome::Unresolved: return "unresolved";
  }
  return "?";
}

PieceReading read_piece(const Network& net, const State& v, double tol) {
  if (v.size() != net.size()) throw PreconditionFailed("state has the wrong size");
  if (!in_zone(net, v, net.constants().c_bar)) throw PreconditionFailed("state outside C_cbar");
  if (net.has_mixed()) throw PreconditionFailed("pieces need every neuron excitatory or inhibitory");
  if (!net.has_inhibitory()) throw PreconditionFailed("pieces need an inhibitory neuron");

  double top_exc = -kInf, top_inh = -kInf;
  std::size_t lead = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (net.is_excitatory(k)) {
      top_exc = std::max(top_exc, v[k]);
    } else if (v[k] > top_inh) {
      top_inh = v[k];
      lead = k;
    }
  }
  // The exact differences below minus tol keep the perturbed state out of
  // the tie band as well.
  if (top_exc >= top_inh + tol) return {PieceId::sync(), 0.5 * ((top_exc - top_inh) - tol)};
  if (top_inh > top_exc + tol) {
    double runner = -kInf;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (k != lead) runner = std::max(runner, v[k]);
    const double gap = v[lead] - runner;
    if (gap > tol) return {PieceId::inhib(lead), 0.5 * (gap - tol)};
  }
  return {PieceId::boundary(), 0.0};
}

PieceReading read_piece(const Network& net, const State& v) {
  return read_piece(net, v, net.tie_tolerance());
}

PieceId classify_piece(const Network& net, const State& v, double tol) {
  return read_piece(net, v, tol).piece;
}

PieceId classify_piece(const Network& net, const State& v) { return read_piece(net, v).piece; }

double margin(const Network& net, const State& v) { return read_piece(net, v).margin; }

DetectMode resolve_mode(const Network& net, DetectMode requested) {
  if (requested == DetectMode::WholeSigma) return requested;
  const HypothesisReport h = check_hypotheses(net);
  const bool certifiable = h.H3 && h.H4 && h.has_inhibitory;
  if (requested == DetectMode::Certified) {
    if (!certifiable)
      throw HypothesisViolated("certified detection needs H3, H4 and an inhibitory neuron");
    return requested;
  }
  if (certifiable) return DetectMode::Certified;
  if (h.all_excitatory) return DetectMode::WholeSigma;
  throw HypothesisViolated("network is neither contractive (H3, H4, inhibitory) nor all-excitatory");
}

namespace {

struct Step {
  State v;
  PieceReading reading;
  FiringSet fired;
  double t_bar = 0.0;
  std::size_t step = 0;
};

void fill_cycle_points(const Network& net, LimitCycle& c, const State& start) {
  c.points.clear();
  c.firing_sets.clear();
  c.time_period = 0.0;
  State x = start;
  for (std::size_t s = 0; s < c.period; ++s) {
    ReturnStep r = return_map(net, x);
    c.points.push_back(x);
    c.firing_sets.push_back(std::move(r.fired));
    c.time_period += r.t_bar;
    x = std::move(r.next);
  }
  c.certificate.residual = 0.0;
  for (const State& p : c.points)
    c.certificate.residual = std::max(c.certificate.residual, sup_distance(rho_pow(net, p, c.period), p));
}

// Banach iteration of rho^p from x along the expected pieces. Empty if the
// orbit leaves the itinerary.
std::optional<LimitCycle> refine(const Network& net, const std::vector<PieceId>& expect, State x,
                                 const DetectOptions& opts) {
  const std::size_t p = expect.size();
  const double cbar = net.constants().c_bar;
  std::size_t polish = 0;
  bool converged = false;
  for (std::size_t it = 0; it < kMaxRefine; ++it) {
    State y = x;
    for (std::size_t s = 0; s < p; ++s) {
      if (!in_zone(net, y, cbar)) return std::nullopt;
      if (read_piece(net, y).piece != expect[s]) return std::nullopt;
      y = rho(net, y);
    }
    const double diff = sup_distance(x, y);
    x = std::move(y);
    if (diff < opts.tol) converged = true;
    if (converged && (diff == 0.0 || ++polish >= kPolish)) break;
  }
  if (!converged) throw NumericalStall("rho^" + std::to_string(p) + " refinement did not contract");

  LimitCycle c;
  c.period = p;
  fill_cycle_points(net, c, x);
  c.min_margin = kInf;
  double top = -kInf;
  for (std::size_t s = 0; s < p; ++s) {
    if (!in_zone(net, c.points[s], cbar)) return std::nullopt;
    const PieceReading r = read_piece(net, c.points[s]);
    if (r.piece != expect[s]) return std::nullopt;
    c.itinerary.push_back(r.piece);
    c.min_margin = std::min(c.min_margin, r.margin);
    top = std::max(top, max_coord(c.points[s]));
  }
  const double r = 0.5 * std::min(c.min_margin, cbar - top);
  c.certificate.ball_radius = r;
  c.certificate.lambda = zone_lambda(net.params(), top + r);
  c.certified = r > 0 && c.certificate.residual <= 1e-10 &&
                c.certificate.lambda * r + c.certificate.residual <= r;
  if (!c.certified) throw NumericalStall("refined cycle of period " + std::to_string(p) + " fails the ball test");
  return c;
}

void finish_flags(const Network& net, FateReport& rep) {
  rep.synchronized = rep.outcome == Outcome::Synchronized;
  if (rep.outcome == Outcome::Cycle && rep.cycle && rep.cycle->certified) {
    bool silent = true;
    for (const auto& piece : rep.cycle->itinerary)
      if (piece.kind == PieceId::Kind::Sync) silent = false;
    for (const auto& f : rep.cycle->firing_sets)
      if (fires_excitatory(net, f)) silent = false;
    rep.excitatory_death = silent;
  }
}

FateReport detect_certified(const Network& net, const State& v0, const DetectOptions& opts) {
  const double cbar = net.constants().c_bar;
  FateReport rep;
  std::deque<Step> window;
  State v = v0;
  for (std::size_t step = 0; step <= opts.max_iter; ++step) {
    if (is_zero(v)) {
      rep.outcome = Outcome::Synchronized;
      rep.step = rep.transient_steps = step;
      return rep;
    }
    if (step == opts.max_iter) break;
    ReturnStep rs = return_map(net, v);
    if (fires_excitatory(net, rs.fired)) rep.last_excitatory_step = step;

    if (in_zone(net, v, cbar)) {
      const PieceReading reading = read_piece(net, v);
      if (opts.keep_trace) rep.trace.push_back({step, true, reading});
      if (reading.margin < opts.eta) {
        rep.outcome = Outcome::BoundaryGrazing;
        rep.step = step;
        rep.margin = reading.margin;
        return rep;
      }
      window.push_back({v, reading, rs.fired, rs.t_bar, step});
      if (window.size() > opts.max_period + 1) window.pop_front();

      const std::size_t k = window.size() - 1;
      double window_margin = window[k].reading.margin;
      for (std::size_t p = 1; p <= k; ++p) {
        const Step& a = window[k - p];
        window_margin = std::min(window_margin, a.reading.margin);
        if (a.reading.piece != window[k].reading.piece) continue;
        if (sup_distance(a.v, window[k].v) > 0.5 * window_margin) continue;
        std::vector<PieceId> expect;
        for (std::size_t s = k - p; s < k; ++s) expect.push_back(window[s].reading.piece);
        std::optional<LimitCycle> c = refine(net, expect, window[k].v, opts);
        if (!c) continue;
        rep.outcome = Outcome::Cycle;
        rep.step = step;
        rep.transient_steps = a.step;
        rep.cycle = std::move(c);
        return rep;
      }
    } else {
      window.clear();
      if (opts.keep_trace) rep.trace.push_back({step, false, {}});
    }
    v = std::move(rs.next);
  }
  rep.outcome = Outcome::Unresolved;
  rep.step = opts.max_iter;
  return rep;
}

FateReport detect_whole_sigma(const Network& net, const State& v0, const DetectOptions& opts) {
  FateReport rep;
  std::deque<Step> window;
  State v = v0;
  for (std::size_t step = 0; step <= opts.max_iter; ++step) {
    if (is_zero(v)) {
      rep.outcome = Outcome::Synchronized;
      rep.step = rep.transient_steps = step;
      return rep;
    }
    if (step == opts.max_iter) break;
    ReturnStep rs = return_map(net, v);
    if (fires_excitatory(net, rs.fired)) rep.last_excitatory_step = step;
    window.push_back({v, {}, rs.fired, rs.t_bar, step});
    if (window.size() > opts.max_period + 1) window.pop_front();
    const std::size_t k = window.size() - 1;
    for (std::size_t p = 1; p <= k; ++p) {
      const Step& a = window[k - p];
      if (a.fired != window[k].fired || sup_distance(a.v, window[k].v) > opts.tol) continue;
      LimitCycle c;
      c.period = p;
      fill_cycle_points(net, c, a.v);
      rep.outcome = Outcome::Cycle;
      rep.step = step;
      rep.transient_steps = a.step;
      rep.cycle = std::move(c);
      return rep;
    }
    v = std::move(rs.next);
  }
  rep.outcome = Outcome::Unresolved;
  rep.step = opts.max_iter;
  return rep;
}

}  // namespace

FateReport detect_cycle(const Network& net, const State& v0, const DetectOptions& opts) {
  check_state(net, v0);
  if (opts.max_period < 1) throw PreconditionFailed("max_period must be at least 1");
  const DetectMode mode = resolve_mode(net, opts.mode);
  FateReport rep = mode == DetectMode::Certified ? detect_certified(net, v0, opts)
                                                 : detect_whole_sigma(net, v0, opts);
  finish_flags(net, rep);
  return rep;
}

FateReport classify_fate(const Network& net, const State& v0, const DetectOptions& opts) {
  return detect_cycle(net, v0, opts);
}

bool certify_cycle(const Network& net, const LimitCycle& c) {
  if (c.period == 0 || c.points.size() != c.period) return false;
  const double cbar = net.constants().c_bar;
  const double r = c.certificate.ball_radius;
  if (!(r > 0)) return false;
  double top = -kInf;
  try {
    for (std::size_t s = 0; s < c.period; ++s) {
      const State& p = c.points[s];
      check_state(net, p);
      if (!in_zone(net, p, cbar)) return false;
      const PieceReading reading = read_piece(net, p);
      if (reading.piece.kind == PieceId::Kind::Boundary) return false;
      if (!c.itinerary.empty() && (c.itinerary.size() != c.period || c.itinerary[s] != reading.piece))
        return false;
      if (!(reading.margin > r)) return false;
      top = std::max(top, max_coord(p));
    }
  } catch (const Error&) {
    return false;
  }
  if (!(top + r < cbar)) return false;
  const double lambda = std::max(c.certificate.lambda, zone_lambda(net.params(), top + r));
  if (!(lambda * r + c.certificate.residual <= r)) return false;
  for (const State& p : c.points) {
    const std::vector<OrbitPoint> path = orbit(net, p, c.period);
    if (!(sup_distance(path.back().state, p) <= c.certificate.residual)) return false;
  }
  return true;
}

double cycle_distance(const LimitCycle& a, const LimitCycle& b) {
  if (a.period != b.period || a.points.size() != b.points.size() || a.points.empty()) return kInf;
  const std::size_t p = a.points.size();
  double best = kInf;
  for (std::size_t shift = 0; shift < p; ++shift) {
    double worst = 0.0;
    for (std::size_t k = 0; k < p && worst < best; ++k)
      worst = std::max(worst, sup_distance(a.points[k], b.points[(k + shift) % p]));
    best = std::min(best, worst);
  }
  return best;
}

CensusReport cycle_census(const Network& net, std::size_t sample_count, const DetectOptions& opts,
                          std::uint64_t seed) {
  DetectOptions o = opts;
  o.mode = resolve_mode(net, opts.mode);
  o.keep_trace = false;
  const double hi = o.mode == DetectMode::Certified ? net.constants().c_bar : net.theta();

  std::vector<FateReport> runs(sample_count);
  parallel_for(sample_count, [&](std::size_t s) {
    CounterRng rng(seed, s);
    runs[s] = detect_cycle(net, sample_section(net, rng, hi), o);
  });

  CensusReport rep;
  rep.samples = sample_count;
  rep.mode = o.mode;
  std::size_t sync = 0, graze = 0, open = 0;
  for (auto& r : runs) {
    switch (r.outcome) {
      case Outcome::Synchronized:
        ++sync;
        rep.max_transient = std::max(rep.max_transient, r.transient_steps);
        break;
      case Outcome::BoundaryGrazing: ++graze; break;
      case Outcome::Unresolved: ++open; break;
      case Outcome::Cycle: {
        rep.max_transient = std::max(rep.max_transient, r.transient_steps);
        auto hit = std::find_if(rep.cycles.begin(), rep.cycles.end(), [&](const CensusEntry& e) {
          return cycle_distance(e.cycle, *r.cycle) <= 10.0 * o.tol;
        });
        if (hit == rep.cycles.end()) {
          rep.max_period = std::max(rep.max_period, r.cycle->period);
          rep.cycles.push_back({std::move(*r.cycle), 1, 0.0});
        } else {
          ++hit->hits;
        }
        break;
      }
    }
  }
  if (sample_count > 0) {
    const double total = static_cast<double>(sample_count);
    rep.synchronized_fraction = static_cast<double>(sync) / total;
    rep.grazing_fraction = static_cast<double>(graze) / total;
    rep.unresolved_fraction = static_cast<double>(open) / total;
    for (auto& e : rep.cycles) e.basin_fraction = static_cast<double>(e.hits) / total;
  }
  return rep;
}

SyncReport sync_test(const Network& net, std::size_t sample_count, std::uint64_t seed) {
  const HypothesisReport h = check_hypotheses(net);
  if (!h.all_excitatory) throw HypothesisViolated("synchronization test needs an all-excitatory network");
  if (!h.sync_size)
    throw HypothesisViolated("network too small: need n >= ceil(theta/m)^2 = " +
                             (h.sync_neuron_bound ? std::to_string(*h.sync_neuron_bound) : std::string("inf")));
  const double beta = net.beta(), theta = net.theta();
  SyncReport rep;
  rep.samples = sample_count;
  rep.bound_p = static_cast<long>(std::ceil(theta / *net.constants().m_min_pos));
  rep.bound_t_trans = (std::log((beta - net.alpha()) / (beta - theta)) +
                       static_cast<double>(rep.bound_p) * std::log(beta / (beta - theta))) /
                      net.gamma();
  const std::size_t cap = static_cast<std::size_t>(rep.bound_p) + 8;

  struct Slot {
    std::size_t returns = 0;
    double time = 0.0;
    bool reached = false;
  };
  std::vector<Slot> slots(sample_count);
  parallel_for(sample_count, [&](std::size_t s) {
    CounterRng rng(seed, s);
    State v = sample_section(net, rng, 0.0, theta);
    Slot& out = slots[s];
    while (out.returns < cap) {
      const ReturnStep r = return_map(net, v);
      ++out.returns;
      out.time += r.t_bar;
      v = r.next;
      if (is_zero(v)) {
        out.reached = true;
        break;
      }
    }
  });

  for (const auto& s : slots) {
    rep.max_returns = std::max(rep.max_returns, s.returns);
    rep.max_time = std::max(rep.max_time, s.time);
    if (!s.reached || static_cast<long>(s.returns) > rep.bound_p || s.time > rep.bound_t_trans) ++rep.failures;
  }
  rep.ok = rep.failures == 0;
  return rep;
}

}  // namespace ifnet
