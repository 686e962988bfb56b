#include "ifnet/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifnet/errors.hpp"
#include "ifnet/parallel.hpp"

namespace ifnet {

namespace {

constexpr std::size_t kAttemptsPerSample = 64;

void require_indices(const Network& net, std::size_t i, std::size_t j) {
  if (i >= net.size() || j >= net.size()) throw PreconditionFailed("neuron index out of range");
  if (i == j) throw PreconditionFailed("pair needs two distinct neurons");
}

void require_contractive_setting(const Network& net) {
  const HypothesisReport h = check_hypotheses(net);
  if (!h.H3) throw HypothesisViolated("H3 fails: need beta < beta_plus and every off-diagonal |H| > epsilon");
  if (!h.H4) throw HypothesisViolated("H4 fails: a neuron has mixed-sign outputs");
  if (!h.has_inhibitory) throw HypothesisViolated("network has no inhibitory neuron");
}

// Independent draw or a local perturbation, chosen by a fair coin.
State partner_point(const Network& net, const State& v, CounterRng& rng, double hi) {
  if (rng.uniform() < 0.5) return sample_section(net, rng, hi);
  const double scale = std::pow(10.0, rng.uniform(-7.0, -1.0));
  return perturb_on_section(net, v, rng, scale, hi);
}

double bisect_fixed_point(const Network& net, std::size_t i, std::size_t j, double lo, double hi,
                          double tol) {
  auto h = [&](double x) { return g_map(net, i, g_map(net, j, x)) - x; };
  double flo = h(lo);
  const double fhi = h(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0))
    throw NoFixedPoint("g_i o g_j - x keeps one sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = h(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double image_zone(const Network& net) {
  const auto& k = net.constants();
  const double m = k.min_abs_offdiag.value_or(0.0);
  return std::max(0.0, net.theta() - m);
}

bool in_zone(const Network& net, const State& v, double c) {
  bool on_section = false;
  for (double x : v) {
    if (x < net.alpha() || x > c) return false;
    if (x == 0.0) on_section = true;
  }
  return on_section;
}

State sample_section(const Network& net, CounterRng& rng, double lo, double hi) {
  const std::size_t n = net.size();
  const std::size_t z = rng.index(n);
  State v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = k == z ? 0.0 : rng.uniform(lo, hi);
  return v;
}

State sample_section(const Network& net, CounterRng& rng, double hi) {
  return sample_section(net, rng, net.alpha(), hi);
}

State perturb_on_section(const Network& net, const State& v, CounterRng& rng, double scale, double hi) {
  State w = v;
  for (double& x : w) {
    const double step = rng.uniform(-scale, scale);
    if (x == 0.0) continue;
    x = std::clamp(x + step, net.alpha(), hi);
  }
  return w;
}

ContractionReport verify_contraction(const Network& net, double c, std::size_t sample_count,
                                     std::uint64_t seed) {
  const double cbar = net.constants().c_bar;
  if (!(c >= 0) || !(c < cbar)) throw PreconditionFailed("zone level must lie in [0, c_bar)");

  struct Slot {
    bool accepted = false;
    std::size_t attempts = 0;
    double ratio = 0.0;
    double dist = 0.0, image_dist = 0.0;
    State v, w;
  };
  std::vector<Slot> slots(sample_count);
  parallel_for(sample_count, [&](std::size_t s) {
    CounterRng rng(seed, s);
    Slot& out = slots[s];
    while (out.attempts < kAttemptsPerSample) {
      ++out.attempts;
      State v = sample_section(net, rng, c);
      State w = partner_point(net, v, rng, c);
      const double dist = sup_distance(v, w);
      if (dist == 0.0) continue;
      const ReturnStep rv = return_map(net, v);
      const ReturnStep rw = return_map(net, w);
      if (rv.fired != rw.fired) continue;
      out.accepted = true;
      out.dist = dist;
      out.image_dist = sup_distance(rv.next, rw.next);
      out.ratio = out.image_dist / dist;
      out.v = std::move(v);
      out.w = std::move(w);
      break;
    }
  });

  ContractionReport rep;
  rep.c = c;
  rep.lambda_c = zone_lambda(net.params(), c);
  for (auto& s : slots) {
    rep.attempts += s.attempts;
    if (!s.accepted) continue;
    ++rep.pairs;
    rep.max_ratio = std::max(rep.max_ratio, s.ratio);
    if (s.image_dist > rep.lambda_c * s.dist + 1e-9) rep.violations.push_back({std::move(s.v), std::move(s.w), s.ratio});
  }
  if (sample_count > 0 && rep.pairs * 10 < rep.attempts)
    throw InsufficientSamples("only " + std::to_string(rep.pairs) + " of " + std::to_string(rep.attempts) +
                              " pairs shared a firing set");
  return rep;
}

ExpansionWitness expansion_witness(const Network& net, std::size_t i, const State& v, const State& w) {
  check_state(net, v);
  check_state(net, w);
  if (i >= net.size()) throw PreconditionFailed("neuron index out of range");
  const double cstar = net.constants().c_star;
  auto in_gamma = [&](const State& x) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k == i) {
        if (!(x[k] > cstar && x[k] < net.theta())) return false;
      } else if (x[k] != 0.0) {
        return false;
      }
    }
    return true;
  };
  if (!in_gamma(v) || !in_gamma(w)) throw PreconditionFailed("states not in Gamma_i");
  if (v[i] == w[i]) throw PreconditionFailed("states coincide");
  const ReturnStep rv = return_map(net, v);
  const ReturnStep rw = return_map(net, w);
  if (rv.fired != rw.fired) throw PreconditionFailed("firing sets differ");

  ExpansionWitness out;
  const double beta = net.beta();
  out.lower_bound = beta * (beta - net.theta()) / ((beta - v[i]) * (beta - w[i]));
  const double dx = std::fabs(v[i] - w[i]);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::binary_search(rv.fired.begin(), rv.fired.end(), k)) continue;
    if (rv.next[k] <= net.alpha() || rw.next[k] <= net.alpha()) continue;
    out.coords.push_back(k);
    out.ratios.push_back(std::fabs(rv.next[k] - rw.next[k]) / dx);
  }
  if (!out.ratios.empty()) {
    out.ratio = *std::min_element(out.ratios.begin(), out.ratios.end());
    out.expanded = out.ratio > 1.0;
  }
  return out;
}

OConditions check_O_conditions(const Network& net, std::size_t i, std::size_t j) {
  require_indices(net, i, j);
  const std::size_t n = net.size();
  const double slack = net.theta() - net.constants().c_star;
  OConditions o{true, true, true};
  for (std::size_t s : {i, j}) {
    double excit = 0.0, total = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == s) continue;
      const double h = net.H(l, s);
      total += h;
      if (h > 0) excit += h;
    }
    if (!(excit < slack)) o.O1 = false;
    if (!(total > 0)) o.O3 = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      if (!(net.H(s, k) > net.theta())) o.O2 = false;
    }
  }
  return o;
}

namespace {

double incoming(const Network& net, std::size_t j) {
  double s = 0.0;
  for (std::size_t l = 0; l < net.size(); ++l)
    if (l != j) s += net.H(l, j);
  return s;
}

}  // namespace

double g_map(const Network& net, std::size_t j, double x) {
  const double beta = net.beta();
  return beta * (net.theta() - x) / (beta - x) + incoming(net, j);
}

double g_map_derivative(const Network& net, double x) {
  const double beta = net.beta();
  const double w = beta - x;
  return -beta * (beta - net.theta()) / (w * w);
}

double g_map_inverse(const Network& net, std::size_t j, double y) {
  const double beta = net.beta();
  return beta - beta * (beta - net.theta()) / (beta + incoming(net, j) - y);
}

PeriodTwo period_two_orbit(const Network& net, std::size_t i, std::size_t j, double tol) {
  require_indices(net, i, j);
  double lo = 0.0;
  const double pre = g_map_inverse(net, j, net.theta());
  if (std::isfinite(pre)) lo = std::max(lo, pre);
  const double hi = net.theta();
  if (!(lo < hi)) throw NoFixedPoint("empty bracket for the period-two point");
  PeriodTwo out;
  out.i = i;
  out.j = j;
  out.x_star = bisect_fixed_point(net, i, j, lo, hi, tol);
  out.y_star = g_map(net, j, out.x_star);
  out.multiplier = std::fabs(g_map_derivative(net, out.y_star) * g_map_derivative(net, out.x_star));
  return out;
}

RepellerReport repeller(const Network& net, std::size_t i, std::size_t j, double tol) {
  RepellerReport r;
  r.i = i;
  r.j = j;
  r.conditions = check_O_conditions(net, i, j);
  if (!r.conditions.all()) throw PreconditionFailed("O1-O3 do not all hold for this pair");
  const double cstar = net.constants().c_star;
  // g_j is decreasing, so the preimage of (c*, theta) is (g_j^{-1}(theta), g_j^{-1}(c*))
  r.a = std::max(cstar, g_map_inverse(net, j, net.theta()));
  r.b = std::min(net.theta(), g_map_inverse(net, j, cstar));
  if (!(r.a < r.b)) throw NoFixedPoint("preimage interval does not meet (c*, theta)");
  r.fixed_point = bisect_fixed_point(net, i, j, r.a, r.b, tol);
  r.partner = g_map(net, j, r.fixed_point);
  r.multiplier = std::fabs(g_map_derivative(net, r.partner) * g_map_derivative(net, r.fixed_point));
  return r;
}

AbsorptionReport absorption_check(const Network& net, std::size_t sample_count, std::uint64_t seed) {
  require_contractive_setting(net);
  const auto& k = net.constants();
  const long bound = *k.p0 + 1;
  const std::size_t horizon = static_cast<std::size_t>(2 * bound + 8);
  const double cbar = k.c_bar;
  const double img = image_zone(net);
  const double img_tol = img + 1e-12;

  struct Slot {
    std::size_t entry = 0;
    bool entered = false;
    bool escaped = false;
    double max_image = 0.0;
  };
  std::vector<Slot> slots(sample_count);
  parallel_for(sample_count, [&](std::size_t s) {
    CounterRng rng(seed, s);
    State v = sample_section(net, rng, net.theta());
    Slot& out = slots[s];
    for (std::size_t step = 0; step <= horizon; ++step) {
      if (!out.entered) {
        if (in_zone(net, v, cbar)) {
          out.entered = true;
          out.entry = step;
        }
      } else {
        out.max_image = std::max(out.max_image, max_coord(v));
        if (max_coord(v) > img_tol || !in_zone(net, v, cbar)) out.escaped = true;
      }
      v = rho(net, v);
    }
    if (!out.entered) out.entry = horizon + 1;
  });

  AbsorptionReport rep;
  rep.bound_p0_plus_1 = bound;
  rep.image_bound = img;
  rep.samples = sample_count;
  for (const auto& s : slots) {
    rep.max_steps_outside = std::max(rep.max_steps_outside, s.entry);
    rep.max_image_coord = std::max(rep.max_image_coord, s.max_image);
    if (!s.entered || static_cast<long>(s.entry) > bound) ++rep.late_entries;
    if (s.escaped) ++rep.escapes;
  }
  rep.ok = rep.late_entries == 0 && rep.escapes == 0 && img < cbar;
  return rep;
}

bool jvac_check(const Network& net, const State& v) {
  require_contractive_setting(net);
  check_state(net, v);
  if (!in_zone(net, v, net.constants().c_bar)) throw PreconditionFailed("state outside C_cbar");
  const ReturnStep r = return_map(net, v);
  const bool excitatory_start =
      std::any_of(r.j0.begin(), r.j0.end(), [&](std::size_t j) { return net.is_excitatory(j); });
  return !excitatory_start || r.fired.size() == net.size();
}

double adapted_distance(const Network& net, const State& v, const State& w, std::size_t n0,
                        double mu_tilde) {
  if (n0 < 1) throw PreconditionFailed("n0 must be at least 1");
  if (!(mu_tilde > 0 && mu_tilde < 1)) throw PreconditionFailed("mu_tilde must lie in (0, 1)");
  State a = v, b = w;
  double d = 0.0, weight = 1.0;
  for (std::size_t i = 0; i < n0; ++i) {
    d += sup_distance(a, b) * weight;
    weight /= mu_tilde;
    if (i + 1 < n0) {
      a = rho(net, a);
      b = rho(net, b);
    }
  }
  return d;
}

std::vector<FiringSet> itinerary(const Network& net, State v, std::size_t len) {
  std::vector<FiringSet> out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) {
    ReturnStep r = return_map(net, v);
    out.push_back(std::move(r.fired));
    v = std::move(r.next);
  }
  return out;
}

std::size_t smallest_adapted_horizon(double c_hat, double lambda, double mu_tilde) {
  if (!(lambda < mu_tilde && mu_tilde < 1)) throw PreconditionFailed("need lambda < mu_tilde < 1");
  const double q = lambda / mu_tilde;
  std::size_t n0 = 1;
  double val = c_hat * q;
  while (val >= 1.0) {
    val *= q;
    ++n0;
    if (n0 > 10000000) throw PreconditionFailed("adapted horizon does not fit");
  }
  return n0;
}

LipschitzEstimate estimate_lipschitz_c(const Network& net, std::size_t sample_count, std::uint64_t seed) {
  require_contractive_setting(net);
  LipschitzEstimate est;
  est.lambda = zone_lambda(net.params(), image_zone(net));
  if (!(est.lambda < 1)) throw PreconditionFailed("image zone is not contractive");
  est.horizon = *net.constants().p0 + 1;
  const std::size_t K = static_cast<std::size_t>(est.horizon);

  struct Slot {
    std::size_t attempts = 0;
    bool accepted = false;
    double sup = 0.0;
  };
  std::vector<Slot> slots(sample_count);
  parallel_for(sample_count, [&](std::size_t s) {
    CounterRng rng(seed, s);
    Slot& out = slots[s];
    while (out.attempts < kAttemptsPerSample && !out.accepted) {
      ++out.attempts;
      State v = sample_section(net, rng, net.theta());
      State w = partner_point(net, v, rng, net.theta());
      const double d0 = sup_distance(v, w);
      if (d0 == 0.0) continue;
      double scale = d0;
      for (std::size_t k = 0; k <= K; ++k) {
        const ReturnStep rv = return_map(net, v);
        const ReturnStep rw = return_map(net, w);
        if (rv.fired != rw.fired) break;
        // v, w now share J_0..J_k
        out.accepted = true;
        out.sup = std::max(out.sup, sup_distance(v, w) / scale);
        scale *= est.lambda;
        v = rv.next;
        w = rw.next;
      }
    }
  });

  std::size_t attempts = 0;
  for (const auto& s : slots) {
    attempts += s.attempts;
    if (!s.accepted) continue;
    ++est.pairs;
    est.raw_sup = std::max(est.raw_sup, s.sup);
  }
  if (est.pairs == 0 || est.pairs * 10 < attempts)
    throw InsufficientSamples("too few pairs shared an itinerary");
  est.c_hat = 2.0 * est.raw_sup;
  est.mu_tilde = 0.5 * (est.lambda + 1.0);
  est.n0 = smallest_adapted_horizon(est.c_hat, est.lambda, est.mu_tilde);
  return est;
}

AdaptedMetricReport adapted_metric_check(const Network& net, std::size_t n0, double mu_tilde,
                                         std::size_t sample_count, std::uint64_t seed) {
  struct Slot {
    std::size_t attempts = 0;
    bool accepted = false;
    double ratio = 0.0;
    bool violated = false;
  };
  std::vector<Slot> slots(sample_count);
  parallel_for(sample_count, [&](std::size_t s) {
    CounterRng rng(seed, s);
    Slot& out = slots[s];
    while (out.attempts < kAttemptsPerSample) {
      ++out.attempts;
      const State v = sample_section(net, rng, net.theta());
      const State w = partner_point(net, v, rng, net.theta());
      if (sup_distance(v, w) == 0.0) continue;
      if (itinerary(net, v, n0 + 1) != itinerary(net, w, n0 + 1)) continue;
      const double d = adapted_distance(net, v, w, n0, mu_tilde);
      const double d1 = adapted_distance(net, rho(net, v), rho(net, w), n0, mu_tilde);
      out.accepted = true;
      out.ratio = d1 / d;
      out.violated = d1 > mu_tilde * d + 1e-9;
      break;
    }
  });

  AdaptedMetricReport rep;
  for (const auto& s : slots) {
    rep.attempts += s.attempts;
    if (!s.accepted) continue;
    ++rep.pairs;
    rep.max_ratio = std::max(rep.max_ratio, s.ratio);
    if (s.violated) ++rep.violations;
  }
  if (sample_count > 0 && rep.pairs * 10 < rep.attempts)
    throw InsufficientSamples("too few pairs shared an itinerary");
  rep.ok = rep.violations == 0 && rep.pairs > 0;
  return rep;
}

}  // namespace ifnet
