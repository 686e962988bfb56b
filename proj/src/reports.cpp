#include "ifnet/reports.hpp"

#include <algorithm>

#include "ifnet/contraction.hpp"
#include "ifnet/errors.hpp"
#include "ifnet/rng.hpp"

namespace ifnet {

Json analyze_report(const Network& net, std::pair<std::size_t, std::size_t> pair) {
  Json j;
  Json classes = Json::array();
  for (auto c : net.classes()) classes.push_back(to_string(c));
  j["classes"] = std::move(classes);
  j["constants"] = to_json(net.constants());
  const HypothesisReport h = check_hypotheses(net);
  j["hypotheses"] = to_json(h);
  const double zone = image_zone(net);
  j["image_zone"] = zone;
  j["lambda_image_zone"] = zone_lambda(net.params(), zone);

  Json p2 = nullptr;
  if (net.size() >= 2 && pair.first < net.size() && pair.second < net.size() && pair.first != pair.second) {
    try {
      p2 = to_json(period_two_orbit(net, pair.first, pair.second));
    } catch (const NoFixedPoint&) {
    }
  }
  j["period_two"] = std::move(p2);
  return j;
}

CyclesResult cycles_report(const Network& net, std::size_t samples, const DetectOptions& opts,
                           std::uint64_t seed) {
  CyclesResult r;
  r.census = cycle_census(net, samples, opts, seed);
  r.summary = to_json(r.census);
  bool all_certified = true;
  for (const auto& e : r.census.cycles)
    if (e.cycle.certified && !certify_cycle(net, e.cycle)) all_certified = false;
  r.summary["recertified"] = all_certified;
  r.cycles = cycles_json(r.census);
  return r;
}

Json synchro_report(const Network& net, std::size_t samples, std::uint64_t seed) {
  return to_json(sync_test(net, samples, seed));
}

Json expansion_report(const Network& net, std::size_t grid_points) {
  const std::size_t n = net.size();
  Json j;
  j["c_star"] = net.constants().c_star;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      Json e;
      e["pair"] = Json::array({i + 1, k + 1});
      const OConditions o = check_O_conditions(net, i, k);
      e["conditions"] = to_json(o);
      if (o.all()) {
        try {
          e["repeller"] = to_json(repeller(net, i, k));
        } catch (const NoFixedPoint& err) {
          e["repeller"] = Json{{"error", err.what()}};
        }
      }
      pairs.push_back(std::move(e));
    }
  }
  j["pairs"] = std::move(pairs);

  const std::size_t g = std::clamp<std::size_t>(grid_points, 2, 1000);
  const double lo = net.constants().c_star, hi = net.theta();
  Json gammas = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t compared = 0, expanded = 0, skipped = 0;
    double min_ratio = 0.0, min_excess = 0.0;
    bool first = true;
    State prev;
    for (std::size_t s = 0; s < g; ++s) {
      State v(n, 0.0);
      v[i] = lo + (hi - lo) * (static_cast<double>(s) + 0.5) / static_cast<double>(g);
      if (s > 0) {
        try {
          const ExpansionWitness w = expansion_witness(net, i, prev, v);
          if (w.ratios.empty()) {
            ++skipped;
          } else {
            ++compared;
            if (w.expanded) ++expanded;
            if (first || w.ratio < min_ratio) min_ratio = w.ratio;
            if (first || w.ratio - w.lower_bound < min_excess) min_excess = w.ratio - w.lower_bound;
            first = false;
          }
        } catch (const PreconditionFailed&) {
          ++skipped;
        }
      }
      prev = std::move(v);
    }
    Json e;
    e["neuron"] = i + 1;
    e["pairs_compared"] = compared;
    e["pairs_expanded"] = expanded;
    e["pairs_skipped"] = skipped;
    e["min_ratio"] = compared ? Json(min_ratio) : Json(nullptr);
    e["min_ratio_minus_bound"] = compared ? Json(min_excess) : Json(nullptr);
    gammas.push_back(std::move(e));
  }
  j["gamma_grid"] = std::move(gammas);
  return j;
}

Json contract_report(const Network& net, std::size_t samples, std::uint64_t seed) {
  Json j;
  const double cbar = net.constants().c_bar;
  j["c_bar"] = cbar;
  Json levels = Json::array();
  const double fractions[] = {0.0, 0.25, 0.5, 0.75};
  for (std::size_t l = 0; l < 4; ++l)
    levels.push_back(to_json(verify_contraction(net, fractions[l] * cbar, samples, derive_seed(seed, l))));
  j["levels"] = std::move(levels);
  j["absorption"] = to_json(absorption_check(net, samples, derive_seed(seed, 10)));
  const LipschitzEstimate est = estimate_lipschitz_c(net, samples, derive_seed(seed, 11));
  j["lipschitz"] = to_json(est);
  j["adapted_metric"] = to_json(adapted_metric_check(net, est.n0, est.mu_tilde, samples, derive_seed(seed, 12)));
  return j;
}

}  // namespace ifnet
