#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ifnet/dynamics.hpp"
#include "ifnet/network.hpp"
#include "ifnet/rng.hpp"

namespace ifnet {

// Upper edge of the zone that contains every image of C_cbar:
// max(0, theta - min_{j != i} |H_ji|).
double image_zone(const Network& net);

// True iff v lies on the section (some coordinate is exactly 0) and every
// coordinate is in [alpha, c].
bool in_zone(const Network& net, const State& v, double c);

// Uniform point on a random face of the section: one coordinate 0, the rest
// uniform in [alpha, hi).
State sample_section(const Network& net, CounterRng& rng, double hi);
// Same with the nonzero coordinates uniform in [lo, hi).
State sample_section(const Network& net, CounterRng& rng, double lo, double hi);

// Nearby point on the same face as v: each nonzero coordinate is moved by up to
// `scale`, then clipped to [alpha, hi]. Zero coordinates stay zero.
State perturb_on_section(const Network& net, const State& v, CounterRng& rng, double scale, double hi);

struct PairViolation {
  State v, w;
  double ratio = 0.0;
};

struct ContractionReport {
  double c = 0.0;
  double lambda_c = 0.0;
  double max_ratio = 0.0;
  std::size_t pairs = 0;
  std::size_t attempts = 0;
  std::vector<PairViolation> violations;  // |rho V - rho W| > lambda_c |V - W| + 1e-9
};

// Samples same-firing-set pairs in C_c and measures sup-norm Lipschitz ratios.
// Pairs are half independent, half local perturbations.
ContractionReport verify_contraction(const Network& net, double c, std::size_t sample_count,
                                     std::uint64_t seed);

struct ExpansionWitness {
  std::vector<std::size_t> coords;  // compared coordinates (not fired, not clamped)
  std::vector<double> ratios;
  double ratio = 0.0;               // smallest of `ratios`
  double lower_bound = 0.0;         // beta (beta - theta) / ((beta - V_i)(beta - W_i))
  bool expanded = false;
};

ExpansionWitness expansion_witness(const Network& net, std::size_t i, const State& v, const State& w);

struct OConditions {
  bool O1 = false, O2 = false, O3 = false;
  bool all() const noexcept { return O1 && O2 && O3; }
};

OConditions check_O_conditions(const Network& net, std::size_t i, std::size_t j);

// g_j(x) = beta - beta (beta - theta)/(beta - x) + sum_{l != j} H_lj
double g_map(const Network& net, std::size_t j, double x);
double g_map_derivative(const Network& net, double x);
double g_map_inverse(const Network& net, std::size_t j, double y);

struct PeriodTwo {
  std::size_t i = 0, j = 0;
  double x_star = 0.0;      // coordinate i on Gamma_i
  double y_star = 0.0;      // g_j(x_star), coordinate j on Gamma_j
  double multiplier = 0.0;  // |g_i'(y_star) g_j'(x_star)|
};

// Fixed point of g_i o g_j by bisection on [max(0, g_j^{-1}(theta)), theta].
// Throws NoFixedPoint without a sign change.
PeriodTwo period_two_orbit(const Network& net, std::size_t i, std::size_t j, double tol = 1e-13);

struct RepellerReport {
  std::size_t i = 0, j = 0;
  double a = 0.0, b = 0.0;
  double fixed_point = 0.0;
  double partner = 0.0;
  double multiplier = 0.0;
  OConditions conditions;
};

// Throws PreconditionFailed unless O1-O3 hold; NoFixedPoint if (a, b) is
// empty or holds no fixed point.
RepellerReport repeller(const Network& net, std::size_t i, std::size_t j, double tol = 1e-13);

struct AbsorptionReport {
  std::size_t max_steps_outside = 0;
  long bound_p0_plus_1 = 0;
  double max_image_coord = 0.0;
  double image_bound = 0.0;
  std::size_t late_entries = 0;
  std::size_t escapes = 0;
  std::size_t samples = 0;
  bool ok = false;
};

// Throws HypothesisViolated unless H3, H4 hold and an inhibitory neuron exists.
AbsorptionReport absorption_check(const Network& net, std::size_t sample_count, std::uint64_t seed);

// (spontaneous firers include an excitatory neuron) => everyone fires.
bool jvac_check(const Network& net, const State& v);

double adapted_distance(const Network& net, const State& v, const State& w, std::size_t n0,
                        double mu_tilde);

// Firing sets of the first `len` returns from v.
std::vector<FiringSet> itinerary(const Network& net, State v, std::size_t len);

struct LipschitzEstimate {
  double c_hat = 0.0;    // sampled sup, inflated by 2
  double raw_sup = 0.0;  // before inflation
  double lambda = 0.0;   // contraction constant on the image zone
  double mu_tilde = 0.0;
  std::size_t n0 = 1;
  long horizon = 0;      // largest k sampled
  std::size_t pairs = 0;
};

std::size_t smallest_adapted_horizon(double c_hat, double lambda, double mu_tilde);

LipschitzEstimate estimate_lipschitz_c(const Network& net, std::size_t sample_count, std::uint64_t seed);

struct AdaptedMetricReport {
  std::size_t pairs = 0;
  std::size_t attempts = 0;
  double max_ratio = 0.0;  // d(rho V, rho W) / d(V, W)
  std::size_t violations = 0;
  bool ok = false;
};

// Pairs sharing the first n0 + 1 firing sets; violation if
// d(rho V, rho W) > mu_tilde d(V, W) + 1e-9.
AdaptedMetricReport adapted_metric_check(const Network& net, std::size_t n0, double mu_tilde,
                                         std::size_t sample_count, std::uint64_t seed);

}  // namespace ifnet
