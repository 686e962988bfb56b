#pragma once

#include <cstddef>
#include <vector>

#include "ifnet/network.hpp"

namespace ifnet {

using State = std::vector<double>;
// Sorted, 0-based neuron indices.
using FiringSet = std::vector<std::size_t>;

// phi^t(V) = (V - beta) e^{-gamma t} + beta, componentwise. Defined for any V.
State flow(const Network& net, const State& v, double t);

struct SpontaneousFiring {
  double t_bar = 0.0;
  FiringSet j0;            // neurons whose potential ties the maximum
  std::size_t leader = 0;  // lowest index attaining the maximum
};

// Waiting time to the first threshold crossing and the spontaneous firers.
// Throws PreconditionFailed if v is not in [alpha, theta]^n.
SpontaneousFiring spontaneous_time(const Network& net, const State& v);

// Potentials at the instant neuron i reaches theta, from the ratio form
// V_k + (beta - V_k)(theta - V_i)/(beta - V_i). Entry i is set to theta.
State state_at_threshold(const Network& net, const State& v, std::size_t i);

// Sum of the strictly positive H(j, k) over j in `fired`, in index order.
double positive_input(const Network& net, std::size_t k, const FiringSet& fired);

struct Avalanche {
  FiringSet fired;
  std::size_t rounds = 0;  // rounds that added at least one neuron
};

Avalanche avalanche(const Network& net, const State& v);

struct ReturnStep {
  State next;
  FiringSet fired;
  double t_bar = 0.0;
  FiringSet j0;
  std::size_t rounds = 0;
};

ReturnStep return_map(const Network& net, const State& v);

// Convenience: the next state only.
State rho(const Network& net, const State& v);

// k-fold return map.
State rho_pow(const Network& net, State v, std::size_t k);

struct OrbitPoint {
  State state;  // state after the step
  FiringSet fired;
  double t_bar = 0.0;
  double cum_time = 0.0;
};

std::vector<OrbitPoint> orbit(const Network& net, const State& v0, std::size_t steps);

struct TrajectoryRow {
  double t = 0.0;
  State v;
  bool post_spike = false;
};

// Samples V(t) on the grid t = k dt, k dt <= t_total. Every firing instant in
// [0, t_total] adds two rows: the left limit (post_spike = false) followed by
// the post-reset state (post_spike = true).
std::vector<TrajectoryRow> sample_trajectory(const Network& net, const State& v0, double dt,
                                             double t_total);

double sup_distance(const State& a, const State& b);
double max_coord(const State& v);
bool is_zero(const State& v);

// Rejects states outside [alpha, theta]^n or of the wrong size.
void check_state(const Network& net, const State& v);

}  // namespace ifnet
