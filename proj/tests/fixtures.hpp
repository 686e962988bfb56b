#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ifnet/dynamics.hpp"
#include "ifnet/network.hpp"
#include "ifnet/rng.hpp"

namespace fx {

using ifnet::Network;
using ifnet::NetworkParams;
using ifnet::SquareMatrix;
using ifnet::State;

inline NetworkParams params(std::size_t n, std::vector<std::vector<double>> H, double beta = 1.2,
                            double theta = 1.0, double alpha = -1.0, double gamma = 1.0) {
  NetworkParams p;
  p.n = n;
  p.gamma = gamma;
  p.beta = beta;
  p.theta = theta;
  p.alpha = alpha;
  p.H = SquareMatrix(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p.H(j, i) = H[j][i];
  return p;
}

inline NetworkParams uniform(std::size_t n, double h, double beta = 1.2, double theta = 1.0,
                             double alpha = -1.0) {
  std::vector<std::vector<double>> H(n, std::vector<double>(n, h));
  return params(n, H, beta, theta, alpha);
}

// symmetric two-neuron network
inline Network net_pair(double h) { return Network(uniform(2, h)); }

inline Network net_a() { return net_pair(0.5); }
inline Network net_b() { return net_pair(0.2); }
inline Network net_d() { return net_pair(-0.6); }

inline Network net_c() {
  return Network(params(3, {{0, 0.6, 0.6}, {-0.6, 0, -0.6}, {-0.6, -0.6, 0}}));
}

inline Network net_sync9() { return Network(uniform(9, 0.4)); }

// beta - x with x the closed-form half-period potential of the symmetric pair
inline double period_two_point(double beta, double theta, double h) {
  const double x = 0.5 * (std::sqrt(h * h + 4.0 * beta * (beta - theta)) - h);
  return beta - x;
}

// Random network with entries of either sign; about a third of the entries
// are zero when `sparse` is set.
inline NetworkParams random_params(ifnet::CounterRng& rng, std::size_t n, bool sparse) {
  NetworkParams p;
  p.n = n;
  p.gamma = rng.uniform(0.2, 3.0);
  p.theta = rng.uniform(0.5, 2.0);
  p.beta = p.theta * rng.uniform(1.01, 2.0);
  p.alpha = -rng.uniform(0.1, 2.0);
  p.H = SquareMatrix(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      if (sparse && rng.uniform() < 0.33) continue;
      p.H(j, i) = rng.uniform(-1.2, 1.2) * p.theta;
    }
  return p;
}

inline State random_state(ifnet::CounterRng& rng, const Network& net) {
  State v(net.size());
  for (double& x : v) x = rng.uniform(net.alpha(), net.theta());
  return v;
}

}  // namespace fx
