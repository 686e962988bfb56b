#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "ifnet/cycles.hpp"
#include "ifnet/network.hpp"
#include "ifnet/output.hpp"

namespace ifnet {

// JSON reports shared by the subcommands and the sweep cells.

// Constants, neuron classes, hypotheses and the period-two point of `pair`
// (null when g_i o g_j has no fixed point in range).
Json analyze_report(const Network& net, std::pair<std::size_t, std::size_t> pair = {0, 1});

struct CyclesResult {
  CensusReport census;
  Json summary;
  Json cycles;
};
CyclesResult cycles_report(const Network& net, std::size_t samples, const DetectOptions& opts,
                           std::uint64_t seed);

Json synchro_report(const Network& net, std::size_t samples, std::uint64_t seed);

// O-conditions for every pair, repellers where they hold, and expansion ratios
// on a grid of Gamma_i for each neuron.
Json expansion_report(const Network& net, std::size_t grid_points);

// Contraction at c in {0, c_bar/4, c_bar/2, 3 c_bar/4}, absorption, and the
// adapted-metric check with estimated (n0, mu_tilde).
Json contract_report(const Network& net, std::size_t samples, std::uint64_t seed);

}  // namespace ifnet
