#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ifnet/cycles.hpp"
#include "ifnet/network.hpp"
#include "ifnet/output.hpp"

namespace ifnet {

// One axis of a sweep, parsed from PARAM:LO:HI:STEPS. PARAM is gamma, beta,
// theta, alpha, K, H (every off-diagonal entry) or H_j_i (1-based entry).
struct GridAxis {
  std::string param;
  double lo = 0.0, hi = 0.0;
  std::size_t steps = 1;

  std::vector<double> values() const;
};

GridAxis parse_grid(const std::string& spec);

// Sets one parameter; the result is not validated.
NetworkParams apply_param(NetworkParams p, const std::string& param, double value);

enum class CellCommand { Analyze, Cycles, Synchro, Contract, Expansion };

CellCommand parse_cell_command(const std::string& name);
const char* to_string(CellCommand c) noexcept;

struct SweepOptions {
  CellCommand command = CellCommand::Analyze;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  DetectOptions detect;
  std::pair<std::size_t, std::size_t> pair{0, 1};
};

// Runs every cell (row-major over the axes) in parallel. Cell k draws its
// randomness from derive_seed(seed, k). Failing cells are reported with a
// status instead of aborting the sweep.
Json run_sweep(const NetworkParams& base, const std::vector<GridAxis>& axes, const SweepOptions& opts);

}  // namespace ifnet
