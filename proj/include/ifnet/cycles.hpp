#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifnet/dynamics.hpp"
#include "ifnet/network.hpp"

namespace ifnet {

// Continuity piece of a state in C_cbar.
struct PieceId {
  enum class Kind { Sync, Inhib, Boundary };
  Kind kind = Kind::Boundary;
  std::size_t neuron = 0;  // meaningful for Inhib only

  static PieceId sync() { return {Kind::Sync, 0}; }
  static PieceId inhib(std::size_t i) { return {Kind::Inhib, i}; }
  static PieceId boundary() { return {Kind::Boundary, 0}; }

  bool operator==(const PieceId&) const = default;
  // "sync", "inhib:<1-based index>" or "boundary"
  std::string label() const;
};

struct PieceReading {
  PieceId piece;
  double margin = 0.0;
};

// Classifies v and returns a sup-norm radius within which the piece cannot
// change. Ties within `tol` count as boundary. Throws PreconditionFailed if v
// is outside C_cbar, the network has a mixed neuron, or no inhibitory neuron.
PieceReading read_piece(const Network& net, const State& v, double tol);
PieceReading read_piece(const Network& net, const State& v);

PieceId classify_piece(const Network& net, const State& v, double tol);
PieceId classify_piece(const Network& net, const State& v);
double margin(const Network& net, const State& v);

struct Certificate {
  double lambda = 0.0;
  double ball_radius = 0.0;
  double residual = 0.0;
};

struct LimitCycle {
  std::size_t period = 0;
  std::vector<State> points;
  std::vector<PieceId> itinerary;       // empty for uncertified orbits
  std::vector<FiringSet> firing_sets;   // firing set of the return leaving each point
  double min_margin = 0.0;
  Certificate certificate;
  double time_period = 0.0;
  bool certified = false;
};

enum class DetectMode { Auto, Certified, WholeSigma };

struct DetectOptions {
  std::size_t max_iter = 10000;
  double eta = 1e-6;
  double tol = 1e-13;
  DetectMode mode = DetectMode::Auto;
  std::size_t max_period = 256;
  bool keep_trace = false;
};

enum class Outcome { Synchronized, Cycle, BoundaryGrazing, Unresolved };

const char* to_string(Outcome o) noexcept;

struct TraceEntry {
  std::size_t step = 0;
  bool in_zone = false;
  PieceReading reading;
};

struct FateReport {
  Outcome outcome = Outcome::Unresolved;
  std::size_t step = 0;      // step of synchronization / grazing / cycle entry
  double margin = 0.0;       // grazing margin
  std::optional<LimitCycle> cycle;
  std::size_t transient_steps = 0;
  std::optional<std::size_t> last_excitatory_step;
  bool synchronized = false;
  bool excitatory_death = false;
  std::vector<TraceEntry> trace;  // filled with keep_trace
};

DetectMode resolve_mode(const Network& net, DetectMode requested);

FateReport detect_cycle(const Network& net, const State& v0, const DetectOptions& opts = {});

// Re-checks a candidate: margins exceed the ball radius, the Banach ball
// inequality holds with the zone factor of the enclosing C_c, and every point
// returns within `residual` after `period` steps.
bool certify_cycle(const Network& net, const LimitCycle& candidate);

// Largest sup distance between the cycles' point lists, minimized over cyclic
// alignments. Infinity if the periods differ.
double cycle_distance(const LimitCycle& a, const LimitCycle& b);

struct CensusEntry {
  LimitCycle cycle;
  std::size_t hits = 0;
  double basin_fraction = 0.0;
};

struct CensusReport {
  std::vector<CensusEntry> cycles;
  std::size_t samples = 0;
  double synchronized_fraction = 0.0;
  double grazing_fraction = 0.0;
  double unresolved_fraction = 0.0;
  std::size_t max_transient = 0;
  std::size_t max_period = 0;
  DetectMode mode = DetectMode::Auto;
};

CensusReport cycle_census(const Network& net, std::size_t sample_count, const DetectOptions& opts,
                          std::uint64_t seed);

FateReport classify_fate(const Network& net, const State& v0, const DetectOptions& opts = {});

struct SyncReport {
  bool ok = false;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::size_t max_returns = 0;
  long bound_p = 0;
  double max_time = 0.0;
  double bound_t_trans = 0.0;
};

// Throws HypothesisViolated unless the network is all-excitatory and meets the
// neuron-count bound.
SyncReport sync_test(const Network& net, std::size_t sample_count, std::uint64_t seed);

}  // namespace ifnet
