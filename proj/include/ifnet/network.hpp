#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace ifnet {

// Dense n x n matrix, row-major. Used for the interaction matrix where
// entry (j, i) is the jump neuron i receives when neuron j fires.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Raw network description as read from a config file.
struct NetworkParams {
  std::size_t n = 0;
  double gamma = 1.0;  // membrane decay rate (1/time)
  double beta = 0.0;   // equilibrium drive K/gamma
  double theta = 1.0;  // firing threshold
  double alpha = -1.0; // potential floor
  SquareMatrix H;

  bool operator==(const NetworkParams&) const = default;
};

// Checks beta > theta > 0 > alpha, gamma > 0, n >= 1, H shape and finiteness.
// Returns a copy with the diagonal of H zeroed. Throws RejectConfig.
NetworkParams validate(NetworkParams params);

enum class NeuronClass { Excitatory, Inhibitory, Mixed };

const char* to_string(NeuronClass c) noexcept;

// Sign pattern of each row of H (off-diagonal). An all-zero row counts as
// inhibitory.
std::vector<NeuronClass> classify_neurons(const NetworkParams& params);

// Closed-form analysis constants.
struct DerivedConstants {
  double c_star = 0.0;     // beta - sqrt(beta (beta - theta))
  double beta_plus = 0.0;  // (alpha + 2 theta + sqrt(alpha^2 + 4 theta^2)) / 2
  double c_bar = 0.0;      // theta - epsilon; upper edge of the contractive zones
  double epsilon = 0.0;    // lower bound on |H| required by H3
  double lambda_0 = 0.0;   // (beta - theta) / beta
  double mu_jump = 0.0;    // min{|alpha|, min_{i != j} |H_ij + theta|}
  std::optional<double> m_min_pos;        // min over positive off-diagonal H
  std::optional<double> min_abs_H;        // min over nonzero off-diagonal |H|
  std::optional<double> min_abs_offdiag;  // min over all off-diagonal |H| (absent for n = 1)
  std::optional<long> p0;                 // ceil((theta - alpha) / min_{j != i} |H_ji|)
  double T_max = 0.0;                     // (1/gamma) ln(beta / (beta - theta))
};

DerivedConstants derived_constants(const NetworkParams& params);

// Contraction factor of the zone C_c: lambda_0 for c == 0, otherwise
// ((beta - theta)/(beta - c)) (1 + (beta - alpha)/(beta - c)).
double zone_lambda(const NetworkParams& params, double c);

// Validated, immutable network with cached classification and constants.
// Safe to share across threads.
class Network {
 public:
  explicit Network(NetworkParams raw);

  const NetworkParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return params_.n; }
  double gamma() const noexcept { return params_.gamma; }
  double beta() const noexcept { return params_.beta; }
  double theta() const noexcept { return params_.theta; }
  double alpha() const noexcept { return params_.alpha; }
  // Jump received by `to` when `from` fires.
  double H(std::size_t from, std::size_t to) const { return params_.H(from, to); }

  const std::vector<NeuronClass>& classes() const noexcept { return classes_; }
  NeuronClass neuron_class(std::size_t i) const { return classes_[i]; }
  bool is_excitatory(std::size_t i) const { return classes_[i] == NeuronClass::Excitatory; }
  bool is_inhibitory(std::size_t i) const { return classes_[i] == NeuronClass::Inhibitory; }
  bool has_inhibitory() const noexcept;
  bool all_excitatory() const noexcept;
  bool has_mixed() const noexcept;

  const DerivedConstants& constants() const noexcept { return constants_; }

  // Tie tolerance on potentials: tau_tie * max(1, theta).
  double tie_tolerance() const noexcept { return tie_tolerance_; }

  static constexpr double kTieTau = 1e-12;

 private:
  NetworkParams params_;
  std::vector<NeuronClass> classes_;
  DerivedConstants constants_;
  double tie_tolerance_ = 0.0;
};

struct HypothesisReport {
  bool beta_below_beta_plus = false;
  bool H3 = false;
  bool H4 = false;
  bool has_inhibitory = false;
  bool all_excitatory = false;
  // All off-diagonal H strictly positive and n >= ceil(theta / m)^2.
  bool sync_size = false;
  std::optional<long> sync_neuron_bound;  // ceil(theta / m)^2
  // Unordered pairs (i < j, 0-based) meeting the repeller conditions O1-O3.
  std::vector<std::pair<std::size_t, std::size_t>> O_pairs;
};

HypothesisReport check_hypotheses(const Network& net);

}  // namespace ifnet
