#include "ifnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "ifnet/contraction.hpp"
#include "ifnet/errors.hpp"

namespace ifnet {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

NetworkParams validate(NetworkParams p) {
  if (p.n < 1) throw RejectConfig("n must be at least 1");
  if (!finite(p.gamma) || !finite(p.beta) || !finite(p.theta) || !finite(p.alpha))
    throw RejectConfig("non-finite scalar parameter");
  if (p.gamma <= 0) throw RejectConfig("gamma must be > 0, got " + fmt_num(p.gamma));
  if (p.theta <= 0) throw RejectConfig("theta must be > 0, got " + fmt_num(p.theta));
  if (p.alpha >= 0) throw RejectConfig("alpha must be < 0, got " + fmt_num(p.alpha));
  if (p.beta <= p.theta)
    throw RejectConfig("beta must exceed theta (beta=" + fmt_num(p.beta) + ", theta=" + fmt_num(p.theta) + ")");
  if (p.H.size() != p.n)
    throw RejectConfig("H must be " + std::to_string(p.n) + "x" + std::to_string(p.n));
  for (std::size_t j = 0; j < p.n; ++j) {
    for (std::size_t i = 0; i < p.n; ++i) {
      if (!finite(p.H(j, i))) throw RejectConfig("non-finite entry in H");
    }
    p.H(j, j) = 0.0;
  }
  return p;
}

const char* to_string(NeuronClass c) noexcept {
  switch (c) {
    case NeuronClass::Excitatory: return "excitatory";
    case NeuronClass::Inhibitory: return "inhibitory";
    case NeuronClass::Mixed: return "mixed";
  }
  return "?";
}

std::vector<NeuronClass> classify_neurons(const NetworkParams& p) {
  std::vector<NeuronClass> out(p.n, NeuronClass::Inhibitory);
  for (std::size_t j = 0; j < p.n; ++j) {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < p.n; ++i) {
      if (i == j) continue;
      if (p.H(j, i) > 0) pos = true;
      if (p.H(j, i) < 0) neg = true;
    }
    if (pos && neg)
      out[j] = NeuronClass::Mixed;
    else if (pos)
      out[j] = NeuronClass::Excitatory;
  }
  return out;
}

DerivedConstants derived_constants(const NetworkParams& p) {
  const double beta = p.beta, theta = p.theta, alpha = p.alpha;
  const double d = beta - theta;
  DerivedConstants c;
  // beta - sqrt(beta d), rationalized
  c.c_star = beta * theta / (beta + std::sqrt(beta * d));
  c.beta_plus = theta + 2.0 * theta * theta / (std::hypot(alpha, 2.0 * theta) - alpha);
  const double span = beta - alpha;
  c.epsilon = 2.0 * d * span / (std::sqrt(d * d + 4.0 * d * span) + d);
  c.c_bar = theta - c.epsilon;
  c.lambda_0 = d / beta;
  c.T_max = std::log1p(theta / d) / p.gamma;

  double mu = std::fabs(alpha);
  double min_pos = std::numeric_limits<double>::infinity();
  double min_nz = std::numeric_limits<double>::infinity();
  double min_all = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < p.n; ++j) {
    for (std::size_t i = 0; i < p.n; ++i) {
      if (i == j) continue;
      const double h = p.H(j, i);
      mu = std::min(mu, std::fabs(h + theta));
      min_all = std::min(min_all, std::fabs(h));
      if (h != 0) min_nz = std::min(min_nz, std::fabs(h));
      if (h > 0) min_pos = std::min(min_pos, h);
    }
  }
  c.mu_jump = mu;
  if (std::isfinite(min_pos)) c.m_min_pos = min_pos;
  if (std::isfinite(min_nz)) c.min_abs_H = min_nz;
  if (std::isfinite(min_all)) c.min_abs_offdiag = min_all;
  if (std::isfinite(min_all) && min_all > 0)
    c.p0 = static_cast<long>(std::ceil((theta - alpha) / min_all));
  return c;
}

double zone_lambda(const NetworkParams& p, double c) {
  const double d = p.beta - p.theta;
  if (c == 0.0) return d / p.beta;
  const double w = p.beta - c;
  return (d / w) * (1.0 + (p.beta - p.alpha) / w);
}

Network::Network(NetworkParams raw)
    : params_(validate(std::move(raw))),
      classes_(classify_neurons(params_)),
      constants_(derived_constants(params_)),
      tie_tolerance_(kTieTau * std::max(1.0, params_.theta)) {}

bool Network::has_inhibitory() const noexcept {
  return std::any_of(classes_.begin(), classes_.end(),
                     [](NeuronClass c) { return c == NeuronClass::Inhibitory; });
}

bool Network::all_excitatory() const noexcept {
  return std::all_of(classes_.begin(), classes_.end(),
                     [](NeuronClass c) { return c == NeuronClass::Excitatory; });
}

bool Network::has_mixed() const noexcept {
  return std::any_of(classes_.begin(), classes_.end(),
                     [](NeuronClass c) { return c == NeuronClass::Mixed; });
}

HypothesisReport check_hypotheses(const Network& net) {
  const auto& k = net.constants();
  const auto& p = net.params();
  HypothesisReport r;
  r.beta_below_beta_plus = p.beta < k.beta_plus;
  // every off-diagonal coupling, zeros included, must exceed epsilon in size
  r.H3 = r.beta_below_beta_plus && k.min_abs_offdiag.has_value() && *k.min_abs_offdiag > k.epsilon;
  r.H4 = !net.has_mixed();
  r.has_inhibitory = net.has_inhibitory();
  r.all_excitatory = net.all_excitatory();

  bool all_pos = p.n >= 2;
  for (std::size_t j = 0; j < p.n; ++j)
    for (std::size_t i = 0; i < p.n; ++i)
      if (i != j && !(p.H(j, i) > 0)) all_pos = false;
  if (all_pos && k.m_min_pos) {
    const double q = std::ceil(p.theta / *k.m_min_pos);
    const double bound = q * q;
    if (bound < 9.0e18) r.sync_neuron_bound = static_cast<long>(bound);
    r.sync_size = r.all_excitatory && static_cast<double>(p.n) >= bound;
  }

  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = i + 1; j < p.n; ++j) {
      const OConditions o = check_O_conditions(net, i, j);
      if (o.all()) r.O_pairs.emplace_back(i, j);
    }
  }
  return r;
}

}  // namespace ifnet
