#include <cmath>
#include <limits>

#include "doctest.h"
#include "fixtures.hpp"
#include "ifnet/errors.hpp"
#include "ifnet/network.hpp"
#include "oracles.hpp"

using namespace ifnet;

TEST_CASE("validate accepts the two-neuron network and zeroes the diagonal") {
  NetworkParams p = fx::uniform(2, 0.5);
  CHECK(validate(p).H(0, 0) == 0.0);
  p.H(0, 0) = 0.3;
  const NetworkParams v = validate(p);
  CHECK(v.H(0, 0) == 0.0);
  CHECK(v.H(0, 1) == 0.5);
}

TEST_CASE("validate rejects broken parameters") {
  const NetworkParams good = fx::uniform(2, 0.5);
  auto bad = [&](auto edit) {
    NetworkParams p = good;
    edit(p);
    CHECK_THROWS_AS(validate(p), RejectConfig);
  };
  bad([](NetworkParams& p) { p.beta = 0.9; });
  bad([](NetworkParams& p) { p.beta = 1.0; });
  bad([](NetworkParams& p) { p.theta = 0.0; });
  bad([](NetworkParams& p) { p.alpha = 0.0; });
  bad([](NetworkParams& p) { p.gamma = 0.0; });
  bad([](NetworkParams& p) { p.n = 0; });
  bad([](NetworkParams& p) { p.H = SquareMatrix(3); });
  bad([](NetworkParams& p) { p.H(0, 1) = std::numeric_limits<double>::quiet_NaN(); });
  bad([](NetworkParams& p) { p.beta = std::numeric_limits<double>::infinity(); });
}

TEST_CASE("neuron classes follow the sign of each row") {
  const auto p = fx::params(3, {{0, 0.5, 0.5}, {-0.6, 0, -0.6}, {0.5, -0.2, 0}});
  const auto c = classify_neurons(p);
  CHECK(c[0] == NeuronClass::Excitatory);
  CHECK(c[1] == NeuronClass::Inhibitory);
  CHECK(c[2] == NeuronClass::Mixed);
  // an isolated neuron counts as inhibitory
  CHECK(classify_neurons(fx::uniform(2, 0.0))[0] == NeuronClass::Inhibitory);
}

TEST_CASE("derived constants of the reference parameters") {
  const auto k = derived_constants(fx::uniform(3, 0.6));
  const auto o = oracle::constants(1.2L, 1.0L, -1.0L);
  CHECK(k.c_star == doctest::Approx(0.710102).epsilon(1e-6));
  CHECK(std::fabs(k.c_star - static_cast<double>(o.c_star)) < 1e-15);
  CHECK(std::fabs(k.beta_plus - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-15);
  CHECK(std::fabs(k.epsilon - static_cast<double>(o.epsilon)) < 1e-15);
  CHECK(k.epsilon == doctest::Approx(0.570820).epsilon(1e-6));
  CHECK(k.c_bar == doctest::Approx(0.429180).epsilon(1e-6));
  CHECK(std::fabs(k.c_bar - static_cast<double>(o.c_bar)) < 4 * 1.2 * 2.2e-16);
  CHECK(k.c_bar == 1.0 - k.epsilon);
  CHECK(std::fabs(k.T_max - std::log(6.0)) < 1e-15);
  CHECK(k.lambda_0 == doctest::Approx(0.2 / 1.2));
  CHECK(k.mu_jump == doctest::Approx(1.0));
}

TEST_CASE("optional constants are absent without a qualifying entry") {
  const auto k = derived_constants(fx::uniform(3, 0.0));
  CHECK_FALSE(k.m_min_pos.has_value());
  CHECK_FALSE(k.min_abs_H.has_value());
  CHECK_FALSE(k.p0.has_value());
  CHECK(k.min_abs_offdiag.value() == 0.0);
  const auto c = derived_constants(fx::net_c().params());
  CHECK(*c.p0 == 4);
  CHECK(*c.m_min_pos == 0.6);
  CHECK(c.mu_jump == doctest::Approx(0.4));
  CHECK_FALSE(derived_constants(fx::uniform(1, 0.0)).min_abs_offdiag.has_value());
}

TEST_CASE("constant invariants hold on random parameters") {
  CounterRng rng(7, 0);
  for (int t = 0; t < 5000; ++t) {
    const NetworkParams p = validate(fx::random_params(rng, 2, false));
    const auto k = derived_constants(p);
    const auto o = oracle::constants(p.beta, p.theta, p.alpha);
    CHECK(p.theta / 2 < k.c_star);
    CHECK(k.c_star < p.theta);
    CHECK(std::fabs(k.c_bar - static_cast<double>(o.c_bar)) <= 4 * p.beta * 2.3e-16);
    CHECK(p.theta < k.beta_plus);
    CHECK(k.beta_plus < 2 * p.theta);
    CHECK((k.c_bar > 0) == (p.beta < k.beta_plus));
    if (k.c_bar > 0) CHECK(zone_lambda(p, k.c_bar) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("beta_plus grows with alpha") {
  NetworkParams p = fx::uniform(2, 0.5);
  double prev = 0.0;
  for (int k = 0; k <= 400; ++k) {
    p.alpha = -10.0 + 9.999 * k / 400.0;
    const double bp = derived_constants(p).beta_plus;
    if (k > 0) CHECK(bp > prev);
    prev = bp;
  }
}

TEST_CASE("zone lambda at the two ends") {
  const auto p = fx::net_c().params();
  CHECK(zone_lambda(p, 0.0) == doctest::Approx(0.2 / 1.2));
  // the c > 0 branch does not tend to lambda_0 as c -> 0
  CHECK(zone_lambda(p, 1e-12) == doctest::Approx((0.2 / 1.2) * (1 + 2.2 / 1.2)));
}

TEST_CASE("hypothesis report") {
  const auto c = check_hypotheses(fx::net_c());
  CHECK(c.H3);
  CHECK(c.H4);
  CHECK(c.has_inhibitory);
  CHECK_FALSE(c.sync_size);

  const auto s = check_hypotheses(fx::net_sync9());
  CHECK(s.all_excitatory);
  CHECK(s.sync_size);
  CHECK(*s.sync_neuron_bound == 9);
  CHECK_FALSE(check_hypotheses(Network(fx::uniform(8, 0.4))).sync_size);

  const auto m = check_hypotheses(Network(fx::params(3, {{0, 0.5, -0.2}, {0.6, 0, 0.6}, {0.6, 0.6, 0}})));
  CHECK_FALSE(m.H4);

  // 0.55 < epsilon
  CHECK_FALSE(check_hypotheses(Network(fx::uniform(3, -0.55))).H3);
  // a zero coupling fails H3
  CHECK_FALSE(check_hypotheses(Network(fx::params(3, {{0, -0.6, 0}, {-0.6, 0, -0.6}, {-0.6, -0.6, 0}}))).H3);
  // beta above beta_plus
  CHECK_FALSE(check_hypotheses(Network(fx::uniform(2, -0.9, 1.7))).H3);

  const auto b = check_hypotheses(fx::net_b());
  REQUIRE(b.O_pairs.size() == 1);
  CHECK(b.O_pairs[0] == std::pair<std::size_t, std::size_t>(0, 1));
  CHECK(check_hypotheses(fx::net_a()).O_pairs.empty());
}

TEST_CASE("network wrapper") {
  const Network net = fx::net_c();
  CHECK(net.size() == 3);
  CHECK(net.H(0, 1) == 0.6);
  CHECK(net.has_inhibitory());
  CHECK_FALSE(net.all_excitatory());
  CHECK(net.tie_tolerance() == 1e-12);
  CHECK(fx::net_a().all_excitatory());
}
