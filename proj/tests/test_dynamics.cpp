#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ifnet/dynamics.hpp"
#include "ifnet/errors.hpp"
#include "oracles.hpp"

using namespace ifnet;

TEST_CASE("flow closed form") {
  const Network net = fx::net_a();
  const State v{0.3, -0.7};
  const State same = flow(net, v, 0.0);
  CHECK(same[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(same[1] == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(flow(net, State{1.2, 1.2}, 3.7) == State{1.2, 1.2});
  const State at = flow(net, State{0.0, 0.0}, std::log(6.0));
  CHECK(at[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("flow semigroup") {
  CounterRng rng(11, 0);
  for (int t = 0; t < 2000; ++t) {
    const Network net(fx::random_params(rng, 3, false));
    const State v = fx::random_state(rng, net);
    const double s = rng.uniform(0, 3), u = rng.uniform(0, 3);
    const State a = flow(net, flow(net, v, s), u);
    const State b = flow(net, v, s + u);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("waiting time and spontaneous firers") {
  const Network net = fx::net_a();
  const auto s = spontaneous_time(net, {0.9, 0.0});
  CHECK(s.t_bar == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(s.t_bar == doctest::Approx(oracle::threshold_time(0.9, 1.2, 1.0, 1.0)).epsilon(1e-12));
  CHECK(s.j0 == FiringSet{0});

  const auto at = spontaneous_time(net, {1.0, 0.2});
  CHECK(at.t_bar == 0.0);
  CHECK(at.j0 == FiringSet{0});

  const Network three = fx::net_c();
  CHECK(spontaneous_time(three, {0.5, 0.5, 0.2}).j0 == FiringSet{0, 1});
  CHECK(spontaneous_time(three, {0.5, 0.5 - 5e-13, 0.2}).j0 == FiringSet{0, 1});
  CHECK(spontaneous_time(three, {0.5, 0.5 - 5e-12, 0.2}).j0 == FiringSet{0});
}

TEST_CASE("waiting time against bisection") {
  CounterRng rng(12, 0);
  for (int t = 0; t < 2000; ++t) {
    const Network net(fx::random_params(rng, 2, false));
    const State v = fx::random_state(rng, net);
    const double ref = oracle::threshold_time(std::max(v[0], v[1]), net.beta(), net.theta(), net.gamma());
    CHECK(spontaneous_time(net, v).t_bar == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("states outside the phase space are rejected") {
  const Network net = fx::net_a();
  CHECK_THROWS_AS(spontaneous_time(net, {1.0 + 1e-12, 0.0}), PreconditionFailed);
  CHECK_THROWS_AS(return_map(net, {0.5, -1.5}), PreconditionFailed);
  CHECK_THROWS_AS(return_map(net, {0.5}), PreconditionFailed);
  CHECK_NOTHROW(return_map(net, {1.0, -1.0}));
}

TEST_CASE("threshold state") {
  const Network net = fx::net_c();
  const State a = state_at_threshold(fx::net_a(), {0.9, 0.0}, 0);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(state_at_threshold(fx::net_a(), {1.0, 0.3}, 0) == State{1.0, 0.3});
  const State b = state_at_threshold(net, {0.4, 0.0, 0.2}, 0);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(0.95).epsilon(1e-15));
}

TEST_CASE("threshold state agrees with the flow") {
  CounterRng rng(13, 0);
  for (int t = 0; t < 2000; ++t) {
    const Network net(fx::random_params(rng, 4, false));
    const State v = fx::random_state(rng, net);
    const auto s = spontaneous_time(net, v);
    const State a = state_at_threshold(net, v, s.leader);
    const State b = flow(net, v, s.t_bar);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-10);
  }
}

TEST_CASE("avalanche fixtures") {
  const auto c = avalanche(fx::net_c(), {0.4, 0.0, 0.2});
  CHECK(c.fired == FiringSet{0, 1, 2});
  CHECK(c.rounds == 1);
  const auto d = avalanche(fx::net_d(), {0.3, 0.1});
  CHECK(d.fired == FiringSet{0});
  CHECK(d.rounds == 0);
  const auto a = avalanche(fx::net_a(), {0.9, 0.0});
  CHECK(a.fired == FiringSet{0});
}

TEST_CASE("avalanche chains through several rounds") {
  // 1 pushes 2 over, 2 pushes 3 over
  const Network net(fx::params(3, {{0, 0.5, 0}, {0, 0, 0.5}, {0, 0, 0}}));
  const auto a = avalanche(net, {0.9, 0.6, 0.4});
  CHECK(a.fired == FiringSet{0, 1, 2});
  CHECK(a.rounds == 2);
}

TEST_CASE("avalanche matches the subset oracle on small networks") {
  CounterRng rng(14, 0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 300; ++t) {
      const Network net(fx::random_params(rng, n, true));
      const State v = fx::random_state(rng, net);
      const auto s = spontaneous_time(net, v);
      const State phi = state_at_threshold(net, v, s.leader);
      const auto got = avalanche(net, v);
      CHECK(got.fired == oracle::avalanche(net, phi, s.j0));
      CHECK(got.rounds <= n);
    }
  }
}

TEST_CASE("return map fixtures") {
  const Network a = fx::net_a();
  const auto r1 = return_map(a, {0.9, 0.0});
  CHECK(r1.fired == FiringSet{0});
  CHECK(r1.next[0] == 0.0);
  CHECK(r1.next[1] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(r1.t_bar == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  const auto r2 = return_map(a, r1.next);
  CHECK(r2.fired == FiringSet{1});
  CHECK(r2.next[0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(r2.next[1] == 0.0);

  const auto c = return_map(fx::net_c(), {0.0, 0.4, 0.2});
  CHECK(c.fired == FiringSet{1});
  CHECK(c.next[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(c.next[1] == 0.0);
  CHECK(c.next[2] == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(c.t_bar == doctest::Approx(std::log(4.0)).epsilon(1e-15));

  // phi_2 = 0.6, 0.6 - 2.5 < alpha
  const Network deep(fx::uniform(2, -2.5));
  CHECK(return_map(deep, {0.5, -0.9}).next[1] == -1.0);
}

TEST_CASE("return map range") {
  CounterRng rng(15, 0);
  for (int t = 0; t < 5000; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const Network net(fx::random_params(rng, n, true));
    const State v = fx::random_state(rng, net);
    const auto r = return_map(net, v);
    const State phi = state_at_threshold(net, v, spontaneous_time(net, v).leader);
    bool zero = false;
    for (std::size_t i = 0; i < n; ++i) {
      const bool fired = std::binary_search(r.fired.begin(), r.fired.end(), i);
      if (fired) {
        CHECK(r.next[i] == 0.0);
        zero = true;
      } else {
        CHECK(r.next[i] >= net.alpha());
        CHECK(r.next[i] < net.theta());
        CHECK(phi[i] + positive_input(net, i, r.fired) < net.theta());
      }
    }
    CHECK(zero);
    CHECK(std::includes(r.fired.begin(), r.fired.end(), r.j0.begin(), r.j0.end()));
  }
}

TEST_CASE("period-two orbit of the symmetric pair") {
  CounterRng rng(16, 0);
  for (int t = 0; t < 1000; ++t) {
    const double h = rng.uniform(1e-3, 1.0 - 1e-3);
    const Network net = fx::net_pair(h);
    const double p = fx::period_two_point(1.2, 1.0, h);
    const State v{p, 0.0};
    const State w = rho_pow(net, v, 2);
    CHECK(std::fabs(w[0] - p) <= 1e-12);
    CHECK(w[1] == 0.0);
  }
  CHECK(fx::period_two_point(1.2, 1.0, 0.5) == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("period-two orbit with groups of k neurons") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const double h = 0.5;
    const Network net(fx::uniform(2 * k, h / static_cast<double>(k)));
    const double p = fx::period_two_point(1.2, 1.0, h);
    State v(2 * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) v[i] = p;
    const State w = rho_pow(net, v, 2);
    for (std::size_t i = 0; i < 2 * k; ++i) CHECK(std::fabs(w[i] - v[i]) <= 1e-12);
    // halfway the groups swap
    const State half = rho(net, v);
    for (std::size_t i = 0; i < k; ++i) CHECK(half[i] == 0.0);
    for (std::size_t i = k; i < 2 * k; ++i) CHECK(std::fabs(half[i] - p) <= 1e-12);
  }
}

TEST_CASE("orbit bookkeeping") {
  const Network net = fx::net_a();
  const auto o = orbit(net, {0.9, 0.0}, 4);
  REQUIRE(o.size() == 4);
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    sum += o[k].t_bar;
    CHECK(o[k].cum_time == sum);
    CHECK(o[k].t_bar == doctest::Approx(std::log(1.5)).epsilon(1e-12));
    CHECK(o[k].fired == FiringSet{k % 2});
    CHECK(std::fabs(o[k].state[(k + 1) % 2] - 0.9) < 1e-12);
  }
  const auto z = orbit(fx::net_c(), {0.0, 0.0, 0.0}, 1);
  CHECK(z[0].state == State{0.0, 0.0, 0.0});
  CHECK(z[0].fired == FiringSet{0, 1, 2});
}

TEST_CASE("sampled trajectory") {
  const Network net = fx::net_a();
  const auto rows = sample_trajectory(net, {0.9, 0.0}, 0.01, 1.0);
  // first spike at ln 1.5
  std::size_t first = 0;
  while (!rows[first].post_spike) ++first;
  REQUIRE(first >= 1);
  CHECK(rows[first].t == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(rows[first - 1].t == rows[first].t);
  CHECK(rows[first - 1].v[0] == 1.0);
  CHECK(rows[first].v[0] == 0.0);
  for (std::size_t k = 0; k < first - 1; ++k) {
    CHECK(rows[k].t == doctest::Approx(0.01 * static_cast<double>(k)));
    CHECK(rows[k].v[1] == doctest::Approx(1.2 - 1.2 * std::exp(-rows[k].t)));
  }
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].t >= rows[k - 1].t);

  // grid point on a firing instant gives only the pair
  const double t1 = std::log(1.5);
  const auto exact = sample_trajectory(net, {0.9, 0.0}, t1, t1);
  REQUIRE(exact.size() == 3);
  CHECK_FALSE(exact[1].post_spike);
  CHECK(exact[2].post_spike);
  CHECK_THROWS_AS(sample_trajectory(net, {0.9, 0.0}, 0.0, 1.0), PreconditionFailed);
}
