#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "subrad/errors.hpp"
#include "subrad/evolve.hpp"
#include "subrad/steady.hpp"

using namespace subrad;

namespace {

ModelParams params(int n, double w, double gamma) { return {n, w, gamma}; }

Distribution random_mass(const ModelParams& p, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Distribution d = zero_distribution(p);
  for (Eigen::Index i = 0; i < d.weights.size(); ++i) d.weights[i] = u(rng);
  d.normalize();
  return d;
}

PropagationSettings dense_method() {
  PropagationSettings s;
  s.method = PropagationMethod::DenseExponential;
  return s;
}

}  // namespace

TEST_CASE("zero lag returns the input unchanged") {
  const ModelParams p = params(8, 0.2, 0.1);
  const Generator g = build_generator(p);
  const Distribution d = random_mass(p, 7);
  const Distribution out = evolve(g, d, 0.0);
  CHECK((out.weights - d.weights).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("propagation conserves mass and positivity across many steps") {
  const ModelParams p = params(10, 0.2, 0.1);
  const Generator g = build_generator(p);
  const Distribution start = point_mass(p, {3, -1});
  // Long enough that uniformization needs several internal steps.
  const Distribution out = evolve(g, start, 3.7);
  CHECK(out.total() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(out.weights.minCoeff() >= 0.0);
}

TEST_CASE("propagation is linear") {
  const ModelParams p = params(8, 0.15, 0.05);
  const Generator g = build_generator(p);
  const Distribution a = random_mass(p, 1);
  const Distribution b = random_mass(p, 2);
  Distribution combo = zero_distribution(p);
  combo.weights = 0.3 * a.weights - 0.2 * b.weights;
  const Distribution lhs = evolve(g, combo, 1.4);
  const Distribution ea = evolve(g, a, 1.4);
  const Distribution eb = evolve(g, b, 1.4);
  const Eigen::VectorXd rhs = 0.3 * ea.weights - 0.2 * eb.weights;
  CHECK((lhs.weights - rhs).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("uniformization agrees with the dense exponential route") {
  for (int n : {4, 6}) {
    const ModelParams p = params(n, 0.2, 0.1);
    const Generator g = build_generator(p);
    const Distribution start = random_mass(p, 11);
    for (double tau : {0.1, 1.0, 10.0}) {
      CAPTURE(n);
      CAPTURE(tau);
      const Distribution fast = evolve(g, start, tau);
      const Distribution dense = evolve(g, start, tau, dense_method());
      CHECK((fast.weights - dense.weights).lpNorm<Eigen::Infinity>() < 1e-9);
    }
  }
}

TEST_CASE("both routes agree with an eigendecomposition oracle") {
  const ModelParams p = params(6, 0.3, 0.1);
  const Generator g = build_generator(p);
  const Distribution start = random_mass(p, 3);
  for (double tau : {0.5, 5.0}) {
    const Eigen::MatrixXd propagator =
        testing::expm_by_eigendecomposition(Eigen::MatrixXd(g.matrix), tau);
    const Eigen::VectorXd expected = propagator * start.weights;
    const Distribution fast = evolve(g, start, tau);
    const Distribution dense = evolve(g, start, tau, dense_method());
    CHECK((fast.weights - expected).lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK((dense.weights - expected).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("propagation satisfies the semigroup property") {
  const ModelParams p = params(10, 0.25, 0.1);
  const Generator g = build_generator(p);
  const Distribution start = random_mass(p, 5);
  const Distribution one_shot = evolve(g, start, 2.3);
  const Distribution two_step = evolve(g, evolve(g, start, 1.1), 1.2);
  CHECK((one_shot.weights - two_step.weights).lpNorm<Eigen::Infinity>() <
        1e-10);
}

TEST_CASE("long-time propagation lands on the steady state") {
  const ModelParams p = params(10, 0.2, 0.1);
  const Generator g = build_generator(p);
  const Distribution steady = steady_state(g);
  const Distribution relaxed = evolve(g, point_mass(p, {5, 5}), 2000.0);
  CHECK(total_variation(relaxed, steady) < 1e-8);
}

TEST_CASE("invalid propagation inputs are rejected") {
  const ModelParams p = params(6, 0.2, 0.1);
  const Generator g = build_generator(p);
  const Distribution d = uniform_distribution(p);
  CHECK_THROWS_AS(evolve(g, d, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(evolve(g, d, std::nan("")), std::invalid_argument);
  PropagationSettings bad;
  bad.poisson_tail = 0.0;
  CHECK_THROWS_AS(evolve(g, d, 1.0, bad), std::invalid_argument);
  bad = PropagationSettings{};
  bad.max_step = -1.0;
  CHECK_THROWS_AS(evolve(g, d, 1.0, bad), std::invalid_argument);
  const Distribution wrong = uniform_distribution(params(8, 0.2, 0.1));
  CHECK_THROWS_AS(evolve(g, wrong, 1.0), std::invalid_argument);
}

TEST_CASE("observables take hand-computed values on point masses") {
  const ModelParams p = params(6, 0.2, 0.1);
  const ObservableSet at_21 = observables(point_mass(p, {2, 1}));
  CHECK(at_21.intensity == doctest::Approx(6.0));  // (2+1)(2-1+1)
  CHECK(at_21.inversion == doctest::Approx(1.0));
  CHECK(at_21.mean_j == doctest::Approx(2.0));
  CHECK(at_21.mean_m == doctest::Approx(1.0));
  CHECK(at_21.boundary_mass == 0.0);

  const ObservableSet dark = observables(point_mass(p, {3, -3}));
  CHECK(dark.intensity == 0.0);
  CHECK(dark.boundary_mass == doctest::Approx(1.0));
  CHECK(dark.inversion == doctest::Approx(-3.0));
}

TEST_CASE("observables stay consistent on unnormalized input") {
  const ModelParams p = params(8, 0.2, 0.1);
  Distribution d = random_mass(p, 9);
  const ObservableSet unit = observables(d);
  d.weights *= 2.0;
  const ObservableSet doubled = observables(d);
  // Linear functionals double, first moments are scale-free.
  CHECK(doubled.intensity == doctest::Approx(2 * unit.intensity));
  CHECK(doubled.inversion == doctest::Approx(2 * unit.inversion));
  CHECK(doubled.boundary_mass == doctest::Approx(2 * unit.boundary_mass));
  CHECK(doubled.mean_j == doctest::Approx(unit.mean_j));
  CHECK(doubled.mean_m == doctest::Approx(unit.mean_m));
}

TEST_CASE("collective factor matches the collective decay rate everywhere") {
  const ModelParams p = params(12, 0.4, 0.2);
  for (int idx = 0; idx < state_count(p); ++idx) {
    const LevelIndex lv = level_of(p, idx);
    CHECK(collective_rate_factor(lv) ==
          channel_rate(p, lv, Channel::CollectiveDecay));
  }
}

TEST_CASE("the photon jump map shifts weight down one M step") {
  const ModelParams p = params(6, 0.2, 0.1);
  const Distribution from_21 = jump_map(point_mass(p, {2, 1}));
  CHECK(from_21.weights[index_of(p, {2, 0})] == doctest::Approx(6.0));
  CHECK(from_21.total() == doctest::Approx(6.0));

  // Dark states emit nothing.
  CHECK(jump_map(point_mass(p, {2, -2})).total() == 0.0);

  const Distribution d = random_mass(p, 13);
  CHECK(jump_map(d).total() == doctest::Approx(observables(d).intensity));
}

TEST_CASE("g2 at zero lag equals the direct double sum") {
  const ModelParams p = params(20, 0.2, 0.1);
  const Generator g = build_generator(p);
  const Distribution steady = steady_state(g);
  const double intensity = observables(steady).intensity;
  double double_sum = 0.0;
  for (int idx = 0; idx < state_count(p); ++idx) {
    const LevelIndex lv = level_of(p, idx);
    if (lv.m == -lv.j) continue;
    double_sum += steady.weights[idx] * collective_rate_factor(lv) *
                  collective_rate_factor({lv.j, lv.m - 1});
  }
  const double expected = double_sum / (intensity * intensity);
  const double computed = g2(g, steady, {0.0})[0];
  CHECK(computed == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("g2 decorrelates to one at long lag") {
  const ModelParams p = params(10, 0.2, 0.1);
  const Generator g = build_generator(p);
  const Distribution steady = steady_state(g);
  const double far = g2(g, steady, {500.0})[0];
  CHECK(far == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("g2 handles unsorted lags by value") {
  const ModelParams p = params(8, 0.25, 0.1);
  const Generator g = build_generator(p);
  const Distribution steady = steady_state(g);
  const std::vector<double> shuffled{2.0, 0.0, 1.0};
  const std::vector<double> out = g2(g, steady, shuffled);
  CHECK(out[0] == doctest::Approx(g2(g, steady, {2.0})[0]).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(g2(g, steady, {0.0})[0]).epsilon(1e-12));
  CHECK(out[2] == doctest::Approx(g2(g, steady, {1.0})[0]).epsilon(1e-12));
}

TEST_CASE("g2 rejects dark stationary states and bad lags") {
  const ModelParams p = params(8, 0.0, 0.1);
  const Generator g = build_generator(p);
  const Distribution steady = steady_state(g);  // point mass at (4, -4)
  CHECK_THROWS_AS(g2(g, steady, {1.0}), DarkState);

  const ModelParams live = params(8, 0.2, 0.1);
  const Generator lg = build_generator(live);
  const Distribution ls = steady_state(lg);
  CHECK_THROWS_AS(g2(lg, ls, {-1.0}), std::invalid_argument);
}
