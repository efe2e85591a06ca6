#include "subrad/evolve.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "subrad/errors.hpp"

namespace subrad {

namespace {

// Largest dimension the dense matrix exponential is allowed; above this the
// cubic cost and dense storage stop being reasonable.
constexpr Eigen::Index kDenseLimit = 2048;

void clamp_tiny_negatives(Eigen::VectorXd& v) {
  // Round-off only; genuinely negative inputs (linear combinations) pass
  // through untouched.
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] < 0 && v[i] > -1e-12) v[i] = 0.0;
}

Eigen::VectorXd dense_exponential(const Generator& g, const Eigen::VectorXd& v,
                                  double tau) {
  if (g.dim() > kDenseLimit)
    throw std::invalid_argument(
        "dense exponential limited to " + std::to_string(kDenseLimit) +
        " states; use uniformization");
  const Eigen::MatrixXd propagator =
      (Eigen::MatrixXd(g.matrix) * tau).exp();
  return propagator * v;
}

Eigen::VectorXd uniformized(const Generator& g, Eigen::VectorXd v, double tau,
                            const PropagationSettings& s) {
  if (!(g.max_exit_rate > 0)) return v;  // no transitions anywhere
  const double lambda = 1.01 * g.max_exit_rate;
  const long n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(lambda * tau / s.max_step)));
  const double dt = tau / static_cast<double>(n_steps);
  const double mean_jumps = lambda * dt;
  // Poisson tail bound: mean + generous multiple of the standard deviation.
  const long k_cap = static_cast<long>(
      mean_jumps + 60.0 * std::sqrt(mean_jumps + 1.0) + 60.0);

  Eigen::VectorXd term(v.size()), acc(v.size()), hop(v.size());
  for (long step = 0; step < n_steps; ++step) {
    double weight = std::exp(-mean_jumps);
    double covered = weight;
    term = v;
    acc = weight * term;
    long k = 1;
    for (; k <= k_cap && covered < 1.0 - s.poisson_tail; ++k) {
      hop.noalias() = g.matrix * term;
      term += hop / lambda;  // term = (I + Q/lambda) term, entrywise >= 0
      weight *= mean_jumps / static_cast<double>(k);
      acc += weight * term;
      covered += weight;
    }
    if (covered < 1.0 - s.poisson_tail)
      throw NotConverged("Poisson series not covered after " +
                         std::to_string(k) + " terms");
    // Renormalizing the truncated series keeps the map linear and exactly
    // weight-preserving.
    v = acc / covered;
  }
  return v;
}

}  // namespace

void PropagationSettings::validate() const {
  if (!(poisson_tail > 0) || poisson_tail > 1e-6)
    throw std::invalid_argument("poisson_tail must be in (0, 1e-6]");
  if (!(max_step > 0))
    throw std::invalid_argument("max_step must be positive");
}

Distribution evolve(const Generator& g, const Distribution& dist, double tau,
                    const PropagationSettings& settings) {
  settings.validate();
  if (dist.weights.size() != g.dim())
    throw std::invalid_argument("evolve: dimension mismatch");
  if (!(tau >= 0))
    throw std::invalid_argument("evolve: tau must be finite and >= 0");
  if (tau == 0) return dist;

  Eigen::VectorXd out;
  switch (settings.method) {
    case PropagationMethod::Uniformization:
      out = uniformized(g, dist.weights, tau, settings);
      break;
    case PropagationMethod::DenseExponential:
      out = dense_exponential(g, dist.weights, tau);
      break;
    default:
      throw std::invalid_argument("unknown propagation method");
  }
  clamp_tiny_negatives(out);
  return {dist.params, std::move(out)};
}

double collective_rate_factor(LevelIndex lv) {
  const double f = (static_cast<double>(lv.j) + lv.m) *
                   (static_cast<double>(lv.j) - lv.m + 1);
  return f > 0 ? f : 0.0;
}

ObservableSet observables(const Distribution& dist) {
  const ModelParams& p = dist.params;
  if (dist.weights.size() != state_count(p))
    throw std::invalid_argument("observables need the full (J, M) ladder");
  ObservableSet obs;
  double total = 0.0, first_j = 0.0;
  for (int j = 0; j <= p.j_max(); ++j) {
    for (int m = -j; m <= j; ++m) {
      const double weight = dist.weights[j * j + j + m];
      total += weight;
      obs.intensity += collective_rate_factor({j, m}) * weight;
      obs.inversion += m * weight;
      first_j += j * weight;
      if (m == -j) obs.boundary_mass += weight;
    }
  }
  obs.mean_j = total != 0 ? first_j / total : 0.0;
  obs.mean_m = total != 0 ? obs.inversion / total : 0.0;
  return obs;
}

Distribution jump_map(const Distribution& dist) {
  const ModelParams& p = dist.params;
  if (dist.weights.size() != state_count(p))
    throw std::invalid_argument("jump_map needs the full (J, M) ladder");
  Distribution out{p, Eigen::VectorXd::Zero(dist.weights.size())};
  for (int j = 0; j <= p.j_max(); ++j) {
    for (int m = -j + 1; m <= j; ++m) {
      // f vanishes at m = -j, so that source column is skipped outright.
      const double f = collective_rate_factor({j, m});
      out.weights[j * j + j + m - 1] += f * dist.weights[j * j + j + m];
    }
  }
  return out;
}

std::vector<double> g2(const Generator& g, const Distribution& steady,
                       const std::vector<double>& taus,
                       const PropagationSettings& settings) {
  if (g.space != StateSpace::Triangular)
    throw std::invalid_argument("g2 needs the full (J, M) ladder");
  const double intensity = observables(steady).intensity;
  if (!(intensity > 0))
    throw DarkState("stationary intensity vanishes, g2 undefined");
  for (double tau : taus)
    if (!(tau >= 0))
      throw std::invalid_argument("g2: lags must be finite and >= 0");

  std::vector<std::size_t> order(taus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return taus[a] < taus[b]; });

  std::vector<double> out(taus.size());
  Distribution conditioned = jump_map(steady);
  double reached = 0.0;
  for (std::size_t idx : order) {
    conditioned = evolve(g, conditioned, taus[idx] - reached, settings);
    reached = taus[idx];
    out[idx] = observables(conditioned).intensity / (intensity * intensity);
  }
  return out;
}

}  // namespace subrad
