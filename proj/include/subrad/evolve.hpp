#pragma once

#include <vector>

#include "subrad/distribution.hpp"
#include "subrad/rates.hpp"

namespace subrad {

enum class PropagationMethod {
  Uniformization,     // Poisson-weighted powers of the hop matrix, any size
  DenseExponential,   // scaling-and-squaring matrix exponential, small dims
};

struct PropagationSettings {
  PropagationMethod method = PropagationMethod::Uniformization;
  double poisson_tail = 1e-12;  // neglected Poisson mass per step
  double max_step = 50.0;       // cap on lambda * dt per uniformization step

  void validate() const;
};

// exp(Q tau) applied to dist. Linear in dist; preserves total weight and
// maps componentwise-nonnegative input to nonnegative output (up to a
// 1e-12 clamp). tau = 0 returns the input unchanged.
Distribution evolve(const Generator& g, const Distribution& dist, double tau,
                    const PropagationSettings& settings = {});

// Mean collective photon rate sum f(J,M) P, inversion sum M P, the first
// moments of J and M, and the weight on the dark edge M = -J.
struct ObservableSet {
  double intensity = 0.0;
  double inversion = 0.0;
  double mean_j = 0.0;
  double mean_m = 0.0;
  double boundary_mass = 0.0;
};
ObservableSet observables(const Distribution& dist);

// f(J, M) = (J + M)(J - M + 1), the collective emission rate of a level.
double collective_rate_factor(LevelIndex lv);

// Action of a collective photon detection: out(J, M-1) += f(J, M) in(J, M).
// Total output weight equals the intensity of the input.
Distribution jump_map(const Distribution& dist);

// Normalized second-order intensity correlation g2(tau) of the stationary
// state, one value per requested lag (lags need not be sorted). Throws
// DarkState when the stationary intensity vanishes.
std::vector<double> g2(const Generator& g, const Distribution& steady,
                       const std::vector<double>& taus,
                       const PropagationSettings& settings = {});

}  // namespace subrad
