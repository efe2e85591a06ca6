#pragma once

#include <string>

#include "subrad/distribution.hpp"
#include "subrad/rates.hpp"

namespace subrad {

enum class SteadyMethod {
  Auto,    // direct solve, power iteration as fallback
  Direct,  // sparse LU on the generator with one row pinned
  Power,   // uniformized power iteration, slower but factorization-free
};

struct SteadySettings {
  SteadyMethod method = SteadyMethod::Auto;
  long max_power_iterations = 10'000'000;
  double power_tol = 1e-13;     // sup-norm change per iteration
  double residual_tol = 1e-12;  // ||Q P||_inf / max exit rate
};

struct SteadyReport {
  std::string method;
  int replaced_row = -1;     // direct solve only
  int refinement_steps = 0;  // direct solve only
  long iterations = 0;       // power iteration only
  double residual = 0.0;
};

// Stationary distribution of the generator: Q P = 0, sum P = 1, P >= 0.
// Throws SingularOrNonUnique when the null space is not one-dimensional
// (in particular for w = 0 together with gamma = 0) and NotConverged when
// no method reaches residual_tol.
Distribution steady_state(const Generator& g, const SteadySettings& settings = {},
                          SteadyReport* report = nullptr);

// ||Q P||_inf normalized by the largest exit rate.
double residual(const Generator& g, const Distribution& dist);

}  // namespace subrad
