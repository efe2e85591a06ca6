#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "subrad/model.hpp"
#include "subrad/rates.hpp"

namespace subrad {

// Exact rational with reduced numerator/denominator, denominator > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  friend bool operator==(const Rational&, const Rational&) = default;

  double to_double() const;
  std::string to_string() const;  // "5/18", integers without the "/1"
};

// Effective birth-death rates along the dark edge M = -J:
//   up   = R_J^+ + G_J^+  (repump and free decay into J+1)
//   down = R_J^-          (repump into J-1)
// These match the corresponding full-ladder channel rates at (J, -J).
double boundary_up_rate(const ModelParams& p, int j);
double boundary_down_rate(const ModelParams& p, int j);

// The dark-edge chain as a generator of its own (dimension N/2 + 1, state j
// at index j). A birth-death chain, so its steady state obeys detailed
// balance.
Generator boundary_generator(const ModelParams& p);

// Stationary distribution over J of the dark-edge chain, from the product
// recursion P_J / P_{J-1} = up(J-1) / down(J), accumulated in log space.
// Requires w > 0 (otherwise the down rates vanish).
struct BoundaryDistribution {
  ModelParams params;
  Eigen::VectorXd p;  // p[j], j = 0 .. N/2

  double mean() const;
  double variance() const;
};
BoundaryDistribution boundary_recursion(const ModelParams& p);

// Large-N Gaussian profile of the dark-edge distribution below threshold
// (0 < w < gamma): mean (N/2)(gamma - w)/(gamma + w), variance
// N gamma w / (gamma + w)^2.
struct GaussianLimit {
  double mu = 0.0;
  double sigma2 = 0.0;
};
GaussianLimit gaussian_limit(const ModelParams& p);

// Large-N small-pump population ratio P_J / P_{J-1} -> (2J+1)/(J(2J-1)^2)
// at gamma = 0, exact and already reduced. Requires j >= 1.
Rational ratio_table(int j);

// Same ratio at finite N: ((N-2J+2)(2J+1)) / (J(2J-1)^2 (N+2J+2)).
Rational finite_n_ratio(int n_atoms, int j);

// Dark-edge populations in the small-pump limit, truncated to J <= 2 and
// normalized exactly: P0 = 6/29, P1 = 18/29, P2 = 5/29.
struct SmallPumpPopulations {
  Rational p0;
  Rational p1;
  Rational p2;
};
SmallPumpPopulations small_w_populations();

}  // namespace subrad
