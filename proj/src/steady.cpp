#include "subrad/steady.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "subrad/errors.hpp"

namespace subrad {

namespace {

constexpr double kNegativityFloor = -1e-12;

void check_positivity_and_normalize(Eigen::VectorXd& x) {
  const double worst = x.minCoeff();
  if (worst < kNegativityFloor)
    throw SingularOrNonUnique("steady-state solve produced negative mass " +
                              std::to_string(worst));
  x = x.cwiseMax(0.0);
  const double sum = x.sum();
  if (!(sum > 0)) throw SingularOrNonUnique("steady-state solve returned zero");
  x /= sum;
}

Distribution direct_solve(const Generator& g, const SteadySettings& s,
                          SteadyReport* report) {
  const int n = static_cast<int>(g.dim());
  int pinned = 0;
  g.exit_rates.maxCoeff(&pinned);

  // Replace the row of the fastest state with ones: Q P = 0 plus sum P = 1
  // becomes the nonsingular system A x = e_pinned.
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(g.matrix.nonZeros() + n);
  for (int col = 0; col < n; ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(g.matrix, col); it; ++it)
      if (it.row() != pinned)
        triplets.emplace_back(static_cast<int>(it.row()), col, it.value());
  for (int col = 0; col < n; ++col) triplets.emplace_back(pinned, col, 1.0);
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success)
    throw SingularOrNonUnique("sparse LU factorization failed: " +
                              lu.lastErrorMessage());

  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[pinned] = 1.0;
  Eigen::VectorXd x = lu.solve(b);

  const double scale = g.max_exit_rate > 0 ? g.max_exit_rate : 1.0;
  int refinements = 0;
  double res = (g.matrix * x).lpNorm<Eigen::Infinity>() / scale;
  while (res > 0.5 * s.residual_tol && refinements < 2) {
    const Eigen::VectorXd defect = b - a * x;
    x += lu.solve(defect);
    ++refinements;
    res = (g.matrix * x).lpNorm<Eigen::Infinity>() / scale;
  }

  check_positivity_and_normalize(x);
  res = (g.matrix * x).lpNorm<Eigen::Infinity>() / scale;
  if (res > s.residual_tol)
    throw NotConverged("direct steady-state residual " + std::to_string(res));
  if (report) {
    report->method = "direct";
    report->replaced_row = pinned;
    report->refinement_steps = refinements;
    report->iterations = 0;
    report->residual = res;
  }
  return {g.params, std::move(x)};
}

Distribution power_solve(const Generator& g, const SteadySettings& s,
                         SteadyReport* report) {
  const int n = static_cast<int>(g.dim());
  if (!(g.max_exit_rate > 0))
    throw SingularOrNonUnique("generator has no transitions");
  // Column-stochastic hop matrix I + Q / lambda; its fixed point is the
  // steady state and iteration contracts in total variation.
  const double lambda = 1.01 * g.max_exit_rate;
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd next(n);
  long it = 0;
  double delta = std::numeric_limits<double>::infinity();
  for (; it < s.max_power_iterations; ++it) {
    next = v + (g.matrix * v) / lambda;
    next /= next.sum();
    delta = (next - v).lpNorm<Eigen::Infinity>();
    v.swap(next);
    if (delta < s.power_tol) break;
  }
  if (delta >= s.power_tol)
    throw NotConverged("power iteration still moving by " +
                       std::to_string(delta) + " after " +
                       std::to_string(it) + " iterations");

  check_positivity_and_normalize(v);
  const double res = (g.matrix * v).lpNorm<Eigen::Infinity>() / g.max_exit_rate;
  if (res > s.residual_tol)
    throw NotConverged("power steady-state residual " + std::to_string(res));
  if (report) {
    report->method = "power";
    report->replaced_row = -1;
    report->refinement_steps = 0;
    report->iterations = it + 1;
    report->residual = res;
  }
  return {g.params, std::move(v)};
}

}  // namespace

Distribution steady_state(const Generator& g, const SteadySettings& settings,
                          SteadyReport* report) {
  if (g.dim() == 0) throw std::invalid_argument("empty generator");
  if (g.space == StateSpace::Triangular && g.params.w == 0 &&
      g.params.gamma == 0)
    throw SingularOrNonUnique(
        "w = 0 and gamma = 0: every dark-edge state is absorbing");
  switch (settings.method) {
    case SteadyMethod::Direct:
      return direct_solve(g, settings, report);
    case SteadyMethod::Power:
      return power_solve(g, settings, report);
    case SteadyMethod::Auto:
      try {
        return direct_solve(g, settings, report);
      } catch (const NotConverged&) {
        return power_solve(g, settings, report);
      }
  }
  throw std::invalid_argument("unknown steady method");
}

double residual(const Generator& g, const Distribution& dist) {
  if (dist.weights.size() != g.dim())
    throw std::invalid_argument("residual: dimension mismatch");
  const double scale = g.max_exit_rate > 0 ? g.max_exit_rate : 1.0;
  return (g.matrix * dist.weights).lpNorm<Eigen::Infinity>() / scale;
}

}  // namespace subrad
