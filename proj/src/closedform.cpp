#include "subrad/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace subrad {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return {num * o.den + o.num * den, den * o.den};
}

Rational Rational::operator*(const Rational& o) const {
  return {num * o.num, den * o.den};
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::invalid_argument("rational division by zero");
  return {num * o.den, den * o.num};
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

double boundary_up_rate(const ModelParams& p, int j) {
  if (j < 0 || j > p.j_max())
    throw std::invalid_argument("boundary rate: j out of range");
  const double N = p.n_atoms, J = j;
  if (j == p.j_max()) return 0.0;
  const double repump = p.w * (N - 2 * J) * 2 / (4 * (J + 1) * (2 * J + 1));
  const double decay = p.gamma * (N - 2 * J) / 2;
  return repump + decay;
}

double boundary_down_rate(const ModelParams& p, int j) {
  if (j < 0 || j > p.j_max())
    throw std::invalid_argument("boundary rate: j out of range");
  if (j == 0) return 0.0;
  const double N = p.n_atoms, J = j;
  return p.w * (N + 2 * J + 2) * (2 * J) * (2 * J - 1) / (4 * J * (2 * J + 1));
}

Generator boundary_generator(const ModelParams& p) {
  p.validate();
  const int n = p.j_max() + 1;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(3 * static_cast<std::size_t>(n));
  Eigen::VectorXd exit = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double up = boundary_up_rate(p, j);
    const double down = boundary_down_rate(p, j);
    if (up > 0) triplets.emplace_back(j + 1, j, up);
    if (down > 0) triplets.emplace_back(j - 1, j, down);
    const double total = up + down;
    if (total > 0) triplets.emplace_back(j, j, -total);
    exit[j] = total;
  }
  Generator g;
  g.params = p;
  g.space = StateSpace::BoundaryChain;
  g.matrix.resize(n, n);
  g.matrix.setFromTriplets(triplets.begin(), triplets.end());
  g.matrix.makeCompressed();
  g.exit_rates = std::move(exit);
  g.max_exit_rate = g.exit_rates.maxCoeff();
  return g;
}

double BoundaryDistribution::mean() const {
  double m = 0.0;
  for (int j = 0; j < p.size(); ++j) m += j * p[j];
  return m;
}

double BoundaryDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (int j = 0; j < p.size(); ++j) v += (j - m) * (j - m) * p[j];
  return v;
}

BoundaryDistribution boundary_recursion(const ModelParams& p) {
  p.validate();
  if (!(p.w > 0))
    throw std::invalid_argument(
        "boundary recursion needs w > 0: the down rates vanish otherwise");
  const int n = p.j_max() + 1;
  // log P_J up to a common offset; the additive recursion keeps ratios exact
  // even when the distribution spans hundreds of orders of magnitude.
  std::vector<double> logp(n, 0.0);
  for (int j = 1; j < n; ++j)
    logp[j] = logp[j - 1] + std::log(boundary_up_rate(p, j - 1)) -
              std::log(boundary_down_rate(p, j));
  const double peak = *std::max_element(logp.begin(), logp.end());
  Eigen::VectorXd weights(n);
  for (int j = 0; j < n; ++j) weights[j] = std::exp(logp[j] - peak);
  weights /= weights.sum();
  return {p, std::move(weights)};
}

GaussianLimit gaussian_limit(const ModelParams& p) {
  p.validate();
  if (!(p.w > 0) || !(p.w < p.gamma))
    throw std::invalid_argument(
        "gaussian limit holds below threshold, 0 < w < gamma");
  const double N = p.n_atoms;
  const double sum = p.gamma + p.w;
  return {N / 2 * (p.gamma - p.w) / sum, N * p.gamma * p.w / (sum * sum)};
}

Rational ratio_table(int j) {
  if (j < 1) throw std::invalid_argument("ratio_table needs j >= 1");
  const std::int64_t J = j;
  return {2 * J + 1, J * (2 * J - 1) * (2 * J - 1)};
}

Rational finite_n_ratio(int n_atoms, int j) {
  if (n_atoms < 2 || n_atoms % 2 != 0)
    throw std::invalid_argument("n_atoms must be even and >= 2");
  if (j < 1 || j > n_atoms / 2)
    throw std::invalid_argument("finite_n_ratio needs 1 <= j <= N/2");
  const std::int64_t N = n_atoms, J = j;
  return Rational{N - 2 * J + 2, J * (2 * J - 1) * (2 * J - 1)} *
         Rational{2 * J + 1, N + 2 * J + 2};
}

SmallPumpPopulations small_w_populations() {
  // Truncate the dark-edge ladder at J = 2 and normalize exactly.
  const Rational r1 = ratio_table(1);
  const Rational r2 = ratio_table(2);
  const Rational one{1, 1};
  const Rational p0 = one / (one + r1 + r1 * r2);
  return {p0, p0 * r1, p0 * r1 * r2};
}

}  // namespace subrad
