#include "subrad/distribution.hpp"

#include <stdexcept>

namespace subrad {

void Distribution::normalize() {
  const double sum = total();
  if (!(sum > 0))
    throw std::invalid_argument("cannot normalize: total weight <= 0");
  weights /= sum;
}

Distribution zero_distribution(const ModelParams& p) {
  p.validate();
  return {p, Eigen::VectorXd::Zero(state_count(p))};
}

Distribution uniform_distribution(const ModelParams& p) {
  p.validate();
  const int n = state_count(p);
  return {p, Eigen::VectorXd::Constant(n, 1.0 / n)};
}

Distribution point_mass(const ModelParams& p, LevelIndex at) {
  Distribution d = zero_distribution(p);
  d.weights[index_of(p, at)] = 1.0;
  return d;
}

double total_variation(const Distribution& a, const Distribution& b) {
  if (a.weights.size() != b.weights.size())
    throw std::invalid_argument("total_variation: size mismatch");
  return 0.5 * (a.weights - b.weights).cwiseAbs().sum();
}

}  // namespace subrad
