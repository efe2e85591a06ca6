#pragma once

#include <Eigen/Core>

#include "subrad/model.hpp"

namespace subrad {

// Weight vector over a state space, indexed like the generator it belongs
// to. Not forcibly normalized: propagation and photon-jump maps are linear
// and applied to unnormalized vectors as well.
struct Distribution {
  ModelParams params;
  Eigen::VectorXd weights;

  double total() const { return weights.sum(); }
  void normalize();  // throws std::invalid_argument when total() <= 0
};

Distribution zero_distribution(const ModelParams& p);
Distribution uniform_distribution(const ModelParams& p);
Distribution point_mass(const ModelParams& p, LevelIndex at);

// Total variation distance (half the l1 distance) of two equally sized,
// normalized distributions.
double total_variation(const Distribution& a, const Distribution& b);

}  // namespace subrad
