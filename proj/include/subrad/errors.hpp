#pragma once

#include <stdexcept>
#include <string>

namespace subrad {

// The stationary linear system has extra null directions, so no unique
// steady state exists (e.g. w = 0 and gamma = 0 leaves every M = -J state
// absorbing).
class SingularOrNonUnique : public std::runtime_error {
 public:
  explicit SingularOrNonUnique(const std::string& what)
      : std::runtime_error(what) {}
};

// An iterative method hit its iteration cap before reaching tolerance.
class NotConverged : public std::runtime_error {
 public:
  explicit NotConverged(const std::string& what) : std::runtime_error(what) {}
};

// An edge carries strictly positive forward flux with exactly zero reverse
// rate, so the entropy flow diverges. Happens whenever w = 0 or gamma = 0.
class DivergentEntropy : public std::runtime_error {
 public:
  explicit DivergentEntropy(const std::string& what)
      : std::runtime_error(what) {}
};

// The distribution emits no collective photons, so intensity-normalized
// quantities such as g2 are undefined.
class DarkState : public std::runtime_error {
 public:
  explicit DarkState(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subrad
