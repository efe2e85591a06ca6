#pragma once

#include <gmpxx.h>

#include <compare>

namespace subrad {

// Parameters of the collective emission model. All rates are dimensionless,
// measured in units of the collective (cavity-mediated) decay rate, which is
// therefore fixed at 1.
struct ModelParams {
  int n_atoms = 2;     // N, even and >= 2
  double w = 0.0;      // incoherent repump rate
  double gamma = 0.0;  // single-atom free-space decay rate

  // Throws std::invalid_argument on odd/negative N or negative rates.
  void validate() const;

  int j_max() const { return n_atoms / 2; }
};

// Collective level |J, M| of the permutation-invariant sector:
// J in {0, ..., N/2}, M in {-J, ..., J} (integers, N even).
struct LevelIndex {
  int j = 0;
  int m = 0;

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
  friend auto operator<=>(const LevelIndex&, const LevelIndex&) = default;
};

// Number of (J, M) levels, (N/2 + 1)^2.
int state_count(const ModelParams& p);

bool is_valid_level(const ModelParams& p, LevelIndex lv);

// Linear index J^2 + (J + M). J-major, M ascending, so every J block starts
// at its dark edge M = -J and index 0 is (0, 0).
int index_of(const ModelParams& p, LevelIndex lv);
LevelIndex level_of(const ModelParams& p, int index);

// Degeneracy of the (J, M) ladder under permutations,
// d_N^J = N! (2J + 1) / ((N/2 + J + 1)! (N/2 - J)!), computed exactly.
mpz_class multiplicity(int n_atoms, int j);

}  // namespace subrad
