#include "subrad/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subrad {

void ModelParams::validate() const {
  if (n_atoms < 2 || n_atoms % 2 != 0)
    throw std::invalid_argument("n_atoms must be even and >= 2, got " +
                                std::to_string(n_atoms));
  if (!(w >= 0.0))
    throw std::invalid_argument("repump rate w must be >= 0");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("decay rate gamma must be >= 0");
}

int state_count(const ModelParams& p) {
  const int half = p.n_atoms / 2;
  return (half + 1) * (half + 1);
}

bool is_valid_level(const ModelParams& p, LevelIndex lv) {
  return lv.j >= 0 && lv.j <= p.j_max() && lv.m >= -lv.j && lv.m <= lv.j;
}

int index_of(const ModelParams& p, LevelIndex lv) {
  if (!is_valid_level(p, lv))
    throw std::invalid_argument("level (" + std::to_string(lv.j) + ", " +
                                std::to_string(lv.m) + ") outside ladder");
  return lv.j * lv.j + lv.j + lv.m;
}

LevelIndex level_of(const ModelParams& p, int index) {
  if (index < 0 || index >= state_count(p))
    throw std::invalid_argument("state index " + std::to_string(index) +
                                " out of range");
  // Exact for the index range in use; J^2 <= index < (J+1)^2.
  int j = static_cast<int>(std::sqrt(static_cast<double>(index)));
  while ((j + 1) * (j + 1) <= index) ++j;
  while (j * j > index) --j;
  return {j, index - j * j - j};
}

mpz_class multiplicity(int n_atoms, int j) {
  if (n_atoms < 2 || n_atoms % 2 != 0)
    throw std::invalid_argument("n_atoms must be even and >= 2");
  if (j < 0 || j > n_atoms / 2)
    throw std::invalid_argument("j out of range for multiplicity");
  mpz_class num, d1, d2;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n_atoms));
  num *= 2 * j + 1;
  mpz_fac_ui(d1.get_mpz_t(), static_cast<unsigned long>(n_atoms / 2 + j + 1));
  mpz_fac_ui(d2.get_mpz_t(), static_cast<unsigned long>(n_atoms / 2 - j));
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), d1.get_mpz_t());
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), d2.get_mpz_t());
  return out;
}

}  // namespace subrad
