#pragma once

#include <vector>

#include "subrad/distribution.hpp"
#include "subrad/rates.hpp"

namespace subrad {

// Net probability current on one connected pair, oriented from the lower to
// the higher linear index: net = P_from r(from->to) - P_to r(to->from).
struct CurrentEdge {
  LevelIndex from;
  LevelIndex to;
  double net = 0.0;
};

// All pair currents of the generator under `dist`, ordered by (from, to)
// linear index.
std::vector<CurrentEdge> currents(const Generator& g, const Distribution& dist);

// Entropy rates in units of k_B per unit time, split per the usual
// trajectory-thermodynamics decomposition s_tot = s_e + s_i:
//   s_tot: rate of change of the system Shannon entropy (0 at stationarity)
//   s_e:   entropy flow term, sum (x - y) ln(r_ba / r_ab)
//   s_i:   entropy production, sum (x - y) ln(x / y) >= 0
// with x = P_a r_ab, y = P_b r_ba summed once per unordered pair.
struct EntropyReport {
  double s_tot = 0.0;
  double s_e = 0.0;
  double s_i = 0.0;
  double s_i_per_atom = 0.0;
  long n_edges_skipped = 0;  // pairs with flux below the underflow floor
};

// Throws DivergentEntropy when an edge carries positive flux against an
// exactly zero reverse rate; on the full ladder w = 0 or gamma = 0 is
// rejected upfront for that reason. Pairs whose fluxes both sit below
// 1e-300, or where one flux is exactly zero because the population itself
// underflowed, are skipped and counted instead: their true contribution is
// below double precision either way.
EntropyReport entropy_rates(const Generator& g, const Distribution& dist);

struct BalanceReport {
  bool passed = true;
  double max_violation = 0.0;  // max |x - y| / (x + y) over connected pairs
  LevelIndex worst_from;
  LevelIndex worst_to;
};

// Detailed-balance test: every pair flux must cancel to relative tol.
BalanceReport detailed_balance_check(const Generator& g,
                                     const Distribution& dist,
                                     double tol = 1e-9);

// Circulation around the elementary loop with corners
// (J,M) -> (J+1,M+1) -> (J+1,M) -> (J,M-1) -> (J,M), defined for
// 0 <= J < N/2 and -J < M <= J. Nonzero circulation on any loop is the
// geometric witness that detailed balance is broken.
struct Plaquette {
  LevelIndex corner;  // the (J, M) corner
  double circulation = 0.0;
};

std::vector<Plaquette> plaquette_circulations(const Generator& g,
                                              const Distribution& dist);
double max_abs_circulation(const std::vector<Plaquette>& plaquettes);

}  // namespace subrad
