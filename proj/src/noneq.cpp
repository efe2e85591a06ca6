#include "subrad/noneq.hpp"

#include <cmath>
#include <stdexcept>

#include "subrad/errors.hpp"

namespace subrad {

namespace {

constexpr double kFluxFloor = 1e-300;

// Compensated accumulator; the entropy sums run over up to ~10^7 edges with
// heavy cancellation between edges, so plain summation is not enough to
// keep |s_e + s_i| at the 1e-8 level the balance identity is tested at.
class KahanSum {
 public:
  void add(double value) {
    const double y = value - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_sizes(const Generator& g, const Distribution& dist,
                 const char* who) {
  if (dist.weights.size() != g.dim())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// Summed rate from -> to over all channels with that displacement (the two
// same-target decay channels merge here exactly as in the generator).
double pair_rate(const ModelParams& p, LevelIndex from, LevelIndex to) {
  double r = 0.0;
  for (Channel c : kAllChannels)
    if (channel_target(from, c) == to) r += channel_rate(p, from, c);
  return r;
}

}  // namespace

std::vector<CurrentEdge> currents(const Generator& g,
                                  const Distribution& dist) {
  check_sizes(g, dist, "currents");
  std::vector<CurrentEdge> out;
  out.reserve(static_cast<std::size_t>(g.matrix.nonZeros()));
  for_each_edge(g, [&](int a, int b, double rate_ab, double rate_ba) {
    const double net =
        dist.weights[a] * rate_ab - dist.weights[b] * rate_ba;
    out.push_back({g.label(a), g.label(b), net});
  });
  return out;
}

EntropyReport entropy_rates(const Generator& g, const Distribution& dist) {
  check_sizes(g, dist, "entropy_rates");
  if (g.space == StateSpace::Triangular && (g.params.w == 0 || g.params.gamma == 0))
    throw DivergentEntropy(
        "one-way edges at w = 0 or gamma = 0 make the entropy flow infinite");
  KahanSum s_tot, s_e, s_i;
  long skipped = 0;
  for_each_edge(g, [&](int a, int b, double rate_ab, double rate_ba) {
    const double pa = dist.weights[a];
    const double pb = dist.weights[b];
    const double x = pa * rate_ab;
    const double y = pb * rate_ba;
    if (x < kFluxFloor && y < kFluxFloor) {
      ++skipped;
      return;
    }
    if (x > 0 && rate_ba == 0)
      throw DivergentEntropy("one-way edge with positive flux at states " +
                             std::to_string(a) + " -> " + std::to_string(b));
    if (y > 0 && rate_ab == 0)
      throw DivergentEntropy("one-way edge with positive flux at states " +
                             std::to_string(b) + " -> " + std::to_string(a));
    if (x == 0 || y == 0) {
      // Both rates are positive here, so the zero flux comes from a
      // population that underflowed to 0; the edge carries negligible true
      // flux but its log would be infinite.
      ++skipped;
      return;
    }
    const double net = x - y;
    s_tot.add(net * std::log(pa / pb));
    s_e.add(net * std::log(rate_ba / rate_ab));
    s_i.add(net * std::log(x / y));
  });
  EntropyReport report;
  report.s_tot = s_tot.value();
  report.s_e = s_e.value();
  report.s_i = s_i.value() < 0 ? 0.0 : s_i.value();
  report.s_i_per_atom = report.s_i / g.params.n_atoms;
  report.n_edges_skipped = skipped;
  return report;
}

BalanceReport detailed_balance_check(const Generator& g,
                                     const Distribution& dist, double tol) {
  check_sizes(g, dist, "detailed_balance_check");
  BalanceReport report;
  for_each_edge(g, [&](int a, int b, double rate_ab, double rate_ba) {
    const double x = dist.weights[a] * rate_ab;
    const double y = dist.weights[b] * rate_ba;
    const double denom = x + y;
    if (!(denom > 0)) return;
    const double violation = std::abs(x - y) / denom;
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_from = g.label(a);
      report.worst_to = g.label(b);
    }
  });
  report.passed = report.max_violation < tol;
  return report;
}

std::vector<Plaquette> plaquette_circulations(const Generator& g,
                                              const Distribution& dist) {
  check_sizes(g, dist, "plaquette_circulations");
  if (g.space != StateSpace::Triangular)
    throw std::invalid_argument("plaquettes need the full (J, M) ladder");
  const ModelParams& p = g.params;
  const auto weight = [&](LevelIndex lv) {
    return dist.weights[index_of(p, lv)];
  };
  const auto net = [&](LevelIndex from, LevelIndex to) {
    return weight(from) * pair_rate(p, from, to) -
           weight(to) * pair_rate(p, to, from);
  };
  std::vector<Plaquette> out;
  for (int j = 0; j < p.j_max(); ++j) {
    for (int m = -j + 1; m <= j; ++m) {
      const LevelIndex a{j, m}, b{j + 1, m + 1}, c{j + 1, m}, d{j, m - 1};
      const double circulation =
          net(a, b) + net(b, c) + net(c, d) + net(d, a);
      out.push_back({a, circulation});
    }
  }
  return out;
}

double max_abs_circulation(const std::vector<Plaquette>& plaquettes) {
  double best = 0.0;
  for (const Plaquette& pl : plaquettes)
    best = std::max(best, std::abs(pl.circulation));
  return best;
}

}  // namespace subrad
