#include "subrad/rates.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

namespace subrad {

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::CollectiveDecay: return "collective_decay";
    case Channel::RepumpSameJ: return "repump_same_j";
    case Channel::RepumpJMinus: return "repump_j_minus";
    case Channel::RepumpJPlus: return "repump_j_plus";
    case Channel::DecaySameJ: return "decay_same_j";
    case Channel::DecayJMinus: return "decay_j_minus";
    case Channel::DecayJPlus: return "decay_j_plus";
  }
  throw std::invalid_argument("unknown channel");
}

Channel channel_from_name(std::string_view name) {
  for (Channel c : kAllChannels)
    if (channel_name(c) == name) return c;
  throw std::invalid_argument("unknown channel name: " + std::string(name));
}

ChannelStep channel_step(Channel c) {
  switch (c) {
    case Channel::CollectiveDecay: return {0, -1};
    case Channel::RepumpSameJ: return {0, +1};
    case Channel::RepumpJMinus: return {-1, +1};
    case Channel::RepumpJPlus: return {+1, +1};
    case Channel::DecaySameJ: return {0, -1};
    case Channel::DecayJMinus: return {-1, -1};
    case Channel::DecayJPlus: return {+1, -1};
  }
  throw std::invalid_argument("unknown channel");
}

LevelIndex channel_target(LevelIndex from, Channel c) {
  const ChannelStep s = channel_step(c);
  return {from.j + s.dj, from.m + s.dm};
}

ChannelMask ChannelMask::parse(std::string_view spec) {
  if (spec == "all") return all();
  if (spec == "collective") return only(Channel::CollectiveDecay);
  if (spec == "repump")
    return only(Channel::RepumpSameJ)
        .with(Channel::RepumpJMinus)
        .with(Channel::RepumpJPlus);
  if (spec == "decay")
    return only(Channel::DecaySameJ)
        .with(Channel::DecayJMinus)
        .with(Channel::DecayJPlus);
  return only(channel_from_name(spec));
}

double channel_rate(const ModelParams& p, LevelIndex from, Channel c) {
  assert(is_valid_level(p, from));
  const double N = p.n_atoms;
  const double J = from.j;
  const double M = from.m;
  // Angular numerator first: if it vanishes the channel is closed and the
  // rate is exactly 0, regardless of the (possibly zero) denominator.
  switch (c) {
    case Channel::CollectiveDecay: {
      const double a = (J + M) * (J - M + 1);
      return a > 0 ? a : 0.0;
    }
    case Channel::RepumpSameJ: {
      const double a = (J - M) * (J + M + 1);
      if (a <= 0 || p.w == 0) return 0.0;
      return p.w * (N + 2) * a / (4 * J * (J + 1));
    }
    case Channel::RepumpJMinus: {
      const double a = (J - M) * (J - M - 1);
      if (a <= 0 || p.w == 0) return 0.0;
      return p.w * (N + 2 * J + 2) * a / (4 * J * (2 * J + 1));
    }
    case Channel::RepumpJPlus: {
      const double a = (J + M + 1) * (J + M + 2);
      if (a <= 0 || p.w == 0 || from.j >= p.j_max()) return 0.0;
      return p.w * (N - 2 * J) * a / (4 * (J + 1) * (2 * J + 1));
    }
    case Channel::DecaySameJ: {
      const double a = (J + M) * (J - M + 1);
      if (a <= 0 || p.gamma == 0) return 0.0;
      return p.gamma * (N + 2) * a / (4 * J * (J + 1));
    }
    case Channel::DecayJMinus: {
      const double a = (J + M) * (J + M - 1);
      if (a <= 0 || p.gamma == 0) return 0.0;
      return p.gamma * (N + 2 * J + 2) * a / (4 * J * (2 * J + 1));
    }
    case Channel::DecayJPlus: {
      const double a = (J - M + 1) * (J - M + 2);
      if (a <= 0 || p.gamma == 0 || from.j >= p.j_max()) return 0.0;
      return p.gamma * (N - 2 * J) * a / (4 * (J + 1) * (2 * J + 1));
    }
  }
  throw std::invalid_argument("unknown channel");
}

void local_rates_into(const ModelParams& p, LevelIndex from,
                      LocalRateSet& out) {
  out.count = 0;
  out.total = 0.0;
  for (Channel c : kAllChannels) {
    const double r = channel_rate(p, from, c);
    if (r <= 0) continue;
    const LevelIndex to = channel_target(from, c);
    assert(is_valid_level(p, to));
    out.entry[out.count++] = {c, to, r};
    out.total += r;
  }
}

std::vector<LocalRate> local_rates(const ModelParams& p, LevelIndex from) {
  LocalRateSet set;
  local_rates_into(p, from, set);
  return {set.entry.begin(), set.entry.begin() + set.count};
}

LevelIndex Generator::label(int index) const {
  if (space == StateSpace::BoundaryChain) {
    if (index < 0 || index >= dim())
      throw std::invalid_argument("state index out of range");
    return {index, -index};
  }
  return level_of(params, index);
}

int Generator::index_of_label(LevelIndex lv) const {
  if (space == StateSpace::BoundaryChain) {
    if (lv.j < 0 || lv.j > params.j_max() || lv.m != -lv.j)
      throw std::invalid_argument("level not on the dark edge");
    return lv.j;
  }
  return index_of(params, lv);
}

Generator build_generator(const ModelParams& p) {
  p.validate();
  const int n = state_count(p);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * (kNumChannels + 1));
  Eigen::VectorXd exit = Eigen::VectorXd::Zero(n);
  LocalRateSet set;
  for (int from = 0; from < n; ++from) {
    local_rates_into(p, level_of(p, from), set);
    for (int k = 0; k < set.count; ++k)
      triplets.emplace_back(index_of(p, set.entry[k].target), from,
                            set.entry[k].rate);
    if (set.total > 0) triplets.emplace_back(from, from, -set.total);
    exit[from] = set.total;
  }
  Generator g;
  g.params = p;
  g.matrix.resize(n, n);
  // setFromTriplets sums duplicates, merging the two same-target decay
  // channels (J, M) -> (J, M-1) into one matrix entry.
  g.matrix.setFromTriplets(triplets.begin(), triplets.end());
  g.matrix.makeCompressed();
  g.exit_rates = std::move(exit);
  g.max_exit_rate = g.exit_rates.size() ? g.exit_rates.maxCoeff() : 0.0;
  return g;
}

}  // namespace subrad
