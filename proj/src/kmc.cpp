#include "subrad/kmc.hpp"

#include <cmath>
#include <stdexcept>

namespace subrad {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
  SplitMix64 mixer(seed);
  for (auto& word : state_) word = mixer.next();
}

std::uint64_t Xoshiro256StarStar::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256StarStar::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

LevelIndex JumpRecord::final_state() const {
  if (events.empty()) return initial;
  const JumpEvent& last = events.back();
  return channel_target(last.from, last.channel);
}

JumpRecord simulate(const ModelParams& p, LevelIndex initial, double t_max,
                    std::uint64_t seed) {
  p.validate();
  if (!is_valid_level(p, initial))
    throw std::invalid_argument("simulate: initial level outside ladder");
  if (!(t_max > 0))
    throw std::invalid_argument("simulate: t_max must be positive");

  JumpRecord record;
  record.params = p;
  record.initial = initial;
  record.seed = seed;
  record.rng_name = Xoshiro256StarStar::kName;
  record.t_end = t_max;

  Xoshiro256StarStar rng(seed);
  LevelIndex state = initial;
  double t = 0.0;
  LocalRateSet rates;
  while (true) {
    local_rates_into(p, state, rates);
    if (!(rates.total > 0)) {
      record.absorbed = true;
      break;
    }
    // -log(1 - u) is Exp(1); u = 0 would give a zero dwell, fixed up below
    // so event times stay strictly increasing.
    const double u = rng.uniform01();
    double t_next = t - std::log1p(-u) / rates.total;
    if (t_next <= t) t_next = std::nextafter(t, t_max + 1.0);
    if (t_next > t_max) break;
    t = t_next;

    const double pick = rng.uniform01() * rates.total;
    int k = 0;
    double cumulative = 0.0;
    for (; k < rates.count - 1; ++k) {
      cumulative += rates.entry[k].rate;
      if (pick < cumulative) break;
    }
    record.events.push_back({t, rates.entry[k].channel, state});
    state = rates.entry[k].target;
  }
  return record;
}

Distribution occupancy(const JumpRecord& record, double t_burn) {
  record.params.validate();
  if (!(t_burn >= 0) || t_burn >= record.t_end)
    throw std::invalid_argument("occupancy: empty window");
  Distribution out = zero_distribution(record.params);
  LevelIndex state = record.initial;
  double segment_start = 0.0;
  auto deposit = [&](double until) {
    const double lo = segment_start > t_burn ? segment_start : t_burn;
    if (until > lo) out.weights[index_of(record.params, state)] += until - lo;
  };
  for (const JumpEvent& ev : record.events) {
    deposit(ev.t);
    segment_start = ev.t;
    state = channel_target(ev.from, ev.channel);
  }
  deposit(record.t_end);
  out.weights /= record.t_end - t_burn;
  return out;
}

BurstStats burst_stats(const JumpRecord& record, ChannelMask filter,
                       double window, double t_burn) {
  if (!(window > 0))
    throw std::invalid_argument("burst_stats: window must be positive");
  if (!(t_burn >= 0) || t_burn >= record.t_end)
    throw std::invalid_argument("burst_stats: empty window");

  std::vector<double> times;
  times.reserve(record.events.size());
  for (const JumpEvent& ev : record.events)
    if (ev.t >= t_burn && filter.contains(ev.channel)) times.push_back(ev.t);

  const long n_windows =
      static_cast<long>(std::floor((record.t_end - t_burn) / window));
  if (times.size() < 2 || n_windows < 1)
    throw std::invalid_argument(
        "burst_stats: need at least 2 matching events and one full window");

  BurstStats stats;
  stats.n_windows = n_windows;
  stats.n_events = static_cast<long>(times.size());

  std::vector<long> counts(static_cast<std::size_t>(n_windows), 0);
  for (double t : times) {
    const long idx = static_cast<long>(std::floor((t - t_burn) / window));
    if (idx >= 0 && idx < n_windows) ++counts[static_cast<std::size_t>(idx)];
  }
  double mean = 0.0;
  for (long c : counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(n_windows);
  double var = 0.0;
  for (long c : counts) {
    const double d = static_cast<double>(c) - mean;
    var += d * d;
  }
  var /= static_cast<double>(n_windows);
  if (!(mean > 0))
    throw std::invalid_argument(
        "burst_stats: no matching events inside complete windows");
  stats.mean_per_window = mean;
  stats.fano = var / mean;

  // Log-spaced waiting-time histogram between consecutive matching events.
  std::vector<double> gaps;
  gaps.reserve(times.size() - 1);
  double shortest = 0.0, longest = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    if (!(gap > 0)) continue;
    gaps.push_back(gap);
    if (shortest == 0.0 || gap < shortest) shortest = gap;
    if (gap > longest) longest = gap;
  }
  if (!gaps.empty()) {
    constexpr int kBins = 40;
    if (longest <= shortest) longest = shortest * (1 + 1e-9);
    const double log_lo = std::log(shortest);
    const double log_hi = std::log(longest);
    stats.waiting_bin_edges.resize(kBins + 1);
    stats.waiting_counts.assign(kBins, 0);
    for (int b = 0; b <= kBins; ++b)
      stats.waiting_bin_edges[b] =
          std::exp(log_lo + (log_hi - log_lo) * b / kBins);
    for (double gap : gaps) {
      int b = static_cast<int>(std::floor((std::log(gap) - log_lo) /
                                           (log_hi - log_lo) * kBins));
      if (b < 0) b = 0;
      if (b >= kBins) b = kBins - 1;
      ++stats.waiting_counts[static_cast<std::size_t>(b)];
    }
  }
  return stats;
}

}  // namespace subrad
