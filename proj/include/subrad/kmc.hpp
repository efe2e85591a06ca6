#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subrad/distribution.hpp"
#include "subrad/rates.hpp"

namespace subrad {

// Streaming state mixer used to expand a single 64-bit seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256**: fast, 256-bit state, passes BigCrush. Deterministic across
// platforms, which keeps trajectories reproducible from (name, seed) alone.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();

  static constexpr const char* kName = "xoshiro256**";

 private:
  std::array<std::uint64_t, 4> state_{};
};

struct JumpEvent {
  double t = 0.0;
  Channel channel = Channel::CollectiveDecay;
  LevelIndex from;  // target is channel_target(from, channel)
};

struct JumpRecord {
  ModelParams params;
  LevelIndex initial;
  std::uint64_t seed = 0;
  std::string rng_name;
  double t_end = 0.0;    // simulated horizon
  bool absorbed = false; // stopped early in a state with no exits
  std::vector<JumpEvent> events;

  LevelIndex final_state() const;
};

// Exact stochastic trajectory of the jump process from `initial` to t_max.
// Event times are strictly increasing; rates are generated on the fly, so
// this runs matrix-free at any N. Same seed, same record.
JumpRecord simulate(const ModelParams& p, LevelIndex initial, double t_max,
                    std::uint64_t seed);

// Time-weighted occupancy over [t_burn, t_end], normalized to 1.
Distribution occupancy(const JumpRecord& record, double t_burn = 0.0);

// Counting statistics of the events selected by `filter` after t_burn:
// Fano factor of per-window counts over complete windows, plus a
// log-spaced waiting-time histogram. Throws std::invalid_argument when
// fewer than 2 events match or no complete window fits.
struct BurstStats {
  double fano = 0.0;
  double mean_per_window = 0.0;
  long n_windows = 0;
  long n_events = 0;
  std::vector<double> waiting_bin_edges;  // size bins + 1
  std::vector<long> waiting_counts;
};
BurstStats burst_stats(const JumpRecord& record, ChannelMask filter,
                       double window, double t_burn = 0.0);

}  // namespace subrad
