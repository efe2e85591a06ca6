#pragma once

#include <Eigen/SparseCore>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "subrad/model.hpp"

namespace subrad {

// The seven incoherent jump channels acting on a level (J, M).
enum class Channel : std::uint8_t {
  CollectiveDecay,  // (J, M-1), rate (J+M)(J-M+1), cavity-enhanced
  RepumpSameJ,      // (J, M+1), prop. to w
  RepumpJMinus,     // (J-1, M+1)
  RepumpJPlus,      // (J+1, M+1)
  DecaySameJ,       // (J, M-1), prop. to gamma
  DecayJMinus,      // (J-1, M-1)
  DecayJPlus,       // (J+1, M-1)
};

inline constexpr int kNumChannels = 7;
inline constexpr std::array<Channel, kNumChannels> kAllChannels = {
    Channel::CollectiveDecay, Channel::RepumpSameJ,  Channel::RepumpJMinus,
    Channel::RepumpJPlus,     Channel::DecaySameJ,   Channel::DecayJMinus,
    Channel::DecayJPlus};

std::string_view channel_name(Channel c);
Channel channel_from_name(std::string_view name);

// Displacement (dJ, dM) of a channel; the target may fall outside the ladder,
// in which case the rate is guaranteed to vanish.
struct ChannelStep {
  int dj;
  int dm;
};
ChannelStep channel_step(Channel c);
LevelIndex channel_target(LevelIndex from, Channel c);

// Subset of channels, used to filter trajectory events.
struct ChannelMask {
  std::uint8_t bits = (1u << kNumChannels) - 1;

  bool contains(Channel c) const {
    return bits & (1u << static_cast<unsigned>(c));
  }
  static ChannelMask all() { return {}; }
  static ChannelMask none() { return {0}; }
  static ChannelMask only(Channel c) {
    return {static_cast<std::uint8_t>(1u << static_cast<unsigned>(c))};
  }
  ChannelMask with(Channel c) const {
    return {static_cast<std::uint8_t>(bits |
                                      (1u << static_cast<unsigned>(c)))};
  }
  // "all", a group ("collective", "repump", "decay") or a channel name.
  static ChannelMask parse(std::string_view spec);
};

// Rate of one channel out of `from`. Total in `from`: angular factors are
// evaluated first and a vanishing factor short-circuits to exactly 0, which
// covers every boundary case (M = +-J, J = 0, J = N/2) before any division.
double channel_rate(const ModelParams& p, LevelIndex from, Channel c);

struct LocalRate {
  Channel channel;
  LevelIndex target;
  double rate;
};

// The nonzero channels out of `from`, in kAllChannels order.
std::vector<LocalRate> local_rates(const ModelParams& p, LevelIndex from);

// Allocation-free variant for hot loops.
struct LocalRateSet {
  std::array<LocalRate, kNumChannels> entry{};
  int count = 0;
  double total = 0.0;
};
void local_rates_into(const ModelParams& p, LevelIndex from, LocalRateSet& out);

enum class StateSpace {
  Triangular,     // full (J, M) ladder
  BoundaryChain,  // effective birth-death chain over the dark edge M = -J
};

// Sparse generator in column convention: matrix(to, from) is the rate
// from -> to, the diagonal holds minus the exit rate, so dP/dt = Q P and
// every column sums to zero.
struct Generator {
  ModelParams params;
  StateSpace space = StateSpace::Triangular;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd exit_rates;
  double max_exit_rate = 0.0;

  Eigen::Index dim() const { return matrix.cols(); }
  LevelIndex label(int index) const;
  int index_of_label(LevelIndex lv) const;
};

Generator build_generator(const ModelParams& p);

// Visits every unordered pair {a, b}, a < b, connected in either direction;
// rate_ab is the rate a -> b, rate_ba the reverse, either may be zero.
template <typename F>
void for_each_edge(const Generator& g, F&& visit) {
  const Eigen::SparseMatrix<double> transpose = g.matrix.transpose();
  using It = Eigen::SparseMatrix<double>::InnerIterator;
  for (int a = 0; a < g.matrix.outerSize(); ++a) {
    It fwd(g.matrix, a), rev(transpose, a);
    while (fwd || rev) {
      const int row_fwd = fwd ? static_cast<int>(fwd.row()) : g.matrix.rows();
      const int row_rev = rev ? static_cast<int>(rev.row()) : g.matrix.rows();
      const int b = row_fwd < row_rev ? row_fwd : row_rev;
      double rate_ab = 0.0, rate_ba = 0.0;
      if (row_fwd == b) {
        rate_ab = fwd.value();
        ++fwd;
      }
      if (row_rev == b) {
        rate_ba = rev.value();
        ++rev;
      }
      if (b > a) visit(a, b, rate_ab, rate_ba);
    }
  }
}

}  // namespace subrad
