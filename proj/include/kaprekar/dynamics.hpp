#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kaprekar/core_map.hpp"

namespace kaprekar {

using AttractorId = std::int32_t;

/// Label stored for repdigits, which belong to no basin.
inline constexpr AttractorId kNoAttractor = -1;
/// Distance stored for repdigits.
inline constexpr std::int32_t kUndefinedDistance = -1;

/// One attracting cycle. Fixed points are cycles of period 1.
struct AttractorInfo {
  AttractorId id = kNoAttractor;
  /// Cycle order starting from the smallest member: step(members[i]) == members[i+1 mod period].
  std::vector<StateValue> members;
  std::uint64_t basin_size = 0;

  std::size_t period() const noexcept { return members.size(); }
  /// Identifying value of the cycle, its minimum member.
  StateValue canonical() const noexcept { return members.front(); }
};

/// The compiled functional graph of the Kaprekar map on one state space.
///
/// Every raw state has a successor; only non-trivial states carry an
/// attractor label and a distance. Attractor ids are dense indices into
/// attractors(), ordered by ascending canonical value, so the labelling does
/// not depend on traversal order.
class DynamicsIndex {
 public:
  const Params& params() const noexcept { return params_; }

  StateValue successor(StateValue x) const { return succ_.at(x); }
  AttractorId attractor_of(StateValue x) const { return attractor_.at(x); }
  std::int32_t distance(StateValue x) const { return dist_.at(x); }

  std::span<const StateValue> successors() const noexcept { return succ_; }
  std::span<const AttractorId> attractor_labels() const noexcept { return attractor_; }
  std::span<const std::int32_t> distances() const noexcept { return dist_; }

  /// True for states of S_D, i.e. everything except repdigits.
  bool in_analysis_space(StateValue x) const { return attractor_.at(x) != kNoAttractor; }

  const std::vector<AttractorInfo>& attractors() const noexcept { return attractors_; }
  const AttractorInfo& attractor(AttractorId id) const { return attractors_.at(id); }

  std::int32_t max_dist() const noexcept { return max_dist_; }
  double mean_dist() const noexcept { return mean_dist_; }
  /// Lower median: element floor((N-1)/2) of the sorted distances.
  std::int32_t median_dist() const noexcept { return median_dist_; }

  friend DynamicsIndex build_index(const Params& params, unsigned threads);

 private:
  explicit DynamicsIndex(const Params& params) : params_(params) {}

  Params params_;
  std::vector<StateValue> succ_;
  std::vector<AttractorId> attractor_;
  std::vector<std::int32_t> dist_;
  std::vector<AttractorInfo> attractors_;
  std::int32_t max_dist_ = 0;
  double mean_dist_ = 0.0;
  std::int32_t median_dist_ = 0;
};

/// Upper bound on base^D accepted by build_index.
inline constexpr std::uint64_t kMaxIndexedStates = std::uint64_t{1} << 31;

/// Enumerates the state space, finds every attracting cycle and labels each
/// non-trivial state with its attractor and distance to it.
///
/// `threads` only parallelizes the successor table; the result is identical
/// for every value. Throws ConfigError when base^D exceeds kMaxIndexedStates
/// and ClosureError if a non-trivial orbit reaches a repdigit.
DynamicsIndex build_index(const Params& params, unsigned threads = 1);

/// counts[t] = number of states in S_D with distance t, for t = 0..max_dist.
std::vector<std::uint64_t> distance_histogram(const DynamicsIndex& index);

struct GlobalSummary {
  std::uint64_t n_states = 0;
  std::size_t n_attractors = 0;
  double largest_basin_fraction = 0.0;
  double mean_dist = 0.0;
  std::int32_t median_dist = 0;
  std::int32_t max_dist = 0;
};

GlobalSummary global_summary(const DynamicsIndex& index);

}  // namespace kaprekar
