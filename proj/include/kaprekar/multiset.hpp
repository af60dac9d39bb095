#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kaprekar/dynamics.hpp"

namespace kaprekar {

/// States sharing one digit multiset.
struct MultisetClass {
  /// The multiset as a non-increasing digit tuple.
  DigitTuple key;
  /// Integer value of `key`; orders classes the same way as the tuples.
  StateValue key_value = 0;
  /// Number of distinct states enumerated into the class.
  std::uint64_t size = 0;
  /// Mean distance over members. The class holding a fixed point mixes the
  /// point itself (distance 0) with its permutations (distance 1).
  double mean_dist = 0.0;
  std::map<AttractorId, std::uint64_t> attractor_counts;

  /// Attractor with the most members; ties go to the smaller id.
  AttractorId dominant_attractor() const;
};

/// D! / prod(m_c!) for the digit multiplicities m_c of `key`.
std::uint64_t permutation_count(const DigitTuple& key);

/// One class per non-constant digit multiset, sorted by key.
std::vector<MultisetClass> enumerate_classes(const DynamicsIndex& index);

struct HistogramBin {
  std::uint64_t count = 0;
  double probability = 0.0;
};

/// Number of classes per class size.
std::map<std::uint64_t, HistogramBin> class_size_distribution(
    std::span<const MultisetClass> classes);

/// Number of classes per exact mean distance.
std::map<double, HistogramBin> class_distance_distribution(std::span<const MultisetClass> classes);

/// attractor id -> class key value -> number of basin states from that class.
using BasinComposition = std::map<AttractorId, std::map<StateValue, std::uint64_t>>;

BasinComposition basin_composition(const DynamicsIndex& index,
                                   std::span<const MultisetClass> classes);

}  // namespace kaprekar
