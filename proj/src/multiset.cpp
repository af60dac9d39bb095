#include "kaprekar/multiset.hpp"

#include <string>

#include "kaprekar/errors.hpp"

namespace kaprekar {

AttractorId MultisetClass::dominant_attractor() const {
  AttractorId best = kNoAttractor;
  std::uint64_t best_count = 0;
  for (const auto& [id, count] : attractor_counts) {
    if (count > best_count) {
      best = id;
      best_count = count;
    }
  }
  return best;
}

std::uint64_t permutation_count(const DigitTuple& key) {
  // Product of binomials C(placed + m, m), one per run of equal digits.
  __extension__ using Wide = unsigned __int128;
  Wide result = 1;
  std::uint64_t placed = 0;
  for (std::size_t i = 0; i < key.size();) {
    std::size_t j = i;
    while (j < key.size() && key[j] == key[i]) {
      ++j;
    }
    const std::uint64_t run = j - i;
    for (std::uint64_t k = 1; k <= run; ++k) {
      result = result * (placed + k) / k;
    }
    placed += run;
    i = j;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<MultisetClass> enumerate_classes(const DynamicsIndex& index) {
  const Params& params = index.params();
  struct Accumulator {
    std::uint64_t size = 0;
    std::uint64_t dist_sum = 0;
    std::map<AttractorId, std::uint64_t> attractor_counts;
  };
  std::map<StateValue, Accumulator> by_key;
  const auto labels = index.attractor_labels();
  const auto dist = index.distances();
  for (StateValue x = 0; x < params.state_count(); ++x) {
    if (labels[x] == kNoAttractor) {
      continue;
    }
    auto& acc = by_key[desc_asc(x, params).descending];
    ++acc.size;
    acc.dist_sum += static_cast<std::uint64_t>(dist[x]);
    ++acc.attractor_counts[labels[x]];
  }

  std::vector<MultisetClass> classes;
  classes.reserve(by_key.size());
  for (auto& [key_value, acc] : by_key) {
    MultisetClass c;
    c.key = digits_of(key_value, params);
    c.key_value = key_value;
    c.size = acc.size;
    c.mean_dist = static_cast<double>(acc.dist_sum) / static_cast<double>(acc.size);
    c.attractor_counts = std::move(acc.attractor_counts);
    classes.push_back(std::move(c));
  }
  return classes;
}

std::map<std::uint64_t, HistogramBin> class_size_distribution(
    std::span<const MultisetClass> classes) {
  std::map<std::uint64_t, HistogramBin> bins;
  for (const auto& c : classes) {
    ++bins[c.size].count;
  }
  for (auto& [size, bin] : bins) {
    bin.probability = static_cast<double>(bin.count) / static_cast<double>(classes.size());
  }
  return bins;
}

std::map<double, HistogramBin> class_distance_distribution(std::span<const MultisetClass> classes) {
  std::map<double, HistogramBin> bins;
  for (const auto& c : classes) {
    ++bins[c.mean_dist].count;
  }
  for (auto& [d, bin] : bins) {
    bin.probability = static_cast<double>(bin.count) / static_cast<double>(classes.size());
  }
  return bins;
}

BasinComposition basin_composition(const DynamicsIndex& index,
                                   std::span<const MultisetClass> classes) {
  BasinComposition composition;
  for (const auto& c : classes) {
    for (const auto& [id, count] : c.attractor_counts) {
      composition[id][c.key_value] += count;
    }
  }
  for (const auto& a : index.attractors()) {
    std::uint64_t total = 0;
    for (const auto& [key, count] : composition[a.id]) {
      total += count;
    }
    if (total != a.basin_size) {
      throw DomainError("class composition of attractor " + std::to_string(a.canonical()) +
                        " covers " + std::to_string(total) + " states, basin has " +
                        std::to_string(a.basin_size) + "; classes built from another index?");
    }
  }
  return composition;
}

}  // namespace kaprekar
