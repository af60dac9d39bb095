#include "kaprekar/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

#include "kaprekar/errors.hpp"

namespace kaprekar {

namespace {

enum class Mark : std::uint8_t { kUnvisited, kOnPath, kDone };

void fill_successors(std::vector<StateValue>& succ, const Params& params, unsigned threads) {
  const std::uint64_t n = succ.size();
  auto fill = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t x = lo; x < hi; ++x) {
      succ[x] = kaprekar_step(x, params);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || n < 4096) {
    fill(0, n);
    return;
  }
  std::vector<std::jthread> workers;
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min(n, t * chunk);
    const std::uint64_t hi = std::min(n, lo + chunk);
    workers.emplace_back(fill, lo, hi);
  }
}

}  // namespace

DynamicsIndex build_index(const Params& params, unsigned threads) {
  if (params.state_count() > kMaxIndexedStates) {
    throw ConfigError("state space of " + std::to_string(params.state_count()) +
                      " states exceeds the in-memory index limit of " +
                      std::to_string(kMaxIndexedStates));
  }
  const std::uint64_t n = params.state_count();

  DynamicsIndex index(params);
  index.succ_.resize(n);
  fill_successors(index.succ_, params, threads);
  index.attractor_.assign(n, kNoAttractor);
  index.dist_.assign(n, kUndefinedDistance);

  std::vector<Mark> mark(n, Mark::kUnvisited);
  for (StateValue x = 0; x < n; ++x) {
    if (is_trivial(x, params)) {
      mark[x] = Mark::kDone;
    }
  }

  // Cycles in discovery order; relabelled by canonical value afterwards.
  std::vector<AttractorInfo> found;
  std::vector<StateValue> path;
  for (StateValue start = 0; start < n; ++start) {
    if (mark[start] != Mark::kUnvisited) {
      continue;
    }
    path.clear();
    StateValue y = start;
    while (mark[y] == Mark::kUnvisited) {
      mark[y] = Mark::kOnPath;
      path.push_back(y);
      y = index.succ_[y];
    }
    if (mark[y] == Mark::kOnPath) {
      const auto cycle_begin = std::find(path.begin(), path.end(), y);
      AttractorInfo cycle;
      cycle.id = static_cast<AttractorId>(found.size());
      cycle.members.assign(cycle_begin, path.end());
      std::rotate(cycle.members.begin(),
                  std::min_element(cycle.members.begin(), cycle.members.end()),
                  cycle.members.end());
      for (StateValue m : cycle.members) {
        index.dist_[m] = 0;
        index.attractor_[m] = cycle.id;
        mark[m] = Mark::kDone;
      }
      found.push_back(std::move(cycle));
      path.erase(cycle_begin, path.end());
    } else if (index.attractor_[y] == kNoAttractor) {
      // Reached a repdigit (or 0) from a non-trivial state.
      throw ClosureError("orbit of state " + std::to_string(start) + " reaches trivial state " +
                         std::to_string(y) + " (base " + std::to_string(params.base()) +
                         ", D=" + std::to_string(params.digits()) + ")");
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const StateValue next = index.succ_[*it];
      index.dist_[*it] = index.dist_[next] + 1;
      index.attractor_[*it] = index.attractor_[next];
      mark[*it] = Mark::kDone;
    }
  }

  std::vector<AttractorId> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](AttractorId a, AttractorId b) {
    return found[a].canonical() < found[b].canonical();
  });
  std::vector<AttractorId> relabel(found.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    relabel[order[rank]] = static_cast<AttractorId>(rank);
    found[order[rank]].id = static_cast<AttractorId>(rank);
  }
  index.attractors_.resize(found.size());
  for (auto& cycle : found) {
    const AttractorId id = cycle.id;
    index.attractors_[id] = std::move(cycle);
  }
  for (auto& label : index.attractor_) {
    if (label != kNoAttractor) {
      label = relabel[label];
      ++index.attractors_[label].basin_size;
    }
  }

  const auto histogram = distance_histogram(index);
  index.max_dist_ = histogram.empty() ? 0 : static_cast<std::int32_t>(histogram.size() - 1);
  const std::uint64_t total = params.nontrivial_count();
  double weighted = 0.0;
  for (std::size_t t = 0; t < histogram.size(); ++t) {
    weighted += static_cast<double>(t) * static_cast<double>(histogram[t]);
  }
  index.mean_dist_ = weighted / static_cast<double>(total);
  const std::uint64_t median_rank = (total - 1) / 2;
  std::uint64_t seen = 0;
  for (std::size_t t = 0; t < histogram.size(); ++t) {
    seen += histogram[t];
    if (seen > median_rank) {
      index.median_dist_ = static_cast<std::int32_t>(t);
      break;
    }
  }
  return index;
}

std::vector<std::uint64_t> distance_histogram(const DynamicsIndex& index) {
  std::vector<std::uint64_t> counts;
  for (std::int32_t d : index.distances()) {
    if (d == kUndefinedDistance) {
      continue;
    }
    if (static_cast<std::size_t>(d) >= counts.size()) {
      counts.resize(d + 1, 0);
    }
    ++counts[d];
  }
  return counts;
}

GlobalSummary global_summary(const DynamicsIndex& index) {
  GlobalSummary s;
  s.n_states = index.params().nontrivial_count();
  s.n_attractors = index.attractors().size();
  std::uint64_t largest = 0;
  for (const auto& a : index.attractors()) {
    largest = std::max(largest, a.basin_size);
  }
  s.largest_basin_fraction = static_cast<double>(largest) / static_cast<double>(s.n_states);
  s.mean_dist = index.mean_dist();
  s.median_dist = index.median_dist();
  s.max_dist = index.max_dist();
  return s;
}

}  // namespace kaprekar
