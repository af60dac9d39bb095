#include "kaprekar/entropy.hpp"

#include <cmath>
#include <string>

#include "kaprekar/errors.hpp"

namespace kaprekar {

namespace {
constexpr double kNormalizationTolerance = 1e-12;
}

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      throw DomainError("probability entry " + std::to_string(v) + " is negative or NaN");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw DomainError("probability vector sums to " + std::to_string(total) + ", not 1");
  }
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) {
      h -= v * std::log2(v);
    }
  }
  return h < 0.0 ? 0.0 : h;
}

EntropyFunnel entropy_funnel(const DynamicsIndex& index) {
  const std::size_t n_attractors = index.attractors().size();
  const std::int32_t t_star = index.max_dist();

  // converged_at[t][a]: states with distance exactly t in basin a.
  std::vector<std::vector<std::uint64_t>> converged_at(
      t_star + 1, std::vector<std::uint64_t>(n_attractors, 0));
  const auto labels = index.attractor_labels();
  const auto dist = index.distances();
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] != kNoAttractor) {
      ++converged_at[dist[x]][labels[x]];
    }
  }

  EntropyFunnel funnel;
  funnel.t_star = t_star;
  std::vector<std::uint64_t> cumulative(n_attractors, 0);
  std::uint64_t n_converged = 0;
  for (std::int32_t t = 0; t <= t_star; ++t) {
    for (std::size_t a = 0; a < n_attractors; ++a) {
      cumulative[a] += converged_at[t][a];
      n_converged += converged_at[t][a];
    }
    FunnelRow row;
    row.t = t;
    row.n_converged = n_converged;
    row.p.assign(n_attractors, 0.0);
    if (n_converged > 0) {
      for (std::size_t a = 0; a < n_attractors; ++a) {
        row.p[a] = static_cast<double>(cumulative[a]) / static_cast<double>(n_converged);
      }
      row.entropy_bits = shannon_entropy(row.p);
    }
    funnel.rows.push_back(std::move(row));
  }

  const double terminal = funnel.rows.back().entropy_bits;
  for (auto& row : funnel.rows) {
    row.entropy_normalized = terminal > 0.0 ? row.entropy_bits / terminal : 0.0;
  }
  return funnel;
}

}  // namespace kaprekar
