#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kaprekar/dynamics.hpp"

namespace kaprekar {

/// Attractor distribution among the states already converged at iteration t.
struct FunnelRow {
  std::int32_t t = 0;
  std::uint64_t n_converged = 0;
  /// p[a] for every attractor id a; all zero when nothing has converged.
  std::vector<double> p;
  double entropy_bits = 0.0;
  double entropy_normalized = 0.0;
};

struct EntropyFunnel {
  /// One row per t = 0..t_star.
  std::vector<FunnelRow> rows;
  /// Smallest t at which every state of S_D has converged (the max distance).
  std::int32_t t_star = 0;
};

/// Shannon entropy in bits with 0 log 0 = 0. Throws DomainError on a negative
/// entry or when the entries do not sum to 1 within 1e-12.
double shannon_entropy(std::span<const double> p);

/// Entropy funnel over t = 0..max_dist under a uniform prior on S_D. The
/// normalized column divides by the terminal entropy and is identically zero
/// when that entropy is zero.
EntropyFunnel entropy_funnel(const DynamicsIndex& index);

}  // namespace kaprekar
