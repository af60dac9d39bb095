#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kaprekar/dynamics.hpp"

namespace kaprekar {

/// Gap features of a state's sorted digits d(1) >= d(2) >= ... >= d(D):
/// g1 = d(1) - d(D), g2 = d(2) - d(3).
struct GapState {
  unsigned g1 = 0;
  unsigned g2 = 0;
  friend auto operator<=>(const GapState&, const GapState&) = default;
};

/// Throws ConfigError for D < 3 and DomainError for an out-of-range value.
GapState gap_of(StateValue value, const Params& params);

struct GapDrift {
  double dg1 = 0.0;
  double dg2 = 0.0;
};

struct StationaryResult {
  std::vector<double> pi;
  std::size_t iterations = 0;
  /// ||pi P - pi||_1 of the returned vector.
  double residual = 0.0;
};

inline constexpr double kDefaultStationaryTolerance = 1e-12;
inline constexpr std::size_t kDefaultStationaryMaxIterations = 1'000'000;

/// Power iteration pi <- pi P from `start` until ||pi P - pi||_1 <= tolerance.
/// Throws DomainError if P is not row-stochastic or start is not a
/// distribution, NumericalError if the cap is hit.
StationaryResult stationary(const Eigen::MatrixXd& transition, std::span<const double> start,
                            double tolerance = kDefaultStationaryTolerance,
                            std::size_t max_iterations = kDefaultStationaryMaxIterations);

/// Empirical first-order chain on the occupied gap states of S_D.
///
/// Rows and columns follow `states`, sorted by (g1, g2). The chain is an
/// approximation of the projected dynamics and is never used to reconstruct
/// state-level quantities.
struct GapChain {
  Params params{10, 3};
  std::vector<GapState> states;
  /// |S_D(g)| per gap state under the uniform prior.
  std::vector<std::uint64_t> occupancy;
  /// Exact one-step transition counts between gap states.
  Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  /// counts normalized per row.
  Eigen::MatrixXd transition;
  /// Start of the stationary power iteration: occupancy / |S_D|.
  std::vector<double> start;
  StationaryResult stationary;
  /// Mean (dg1, dg2) over the states of each gap class.
  std::vector<GapDrift> drift;
  /// State-uniform mean one-step change over all of S_D.
  GapDrift mean_drift;

  std::optional<std::size_t> index_of(GapState g) const;
};

/// Pushes every state of S_D through one step and tabulates gap transitions.
GapChain build_chain(const DynamicsIndex& index,
                     double tolerance = kDefaultStationaryTolerance);

/// Linear drift relations dg1 ~ a*g2 + b and dg2 ~ c*g1 + d fitted over the
/// occupied gap states, one point per state unless `weighted`, in which case
/// each point is weighted by its occupancy.
struct DriftFit {
  unsigned digits = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double mean_dg1 = 0.0;
  double mean_dg2 = 0.0;
  bool weighted = false;
};

/// Throws DegenerateError with fewer than two distinct regressor values.
DriftFit fit_drift(const GapChain& chain, bool weighted = false);

std::vector<DriftFit> drift_summary(std::span<const GapChain> chains, bool weighted = false);

}  // namespace kaprekar
