#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kaprekar/dynamics.hpp"

namespace kaprekar {

/// Regressors in design-matrix column order (after the intercept).
inline constexpr std::array<std::string_view, 4> kFeatureNames = {"g1", "g2", "digit_sum",
                                                                  "digit_var"};

struct FeatureRow {
  StateValue state = 0;
  unsigned g1 = 0;
  unsigned g2 = 0;
  unsigned digit_sum = 0;
  /// Population variance of the D digits (divides by D).
  double digit_var = 0.0;
  std::int32_t dist = 0;
};

/// Features of one state; everything except `dist` derives from the value.
FeatureRow feature_row(StateValue value, const Params& params, std::int32_t dist);

/// All of S_D in ascending order when it has at most `sample_size` states,
/// otherwise exactly `sample_size` states drawn without replacement by a
/// seeded partial Fisher-Yates shuffle (mt19937_64, rejection-sampled
/// bounded draws) and returned in ascending order.
std::vector<FeatureRow> extract_features(const DynamicsIndex& index, std::uint64_t sample_size,
                                         std::uint64_t seed);

/// Raw n x 4 feature matrix in kFeatureNames order.
Eigen::MatrixXd feature_matrix(std::span<const FeatureRow> rows);

struct Standardization {
  std::vector<double> mean;
  /// Sample standard deviation (n - 1 denominator).
  std::vector<double> stddev;
};

struct StandardizedFeatures {
  Eigen::MatrixXd values;
  Standardization standardization;
};

/// Centres each column and scales it to unit sample standard deviation.
/// Throws DegenerateError naming the first zero-spread column, or when n < 2.
StandardizedFeatures standardize(const Eigen::MatrixXd& raw,
                                 std::span<const std::string_view> column_names = kFeatureNames);

Eigen::MatrixXd apply_standardization(const Eigen::MatrixXd& raw, const Standardization& s);

/// Prepends a column of ones.
Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x);

struct RegressionResult {
  /// Intercept first, then one weight per standardized feature.
  std::vector<double> betas;
  double r2 = 0.0;
  /// sqrt(SSE / n).
  double rmse = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Standardization standardization;

  Eigen::VectorXd predict(const Eigen::MatrixXd& design) const;
};

/// Least squares fit of y on `design` (intercept column included by the
/// caller). Throws SingularError when n <= columns or the design is rank
/// deficient, DegenerateError when y is constant.
RegressionResult fit_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

/// Feature extraction, standardization and OLS for distance-to-attractor.
RegressionResult regress_distance(const DynamicsIndex& index, std::uint64_t sample_size,
                                  std::uint64_t seed);

struct GroupComparison {
  std::string_view feature;
  double easy_mean = 0.0;
  double hard_mean = 0.0;
};

/// Feature means of the floor(N/10) fastest and floor(N/10) slowest states,
/// ties broken by ascending state value, for g1, digit_var, digit_sum, g2.
std::vector<GroupComparison> easy_hard_comparison(const DynamicsIndex& index);

}  // namespace kaprekar
