#include "kaprekar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kaprekar/errors.hpp"
#include "kaprekar/gap_space.hpp"

namespace kaprekar {

namespace {

// Unbiased draw from [0, bound) by rejecting the short top range of the
// generator; unlike std::uniform_int_distribution the sequence is fixed
// across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

std::vector<StateValue> analysis_states(const DynamicsIndex& index) {
  std::vector<StateValue> states;
  states.reserve(index.params().nontrivial_count());
  for (StateValue x = 0; x < index.params().state_count(); ++x) {
    if (index.in_analysis_space(x)) {
      states.push_back(x);
    }
  }
  return states;
}

double feature_value(const FeatureRow& row, std::string_view name) {
  if (name == "g1") return row.g1;
  if (name == "g2") return row.g2;
  if (name == "digit_sum") return row.digit_sum;
  return row.digit_var;
}

}  // namespace

FeatureRow feature_row(StateValue value, const Params& params, std::int32_t dist) {
  const GapState gap = gap_of(value, params);
  const DigitTuple digits = digits_of(value, params);
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (Digit d : digits) {
    sum += d;
    sum_sq += std::uint64_t{d} * d;
  }
  const double n = params.digits();
  FeatureRow row;
  row.state = value;
  row.g1 = gap.g1;
  row.g2 = gap.g2;
  row.digit_sum = static_cast<unsigned>(sum);
  // (n * sum d^2 - (sum d)^2) / n^2 with an exact integer numerator.
  row.digit_var = static_cast<double>(params.digits() * sum_sq - sum * sum) / (n * n);
  row.dist = dist;
  return row;
}

std::vector<FeatureRow> extract_features(const DynamicsIndex& index, std::uint64_t sample_size,
                                         std::uint64_t seed) {
  if (sample_size < 1) {
    throw ConfigError("sample size must be >= 1");
  }
  std::vector<StateValue> states = analysis_states(index);
  if (states.size() > sample_size) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < sample_size; ++i) {
      const std::uint64_t j = i + uniform_below(rng, states.size() - i);
      std::swap(states[i], states[j]);
    }
    states.resize(sample_size);
    std::sort(states.begin(), states.end());
  }
  std::vector<FeatureRow> rows;
  rows.reserve(states.size());
  for (StateValue x : states) {
    rows.push_back(feature_row(x, index.params(), index.distance(x)));
  }
  return rows;
}

Eigen::MatrixXd feature_matrix(std::span<const FeatureRow> rows) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), kFeatureNames.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < kFeatureNames.size(); ++j) {
      x(i, j) = feature_value(rows[i], kFeatureNames[j]);
    }
  }
  return x;
}

StandardizedFeatures standardize(const Eigen::MatrixXd& raw,
                                 std::span<const std::string_view> column_names) {
  const auto n = raw.rows();
  if (n < 2) {
    throw DegenerateError("standardization needs at least 2 rows, got " + std::to_string(n));
  }
  StandardizedFeatures out;
  out.values.resize(n, raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    const double mean = raw.col(j).mean();
    const double ss = (raw.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      const std::string name = static_cast<std::size_t>(j) < column_names.size()
                                   ? std::string(column_names[j])
                                   : "column " + std::to_string(j);
      throw DegenerateError("feature '" + name + "' has zero spread");
    }
    out.values.col(j) = (raw.col(j).array() - mean) / sd;
    out.standardization.mean.push_back(mean);
    out.standardization.stddev.push_back(sd);
  }
  return out;
}

Eigen::MatrixXd apply_standardization(const Eigen::MatrixXd& raw, const Standardization& s) {
  Eigen::MatrixXd out(raw.rows(), raw.cols());
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    out.col(j) = (raw.col(j).array() - s.mean[j]) / s.stddev[j];
  }
  return out;
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(x.cols()) = x;
  return out;
}

Eigen::VectorXd RegressionResult::predict(const Eigen::MatrixXd& design) const {
  const Eigen::Map<const Eigen::VectorXd> beta(betas.data(), static_cast<Eigen::Index>(betas.size()));
  return design * beta;
}

RegressionResult fit_ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  const auto n = design.rows();
  const auto p = design.cols();
  if (y.size() != n) {
    throw DomainError("design has " + std::to_string(n) + " rows, response has " +
                      std::to_string(y.size()));
  }
  if (n <= p) {
    throw SingularError("need more samples (" + std::to_string(n) + ") than regressors (" +
                        std::to_string(p) + ")");
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p) {
    throw SingularError("design matrix has rank " + std::to_string(qr.rank()) + " < " +
                        std::to_string(p));
  }
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd residual = y - design * beta;
  const double sse = residual.squaredNorm();
  const double sst = (y.array() - y.mean()).square().sum();
  if (!(sst > 0.0)) {
    throw DegenerateError("response is constant; R^2 undefined");
  }
  RegressionResult result;
  result.betas.assign(beta.data(), beta.data() + beta.size());
  result.r2 = 1.0 - sse / sst;
  result.rmse = std::sqrt(sse / static_cast<double>(n));
  result.n = static_cast<std::size_t>(n);
  return result;
}

RegressionResult regress_distance(const DynamicsIndex& index, std::uint64_t sample_size,
                                  std::uint64_t seed) {
  const auto rows = extract_features(index, sample_size, seed);
  const auto standardized = standardize(feature_matrix(rows));
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y(i) = rows[i].dist;
  }
  RegressionResult result = fit_ols(with_intercept(standardized.values), y);
  result.seed = seed;
  result.standardization = standardized.standardization;
  return result;
}

std::vector<GroupComparison> easy_hard_comparison(const DynamicsIndex& index) {
  std::vector<StateValue> states = analysis_states(index);
  const std::size_t k = states.size() / 10;
  if (k == 0) {
    throw DomainError("easy/hard deciles need at least 10 non-trivial states, have " +
                      std::to_string(states.size()));
  }
  const auto dist = index.distances();

  std::vector<StateValue> easy = states;
  std::partial_sort(easy.begin(), easy.begin() + k, easy.end(), [&](StateValue a, StateValue b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
  });
  easy.resize(k);
  std::vector<StateValue> hard = std::move(states);
  std::partial_sort(hard.begin(), hard.begin() + k, hard.end(), [&](StateValue a, StateValue b) {
    return dist[a] != dist[b] ? dist[a] > dist[b] : a < b;
  });
  hard.resize(k);

  const auto group_mean = [&](const std::vector<StateValue>& group, std::string_view name) {
    double total = 0.0;
    for (StateValue x : group) {
      total += feature_value(feature_row(x, index.params(), dist[x]), name);
    }
    return group.empty() ? 0.0 : total / static_cast<double>(group.size());
  };
  std::vector<GroupComparison> out;
  for (std::string_view name : {"g1", "digit_var", "digit_sum", "g2"}) {
    out.push_back({name, group_mean(easy, name), group_mean(hard, name)});
  }
  return out;
}

}  // namespace kaprekar
