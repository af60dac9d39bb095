#include <doctest.h>

#include <algorithm>
#include <set>

#include "kaprekar/errors.hpp"
#include "kaprekar/stats.hpp"
#include "oracle.hpp"

using namespace kaprekar;

TEST_CASE("feature_row of 6174") {
  const auto row = feature_row(6174, Params(10, 4), 0);
  CHECK(row.g1 == 6);
  CHECK(row.g2 == 2);
  CHECK(row.digit_sum == 18);
  // digits 6 1 7 4, mean 4.5, squared deviations sum to 21.
  CHECK(row.digit_var == 21.0 / 4.0);
}

TEST_CASE("extract_features takes the full population when it fits") {
  const auto d3 = extract_features(build_index(Params(10, 3)), 50'000, 0);
  CHECK(d3.size() == 990);
  CHECK(std::is_sorted(d3.begin(), d3.end(),
                       [](const auto& a, const auto& b) { return a.state < b.state; }));
  for (const auto& row : d3) {
    CHECK(row.digit_var > 0.0);
  }
  CHECK(extract_features(build_index(Params(10, 4)), 50'000, 0).size() == 9990);
}

TEST_CASE("extract_features samples without replacement, reproducibly") {
  const auto index = build_index(Params(10, 6));
  const auto a = extract_features(index, 50'000, 0);
  const auto b = extract_features(index, 50'000, 0);
  const auto c = extract_features(index, 50'000, 1);
  REQUIRE(a.size() == 50'000);
  std::set<StateValue> distinct;
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].state == b[i].state);
    REQUIRE_FALSE(oracle::repdigit(a[i].state, 6));
    REQUIRE(a[i].dist == index.distance(a[i].state));
    distinct.insert(a[i].state);
  }
  CHECK(distinct.size() == 50'000);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].state != c[i].state;
  CHECK(differs);
  CHECK_THROWS_AS(extract_features(index, 0, 0), ConfigError);
}

TEST_CASE("standardize") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  const auto s = standardize(x, std::vector<std::string_view>{"c"});
  CHECK(s.values(0, 0) == doctest::Approx(-1.0));
  CHECK(s.values(1, 0) == doctest::Approx(0.0));
  CHECK(s.values(2, 0) == doctest::Approx(1.0));
  CHECK(s.standardization.mean[0] == 2.0);
  CHECK(s.standardization.stddev[0] == 1.0);

  Eigen::MatrixXd flat(3, 2);
  flat << 1, 5, 2, 5, 3, 5;
  try {
    standardize(flat, std::vector<std::string_view>{"ok", "flat"});
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    CHECK(std::string(e.what()).find("'flat'") != std::string::npos);
  }
  CHECK_THROWS_AS(standardize(Eigen::MatrixXd::Ones(1, 1)), DegenerateError);
}

TEST_CASE("standardized features have zero mean and unit sample deviation") {
  const auto rows = extract_features(build_index(Params(10, 5)), 50'000, 0);
  const auto s = standardize(feature_matrix(rows));
  for (Eigen::Index j = 0; j < s.values.cols(); ++j) {
    const double mean = s.values.col(j).mean();
    const double var =
        (s.values.col(j).array() - mean).square().sum() / static_cast<double>(s.values.rows() - 1);
    CHECK(std::abs(mean) <= 1e-10);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fit_ols: exact fit and failure modes") {
  Eigen::MatrixXd x(5, 2);
  x << 1, 0, 1, 1, 1, 2, 1, 3, 1, 4;
  const Eigen::VectorXd y = 2.0 * x.col(1).array() + 1.0;
  const auto r = fit_ols(x, y);
  CHECK(r.r2 == doctest::Approx(1.0));
  CHECK(r.rmse == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.betas[0] == doctest::Approx(1.0));
  CHECK(r.betas[1] == doctest::Approx(2.0));

  Eigen::MatrixXd collinear(5, 3);
  collinear.leftCols(2) = x;
  collinear.col(2) = 3.0 * x.col(1);
  CHECK_THROWS_AS(fit_ols(collinear, y), SingularError);
  CHECK_THROWS_AS(fit_ols(x.topRows(2), y.head(2)), SingularError);
  CHECK_THROWS_AS(fit_ols(x, Eigen::VectorXd::Ones(5)), DegenerateError);
}

TEST_CASE("full-population regressions match the numpy oracle, D = 3, 4") {
  // numpy.linalg.lstsq on the same standardized features from the string
  // enumeration.
  const auto r3 = regress_distance(build_index(Params(10, 3)), 50'000, 0);
  CHECK(r3.n == 990);
  CHECK(r3.r2 == doctest::Approx(0.5788172113213605).epsilon(1e-10));
  CHECK(r3.rmse == doctest::Approx(0.9222675175998133).epsilon(1e-10));
  const std::vector<double> betas3 = {3.2414141414141446, -3.94763687446701, 0.001673254984163347,
                                      -0.0013824124219835297, 3.6700961380167105};
  for (std::size_t k = 0; k < betas3.size(); ++k) {
    CHECK(r3.betas[k] == doctest::Approx(betas3[k]).epsilon(1e-9));
  }
  const auto r4 = regress_distance(build_index(Params(10, 4)), 50'000, 0);
  CHECK(r4.n == 9990);
  CHECK(r4.r2 == doctest::Approx(0.01695970641717437).epsilon(1e-10));
  CHECK(r4.rmse == doctest::Approx(1.7606542421453748).epsilon(1e-10));
}

TEST_CASE("OLS invariants on every digit length") {
  for (unsigned d = 3; d <= 6; ++d) {
    CAPTURE(d);
    const auto index = build_index(Params(10, d));
    const auto rows = extract_features(index, 50'000, 0);
    const auto standardized = standardize(feature_matrix(rows));
    const Eigen::MatrixXd design = with_intercept(standardized.values);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) y(i) = rows[i].dist;
    const auto fit = fit_ols(design, y);

    const Eigen::VectorXd residual = y - fit.predict(design);
    CHECK((design.transpose() * residual).cwiseAbs().maxCoeff() <= 1e-8);
    const double sst = (y.array() - y.mean()).square().sum();
    CHECK(std::abs(1.0 - residual.squaredNorm() / sst - fit.r2) <= 1e-12);
    CHECK(fit.r2 >= 0.0);
    CHECK(fit.r2 <= 1.0);
    CHECK(fit.rmse >= 0.0);

    // Re-applying the stored standardization reproduces the predictions.
    const auto full = regress_distance(index, 50'000, 0);
    const Eigen::MatrixXd rebuilt =
        with_intercept(apply_standardization(feature_matrix(rows), full.standardization));
    CHECK((full.predict(rebuilt) - fit.predict(design)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("easy/hard deciles, D = 3") {
  const auto index = build_index(Params(10, 3));
  const auto groups = easy_hard_comparison(index);
  REQUIRE(groups.size() == 4);
  CHECK(groups[0].feature == "g1");
  CHECK(groups[1].feature == "digit_var");
  CHECK(groups[2].feature == "digit_sum");
  CHECK(groups[3].feature == "g2");
  CHECK(groups[0].easy_mean > groups[0].hard_mean);

  // Brute-force decile selection with the same tie rule.
  std::vector<std::pair<int, StateValue>> ranked;
  for (StateValue x = 0; x < 1000; ++x) {
    if (!oracle::repdigit(x, 3)) ranked.push_back({oracle::orbit(x, 3).dist, x});
  }
  std::sort(ranked.begin(), ranked.end());
  const std::size_t k = ranked.size() / 10;
  CHECK(k == 99);
  CHECK(ranked.front().second == 495);
  double easy_g1 = 0.0;
  for (std::size_t i = 0; i < k; ++i) easy_g1 += oracle::gap(ranked[i].second, 3).first;
  CHECK(groups[0].easy_mean == doctest::Approx(easy_g1 / k).epsilon(1e-14));

  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  double hard_g2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) hard_g2 += oracle::gap(ranked[i].second, 3).second;
  CHECK(groups[3].hard_mean == doctest::Approx(hard_g2 / k).epsilon(1e-14));
}

TEST_CASE("easy/hard deciles need ten states") {
  // Base 2, D = 3 has six non-trivial states.
  CHECK_THROWS_AS(easy_hard_comparison(build_index(Params(2, 3))), DomainError);
}
