#include "kaprekar/gap_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "kaprekar/errors.hpp"

namespace kaprekar {

namespace {

constexpr double kStochasticTolerance = 1e-12;

struct LineFit {
  double slope;
  double intercept;
};

// Weighted least-squares line y ~ slope*x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w, const char* what) {
  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  const bool distinct = std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) != x.end();
  if (!distinct || sxx <= 0.0) {
    throw DegenerateError(std::string("fewer than two distinct regressor values in ") + what);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

GapState gap_of(StateValue value, const Params& params) {
  if (params.digits() < 3) {
    throw ConfigError("gap features need D >= 3, got D=" + std::to_string(params.digits()));
  }
  const DigitTuple sorted = sorted_descending(value, params);
  return {sorted[0] - sorted[sorted.size() - 1], sorted[1] - sorted[2]};
}

StationaryResult stationary(const Eigen::MatrixXd& transition, std::span<const double> start,
                            double tolerance, std::size_t max_iterations) {
  const auto n = transition.rows();
  if (transition.cols() != n || static_cast<std::size_t>(n) != start.size()) {
    throw DomainError("transition matrix is " + std::to_string(transition.rows()) + "x" +
                      std::to_string(transition.cols()) + " but start has " +
                      std::to_string(start.size()) + " entries");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if ((transition.row(i).array() < 0.0).any() ||
        std::abs(transition.row(i).sum() - 1.0) > kStochasticTolerance) {
      throw DomainError("transition row " + std::to_string(i) + " is not stochastic");
    }
  }
  double total = 0.0;
  for (double v : start) {
    if (!(v >= 0.0)) {
      throw DomainError("start vector has a negative entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kStochasticTolerance) {
    throw DomainError("start vector sums to " + std::to_string(total));
  }

  Eigen::RowVectorXd pi = Eigen::Map<const Eigen::RowVectorXd>(start.data(), n);
  StationaryResult result;
  for (std::size_t it = 0;; ++it) {
    const Eigen::RowVectorXd next = pi * transition;
    const double residual = (next - pi).lpNorm<1>();
    if (residual <= tolerance) {
      result.pi.assign(pi.data(), pi.data() + n);
      result.iterations = it;
      result.residual = residual;
      return result;
    }
    if (it == max_iterations) {
      throw NumericalError("power iteration did not converge after " +
                           std::to_string(max_iterations) + " iterations, residual " +
                           std::to_string(residual));
    }
    pi = next / next.sum();
  }
}

std::optional<std::size_t> GapChain::index_of(GapState g) const {
  const auto it = std::lower_bound(states.begin(), states.end(), g);
  if (it == states.end() || *it != g) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - states.begin());
}

GapChain build_chain(const DynamicsIndex& index, double tolerance) {
  const Params& params = index.params();
  if (params.digits() < 3) {
    throw ConfigError("gap chain needs D >= 3, got D=" + std::to_string(params.digits()));
  }
  const unsigned base = params.base();
  const auto cell = [base](GapState g) { return std::size_t{g.g1} * base + g.g2; };

  // Gap of every non-trivial state and of its successor, on a dense base x base grid.
  std::vector<std::int64_t> slot(std::size_t{base} * base, -1);
  std::vector<GapState> gap(params.state_count());
  for (StateValue x = 0; x < params.state_count(); ++x) {
    if (index.in_analysis_space(x)) {
      gap[x] = gap_of(x, params);
      slot[cell(gap[x])] = 0;
    }
  }

  GapChain chain;
  chain.params = params;
  for (unsigned g1 = 0; g1 < base; ++g1) {
    for (unsigned g2 = 0; g2 < base; ++g2) {
      if (slot[cell({g1, g2})] == 0) {
        slot[cell({g1, g2})] = static_cast<std::int64_t>(chain.states.size());
        chain.states.push_back({g1, g2});
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(chain.states.size());
  chain.occupancy.assign(n, 0);
  chain.counts.setZero(n, n);
  std::vector<std::int64_t> sum_dg1(n, 0), sum_dg2(n, 0);
  std::int64_t total_dg1 = 0, total_dg2 = 0;
  for (StateValue x = 0; x < params.state_count(); ++x) {
    if (!index.in_analysis_space(x)) {
      continue;
    }
    const GapState from = gap[x];
    const GapState to = gap[index.successor(x)];
    const auto i = slot[cell(from)];
    const auto j = slot[cell(to)];
    ++chain.occupancy[i];
    ++chain.counts(i, j);
    const std::int64_t dg1 = static_cast<std::int64_t>(to.g1) - from.g1;
    const std::int64_t dg2 = static_cast<std::int64_t>(to.g2) - from.g2;
    sum_dg1[i] += dg1;
    sum_dg2[i] += dg2;
    total_dg1 += dg1;
    total_dg2 += dg2;
  }

  chain.transition.resize(n, n);
  chain.drift.resize(n);
  chain.start.resize(n);
  const double n_states = static_cast<double>(params.nontrivial_count());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double occ = static_cast<double>(chain.occupancy[i]);
    for (Eigen::Index j = 0; j < n; ++j) {
      chain.transition(i, j) = static_cast<double>(chain.counts(i, j)) / occ;
    }
    chain.drift[i] = {static_cast<double>(sum_dg1[i]) / occ, static_cast<double>(sum_dg2[i]) / occ};
    chain.start[i] = occ / n_states;
  }
  chain.mean_drift = {static_cast<double>(total_dg1) / n_states,
                      static_cast<double>(total_dg2) / n_states};
  chain.stationary = stationary(chain.transition, chain.start, tolerance);
  return chain;
}

DriftFit fit_drift(const GapChain& chain, bool weighted) {
  const std::size_t n = chain.states.size();
  std::vector<double> g1(n), g2(n), dg1(n), dg2(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    g1[i] = chain.states[i].g1;
    g2[i] = chain.states[i].g2;
    dg1[i] = chain.drift[i].dg1;
    dg2[i] = chain.drift[i].dg2;
    w[i] = weighted ? static_cast<double>(chain.occupancy[i]) : 1.0;
  }
  const LineFit first = fit_line(g2, dg1, w, "dg1 against g2");
  const LineFit second = fit_line(g1, dg2, w, "dg2 against g1");
  DriftFit fit;
  fit.digits = chain.params.digits();
  fit.a = first.slope;
  fit.b = first.intercept;
  fit.c = second.slope;
  fit.d = second.intercept;
  fit.mean_dg1 = chain.mean_drift.dg1;
  fit.mean_dg2 = chain.mean_drift.dg2;
  fit.weighted = weighted;
  return fit;
}

std::vector<DriftFit> drift_summary(std::span<const GapChain> chains, bool weighted) {
  std::vector<DriftFit> out;
  out.reserve(chains.size());
  for (const auto& chain : chains) {
    out.push_back(fit_drift(chain, weighted));
  }
  return out;
}

}  // namespace kaprekar
