#include "kaprekar/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <system_error>

#include <json.hpp>

#include "kaprekar/entropy.hpp"
#include "kaprekar/errors.hpp"
#include "kaprekar/multiset.hpp"
#include "kaprekar/stats.hpp"

namespace kaprekar {

namespace {

constexpr std::string_view kToolVersion = "1.0.0";

// Runs f(D) for every digit length with at most `jobs` in flight and returns
// the results in digit order. Exceptions surface in digit order as well.
template <class F>
auto fan_out(const std::vector<unsigned>& lengths, unsigned jobs, F f) {
  using Result = decltype(f(lengths.front()));
  std::vector<Result> results;
  results.reserve(lengths.size());
  jobs = std::max(1u, jobs);
  for (std::size_t begin = 0; begin < lengths.size(); begin += jobs) {
    const std::size_t end = std::min(lengths.size(), begin + jobs);
    if (jobs == 1) {
      results.push_back(f(lengths[begin]));
      continue;
    }
    std::vector<std::future<Result>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, f, lengths[i]));
    }
    for (auto& fut : batch) {
      results.push_back(fut.get());
    }
  }
  return results;
}

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::int64_t as_int(std::int32_t v) { return v; }

std::string suffixed(std::string_view stem, unsigned digits) {
  return std::string(stem) + "_" + std::to_string(digits);
}

class Emitter {
 public:
  explicit Emitter(const RunConfig& config) : config_(config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
      throw IoError("cannot create output directory " + config.out_dir.string() + ": " +
                    ec.message());
    }
  }

  void emit(const std::string& stem, const Table& table) {
    const bool json = config_.format == OutputFormat::kJson;
    const auto path = config_.out_dir / (stem + (json ? ".json" : ".csv"));
    write_file(path, json ? to_json(table) : to_csv(table));
    written_.push_back(path);
  }

  std::vector<std::filesystem::path> take() { return std::move(written_); }

 private:
  const RunConfig& config_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw ConfigError("unknown format '" + std::string(text) + "', expected csv or json");
}

std::string_view format_name(OutputFormat format) {
  return format == OutputFormat::kJson ? "json" : "csv";
}

DigitRange parse_digit_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const unsigned d = parse_unsigned(text, "digit length");
    return {d, d};
  }
  DigitRange range{parse_unsigned(text.substr(0, dots), "digit range start"),
                   parse_unsigned(text.substr(dots + 2), "digit range end")};
  if (range.first > range.last) {
    throw ConfigError("empty digit range '" + std::string(text) + "'");
  }
  return range;
}

std::vector<unsigned> RunConfig::digit_lengths() const {
  std::vector<unsigned> out;
  for (unsigned d = digits.first; d <= digits.last; ++d) {
    out.push_back(d);
  }
  return out;
}

void RunConfig::validate() const {
  if (digits.first > digits.last) {
    throw ConfigError("empty digit range");
  }
  for (unsigned d : digit_lengths()) {
    const Params params(base, d);
    if (params.state_count() > kMaxIndexedStates) {
      throw ConfigError("base " + std::to_string(base) + ", D=" + std::to_string(d) +
                        " exceeds the in-memory index limit");
    }
  }
  if (sample_size < 1) {
    throw ConfigError("sample size must be >= 1");
  }
  if (!(tolerance > 0.0)) {
    throw ConfigError("stationarity tolerance must be positive");
  }
}

Workspace::Workspace(RunConfig config) : config_(std::move(config)) { config_.validate(); }

void Workspace::ensure_indices() {
  if (!indices_.empty()) {
    return;
  }
  const auto lengths = config_.digit_lengths();
  auto built = fan_out(lengths, config_.jobs, [this](unsigned d) {
    return std::make_unique<const DynamicsIndex>(build_index(Params(config_.base, d)));
  });
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    indices_.emplace(lengths[i], std::move(built[i]));
  }
}

void Workspace::ensure_chains() {
  if (!chains_.empty()) {
    return;
  }
  ensure_indices();
  const auto lengths = config_.digit_lengths();
  auto built = fan_out(lengths, config_.jobs, [this](unsigned d) {
    return std::make_unique<const GapChain>(build_chain(*indices_.at(d), config_.tolerance));
  });
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    chains_.emplace(lengths[i], std::move(built[i]));
  }
}

const DynamicsIndex& Workspace::index(unsigned digits) {
  ensure_indices();
  const auto it = indices_.find(digits);
  if (it == indices_.end()) {
    throw ConfigError("D=" + std::to_string(digits) + " is outside the configured range");
  }
  return *it->second;
}

const GapChain& Workspace::chain(unsigned digits) {
  ensure_chains();
  const auto it = chains_.find(digits);
  if (it == chains_.end()) {
    throw ConfigError("D=" + std::to_string(digits) + " is outside the configured range");
  }
  return *it->second;
}

std::string digit_string(StateValue value, const Params& params) {
  const DigitTuple digits = digits_of(value, params);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (params.base() <= 10) {
      out += static_cast<char>('0' + digits[i]);
    } else {
      out += (i ? ":" : "") + std::to_string(digits[i]);
    }
  }
  return out;
}

Table attractor_table(Workspace& ws) {
  Table t{{"D", "attractor_id", "period", "members", "basin_size"}, {}};
  for (unsigned d : ws.config().digit_lengths()) {
    const auto& index = ws.index(d);
    for (const auto& a : index.attractors()) {
      std::string members;
      for (StateValue m : a.members) {
        members += (members.empty() ? "" : " ") + digit_string(m, index.params());
      }
      t.add_row({std::uint64_t{d}, a.canonical(), std::uint64_t{a.period()}, members,
                 a.basin_size});
    }
  }
  return t;
}

Table summary_table(Workspace& ws) {
  Table t{{"D", "n_states", "n_attractors", "largest_basin_fraction", "mean_dist", "median_dist",
           "max_dist"},
          {}};
  for (unsigned d : ws.config().digit_lengths()) {
    const auto s = global_summary(ws.index(d));
    t.add_row({std::uint64_t{d}, s.n_states, std::uint64_t{s.n_attractors},
               s.largest_basin_fraction, s.mean_dist, as_int(s.median_dist), as_int(s.max_dist)});
  }
  return t;
}

Table entropy_table(const DynamicsIndex& index) {
  Table t{{"t", "n_converged", "H_bits", "H_norm"}, {}};
  for (const auto& row : entropy_funnel(index).rows) {
    t.add_row({as_int(row.t), row.n_converged, row.entropy_bits, row.entropy_normalized});
  }
  return t;
}

Table multiset_class_table(const DynamicsIndex& index) {
  Table t{{"D", "key", "size", "mean_dist", "attractor_id_mode"}, {}};
  const std::uint64_t d = index.params().digits();
  for (const auto& c : enumerate_classes(index)) {
    t.add_row({d, digit_string(c.key_value, index.params()), c.size, c.mean_dist,
               index.attractor(c.dominant_attractor()).canonical()});
  }
  return t;
}

Table multiset_size_table(const DynamicsIndex& index) {
  Table t{{"D", "size", "count", "probability"}, {}};
  const std::uint64_t d = index.params().digits();
  for (const auto& [size, bin] : class_size_distribution(enumerate_classes(index))) {
    t.add_row({d, size, bin.count, bin.probability});
  }
  return t;
}

Table multiset_distance_table(const DynamicsIndex& index) {
  Table t{{"D", "mean_dist", "count", "probability"}, {}};
  const std::uint64_t d = index.params().digits();
  for (const auto& [mean, bin] : class_distance_distribution(enumerate_classes(index))) {
    t.add_row({d, mean, bin.count, bin.probability});
  }
  return t;
}

Table basin_composition_table(const DynamicsIndex& index) {
  Table t{{"D", "attractor_id", "key", "count"}, {}};
  const std::uint64_t d = index.params().digits();
  const auto classes = enumerate_classes(index);
  for (const auto& [id, by_class] : basin_composition(index, classes)) {
    for (const auto& [key, count] : by_class) {
      t.add_row({d, index.attractor(id).canonical(), digit_string(key, index.params()), count});
    }
  }
  return t;
}

Table gap_field_table(const GapChain& chain) {
  Table t{{"g1", "g2", "occupancy", "mean_dg1", "mean_dg2"}, {}};
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    t.add_row({std::uint64_t{chain.states[i].g1}, std::uint64_t{chain.states[i].g2},
               chain.occupancy[i], chain.drift[i].dg1, chain.drift[i].dg2});
  }
  return t;
}

Table transition_table(const GapChain& chain) {
  Table t{{"from_g1", "from_g2", "to_g1", "to_g2", "count", "probability"}, {}};
  const auto n = static_cast<Eigen::Index>(chain.states.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (chain.counts(i, j) == 0) {
        continue;
      }
      t.add_row({std::uint64_t{chain.states[i].g1}, std::uint64_t{chain.states[i].g2},
                 std::uint64_t{chain.states[j].g1}, std::uint64_t{chain.states[j].g2},
                 chain.counts(i, j), chain.transition(i, j)});
    }
  }
  return t;
}

Table stationary_table(const GapChain& chain) {
  Table t{{"g1", "g2", "start", "pi"}, {}};
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    t.add_row({std::uint64_t{chain.states[i].g1}, std::uint64_t{chain.states[i].g2},
               chain.start[i], chain.stationary.pi[i]});
  }
  return t;
}

Table chain_summary_table(Workspace& ws) {
  Table t{{"D", "n_gap_states", "stationary_start", "iterations", "residual_l1", "tol"}, {}};
  for (unsigned d : ws.config().digit_lengths()) {
    const auto& chain = ws.chain(d);
    t.add_row({std::uint64_t{d}, std::uint64_t{chain.states.size()}, std::string("occupancy"),
               std::uint64_t{chain.stationary.iterations}, chain.stationary.residual,
               ws.config().tolerance});
  }
  return t;
}

Table slope_table(Workspace& ws) {
  Table t{{"D", "a", "b", "c", "d", "mean_dg1", "mean_dg2", "weighted_flag"}, {}};
  for (unsigned d : ws.config().digit_lengths()) {
    const auto fit = fit_drift(ws.chain(d), ws.config().weighted_slopes);
    t.add_row({std::uint64_t{d}, fit.a, fit.b, fit.c, fit.d, fit.mean_dg1, fit.mean_dg2,
               std::int64_t{fit.weighted ? 1 : 0}});
  }
  return t;
}

namespace {

std::vector<RegressionResult> regressions(Workspace& ws) {
  const auto& config = ws.config();
  const auto lengths = config.digit_lengths();
  for (unsigned d : lengths) {
    ws.index(d);
  }
  return fan_out(lengths, config.jobs, [&](unsigned d) {
    return regress_distance(ws.index(d), config.sample_size, config.seed);
  });
}

Table regression_table(const RunConfig& config, const std::vector<RegressionResult>& fits) {
  Table t{{"D", "n", "seed", "r2", "rmse", "beta0", "beta1", "beta2", "beta3", "beta4"}, {}};
  const auto lengths = config.digit_lengths();
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& r = fits[i];
    std::vector<Cell> row{std::uint64_t{lengths[i]}, std::uint64_t{r.n}, r.seed, r.r2, r.rmse};
    for (double b : r.betas) {
      row.emplace_back(b);
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table standardization_table(const RunConfig& config, const std::vector<RegressionResult>& fits) {
  Table t{{"D", "feature", "mean", "std"}, {}};
  const auto lengths = config.digit_lengths();
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& s = fits[i].standardization;
    for (std::size_t j = 0; j < kFeatureNames.size(); ++j) {
      t.add_row({std::uint64_t{lengths[i]}, std::string(kFeatureNames[j]), s.mean[j],
                 s.stddev[j]});
    }
  }
  return t;
}

}  // namespace

Table regression_table(Workspace& ws) { return regression_table(ws.config(), regressions(ws)); }

Table standardization_table(Workspace& ws) {
  return standardization_table(ws.config(), regressions(ws));
}

Table easy_hard_table(Workspace& ws) {
  Table t{{"D", "feature", "easy_mean", "hard_mean"}, {}};
  for (unsigned d : ws.config().digit_lengths()) {
    for (const auto& g : easy_hard_comparison(ws.index(d))) {
      t.add_row({std::uint64_t{d}, std::string(g.feature), g.easy_mean, g.hard_mean});
    }
  }
  return t;
}

std::vector<std::filesystem::path> cmd_enumerate(Workspace& ws) {
  Emitter out(ws.config());
  out.emit("attractors", attractor_table(ws));
  out.emit("summary", summary_table(ws));
  return out.take();
}

std::vector<std::filesystem::path> cmd_entropy(Workspace& ws) {
  Emitter out(ws.config());
  const auto lengths = ws.config().digit_lengths();
  for (unsigned d : lengths) {
    ws.index(d);
  }
  const auto tables =
      fan_out(lengths, ws.config().jobs, [&](unsigned d) { return entropy_table(ws.index(d)); });
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    out.emit(suffixed("entropy", lengths[i]), tables[i]);
  }
  return out.take();
}

std::vector<std::filesystem::path> cmd_multisets(Workspace& ws) {
  Emitter out(ws.config());
  const auto lengths = ws.config().digit_lengths();
  for (unsigned d : lengths) {
    ws.index(d);
  }
  struct Tables {
    Table classes, sizes, dists, composition;
  };
  const auto tables = fan_out(lengths, ws.config().jobs, [&](unsigned d) {
    const auto& index = ws.index(d);
    return Tables{multiset_class_table(index), multiset_size_table(index),
                  multiset_distance_table(index), basin_composition_table(index)};
  });
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    out.emit(suffixed("multisets", lengths[i]), tables[i].classes);
    out.emit(suffixed("multiset_sizes", lengths[i]), tables[i].sizes);
    out.emit(suffixed("multiset_dists", lengths[i]), tables[i].dists);
    out.emit(suffixed("basin_composition", lengths[i]), tables[i].composition);
  }
  return out.take();
}

std::vector<std::filesystem::path> cmd_gaps(Workspace& ws) {
  Emitter out(ws.config());
  for (unsigned d : ws.config().digit_lengths()) {
    const auto& chain = ws.chain(d);
    out.emit(suffixed("gapfield", d), gap_field_table(chain));
    out.emit(suffixed("transitions", d), transition_table(chain));
    out.emit(suffixed("stationary", d), stationary_table(chain));
  }
  out.emit("chain_summary", chain_summary_table(ws));
  out.emit("slopes", slope_table(ws));
  return out.take();
}

std::vector<std::filesystem::path> cmd_regress(Workspace& ws) {
  Emitter out(ws.config());
  const auto fits = regressions(ws);
  out.emit("regress", regression_table(ws.config(), fits));
  out.emit("regress_standardization", standardization_table(ws.config(), fits));
  out.emit("easyhard", easy_hard_table(ws));
  return out.take();
}

std::vector<std::filesystem::path> cmd_report(Workspace& ws) {
  std::vector<std::filesystem::path> written;
  for (auto* cmd : {&cmd_enumerate, &cmd_entropy, &cmd_multisets, &cmd_gaps, &cmd_regress}) {
    auto paths = cmd(ws);
    written.insert(written.end(), paths.begin(), paths.end());
  }

  const auto& config = ws.config();
  nlohmann::ordered_json manifest;
  manifest["tool"] = "kaprekar";
  manifest["version"] = kToolVersion;
  manifest["config"] = {
      {"base", config.base},
      {"digits", std::to_string(config.digits.first) + ".." + std::to_string(config.digits.last)},
      {"format", format_name(config.format)},
      {"sample_size", config.sample_size},
      {"seed", config.seed},
      {"tol", config.tolerance},
      {"weighted_slopes", config.weighted_slopes},
  };
  manifest["conventions"] = {
      {"attractor_id", "minimum member of the attracting cycle"},
      {"median", "lower median over S_D"},
      {"entropy_units", "bits"},
      {"stationary_start", "occupancy distribution under the uniform prior"},
      {"slope_fit", config.weighted_slopes ? "occupancy-weighted" : "one point per gap state"},
      {"digit_variance", "population (divide by D)"},
      {"rmse_denominator", "n"},
      {"sampling", "mt19937_64 partial Fisher-Yates, rejection-sampled bounds"},
      {"real_format", "%.12g"},
  };
  auto files = nlohmann::ordered_json::array();
  for (const auto& path : written) {
    std::ifstream in(path, std::ios::binary);
    const std::string contents((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) {
      throw IoError("cannot read back " + path.string());
    }
    files.push_back({{"file", path.filename().string()}, {"sha256", sha256_hex(contents)}});
  }
  manifest["files"] = std::move(files);

  const auto manifest_path = config.out_dir / "manifest.json";
  write_file(manifest_path, manifest.dump(2) + "\n");
  written.push_back(manifest_path);
  return written;
}

}  // namespace kaprekar
