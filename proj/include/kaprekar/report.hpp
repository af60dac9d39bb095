#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "kaprekar/dynamics.hpp"
#include "kaprekar/gap_space.hpp"
#include "kaprekar/table.hpp"

namespace kaprekar {

enum class OutputFormat { kCsv, kJson };

/// Accepts "csv" or "json"; anything else is a ConfigError.
OutputFormat parse_format(std::string_view text);
std::string_view format_name(OutputFormat format);

struct DigitRange {
  unsigned first = 3;
  unsigned last = 6;
};

/// Accepts a single length ("5") or an inclusive range ("3..6").
DigitRange parse_digit_range(std::string_view text);

struct RunConfig {
  unsigned base = 10;
  DigitRange digits;
  std::filesystem::path out_dir = "kaprekar_out";
  OutputFormat format = OutputFormat::kCsv;
  std::uint64_t sample_size = 50'000;
  std::uint64_t seed = 0;
  double tolerance = kDefaultStationaryTolerance;
  bool weighted_slopes = false;
  /// Digit lengths analysed concurrently; never changes the output bytes.
  unsigned jobs = 1;

  std::vector<unsigned> digit_lengths() const;
  /// Throws ConfigError for an empty range, a capacity violation, a bad
  /// tolerance or a zero sample size.
  void validate() const;
};

/// Per-digit-length analyses shared between commands of one run. Every
/// build step fans out over digit lengths with up to `config.jobs` workers.
class Workspace {
 public:
  explicit Workspace(RunConfig config);

  const RunConfig& config() const noexcept { return config_; }
  const DynamicsIndex& index(unsigned digits);
  const GapChain& chain(unsigned digits);

 private:
  void ensure_indices();
  void ensure_chains();

  RunConfig config_;
  std::map<unsigned, std::unique_ptr<const DynamicsIndex>> indices_;
  std::map<unsigned, std::unique_ptr<const GapChain>> chains_;
};

/// Digits of `value` as text: one character per digit up to base 10,
/// colon-separated decimal digits above.
std::string digit_string(StateValue value, const Params& params);

// Table builders, one per emitted file (stems in parentheses).
Table attractor_table(Workspace& ws);                    // attractors
Table summary_table(Workspace& ws);                      // summary
Table entropy_table(const DynamicsIndex& index);         // entropy_<D>
Table multiset_class_table(const DynamicsIndex& index);  // multisets_<D>
Table multiset_size_table(const DynamicsIndex& index);   // multiset_sizes_<D>
Table multiset_distance_table(const DynamicsIndex& index);  // multiset_dists_<D>
Table basin_composition_table(const DynamicsIndex& index);  // basin_composition_<D>
Table gap_field_table(const GapChain& chain);            // gapfield_<D>
Table transition_table(const GapChain& chain);           // transitions_<D>
Table stationary_table(const GapChain& chain);           // stationary_<D>
Table chain_summary_table(Workspace& ws);                // chain_summary
Table slope_table(Workspace& ws);                        // slopes
Table regression_table(Workspace& ws);                   // regress
Table standardization_table(Workspace& ws);              // regress_standardization
Table easy_hard_table(Workspace& ws);                    // easyhard

/// Each command writes its tables into config.out_dir (created if missing)
/// and returns the written paths in emission order.
std::vector<std::filesystem::path> cmd_enumerate(Workspace& ws);
std::vector<std::filesystem::path> cmd_entropy(Workspace& ws);
std::vector<std::filesystem::path> cmd_multisets(Workspace& ws);
std::vector<std::filesystem::path> cmd_gaps(Workspace& ws);
std::vector<std::filesystem::path> cmd_regress(Workspace& ws);

/// Runs every command, then writes manifest.json listing each emitted file
/// with its SHA-256. The manifest holds no timestamps or host details, so
/// identical configs give identical bytes.
std::vector<std::filesystem::path> cmd_report(Workspace& ws);

}  // namespace kaprekar
