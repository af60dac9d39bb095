// kaprekar: exhaustive analysis of the Kaprekar digit routine.
//
// Every command writes plot-ready tables into --out. On failure a single
// line "error: <category>: <message>" goes to stderr and the exit code
// identifies the category.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "kaprekar/errors.hpp"
#include "kaprekar/report.hpp"

namespace {

int exit_code_for(std::string_view category) {
  static const std::map<std::string_view, int> codes = {
      {"config", 3},    {"io", 4},         {"domain", 5},   {"closure", 6},
      {"numerical", 7}, {"degenerate", 8}, {"singular", 9},
  };
  const auto it = codes.find(category);
  return it == codes.end() ? 1 : it->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive analysis of the Kaprekar routine: attractors, entropy funnels, "
               "multiset classes, gap-space Markov chain and feature regression."};
  app.require_subcommand(1);

  kaprekar::RunConfig config;
  std::string digits = "3..6";
  std::string format = "csv";
  std::string out_dir = config.out_dir.string();

  app.add_option("--base", config.base, "Number base")->capture_default_str();
  app.add_option("--digits", digits, "Digit length D or inclusive range A..B")
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Output encoding")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--sample-size", config.sample_size, "Regression sample size per D")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Regression sampling seed")->capture_default_str();
  app.add_option("--tol", config.tolerance, "Stationary distribution L1 tolerance")
      ->capture_default_str();
  app.add_flag("--weighted-slopes", config.weighted_slopes,
               "Weight drift slope fits by gap-state occupancy");
  app.add_option("--jobs", config.jobs, "Digit lengths processed concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  using Command = std::vector<std::filesystem::path> (*)(kaprekar::Workspace&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"enumerate", "Attractor inventory and global summary", &kaprekar::cmd_enumerate},
      {"entropy", "Entropy funnel per D", &kaprekar::cmd_entropy},
      {"multisets", "Multiset classes, size/distance histograms, basin composition",
       &kaprekar::cmd_multisets},
      {"gaps", "Gap-space occupancy, drift, transitions, stationary vector, slopes",
       &kaprekar::cmd_gaps},
      {"regress", "Feature regression and easy/hard decile comparison", &kaprekar::cmd_regress},
      {"report", "Every table above plus a checksum manifest", &kaprekar::cmd_report},
  };
  std::map<CLI::App*, Command> dispatch;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    dispatch[sub] = fn;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    config.digits = kaprekar::parse_digit_range(digits);
    config.format = kaprekar::parse_format(format);
    config.out_dir = out_dir;
    kaprekar::Workspace workspace(config);
    for (auto* sub : app.get_subcommands()) {
      for (const auto& path : dispatch.at(sub)(workspace)) {
        std::cout << path.string() << "\n";
      }
    }
  } catch (const kaprekar::Error& e) {
    std::cerr << "error: " << e.category() << ": " << e.what() << "\n";
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
