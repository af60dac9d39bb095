#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kaprekar/errors.hpp"
#include "kaprekar/report.hpp"

using namespace kaprekar;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig config_for(const std::string& name, unsigned first, unsigned last) {
  RunConfig config;
  config.digits = {first, last};
  config.out_dir = fs::path(KAPREKAR_TEST_TMPDIR) / name;
  fs::remove_all(config.out_dir);
  return config;
}

std::vector<std::string> names(const std::vector<fs::path>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(p.filename().string());
  return out;
}

}  // namespace

TEST_CASE("real formatting") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(-2.5e-20) == "-2.5e-20");
  CHECK(format_real(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("csv and json serialization agree") {
  Table t{{"name", "n", "x"}, {}};
  t.add_row({std::string("plain"), std::uint64_t{3}, 0.5});
  t.add_row({std::string("a,b \"q\""), std::int64_t{-1}, -0.0});
  CHECK(to_csv(t) == "name,n,x\nplain,3,0.5\n\"a,b \"\"q\"\"\",-1,0\n");
  CHECK_THROWS_AS(t.add_row({std::uint64_t{1}}), DomainError);

  const auto json = nlohmann::json::parse(to_json(t));
  REQUIRE(json.size() == 2);
  CHECK(json[0]["name"] == "plain");
  CHECK(json[0]["n"] == 3);
  CHECK(json[0]["x"] == 0.5);
  CHECK(json[1]["name"] == "a,b \"q\"");
  CHECK(json[1]["n"] == -1);
  CHECK(json[1]["x"] == 0.0);

  Table real{{"x"}, {}};
  real.add_row({1.0 / 3.0});
  CHECK(nlohmann::json::parse(to_json(real))[0]["x"].get<double>() == 0.333333333333);
}

TEST_CASE("sha256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("argument parsing") {
  CHECK(parse_format("csv") == OutputFormat::kCsv);
  CHECK(parse_format("json") == OutputFormat::kJson);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);

  const auto single = parse_digit_range("5");
  CHECK(single.first == 5);
  CHECK(single.last == 5);
  const auto range = parse_digit_range("3..6");
  CHECK(range.first == 3);
  CHECK(range.last == 6);
  CHECK_THROWS_AS(parse_digit_range("6..3"), ConfigError);
  CHECK_THROWS_AS(parse_digit_range("x"), ConfigError);
  CHECK_THROWS_AS(parse_digit_range("3..") , ConfigError);

  RunConfig config;
  config.digits = {10, 10};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.digits = {3, 3};
  config.sample_size = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config.sample_size = 1;
  config.tolerance = 0.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("digit strings") {
  CHECK(digit_string(99, Params(10, 4)) == "0099");
  CHECK(digit_string(16 * 11 + 2, Params(16, 3)) == "0:11:2");
}

TEST_CASE("enumerate, D = 3..4") {
  Workspace ws(config_for("enumerate", 3, 4));
  CHECK(names(cmd_enumerate(ws)) == std::vector<std::string>{"attractors.csv", "summary.csv"});
  const auto attractors = lines(slurp(ws.config().out_dir / "attractors.csv"));
  CHECK(attractors == std::vector<std::string>{"D,attractor_id,period,members,basin_size",
                                               "3,495,1,495,990", "4,6174,1,6174,9990"});
  const auto summary = lines(slurp(ws.config().out_dir / "summary.csv"));
  REQUIRE(summary.size() == 3);
  CHECK(summary[2] == "4,9990,1,1,4.66836836837,5,7");
}

TEST_CASE("enumerate lists full cycles, D = 5") {
  Workspace ws(config_for("enumerate5", 5, 5));
  cmd_enumerate(ws);
  const auto attractors = lines(slurp(ws.config().out_dir / "attractors.csv"));
  REQUIRE(attractors.size() == 4);
  CHECK(attractors[1] == "5,53955,2,53955 59994,3190");
  CHECK(attractors[2] == "5,61974,4,61974 82962 75933 63954,48480");
}

TEST_CASE("entropy and multiset tables, D = 3") {
  Workspace ws(config_for("multisets", 3, 3));
  CHECK(names(cmd_entropy(ws)) == std::vector<std::string>{"entropy_3.csv"});
  const auto entropy = lines(slurp(ws.config().out_dir / "entropy_3.csv"));
  CHECK(entropy.front() == "t,n_converged,H_bits,H_norm");
  CHECK(entropy[1] == "0,1,0,0");
  CHECK(entropy.back() == "6,990,0,0");

  CHECK(names(cmd_multisets(ws)) ==
        std::vector<std::string>{"multisets_3.csv", "multiset_sizes_3.csv",
                                 "multiset_dists_3.csv", "basin_composition_3.csv"});
  const auto classes = lines(slurp(ws.config().out_dir / "multisets_3.csv"));
  CHECK(classes.size() == 211);
  CHECK(classes.front() == "D,key,size,mean_dist,attractor_id_mode");
  CHECK(classes[1] == "3,100,3,6,495");
  const auto sizes = lines(slurp(ws.config().out_dir / "multiset_sizes_3.csv"));
  CHECK(sizes == std::vector<std::string>{"D,size,count,probability", "3,3,90,0.428571428571",
                                          "3,6,120,0.571428571429"});
  const auto composition = lines(slurp(ws.config().out_dir / "basin_composition_3.csv"));
  CHECK(composition.size() == 211);
  CHECK(composition.front() == "D,attractor_id,key,count");
}

TEST_CASE("gap tables, D = 3") {
  Workspace ws(config_for("gaps", 3, 3));
  CHECK(names(cmd_gaps(ws)) ==
        std::vector<std::string>{"gapfield_3.csv", "transitions_3.csv", "stationary_3.csv",
                                 "chain_summary.csv", "slopes.csv"});
  const auto field = lines(slurp(ws.config().out_dir / "gapfield_3.csv"));
  CHECK(field.size() == 55);
  CHECK(field.front() == "g1,g2,occupancy,mean_dg1,mean_dg2");
  const auto slopes = lines(slurp(ws.config().out_dir / "slopes.csv"));
  REQUIRE(slopes.size() == 2);
  CHECK(slopes[0] == "D,a,b,c,d,mean_dg1,mean_dg2,weighted_flag");
  CHECK(slopes[1].rfind("3,-0.434632034632,", 0) == 0);
  CHECK(slopes[1].substr(slopes[1].size() - 2) == ",0");
  const auto summary = lines(slurp(ws.config().out_dir / "chain_summary.csv"));
  REQUIRE(summary.size() == 2);
  CHECK(summary[1].rfind("3,54,occupancy,", 0) == 0);
}

TEST_CASE("regression tables, D = 3, json") {
  auto config = config_for("regress", 3, 3);
  config.format = OutputFormat::kJson;
  Workspace ws(config);
  CHECK(names(cmd_regress(ws)) == std::vector<std::string>{"regress.json",
                                                           "regress_standardization.json",
                                                           "easyhard.json"});
  const auto regress = nlohmann::json::parse(slurp(ws.config().out_dir / "regress.json"));
  REQUIRE(regress.size() == 1);
  CHECK(regress[0]["n"] == 990);
  CHECK(regress[0]["seed"] == 0);
  CHECK(regress[0]["r2"].get<double>() == doctest::Approx(0.578817211321).epsilon(1e-12));
  const auto standardization =
      nlohmann::json::parse(slurp(ws.config().out_dir / "regress_standardization.json"));
  CHECK(standardization.size() == 4);
  const auto easyhard = nlohmann::json::parse(slurp(ws.config().out_dir / "easyhard.json"));
  REQUIRE(easyhard.size() == 4);
  CHECK(easyhard[0]["feature"] == "g1");
}

TEST_CASE("report manifest and determinism, D = 3..4") {
  auto a = config_for("report_a", 3, 4);
  auto b = config_for("report_b", 3, 4);
  b.jobs = 3;
  Workspace wa(a), wb(b);
  const auto pa = cmd_report(wa);
  const auto pb = cmd_report(wb);
  REQUIRE(names(pa) == names(pb));
  CHECK(names(pa).back() == "manifest.json");
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CAPTURE(pa[i]);
    CHECK(slurp(pa[i]) == slurp(pb[i]));
  }
  const auto manifest = nlohmann::json::parse(slurp(a.out_dir / "manifest.json"));
  CHECK(manifest["config"]["digits"] == "3..4");
  CHECK_FALSE(manifest["config"].contains("jobs"));
  CHECK(manifest["files"].size() == pa.size() - 1);
  for (const auto& entry : manifest["files"]) {
    CHECK(entry["sha256"] == sha256_hex(slurp(a.out_dir / entry["file"].get<std::string>())));
  }
}
