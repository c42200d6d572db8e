#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "shrinkcast/csv.hpp"
#include "shrinkcast/error.hpp"
#include "shrinkcast/report.hpp"
#include "shrinkcast/synth.hpp"

using namespace shrinkcast;

namespace {

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

ExperimentResult tiny_run() {
  SynthOptions o;
  o.length = 80;
  o.series = 6;
  o.sparsity = 2;
  const auto frame = make_synthetic(o).yoy;
  ExperimentSettings s;
  s.window = 40;
  s.n_burn = 10;
  s.n_keep = 20;
  s.moderate_count = 3;
  std::vector<ModelSpec> specs{ModelSpec::benchmark(1), ModelSpec::ucsv(1)};
  ModelSpec hs;
  hs.prior = PriorFamily::kHorseshoe;
  hs.size = PredictorSet::kLarge;
  specs.push_back(hs);
  hs.sv = true;
  specs.push_back(hs);
  ModelSpec ridge;
  ridge.prior = PriorFamily::kRidge;
  ridge.size = PredictorSet::kModerate;
  specs.push_back(ridge);
  return run_experiment(frame, specs, s);
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 123456789.0, 0.0}) CHECK(parse_double(format_double(v), "t") == v);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::isnan(parse_double("nan", "t")));
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(parse_double("-inf", "t") < 0.0);
  CHECK_THROWS_AS(parse_double("1.0x", "row 3"), DataError);
}

TEST_CASE("csv parsing") {
  const auto t = parse_csv("a,b\n1,2\n\n3,4\n", "mem");
  CHECK(t.rows.size() == 2);
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("c"), DataError);
  CHECK(to_csv(t) == "a,b\n1,2\n3,4\n");
  try {
    parse_csv("a,b\n1,2\n3\n", "mem");
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("frame csv") {
  const auto f = parse_frame_csv("date,CPI,X\n2000-01,1.5,2\n2000-02,1.75,3\n", "mem");
  CHECK(f.rows() == 2);
  CHECK(f.names()[1] == "X");
  CHECK(f.values()(1, 0) == 1.75);
  CHECK(parse_frame_csv(frame_to_csv(f), "again").values() == f.values());
  CHECK_THROWS_AS(parse_frame_csv("when,CPI\n2000-01,1\n", "mem"), DataError);
  CHECK_THROWS_AS(parse_frame_csv("date,CPI\n2000-01,abc\n", "mem"), DataError);
  CHECK_THROWS_AS(parse_frame_csv("date,CPI\n2000-01,1\n2000-03,1\n", "mem"), DataError);
  CHECK_THROWS_AS(read_frame_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("records survive a write and read") {
  const auto res = tiny_run();
  const auto dir = scratch("shrinkcast_test_report");
  write_forecast_outputs(dir, res);
  CHECK(std::filesystem::exists(dir / "records.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "records.csv.tmp"));
  const auto back = read_records(dir);
  REQUIRE(back.size() == res.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].model == res.records[i].model);
    CHECK(back[i].point == res.records[i].point);
    CHECK(back[i].log_score == res.records[i].log_score);
    CHECK(back[i].quantiles == res.records[i].quantiles);
    CHECK(back[i].target == res.records[i].target);
    CHECK(back[i].sv == res.records[i].sv);
  }
  // Scores from the re-read records are identical.
  const auto a = evaluate(res.records, {Period::full()});
  const auto b = evaluate(back, {Period::full()});
  CHECK(scores_csv(a) == scores_csv(b));
  std::filesystem::remove_all(dir);
}

TEST_CASE("score outputs and table layout") {
  const auto res = tiny_run();
  const auto dir = scratch("shrinkcast_test_scores");
  const std::vector<Period> periods{Period::full(), Period::pandemic()};
  const auto table = evaluate(res.records, periods);
  const auto files = write_score_outputs(dir, table, res.records, periods);
  CHECK(std::filesystem::exists(dir / "scores.csv"));
  CHECK(std::filesystem::exists(dir / "table_rmse.csv"));
  CHECK(std::filesystem::exists(dir / "table_rmse_sv.csv"));
  CHECK(std::filesystem::exists(dir / "table_qwcrps_tails.csv"));
  CHECK(std::filesystem::exists(dir / "lpl" / "hs_large_h1.csv"));

  const auto t = paper_table(table, "rmse", "-", false, {1}, {"full", "pandemic"});
  CHECK(t.header == std::vector<std::string>{"section", "model", "full_h1", "pandemic_h1"});
  REQUIRE(t.rows.size() == 19);
  CHECK(t.rows[0][0] == "UC-SV");
  CHECK(t.rows[1][0] == "AR(2)");
  CHECK(t.rows[1][1] == "DL");
  CHECK(t.rows[18][0] == "Large");
  CHECK(t.rows[18][1] == "Spike-and-Slab");
  // hs_large is the third row of the large block; the pandemic is outside the sample.
  CHECK(t.rows[14][1] == "HS");
  CHECK(t.rows[14][2] != "NA");
  CHECK(t.rows[14][3] == "NA");
  CHECK(t.rows[1][2] == "NA");

  const auto ss = read_csv(dir / "scores.csv");
  CHECK(ss.header.back() == "relative");
  std::filesystem::remove_all(dir);
}

TEST_CASE("kappa ranking") {
  const auto res = tiny_run();
  const auto dir = scratch("shrinkcast_test_kappa");
  write_forecast_outputs(dir, res);
  const auto k = read_csv(dir / "kappa.csv");
  CHECK(k.rows.size() == 2 * 5 * (80 - 12 - 40));

  const auto top = kappa_ranking(dir, "hs_large", 3);
  CHECK(top.rows.size() == 3 * (80 - 12 - 40));
  for (std::size_t i = 0; i + 1 < top.rows.size(); ++i) {
    if (top.rows[i][2] != top.rows[i + 1][2]) continue;
    CHECK(parse_double(top.rows[i][6], "t") >= parse_double(top.rows[i + 1][6], "t"));
  }
  CHECK(top.rows[0][4] == "1");
  CHECK_THROWS_AS(kappa_ranking(dir, "ridge_moderate", 3), CapabilityError);
  CHECK_THROWS_AS(kappa_ranking(dir, "ucsv", 3), CapabilityError);
  CHECK_THROWS_AS(kappa_ranking(dir, "hs+_large", 3), DataError);
  std::filesystem::remove_all(dir);
}
