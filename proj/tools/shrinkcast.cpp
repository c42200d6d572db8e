#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shrinkcast/config.hpp"
#include "shrinkcast/csv.hpp"
#include "shrinkcast/error.hpp"
#include "shrinkcast/harness.hpp"
#include "shrinkcast/report.hpp"
#include "shrinkcast/synth.hpp"

namespace fs = std::filesystem;
using namespace shrinkcast;

namespace {

int cmd_transform(const fs::path& in, const fs::path& out) {
  const TimeSeriesFrame frame = read_frame_csv(in);
  const TimeSeriesFrame yoy = frame.yoy();
  atomic_write(out, frame_to_csv(yoy));
  std::cerr << "wrote " << yoy.rows() << " rows x " << yoy.cols() << " series to " << out.string() << "\n";
  return 0;
}

RunConfig build_config(const fs::path& config, const std::vector<std::string>& overrides) {
  RunConfig cfg = config.empty() ? RunConfig{} : load_config(config);
  for (const auto& o : overrides) apply_override(cfg, o);
  cfg.validate();
  return cfg;
}

int cmd_forecast(const RunConfig& cfg, bool dry_run) {
  const std::vector<ModelSpec> specs = cfg.specs();
  if (dry_run) {
    std::cout << "model,prior,size,sv,horizon\n";
    for (const auto& s : specs) {
      std::cout << s.id() << ',' << s.prior_label() << ','
                << (s.kind == ModelKind::kUcsv ? "-" : std::string(to_string(s.size))) << ','
                << (s.sv || s.kind == ModelKind::kUcsv ? 1 : 0) << ',' << s.horizon << '\n';
    }
    std::cerr << specs.size() << " model/horizon combinations\n";
    return 0;
  }
  const TimeSeriesFrame frame = cfg.load_frame();
  const ExperimentSettings settings = cfg.settings(frame);
  const ExperimentResult result = run_experiment(frame, specs, settings);
  write_forecast_outputs(cfg.output_dir, result);
  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.status == ForecastStatus::kFailed;
  std::cerr << "wrote " << result.records.size() << " forecasts (" << failed << " failed) to "
            << cfg.output_dir.string() << "\n";
  return 0;
}

int cmd_score(const fs::path& records_dir, const fs::path& out_dir, bool pandemic,
              const std::vector<std::string>& extra) {
  std::vector<Period> periods{Period::full()};
  if (pandemic) periods.push_back(Period::pandemic());
  for (const auto& e : extra) {
    RunConfig scratch;
    scratch.periods.clear();
    const auto eq = e.find('=');
    if (eq == std::string::npos) throw ArgumentError("--period expects NAME=YYYY-MM..YYYY-MM, got '" + e + "'");
    scratch.set("period." + e.substr(0, eq), e.substr(eq + 1));
    periods.push_back(scratch.periods.back());
  }
  const std::vector<ForecastRecord> records = read_records(records_dir);
  const ScoreTable table = evaluate(records, periods);
  const auto files = write_score_outputs(out_dir.empty() ? records_dir : out_dir, table, records, periods);
  std::cerr << "wrote " << files.size() << " files\n";
  return 0;
}

int cmd_kappa(const fs::path& records_dir, const std::string& model, std::size_t top_k, fs::path out) {
  const CsvTable t = kappa_ranking(records_dir, model, top_k);
  if (out.empty()) out = records_dir / ("kappa_top" + std::to_string(top_k) + "_" + model + ".csv");
  atomic_write(out, to_csv(t));
  std::cerr << "wrote " << t.rows.size() << " rows to " << out.string() << "\n";
  return 0;
}

int cmd_synth(const SynthOptions& o, const fs::path& out, fs::path manifest, bool yoy) {
  const SynthData d = make_synthetic(o);
  atomic_write(out, frame_to_csv(yoy ? d.yoy : d.levels));
  if (manifest.empty()) manifest = fs::path(out.string() + ".manifest.json");
  atomic_write(manifest, synth_manifest(d));
  std::cerr << "wrote " << out.string() << " and " << manifest.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian shrinkage forecasting of monthly inflation"};
  app.require_subcommand(1);

  fs::path t_in, t_out;
  auto* transform = app.add_subcommand("transform", "Year-over-year transform of every column");
  transform->add_option("input", t_in, "levels CSV")->required();
  transform->add_option("output", t_out, "output CSV")->required();

  fs::path f_config;
  std::vector<std::string> f_set;
  bool f_dry = false;
  int f_threads = -1;
  std::string f_out;
  auto* forecast = app.add_subcommand("forecast", "Run the rolling-window experiment");
  forecast->add_option("-c,--config", f_config, "configuration file");
  forecast->add_option("--set", f_set, "override a configuration key (key=value)");
  forecast->add_option("--threads", f_threads, "worker threads (0 = all)");
  forecast->add_option("-o,--output", f_out, "output directory");
  forecast->add_flag("--dry-run", f_dry, "print the model grid and exit");

  fs::path s_records, s_out;
  bool s_no_pandemic = false;
  std::vector<std::string> s_periods;
  auto* score = app.add_subcommand("score", "Score forecasts against the benchmark");
  score->add_option("records", s_records, "directory with records.csv and densities.csv")->required();
  score->add_option("-o,--output", s_out, "output directory (default: records directory)");
  score->add_flag("--no-pandemic", s_no_pandemic, "skip the 2019-12..2023-05 subsample");
  score->add_option("--period", s_periods, "extra period NAME=YYYY-MM..YYYY-MM");

  fs::path k_records, k_out;
  std::string k_model;
  std::size_t k_top = 6;
  auto* kappa = app.add_subcommand("kappa", "Per-window kappa ranking of a horseshoe-family model");
  kappa->add_option("records", k_records, "directory with records.csv and kappa.csv")->required();
  kappa->add_option("-m,--model", k_model, "model id, e.g. hs_large")->required();
  kappa->add_option("-k,--top-k", k_top, "predictors kept per window")->check(CLI::PositiveNumber);
  kappa->add_option("-o,--output", k_out, "output CSV");

  SynthOptions so;
  fs::path y_out, y_manifest;
  bool y_yoy = false;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic panel with known sparse signal");
  synth->add_option("output", y_out, "output CSV")->required();
  synth->add_option("--seed", so.seed, "random seed");
  synth->add_option("-T,--length", so.length, "observations (levels)");
  synth->add_option("-K,--series", so.series, "series including the target");
  synth->add_option("--sparsity", so.sparsity, "predictors with nonzero effect");
  synth->add_option("--manifest", y_manifest, "sidecar JSON (default: <output>.manifest.json)");
  synth->add_flag("--yoy", y_yoy, "write year-over-year rates instead of levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kConfig);
  }

  try {
    if (*transform) return cmd_transform(t_in, t_out);
    if (*forecast) {
      std::vector<std::string> overrides = f_set;
      if (f_threads >= 0) overrides.push_back("threads=" + std::to_string(f_threads));
      if (!f_out.empty()) overrides.push_back("output.dir=" + f_out);
      return cmd_forecast(build_config(f_config, overrides), f_dry);
    }
    if (*score) return cmd_score(s_records, s_out, !s_no_pandemic, s_periods);
    if (*kappa) return cmd_kappa(k_records, k_model, k_top, k_out);
    if (*synth) return cmd_synth(so, y_out, y_manifest, y_yoy);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kData);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kSampler);
  }
  return 0;
}
