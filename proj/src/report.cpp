#include "shrinkcast/report.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

std::string clean(std::string s) {
  for (auto& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::string quantile_header(std::size_t j) {
  const int pct = static_cast<int>(5 * (j + 1));
  return std::string("q") + (pct < 10 ? "0" : "") + std::to_string(pct);
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

PriorFamily family_of(const std::string& model_id) {
  if (model_id == "ucsv") throw CapabilityError("kappa is not defined for the UC-SV model");
  return parse_prior_family(model_id.substr(0, model_id.find('_')));
}

}  // namespace

std::string records_csv(const std::vector<ForecastRecord>& records) {
  CsvTable t;
  t.header = {"model", "prior", "size", "sv", "horizon", "window", "origin", "target", "actual",
              "status", "point", "variance", "log_score", "density_row", "diagnostic"};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    t.rows.push_back({r.model, r.prior, r.size, r.sv ? "1" : "0", std::to_string(r.horizon),
                      std::to_string(r.window_index), r.origin.str(), r.target.str(),
                      format_double(r.actual), r.status == ForecastStatus::kOk ? "ok" : "failed",
                      format_double(r.point), format_double(r.variance), format_double(r.log_score),
                      std::to_string(i), clean(r.diagnostic)});
  }
  return to_csv(t);
}

std::string densities_csv(const std::vector<ForecastRecord>& records) {
  CsvTable t;
  t.header = {"density_row", "model", "horizon", "target"};
  for (std::size_t j = 0; j < kQuantileCount; ++j) t.header.push_back(quantile_header(j));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::vector<std::string> row{std::to_string(i), r.model, std::to_string(r.horizon), r.target.str()};
    for (double q : r.quantiles) row.push_back(format_double(q));
    t.rows.push_back(std::move(row));
  }
  return to_csv(t);
}

std::string kappa_csv(const ExperimentResult& result) {
  CsvTable t;
  t.header = {"model", "horizon", "window", "origin", "target", "predictor", "kappa"};
  for (const auto& r : result.records) {
    if (r.kappa.empty()) continue;
    const auto it = std::find_if(result.kappa_names.begin(), result.kappa_names.end(),
                                 [&](const auto& e) { return e.first == r.model; });
    if (it == result.kappa_names.end() || it->second.size() != r.kappa.size()) {
      throw InternalStateError("kappa names missing for model " + r.model);
    }
    for (std::size_t j = 0; j < r.kappa.size(); ++j) {
      t.rows.push_back({r.model, std::to_string(r.horizon), std::to_string(r.window_index),
                        r.origin.str(), r.target.str(), it->second[j], format_double(r.kappa[j])});
    }
  }
  return to_csv(t);
}

void write_forecast_outputs(const std::filesystem::path& dir, const ExperimentResult& result) {
  atomic_write(dir / "records.csv", records_csv(result.records));
  atomic_write(dir / "densities.csv", densities_csv(result.records));
  atomic_write(dir / "kappa.csv", kappa_csv(result));
}

std::vector<ForecastRecord> read_records(const std::filesystem::path& dir) {
  const CsvTable rec = read_csv(dir / "records.csv");
  const CsvTable dens = read_csv(dir / "densities.csv");
  const std::size_t c_model = rec.column("model"), c_prior = rec.column("prior"),
                    c_size = rec.column("size"), c_sv = rec.column("sv"), c_h = rec.column("horizon"),
                    c_win = rec.column("window"), c_origin = rec.column("origin"),
                    c_target = rec.column("target"), c_actual = rec.column("actual"),
                    c_status = rec.column("status"), c_point = rec.column("point"),
                    c_var = rec.column("variance"), c_ls = rec.column("log_score"),
                    c_row = rec.column("density_row"), c_diag = rec.column("diagnostic");
  const std::size_t d_row = dens.column("density_row");
  std::map<std::string, const std::vector<std::string>*> by_row;
  for (const auto& r : dens.rows) by_row[r[d_row]] = &r;
  const std::size_t d_q0 = dens.column(quantile_header(0));

  std::vector<ForecastRecord> out;
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    const auto& r = rec.rows[i];
    const std::string where = "records.csv row " + std::to_string(i + 2);
    ForecastRecord f;
    f.model = r[c_model];
    f.prior = r[c_prior];
    f.size = r[c_size];
    f.sv = r[c_sv] == "1";
    f.horizon = static_cast<int>(parse_double(r[c_h], where));
    f.window_index = static_cast<std::size_t>(parse_double(r[c_win], where));
    f.origin = YearMonth::parse(r[c_origin]);
    f.target = YearMonth::parse(r[c_target]);
    f.actual = parse_double(r[c_actual], where);
    if (r[c_status] != "ok" && r[c_status] != "failed") throw DataError(where + ": bad status");
    f.status = r[c_status] == "ok" ? ForecastStatus::kOk : ForecastStatus::kFailed;
    f.point = parse_double(r[c_point], where);
    f.variance = parse_double(r[c_var], where);
    f.log_score = parse_double(r[c_ls], where);
    f.diagnostic = r[c_diag];
    const auto it = by_row.find(r[c_row]);
    if (it == by_row.end()) throw DataError(where + ": density row " + r[c_row] + " not found");
    for (std::size_t j = 0; j < kQuantileCount; ++j) {
      f.quantiles[j] = parse_double((*it->second)[d_q0 + j], "densities.csv row " + r[c_row]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string scores_csv(const ScoreTable& table) {
  CsvTable t;
  t.header = {"model", "prior", "size", "sv", "horizon", "period", "metric", "scheme", "value", "relative"};
  for (const auto& r : table.rows) {
    t.rows.push_back({r.model, r.prior, r.size, r.sv ? "1" : "0", std::to_string(r.horizon), r.period,
                      r.metric, r.scheme, opt(r.value), opt(r.relative)});
  }
  return to_csv(t);
}

CsvTable paper_table(const ScoreTable& table, const std::string& metric, const std::string& scheme,
                     bool sv, const std::vector<int>& horizons, const std::vector<std::string>& periods) {
  static const PriorFamily kRows[] = {PriorFamily::kDirichletLaplace, PriorFamily::kHorseshoe,
                                      PriorFamily::kHorseshoePlus,    PriorFamily::kAdaptiveLasso,
                                      PriorFamily::kRidge,            PriorFamily::kSpikeSlab};
  static const PredictorSet kSections[] = {PredictorSet::kSmall, PredictorSet::kModerate,
                                           PredictorSet::kLarge};
  CsvTable t;
  t.header = {"section", "model"};
  for (const auto& p : periods) {
    for (int h : horizons) t.header.push_back(p + "_h" + std::to_string(h));
  }
  auto fill = [&](std::vector<std::string> row, const std::string& id) {
    for (const auto& p : periods) {
      for (int h : horizons) {
        const ScoreRow* r = table.find(id, h, p, metric, scheme);
        row.push_back(r ? opt(r->relative) : "NA");
      }
    }
    t.rows.push_back(std::move(row));
  };
  fill({"UC-SV", "UCSV"}, "ucsv");
  for (auto size : kSections) {
    for (auto prior : kRows) {
      ModelSpec m;
      m.prior = prior;
      m.size = size;
      m.sv = sv;
      fill({std::string(display_name(size)), std::string(display_name(prior))}, m.id());
    }
  }
  return t;
}

std::vector<std::filesystem::path> write_score_outputs(const std::filesystem::path& dir,
                                                       const ScoreTable& table,
                                                       const std::vector<ForecastRecord>& records,
                                                       const std::vector<Period>& periods) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::filesystem::path& p, const std::string& content) {
    atomic_write(p, content);
    written.push_back(p);
  };
  put(dir / "scores.csv", scores_csv(table));

  std::set<int> hs;
  bool any_sv = false;
  for (const auto& r : records) {
    hs.insert(r.horizon);
    if (r.sv && r.model != "ucsv") any_sv = true;
  }
  const std::vector<int> horizons(hs.begin(), hs.end());
  std::vector<std::string> names;
  for (const auto& p : periods) names.push_back(p.name);

  for (bool sv : {false, true}) {
    if (sv && !any_sv) continue;
    const std::string suffix = sv ? "_sv" : "";
    put(dir / ("table_rmse" + suffix + ".csv"), to_csv(paper_table(table, "rmse", "-", sv, horizons, names)));
    for (auto s : kAllSchemes) {
      const std::string scheme(to_string(s));
      put(dir / ("table_qwcrps_" + scheme + suffix + ".csv"),
          to_csv(paper_table(table, "qwcrps", scheme, sv, horizons, names)));
    }
    put(dir / ("table_lpl" + suffix + ".csv"), to_csv(paper_table(table, "lpl", "-", sv, horizons, names)));
  }

  std::set<std::pair<std::string, int>> models;
  for (const auto& r : records) models.emplace(r.model, r.horizon);
  for (const auto& [model, h] : models) {
    const LplSeries s = lpl_series(records, model, h);
    CsvTable t;
    t.header = {"target", "model_log_score", "benchmark_log_score", "cumulative_lpl"};
    for (std::size_t i = 0; i < s.dates.size(); ++i) {
      t.rows.push_back({s.dates[i].str(), format_double(s.model[i]), format_double(s.benchmark[i]),
                        format_double(s.cumulative[i])});
    }
    put(dir / "lpl" / (model + "_h" + std::to_string(h) + ".csv"), to_csv(t));
  }
  return written;
}

CsvTable kappa_ranking(const std::filesystem::path& dir, const std::string& model, std::size_t top_k) {
  if (top_k == 0) throw ArgumentError("top_k must be positive");
  const PriorFamily family = family_of(model);
  if (!has_kappa(family)) {
    throw CapabilityError("kappa is defined for horseshoe-family priors only, not '" + model + "'");
  }
  const CsvTable k = read_csv(dir / "kappa.csv");
  const std::size_t c_model = k.column("model"), c_h = k.column("horizon"), c_win = k.column("window"),
                    c_target = k.column("target"), c_pred = k.column("predictor"),
                    c_kappa = k.column("kappa");

  struct Entry {
    std::string name;
    std::size_t order;
    double kappa;
  };
  std::vector<std::pair<std::string, std::string>> keys;  // (horizon, window) in file order
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::vector<Entry>>> groups;
  for (std::size_t i = 0; i < k.rows.size(); ++i) {
    const auto& r = k.rows[i];
    if (r[c_model] != model) continue;
    auto key = std::make_pair(r[c_h], r[c_win]);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      keys.push_back(key);
      it->second.first = r[c_target];
    }
    auto& v = it->second.second;
    v.push_back({r[c_pred], v.size(), parse_double(r[c_kappa], "kappa.csv row " + std::to_string(i + 2))});
  }
  if (keys.empty()) throw DataError("no kappa rows for model '" + model + "' in " + (dir / "kappa.csv").string());

  CsvTable out;
  out.header = {"model", "horizon", "window", "target", "rank", "predictor", "kappa"};
  for (const auto& key : keys) {
    auto& [target, entries] = groups.at(key);
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.kappa != b.kappa) return a.kappa > b.kappa;
      return a.order < b.order;
    });
    const std::size_t n = std::min(top_k, entries.size());
    for (std::size_t j = 0; j < n; ++j) {
      out.rows.push_back({model, key.first, key.second, target, std::to_string(j + 1), entries[j].name,
                          format_double(entries[j].kappa)});
    }
  }
  return out;
}

}  // namespace shrinkcast
