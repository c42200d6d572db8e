#include "shrinkcast/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <string>

#include <omp.h>

#include "shrinkcast/error.hpp"
#include "shrinkcast/random.hpp"
#include "shrinkcast/ucsv.hpp"

namespace shrinkcast {

namespace {

struct Inputs {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> names;
  DirectDesign design;  // full-sample rows; empty for UC-SV
};

Inputs prepare(const TimeSeriesFrame& frame, const ModelSpec& spec, const ExperimentSettings& s) {
  Inputs in;
  in.y = frame.values().col(static_cast<Eigen::Index>(s.target_column));
  if (spec.kind == ModelKind::kUcsv) return in;
  const auto cols = predictor_columns(frame, spec.size, s);
  in.X.resize(in.y.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    in.X.col(static_cast<Eigen::Index>(j)) = frame.values().col(static_cast<Eigen::Index>(cols[j]));
    in.names.push_back(frame.names()[cols[j]]);
  }
  in.design = build_direct_design(in.y, in.X, frame.dates(), spec.horizon, s.lags);
  return in;
}

std::uint64_t task_seed(const ExperimentSettings& s, const ModelSpec& spec, std::size_t window,
                        std::uint64_t attempt) {
  return derive_seed(s.seed, {stable_hash(spec.id().c_str()), static_cast<std::uint64_t>(spec.horizon),
                              static_cast<std::uint64_t>(window), attempt});
}

PredictiveDensity fit_direct(const Inputs& in, const ModelSpec& spec, const ExperimentSettings& s,
                             const Split& split, std::uint64_t seed, std::vector<double>* kappa) {
  const RowRange range = training_rows(split, spec.horizon, s.lags);
  const auto first = static_cast<Eigen::Index>(range.first);
  const auto n = static_cast<Eigen::Index>(range.size());
  if (n < 10) {
    throw InsufficientDataError("window ending " + std::to_string(split.origin) + " has " +
                                std::to_string(n) + " usable rows");
  }
  DirectDesign d;
  d.horizon = spec.horizon;
  d.lags = s.lags;
  d.targets = in.design.targets.segment(first, n);
  d.regressors = in.design.regressors.middleRows(first, n);
  d.origin_index.assign(in.design.origin_index.begin() + first,
                        in.design.origin_index.begin() + first + n);
  Eigen::VectorXd x_new = regressor_row(in.y, in.X, split.origin, s.lags);

  // Standardize every non-intercept column with training-window moments.
  for (Eigen::Index j = 1; j < d.width(); ++j) {
    auto col = d.regressors.col(j);
    const double mu = col.mean();
    double sd = std::sqrt((col.array() - mu).square().sum() / static_cast<double>(n - 1));
    if (!(sd > 1e-12)) sd = 1.0;
    col = (col.array() - mu) / sd;
    x_new(j) = (x_new(j) - mu) / sd;
  }

  GibbsConfig cfg;
  cfg.n_burn = s.n_burn;
  cfg.n_keep = s.n_keep;
  cfg.thin = s.thin;
  cfg.seed = seed;
  cfg.sv_enabled = spec.sv;
  const PosteriorSample post = run_gibbs(spec, d, cfg);
  if (kappa != nullptr && has_kappa(spec.prior)) {
    const Eigen::VectorXd k = kappa_values(post);
    const Eigen::Index ex = in.X.cols();
    kappa->assign(k.data() + (k.size() - ex), k.data() + k.size());
  }
  return predictive_density(post, x_new, spec.horizon, spec.sv);
}

PredictiveDensity fit_ucsv(const Inputs& in, const ModelSpec& spec, const ExperimentSettings& s,
                           const Split& split, std::uint64_t seed) {
  const auto begin = static_cast<Eigen::Index>(split.train_begin);
  const auto len = static_cast<Eigen::Index>(split.origin - split.train_begin + 1);
  GibbsConfig cfg;
  cfg.n_burn = s.n_burn;
  cfg.n_keep = s.n_keep;
  cfg.thin = s.thin;
  cfg.seed = seed;
  const UcsvPosterior post = run_ucsv(in.y.segment(begin, len), cfg);
  Rng rng(derive_seed(seed, {0x75637376ULL}));
  return ucsv_forecast(post, spec.horizon, rng);
}

ForecastRecord run_task(const TimeSeriesFrame& frame, const Inputs& in, const ModelSpec& spec,
                        const ExperimentSettings& s, const Split& split, std::size_t window) {
  ForecastRecord r;
  r.model = spec.id();
  r.prior = spec.prior_label();
  r.size = spec.kind == ModelKind::kUcsv ? "-" : std::string(to_string(spec.size));
  r.sv = spec.sv || spec.kind == ModelKind::kUcsv;
  r.horizon = spec.horizon;
  r.window_index = window;
  r.origin = frame.dates()[split.origin];
  r.target = frame.dates()[split.target];
  r.actual = in.y(static_cast<Eigen::Index>(split.target));

  std::string last_error;
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    try {
      const std::uint64_t seed = task_seed(s, spec, window, attempt);
      std::vector<double> kappa;
      PredictiveDensity dens = spec.kind == ModelKind::kUcsv ? fit_ucsv(in, spec, s, split, seed)
                                                             : fit_direct(in, spec, s, split, seed, &kappa);
      r.point = dens.mean();
      r.variance = dens.variance();
      r.quantiles = dens.quantiles;
      r.log_score = predictive_logscore(dens, r.actual);
      if (!std::isfinite(r.point) || !std::isfinite(r.log_score)) {
        throw SamplerFailure("non-finite predictive summary", 0);
      }
      r.kappa = std::move(kappa);
      r.status = ForecastStatus::kOk;
      r.diagnostic = attempt == 0 ? "" : "retried after: " + last_error;
      return r;
    } catch (const SamplerFailure& e) {
      last_error = e.what();
    } catch (const InternalStateError& e) {
      last_error = e.what();
    }
  }
  r.status = ForecastStatus::kFailed;
  r.diagnostic = last_error;
  r.point = std::nan("");
  r.variance = std::nan("");
  r.log_score = std::nan("");
  r.quantiles.fill(std::nan(""));
  return r;
}

struct TaskList {
  std::vector<Inputs> inputs;       // per spec
  std::vector<WindowPlan> plans;    // per spec
  std::vector<std::pair<std::size_t, std::size_t>> tasks;  // (spec, window)
};

TaskList plan_tasks(const TimeSeriesFrame& frame, const std::vector<ModelSpec>& specs,
                    const ExperimentSettings& s) {
  if (s.target_column >= frame.cols()) throw ConfigError("target column out of range");
  for (const auto& spec : specs) {
    const bool has_bench = std::any_of(specs.begin(), specs.end(), [&](const ModelSpec& m) {
      return m.is_benchmark() && m.horizon == spec.horizon;
    });
    if (!has_bench) {
      throw ConfigError("model grid has no benchmark for horizon " + std::to_string(spec.horizon));
    }
  }
  TaskList tl;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    tl.inputs.push_back(prepare(frame, specs[i], s));
    tl.plans.push_back(rolling_windows(frame.rows(), s.window, specs[i].horizon, s.scheme));
    for (std::size_t k = 0; k < tl.plans.back().splits.size(); ++k) tl.tasks.emplace_back(i, k);
  }
  return tl;
}

ExperimentResult collect(const std::vector<ModelSpec>& specs, const TaskList& tl,
                         std::vector<ForecastRecord> records) {
  ExperimentResult res;
  res.records = std::move(records);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].kind != ModelKind::kDirect || !has_kappa(specs[i].prior)) continue;
    const std::string id = specs[i].id();
    const bool seen = std::any_of(res.kappa_names.begin(), res.kappa_names.end(),
                                  [&](const auto& e) { return e.first == id; });
    if (!seen) res.kappa_names.emplace_back(id, tl.inputs[i].names);
  }
  return res;
}

}  // namespace

std::vector<std::size_t> predictor_columns(const TimeSeriesFrame& frame, PredictorSet size,
                                           const ExperimentSettings& s) {
  std::vector<std::size_t> cols;
  if (size == PredictorSet::kSmall) return cols;
  const std::size_t limit =
      size == PredictorSet::kModerate ? std::min(s.moderate_count, frame.cols()) : frame.cols();
  for (std::size_t j = 0; j < limit; ++j) {
    if (j != s.target_column) cols.push_back(j);
  }
  return cols;
}

int effective_threads(int requested) {
  int n = requested > 0 ? requested : omp_get_max_threads();
  if (const char* env = std::getenv("SHRINKCAST_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

ForecastRecord forecast_one(const TimeSeriesFrame& frame, const ModelSpec& spec,
                            const ExperimentSettings& settings, std::size_t window_index) {
  const Inputs in = prepare(frame, spec, settings);
  const WindowPlan plan = rolling_windows(frame.rows(), settings.window, spec.horizon, settings.scheme);
  if (window_index >= plan.splits.size()) {
    throw ArgumentError("window index " + std::to_string(window_index) + " out of range (" +
                        std::to_string(plan.splits.size()) + " windows)");
  }
  return run_task(frame, in, spec, settings, plan.splits[window_index], window_index);
}

ExperimentResult run_experiment(const TimeSeriesFrame& frame, const std::vector<ModelSpec>& specs,
                                const ExperimentSettings& settings) {
  const TaskList tl = plan_tasks(frame, specs, settings);
  const auto n = static_cast<long>(tl.tasks.size());
  std::vector<ForecastRecord> records(tl.tasks.size());
  std::vector<std::exception_ptr> errors(tl.tasks.size());
  const int threads = effective_threads(settings.threads);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long t = 0; t < n; ++t) {
    const auto [i, k] = tl.tasks[static_cast<std::size_t>(t)];
    try {
      records[static_cast<std::size_t>(t)] =
          run_task(frame, tl.inputs[i], specs[i], settings, tl.plans[i].splits[k], k);
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return collect(specs, tl, std::move(records));
}

ExperimentResult run_experiment_serial(const TimeSeriesFrame& frame,
                                       const std::vector<ModelSpec>& specs,
                                       const ExperimentSettings& settings) {
  const TaskList tl = plan_tasks(frame, specs, settings);
  std::vector<ForecastRecord> records;
  records.reserve(tl.tasks.size());
  for (const auto& [i, k] : tl.tasks) {
    records.push_back(run_task(frame, tl.inputs[i], specs[i], settings, tl.plans[i].splits[k], k));
  }
  return collect(specs, tl, std::move(records));
}

namespace {

struct Group {
  const ForecastRecord* proto = nullptr;
  std::vector<const ForecastRecord*> items;
};

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

std::optional<double> safe_ratio(double model, double bench) {
  try {
    return relative_metric(model, bench);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

ScoreTable evaluate(const std::vector<ForecastRecord>& records, const std::vector<Period>& periods) {
  std::vector<std::pair<std::string, int>> order;
  std::map<std::pair<std::string, int>, Group> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.model, r.horizon);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      it->second.proto = &r;
    }
    it->second.items.push_back(&r);
  }

  const std::string bench_id = ModelSpec::benchmark(1).id();
  ScoreTable table;
  for (const auto& key : order) {
    const Group& g = groups.at(key);
    const auto bit = groups.find({bench_id, key.second});
    if (bit == groups.end()) {
      throw ArgumentError("no benchmark forecasts for horizon " + std::to_string(key.second));
    }
    std::map<long, const ForecastRecord*> bench_by_target;
    for (const auto* b : bit->second.items) bench_by_target[b->target.ordinal()] = b;

    for (const auto& period : periods) {
      std::vector<const ForecastRecord*> ms;
      std::vector<const ForecastRecord*> bs;
      for (const auto* m : g.items) {
        if (m->status != ForecastStatus::kOk || !period.contains(m->target)) continue;
        const auto b = bench_by_target.find(m->target.ordinal());
        if (b == bench_by_target.end() || b->second->status != ForecastStatus::kOk) continue;
        ms.push_back(m);
        bs.push_back(b->second);
      }

      auto row = [&](std::string metric, std::string scheme) {
        ScoreRow sr;
        sr.model = g.proto->model;
        sr.prior = g.proto->prior;
        sr.size = g.proto->size;
        sr.sv = g.proto->sv;
        sr.horizon = key.second;
        sr.period = period.name;
        sr.metric = std::move(metric);
        sr.scheme = std::move(scheme);
        return sr;
      };

      std::vector<double> actual;
      std::vector<double> mp;
      std::vector<double> bp;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        actual.push_back(ms[i]->actual);
        mp.push_back(ms[i]->point);
        bp.push_back(bs[i]->point);
      }

      ScoreRow r_rmse = row("rmse", "-");
      if (!ms.empty()) {
        r_rmse.value = rmse(actual, mp);
        r_rmse.relative = safe_ratio(*r_rmse.value, rmse(actual, bp));
      }
      table.rows.push_back(std::move(r_rmse));

      for (auto scheme : kAllSchemes) {
        ScoreRow r = row("qwcrps", std::string(to_string(scheme)));
        if (!ms.empty()) {
          std::vector<double> mv;
          std::vector<double> bv;
          for (std::size_t i = 0; i < ms.size(); ++i) {
            mv.push_back(qwcrps(ms[i]->quantiles, actual[i], scheme));
            bv.push_back(qwcrps(bs[i]->quantiles, actual[i], scheme));
          }
          r.value = mean_of(mv);
          r.relative = safe_ratio(*r.value, mean_of(bv));
        }
        table.rows.push_back(std::move(r));
      }

      ScoreRow r_lpl = row("lpl", "-");
      if (!ms.empty()) {
        std::vector<double> mv;
        std::vector<double> bv;
        for (std::size_t i = 0; i < ms.size(); ++i) {
          mv.push_back(ms[i]->log_score);
          bv.push_back(bs[i]->log_score);
        }
        r_lpl.value = mean_of(mv);
        r_lpl.relative = std::exp(*r_lpl.value - mean_of(bv));
      }
      table.rows.push_back(std::move(r_lpl));
    }
  }
  return table;
}

LplSeries lpl_series(const std::vector<ForecastRecord>& records, const std::string& model,
                     int horizon) {
  const std::string bench_id = ModelSpec::benchmark(1).id();
  std::map<long, const ForecastRecord*> m;
  std::map<long, const ForecastRecord*> b;
  for (const auto& r : records) {
    if (r.horizon != horizon || r.status != ForecastStatus::kOk) continue;
    if (r.model == model) m[r.target.ordinal()] = &r;
    if (r.model == bench_id) b[r.target.ordinal()] = &r;
  }
  if (b.empty()) throw ArgumentError("no benchmark forecasts for horizon " + std::to_string(horizon));
  LplSeries out;
  for (const auto& [ord, rec] : m) {
    const auto it = b.find(ord);
    if (it == b.end()) continue;
    out.dates.push_back(rec->target);
    out.model.push_back(rec->log_score);
    out.benchmark.push_back(it->second->log_score);
  }
  out.cumulative = cumulative_lpl(out.model, out.benchmark);
  return out;
}

}  // namespace shrinkcast
