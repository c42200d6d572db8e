#include "shrinkcast/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "shrinkcast/csv.hpp"
#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto c = v.find(',', start);
    auto item = trim(v.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
    if (!item.empty()) out.push_back(item);
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                    " (expected " + std::string(expected) + ")");
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) bad(key, v, "a number");
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view v) {
  const long n = parse_number<long>(key, v);
  if (n < 0) bad(key, v, "a non-negative integer");
  return static_cast<std::size_t>(n);
}

double parse_positive(std::string_view key, std::string_view v) {
  const double d = parse_number<double>(key, v);
  if (!(d > 0.0)) bad(key, v, "a positive number");
  return d;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  bad(key, v, "true or false");
}

YearMonth parse_month(std::string_view key, std::string_view v) {
  try {
    return YearMonth::parse(v);
  } catch (const Error&) {
    bad(key, v, "YYYY-MM");
  }
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  const std::string k(key);
  value = trim(value);
  if (k == "data.path") {
    data_path = std::string(value);
  } else if (k == "data.target") {
    target = std::string(value);
  } else if (k == "data.start") {
    start = parse_month(key, value);
  } else if (k == "data.end") {
    end = parse_month(key, value);
  } else if (k == "data.transform") {
    transform = parse_bool(key, value);
  } else if (k == "prior.family") {
    priors.clear();
    for (auto t : split_list(value)) {
      try {
        priors.push_back(parse_prior_family(t));
      } catch (const Error&) {
        bad(key, t, "a prior family");
      }
    }
  } else if (k == "prior.ridge_lambda") {
    hyper.ridge_lambda = parse_positive(key, value);
  } else if (k == "prior.dl_a") {
    hyper.dl_a = parse_positive(key, value);
  } else if (k == "prior.adapt_gamma") {
    hyper.adapt_gamma = parse_positive(key, value);
  } else if (k == "prior.adapt_eps") {
    hyper.adapt_eps = parse_positive(key, value);
  } else if (k == "prior.ss_a") {
    hyper.ss_a = parse_positive(key, value);
  } else if (k == "prior.ss_b") {
    hyper.ss_b = parse_positive(key, value);
  } else if (k == "models.sizes") {
    sizes.clear();
    for (auto t : split_list(value)) {
      try {
        sizes.push_back(parse_predictor_set(t));
      } catch (const Error&) {
        bad(key, t, "small, moderate or large");
      }
    }
  } else if (k == "models.sv") {
    sv.clear();
    for (auto t : split_list(value)) sv.push_back(parse_bool(key, t));
  } else if (k == "models.horizons") {
    horizons.clear();
    for (auto t : split_list(value)) horizons.push_back(parse_number<int>(key, t));
  } else if (k == "models.ucsv") {
    ucsv = parse_bool(key, value);
  } else if (k == "models.allow_any_horizon") {
    allow_any_horizon = parse_bool(key, value);
  } else if (k == "models.moderate_count") {
    moderate_count = parse_count(key, value);
  } else if (k == "window.length") {
    window = parse_count(key, value);
  } else if (k == "window.scheme") {
    if (value == "rolling") {
      scheme = WindowScheme::kRolling;
    } else if (value == "expanding") {
      scheme = WindowScheme::kExpanding;
    } else {
      bad(key, value, "rolling or expanding");
    }
  } else if (k == "window.lags") {
    lags = parse_number<int>(key, value);
  } else if (k == "gibbs.burn") {
    n_burn = parse_count(key, value);
  } else if (k == "gibbs.keep") {
    n_keep = parse_count(key, value);
  } else if (k == "gibbs.thin") {
    thin = parse_count(key, value);
  } else if (k == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (k == "threads") {
    threads = parse_number<int>(key, value);
  } else if (k == "output.dir") {
    output_dir = std::string(value);
  } else if (k.rfind("period.", 0) == 0 && k.size() > 7) {
    const std::string name = k.substr(7);
    if (name == "full") throw ConfigError("period 'full' is built in and cannot be redefined");
    const auto dots = value.find("..");
    if (dots == std::string_view::npos) bad(key, value, "YYYY-MM..YYYY-MM");
    Period p{name, parse_month(key, trim(value.substr(0, dots))),
             parse_month(key, trim(value.substr(dots + 2)))};
    if (*p.end < *p.start) bad(key, value, "start before end");
    auto it = std::find_if(periods.begin(), periods.end(), [&](const Period& q) { return q.name == name; });
    if (it != periods.end()) {
      *it = p;
    } else {
      periods.push_back(p);
    }
  } else {
    throw ConfigError("unknown configuration key '" + k + "'");
  }
}

void RunConfig::validate() const {
  if (priors.empty() && !ucsv) throw ConfigError("no models selected");
  if (sizes.empty()) throw ConfigError("models.sizes is empty");
  if (sv.empty()) throw ConfigError("models.sv is empty");
  if (horizons.empty()) throw ConfigError("models.horizons is empty");
  std::set<int> seen;
  for (int h : horizons) {
    if (h < 1) throw ConfigError("horizon " + std::to_string(h) + " must be positive");
    if (!allow_any_horizon && h != 1 && h != 4 && h != 8 && h != 12) {
      throw ConfigError("horizon " + std::to_string(h) +
                        " is outside {1, 4, 8, 12}; set models.allow_any_horizon = true to permit it");
    }
    if (!seen.insert(h).second) throw ConfigError("horizon " + std::to_string(h) + " listed twice");
  }
  if (window < 24) throw ConfigError("window.length must be at least 24");
  if (lags < 1) throw ConfigError("window.lags must be at least 1");
  if (n_keep == 0) throw ConfigError("gibbs.keep must be positive");
  if (thin == 0) throw ConfigError("gibbs.thin must be positive");
  if (threads < 0) throw ConfigError("threads must be non-negative");
  if (start && end && *end < *start) throw ConfigError("data.end is before data.start");
  if (moderate_count < 2) throw ConfigError("models.moderate_count must be at least 2");
}

std::vector<ModelSpec> RunConfig::specs() const {
  std::vector<ModelSpec> out;
  for (int h : horizons) {
    out.push_back(ModelSpec::benchmark(h));
    if (ucsv) out.push_back(ModelSpec::ucsv(h));
    for (auto prior : priors) {
      for (auto size : sizes) {
        for (bool with_sv : sv) {
          ModelSpec m;
          m.prior = prior;
          m.hyper = hyper;
          m.size = size;
          m.sv = with_sv;
          m.horizon = h;
          if (m.is_benchmark()) continue;
          out.push_back(m);
        }
      }
    }
  }
  return out;
}

ExperimentSettings RunConfig::settings(const TimeSeriesFrame& frame) const {
  ExperimentSettings s;
  s.target_column = target.empty() ? 0 : frame.column_index(target);
  s.moderate_count = moderate_count;
  s.window = window;
  s.scheme = scheme;
  s.lags = lags;
  s.n_burn = n_burn;
  s.n_keep = n_keep;
  s.thin = thin;
  s.seed = seed;
  s.threads = threads;
  return s;
}

TimeSeriesFrame RunConfig::load_frame() const {
  if (data_path.empty()) throw ConfigError("data.path is not set");
  TimeSeriesFrame frame = read_frame_csv(data_path);
  if (transform) frame = frame.yoy();
  if (!start && !end) return frame;
  std::vector<YearMonth> dates;
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < frame.rows(); ++i) {
    const YearMonth d = frame.dates()[i];
    if ((start && d < *start) || (end && *end < d)) continue;
    dates.push_back(d);
    keep.push_back(static_cast<Eigen::Index>(i));
  }
  if (dates.empty()) throw InsufficientDataError("no observations inside the configured date range");
  Eigen::MatrixXd values(static_cast<Eigen::Index>(keep.size()), frame.values().cols());
  for (std::size_t i = 0; i < keep.size(); ++i) values.row(static_cast<Eigen::Index>(i)) = frame.values().row(keep[i]);
  return TimeSeriesFrame(std::move(dates), frame.names(), std::move(values));
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string section;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError(where + "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (!section.empty()) key = section + "." + key;
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      cfg.set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open configuration '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config(ss.str(), path.string());
  // Relative data paths are taken relative to the configuration file.
  if (!cfg.data_path.empty() && cfg.data_path.is_relative() && path.has_parent_path()) {
    cfg.data_path = path.parent_path() / cfg.data_path;
  }
  return cfg;
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  cfg.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

}  // namespace shrinkcast
