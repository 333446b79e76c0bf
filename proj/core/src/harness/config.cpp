#include "sal/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sal/harness/format.hpp"

namespace sal::harness {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::uniform: return "uniform";
    case Algorithm::sac1: return "sac1";
    case Algorithm::sac2: return "sac2";
  }
  return "unknown";
}

std::string_view to_string(ProblemFamily f) { return f == ProblemFamily::sphere ? "sphere" : "spike"; }

std::string_view to_string(Continuation c) {
  switch (c) {
    case Continuation::extend: return "extend";
    case Continuation::restart: return "restart";
    case Continuation::none: return "none";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "uniform") return Algorithm::uniform;
  if (text == "sac1") return Algorithm::sac1;
  if (text == "sac2") return Algorithm::sac2;
  throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = s.find(',');
    items.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return items;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("key '" + std::string(key) + "': cannot parse '" + std::string(text) + "'");
  }
  return value;
}

Continuation parse_continuation(std::string_view text) {
  if (text == "extend") return Continuation::extend;
  if (text == "restart") return Continuation::restart;
  if (text == "none") return Continuation::none;
  throw ConfigError("key 'continuation': expected extend, restart or none");
}

std::vector<double> parse_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (std::string_view item : split_list(text)) out.push_back(parse_number<double>(key, item));
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dimension < 1) throw ConfigError("dimension must be positive");
  if (x_star && static_cast<int>(x_star->size()) != dimension) {
    throw ConfigError("x_star must have 'dimension' coordinates");
  }
  if (algorithms.empty()) throw ConfigError("algorithm list is empty");
  for (double a : alpha_stars) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha_star values must lie in (0,1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0,1)");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (budget < 1) throw ConfigError("budget must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (sample_size && *sample_size < 1) throw ConfigError("sample_size must be at least 1");
  if (initial_samples && *initial_samples < 1) throw ConfigError("initial_samples must be at least 1");
  if (lambda && !(*lambda >= 0.0 && *lambda <= 1.0)) throw ConfigError("lambda must lie in [0,1]");
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0,1)");
  if (diagnostic_runs < 1) throw ConfigError("diagnostic_runs must be at least 1");
  if (mc_samples < 1) throw ConfigError("mc_samples must be at least 1");
  if (bootstrap < 0) throw ConfigError("bootstrap must be non-negative");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::map<std::string, int, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen[std::string(key)]++ > 0) throw ConfigError("duplicate key '" + std::string(key) + "'");

    if (key == "problem") {
      if (value == "sphere") cfg.problem = ProblemFamily::sphere;
      else if (value == "spike") cfg.problem = ProblemFamily::spike;
      else throw ConfigError("unknown problem '" + std::string(value) + "'");
    } else if (key == "dimension") {
      cfg.dimension = parse_number<int>(key, value);
    } else if (key == "x_star") {
      cfg.x_star = parse_doubles(key, value);
    } else if (key == "x_star_seed") {
      cfg.x_star_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "algorithm") {
      cfg.algorithms.clear();
      for (std::string_view item : split_list(value)) cfg.algorithms.push_back(parse_algorithm(item));
    } else if (key == "alpha_star") {
      cfg.alpha_stars = parse_doubles(key, value);
    } else if (key == "delta") {
      cfg.delta = parse_number<double>(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_number<int>(key, value);
    } else if (key == "budget") {
      cfg.budget = parse_number<std::int64_t>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "workers") {
      cfg.workers = parse_number<int>(key, value);
    } else if (key == "sample_size") {
      cfg.sample_size = parse_number<std::int64_t>(key, value);
    } else if (key == "initial_samples") {
      cfg.initial_samples = parse_number<std::int64_t>(key, value);
    } else if (key == "lambda") {
      cfg.lambda = parse_number<double>(key, value);
    } else if (key == "eta") {
      cfg.eta = parse_number<double>(key, value);
    } else if (key == "continuation") {
      cfg.continuation = parse_continuation(value);
    } else if (key == "diagnostic_runs") {
      cfg.diagnostic_runs = parse_number<int>(key, value);
    } else if (key == "mc_samples") {
      cfg.mc_samples = parse_number<std::int64_t>(key, value);
    } else if (key == "bootstrap") {
      cfg.bootstrap = parse_number<int>(key, value);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto list = [&](const auto& items, auto&& fmt) {
    for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << fmt(items[i]);
  };
  out << "problem = " << to_string(cfg.problem) << '\n';
  out << "dimension = " << cfg.dimension << '\n';
  if (cfg.x_star) {
    out << "x_star = ";
    list(*cfg.x_star, format_double);
    out << '\n';
  }
  out << "x_star_seed = " << cfg.x_star_seed << '\n';
  out << "algorithm = ";
  list(cfg.algorithms, [](Algorithm a) { return to_string(a); });
  out << '\n';
  if (!cfg.alpha_stars.empty()) {
    out << "alpha_star = ";
    list(cfg.alpha_stars, format_double);
    out << '\n';
  }
  out << "delta = " << format_double(cfg.delta) << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "budget = " << cfg.budget << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "output = " << cfg.output << '\n';
  out << "workers = " << cfg.workers << '\n';
  if (cfg.sample_size) out << "sample_size = " << *cfg.sample_size << '\n';
  if (cfg.initial_samples) out << "initial_samples = " << *cfg.initial_samples << '\n';
  if (cfg.lambda) out << "lambda = " << format_double(*cfg.lambda) << '\n';
  out << "eta = " << format_double(cfg.eta) << '\n';
  out << "continuation = " << to_string(cfg.continuation) << '\n';
  out << "diagnostic_runs = " << cfg.diagnostic_runs << '\n';
  out << "mc_samples = " << cfg.mc_samples << '\n';
  out << "bootstrap = " << cfg.bootstrap << '\n';
  return out.str();
}

SublevelMeasure ProblemInstance::sublevel_measure(double alpha, std::size_t mc_samples) const {
  if (sphere) return sublevel_measure_sphere(*sphere, alpha, mc_samples);
  // Below 1/20 the Spike sublevel set is the ball of radius sqrt(n) * alpha.
  const int n = static_cast<int>(x_star.size());
  const double r = std::sqrt(static_cast<double>(n)) * alpha;
  const bool inside = alpha < 0.05 && (x_star.array() - r >= -0.5).all() && (x_star.array() + r <= 0.5).all();
  if (inside) return {ball_volume(n, r), 0.0, false};
  Rng rng(0x5eedULL);
  const McEstimate est = mc_volume(sublevel_region(alpha), mc_samples, rng);
  return {est.value, est.std_error, true};
}

RegionPredicate ProblemInstance::sublevel_region(double alpha) const {
  return sphere ? sphere->sublevel_region(alpha) : spike->sublevel_region(alpha);
}

ProblemInstance make_problem(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n = cfg.dimension;
  const Box box = cfg.problem == ProblemFamily::sphere ? Box::unit(n) : Box::centered(n);
  Point x_star(n);
  if (cfg.x_star) {
    for (int i = 0; i < n; ++i) x_star[i] = (*cfg.x_star)[static_cast<std::size_t>(i)];
    if (!box.contains(x_star)) throw ConfigError("x_star lies outside the problem box");
  } else {
    Rng rng(cfg.x_star_seed);
    x_star = sample_uniform(box, rng);
  }
  if (cfg.problem == ProblemFamily::sphere) {
    SphereProblem p(x_star);
    return {cfg.problem, x_star, p, std::nullopt, p.spec()};
  }
  SpikeProblem p(x_star);
  return {cfg.problem, x_star, std::nullopt, p, p.spec()};
}

SacConfig schedule_for(const ExperimentConfig& cfg, Algorithm algorithm, double alpha_star) {
  if (algorithm == Algorithm::uniform) throw ConfigError("uniform search has no SAC schedule");
  SacConfig sc = default_schedule(alpha_star, cfg.dimension,
                                  algorithm == Algorithm::sac1 ? ScheduleMode::sac1 : ScheduleMode::sac2);
  sc.delta = cfg.delta;
  if (cfg.eta != sc.eta) {
    sc.eta = cfg.eta;
    const double target = algorithm == Algorithm::sac1 ? std::ldexp(1.0, -sc.iterations) : 0.5;
    std::fill(sc.samples.begin(), sc.samples.end(), required_sample_size(target, cfg.dimension + 1, sc.eta));
  }
  if (cfg.sample_size) std::fill(sc.samples.begin() + 1, sc.samples.end(), *cfg.sample_size);
  if (cfg.initial_samples) sc.samples.front() = *cfg.initial_samples;
  if (cfg.lambda) sc.lambda = *cfg.lambda;
  sc.validate();
  return sc;
}

}  // namespace sal::harness
