#include "sal/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sal/harness/format.hpp"
#include "sal/theory.hpp"

namespace sal::harness {

namespace {

std::string opt_int(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }
std::string opt_double(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Median with censored trials ranked above every hit; absent if it lands on one.
std::optional<double> median_first_hit(const PAAEstimate& e) {
  if (e.outcomes.empty()) return std::nullopt;
  std::vector<double> v;
  for (const TrialOutcome& o : e.outcomes) {
    v.push_back(o.first_hit ? static_cast<double>(*o.first_hit) : std::numeric_limits<double>::infinity());
  }
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const double m = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  if (std::isinf(m)) return std::nullopt;
  return m;
}

const PAAEstimate* find(std::span<const PAAEstimate> es, Algorithm a, double alpha) {
  for (const PAAEstimate& e : es) {
    if (e.algorithm == a && e.alpha_star == alpha) return &e;
  }
  return nullptr;
}

}  // namespace

std::string trials_csv(std::span<const PAAEstimate> estimates) {
  std::ostringstream out;
  out << "algorithm,alpha_star,trial,seed,first_hit,censored\n";
  for (const PAAEstimate& e : estimates) {
    for (const TrialOutcome& o : e.outcomes) {
      out << to_string(e.algorithm) << ',' << format_double(e.alpha_star) << ',' << o.trial << ',' << o.seed << ','
          << opt_int(o.first_hit) << ',' << (o.censored() ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string estimates_csv(std::span<const PAAEstimate> estimates, std::span<const SlopeReport> slopes) {
  std::ostringstream out;
  out << "record,algorithm,alpha_star,delta,trials,budget,quantile,valid,hit_fraction,censored,small_sample,"
         "theory_reference,target_measure,slope,intercept,ci_low,ci_high,bootstrap_used,gaps\n";
  for (const PAAEstimate& e : estimates) {
    out << "estimate," << to_string(e.algorithm) << ',' << format_double(e.alpha_star) << ','
        << format_double(e.delta) << ',' << e.trials() << ',' << e.budget << ',' << opt_int(e.quantile) << ','
        << (e.valid() ? 1 : 0) << ',' << format_double(e.hit_fraction) << ',' << e.censored << ','
        << (e.small_sample() ? 1 : 0) << ',' << opt_int(e.theory_reference) << ','
        << format_double(e.target_measure) << ",,,,,,\n";
  }
  for (const SlopeReport& s : slopes) {
    std::string gaps;
    for (std::size_t i = 0; i < s.gaps.size(); ++i) gaps += (i ? ";" : "") + format_double(s.gaps[i]);
    out << "slope," << to_string(s.algorithm) << ",,,,,,," << ",,,,,"
        << (s.fit ? format_double(s.fit->slope) : "") << ',' << (s.fit ? format_double(s.fit->intercept) : "")
        << ',' << opt_double(s.ci_low) << ',' << opt_double(s.ci_high) << ',' << s.bootstrap_used << ',' << gaps
        << '\n';
  }
  return out.str();
}

std::optional<double> paired_median_speedup(const PAAEstimate& baseline, const PAAEstimate& contender) {
  if (baseline.outcomes.size() != contender.outcomes.size()) {
    throw ConfigError("paired comparison needs equal trial counts");
  }
  for (std::size_t i = 0; i < baseline.outcomes.size(); ++i) {
    if (baseline.outcomes[i].seed != contender.outcomes[i].seed) {
      throw ConfigError("paired comparison needs identical per-trial seeds");
    }
  }
  const auto mb = median_first_hit(baseline);
  const auto mc = median_first_hit(contender);
  if (!mb || !mc) return std::nullopt;
  return *mb / *mc;
}

std::string summary_text(const ExperimentConfig& cfg, std::span<const PAAEstimate> estimates,
                         std::span<const SlopeReport> slopes) {
  std::ostringstream out;
  out << "problem " << to_string(cfg.problem) << ", n = " << cfg.dimension << ", delta = " << format_double(cfg.delta)
      << ", R = " << cfg.trials << ", budget = " << cfg.budget << ", seed = " << cfg.seed
      << ", continuation = " << to_string(cfg.continuation) << '\n';
  out << "quantile = ceil((1 - delta) R)-th order statistic of first-hit counts; censored trials rank last\n";
  if (static_cast<double>(cfg.trials) * cfg.delta < 1.0) {
    out << "note: R < 1/delta, so the quantile is the sample maximum and biased upward\n";
  }
  out << '\n';
  for (const PAAEstimate& e : estimates) {
    out << to_string(e.algorithm) << " alpha* = " << format_double(e.alpha_star) << ": quantile ";
    out << (e.quantile ? std::to_string(*e.quantile) : std::string("unattainable"));
    out << ", hits " << format_double(e.hit_fraction) << ", censored " << e.censored;
    if (e.theory_reference) {
      out << ", geometric reference " << *e.theory_reference;
      if (e.quantile) {
        out << " (ratio " << format_double(static_cast<double>(*e.quantile) / static_cast<double>(*e.theory_reference))
            << ')';
      }
    }
    out << '\n';
  }
  if (!slopes.empty()) out << '\n';
  for (const SlopeReport& s : slopes) {
    out << to_string(s.algorithm) << " slope ";
    if (s.fit) {
      out << format_double(s.fit->slope);
      if (s.ci_low && s.ci_high) out << " [" << format_double(*s.ci_low) << ", " << format_double(*s.ci_high) << ']';
    } else {
      out << "unavailable";
    }
    if (!s.gaps.empty()) out << ", gaps at " << s.gaps.size() << " alpha* values";
    out << '\n';
  }

  if (!cfg.alpha_stars.empty()) {
    const double smallest = *std::min_element(cfg.alpha_stars.begin(), cfg.alpha_stars.end());
    const PAAEstimate* u = find(estimates, Algorithm::uniform, smallest);
    for (Algorithm a : {Algorithm::sac1, Algorithm::sac2}) {
      const PAAEstimate* s = find(estimates, a, smallest);
      if (!u || !s) continue;
      out << "\nspeedup uniform/" << to_string(a) << " at alpha* = " << format_double(smallest) << ": quantile ratio ";
      out << (u->quantile && s->quantile
                  ? format_double(static_cast<double>(*u->quantile) / static_cast<double>(*s->quantile))
                  : std::string("n/a"));
      const auto m = paired_median_speedup(*u, *s);
      out << ", paired median ratio " << (m ? format_double(*m) : std::string("n/a")) << '\n';
    }
  }
  return out.str();
}

std::string conditions_csv(std::span<const ConditionRow> rows) {
  std::ostringstream out;
  out << "algorithm,alpha_star,run,t,alpha_t,has_hypothesis,radius,training_error,positives,training_size,"
         "fallbacks,independence_lhs,independence_rhs,independence_z,one_side_violation,one_side_se,one_side_ok,"
         "h_measure,h_se,alpha_t_measure,alpha_t_se,measure_ok\n";
  for (const ConditionRow& r : rows) {
    out << to_string(r.algorithm) << ',' << format_double(r.alpha_star) << ',' << r.run << ',' << r.t << ','
        << format_double(r.alpha_t) << ',' << (r.has_hypothesis ? 1 : 0) << ',' << format_double(r.radius) << ','
        << format_double(r.training_error) << ',' << r.positives << ',' << r.training_size << ',' << r.fallbacks
        << ',' << format_double(r.independence_lhs) << ',' << format_double(r.independence_rhs) << ','
        << format_double(r.independence_z) << ',' << format_double(r.one_side_violation) << ','
        << format_double(r.one_side_se) << ',' << (r.one_side_ok() ? 1 : 0) << ',' << format_double(r.h_measure)
        << ',' << format_double(r.h_se) << ',' << format_double(r.alpha_t_measure) << ','
        << format_double(r.alpha_t_se) << ',' << (r.measure_ok() ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string theory_csv(const ExperimentConfig& cfg) {
  const ProblemInstance problem = make_problem(cfg);
  const auto mc = static_cast<std::size_t>(cfg.mc_samples);
  std::ostringstream out;
  out << "algorithm,alpha_star,target_measure,target_approximate,iterations,lambda,m0,m_t,total_samples,"
         "vc_bound_m_t,uniform_asymptotic,uniform_exact_quantile,theorem1_ideal,theorem1_status\n";
  for (Algorithm a : cfg.algorithms) {
    for (double alpha : cfg.alpha_stars) {
      const SublevelMeasure target = problem.sublevel_measure(alpha, mc);
      const double pr_u = std::min(1.0, target.value);
      const theory::UniformComplexity uc = theory::uniform_paa_complexity(pr_u, cfg.delta);
      theory::BoundInputs in;
      in.pr_uniform = pr_u;
      in.delta = cfg.delta;
      in.eta = cfg.eta;
      in.vc_dim = cfg.dimension + 1;
      out << to_string(a) << ',' << format_double(alpha) << ',' << format_double(target.value) << ','
          << (target.approximate ? 1 : 0) << ',';
      if (a == Algorithm::uniform) {
        out << "0,0,,,,,";
      } else {
        // Error-free limit: every T_h draw succeeds with probability |D*| / |D_alpha_t|.
        const SacConfig sc = schedule_for(cfg, a, alpha);
        in.lambda = sc.lambda;
        in.initial_samples = sc.samples.front();
        double weighted = 0.0;
        for (int t = 1; t <= sc.iterations; ++t) {
          theory::IterationRecord r;
          r.samples = sc.samples[static_cast<std::size_t>(t)];
          r.sublevel_measure = problem.sublevel_measure(sc.thresholds[static_cast<std::size_t>(t) - 1], mc).value;
          weighted += static_cast<double>(r.samples) * std::min(1.0, target.value / r.sublevel_measure);
          in.iterations.push_back(r);
        }
        const std::int64_t rest = sc.total_samples() - sc.samples.front();
        in.pr_hypothesis = rest > 0 ? weighted / static_cast<double>(rest) : 0.0;
        const std::int64_t m_t = sc.samples.size() > 1 ? sc.samples[1] : sc.samples.front();
        out << sc.iterations << ',' << format_double(sc.lambda) << ',' << sc.samples.front() << ',' << m_t << ','
            << sc.total_samples() << ',';
        out << (m_t >= in.vc_dim ? format_double(theory::vc_bound(m_t, in.vc_dim, cfg.eta, 0.0)) : std::string())
            << ',';
      }
      out << format_double(uc.asymptotic) << ',' << uc.exact_quantile << ',';
      const theory::BoundValue t1 = theory::theorem1_bound(in);
      out << format_double(t1.value) << ',' << (t1.ok() ? "ok" : "infinite") << '\n';
    }
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path,
                                                    std::make_error_code(std::errc::io_error));
  out << text;
  if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

void emit_report(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                 std::span<const PAAEstimate> estimates, std::span<const SlopeReport> slopes) {
  std::filesystem::create_directories(dir);
  write_text(dir / kTrialsFile, trials_csv(estimates));
  write_text(dir / kEstimatesFile, estimates_csv(estimates, slopes));
  write_text(dir / kSummaryFile, summary_text(cfg, estimates, slopes));
}

std::vector<EstimateRecord> parse_estimates_csv(const std::string& text) {
  std::vector<EstimateRecord> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const std::vector<std::string> c = split_csv_line(line);
    if (c.empty() || c[0] != "estimate") continue;
    if (c.size() < 10) throw ConfigError("malformed estimate row: " + line);
    EstimateRecord r;
    r.algorithm = parse_algorithm(c[1]);
    r.alpha_star = std::stod(c[2]);
    if (!c[6].empty()) r.quantile = std::stoll(c[6]);
    r.hit_fraction = std::stod(c[8]);
    r.censored = std::stoi(c[9]);
    out.push_back(r);
  }
  return out;
}

}  // namespace sal::harness
