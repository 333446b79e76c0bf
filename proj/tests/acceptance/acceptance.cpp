// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 3   run one (repeatable)
//
// Exit status is non-zero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oracles.hpp"
#include "sal/geometry.hpp"
#include "sal/harness/conditions.hpp"
#include "sal/harness/format.hpp"
#include "sal/harness/paa.hpp"
#include "sal/harness/report.hpp"
#include "sal/harness/seeds.hpp"
#include "sal/harness/sweep.hpp"
#include "sal/learners.hpp"
#include "sal/theory.hpp"

using namespace sal;
using namespace sal::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// 1. Ball volume against Monte Carlo, enclosing ball against brute force.
Outcome geometry_oracles() {
  Outcome out;
  Rng rng(101);
  for (int n : {1, 2, 3, 5}) {
    const double r = 0.45;
    const McEstimate est =
        mc_volume(RegionPredicate::of_ball({Point::Constant(n, 0.5), r}, Box::unit(n)), 100000, rng);
    const double z = std::abs(est.value - ball_volume(n, r)) / est.std_error;
    out.require(z <= 3.0, "n=" + std::to_string(n) + " volume within " + fmt(z) + " standard errors");
  }
  std::uniform_int_distribution<int> count(1, 6);
  double worst = 0.0;
  int instances = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 2000; ++i, ++instances) {
      std::vector<Point> pts;
      std::vector<oracle::Vec> ref;
      for (int k = count(rng); k > 0; --k) {
        pts.push_back(sample_uniform(Box::unit(n), rng));
        ref.emplace_back(pts.back().data(), pts.back().data() + n);
      }
      worst = std::max(worst, std::abs(min_enclosing_ball(pts).radius - oracle::brute_force_meb(ref).radius));
    }
  }
  out.require(worst <= 1e-9, std::to_string(instances) + " enclosing-ball instances, worst radius gap " + fmt(worst));
  return out;
}

// 2. Uniform search on a known geometric law.
Outcome uniform_calibration() {
  Outcome out;
  ExperimentConfig c = parse_config(
      "problem = sphere\ndimension = 1\nx_star = 0.5\nalgorithm = uniform\nalpha_star = 0.04\n"
      "delta = 0.1\ntrials = 2000\nbudget = 10000000\nseed = 2\n");
  const PAAEstimate e = estimate_paa(c).front();
  const auto exact = theory::uniform_paa_complexity(0.4, 0.1).exact_quantile;
  out.require(e.quantile.has_value(), "quantile attainable");
  if (e.quantile) {
    const double rel = std::abs(static_cast<double>(*e.quantile) - static_cast<double>(exact)) / exact;
    out.require(rel <= 0.2, "empirical " + std::to_string(*e.quantile) + " vs exact " + std::to_string(exact) +
                                " (relative gap " + fmt(rel) + ")");
  }
  return out;
}

const SlopeReport* slope_of(const SweepResult& r, Algorithm a) {
  for (const SlopeReport& s : r.slopes) {
    if (s.algorithm == a) return &s;
  }
  return nullptr;
}

std::string describe(const SlopeReport& s) {
  if (!s.fit) return "no fit";
  return fmt(s.fit->slope) + " [" + (s.ci_low ? fmt(*s.ci_low) : "?") + ", " + (s.ci_high ? fmt(*s.ci_high) : "?") +
         "]";
}

// 3. Log-log slopes of the PAA quantile against 1/alpha*.
Outcome scaling_exponents() {
  Outcome out;
  const ExperimentConfig c = parse_config(
      "problem = sphere\ndimension = 2\nx_star = 0.5, 0.5\nalgorithm = uniform, sac1, sac2\n"
      "alpha_star = 0.0625, 0.015625, 0.00390625, 0.0009765625\ndelta = 0.1\ntrials = 1000\n"
      "budget = 10000000\nseed = 3\nbootstrap = 200\n");
  const SweepResult r = scaling_sweep(c);
  for (const PAAEstimate& e : r.estimates) {
    out.notes.push_back(std::string(to_string(e.algorithm)) + " alpha*=" + format_double(e.alpha_star) +
                        " quantile " + (e.quantile ? std::to_string(*e.quantile) : "unattainable"));
  }
  const SlopeReport* u = slope_of(r, Algorithm::uniform);
  const SlopeReport* s1 = slope_of(r, Algorithm::sac1);
  const SlopeReport* s2 = slope_of(r, Algorithm::sac2);
  out.require(u->fit && std::abs(u->fit->slope - 1.0) <= 0.15, "uniform slope " + describe(*u) + " within 1.0 +- 0.15");
  out.require(s1->fit && s1->fit->slope <= 0.7, "sac1 slope " + describe(*s1) + " <= 0.7");
  out.require(s1->ci_high && u->ci_low && *s1->ci_high < *u->ci_low, "sac1 interval strictly below uniform interval");
  out.require(s2->fit && s2->fit->slope <= 0.15, "sac2 slope " + describe(*s2) + " <= 0.15");
  return out;
}

// 4. Paired median first hit on Spike.
Outcome spike_speedup() {
  Outcome out;
  const ExperimentConfig c = parse_config(
      "problem = spike\ndimension = 2\nx_star = 0, 0\nalgorithm = uniform, sac1\nalpha_star = 0.00390625\n"
      "delta = 0.1\ntrials = 200\nbudget = 10000000\nseed = 4\n");
  const std::vector<PAAEstimate> es = estimate_paa(c);
  const auto ratio = paired_median_speedup(es[0], es[1]);
  out.require(ratio.has_value(), "both medians uncensored");
  if (ratio) out.require(*ratio >= 2.0, "median(uniform) / median(sac1) = " + fmt(*ratio) + " >= 2");
  return out;
}

// 5. Empirical quantile of completion-mode sac1 runs below the query bound.
Outcome theorem1_sandwich() {
  Outcome out;
  constexpr int kBatches = 20;
  constexpr int kTrials = 100;
  constexpr double kAlpha = 0.00390625;
  ExperimentConfig c;
  c.x_star = std::vector<double>{0.5, 0.5};
  c.seed = 5;
  const ProblemInstance p = make_problem(c);
  const SacConfig sc = schedule_for(c, Algorithm::sac1, kAlpha);
  const RegionPredicate target = p.sublevel_region(kAlpha);
  const double pr_u = p.sublevel_measure(kAlpha).value;
  int held = 0;
  double worst_ratio = 0.0;
  for (int b = 0; b < kBatches; ++b) {
    std::vector<TrialOutcome> trials;
    double pr_h = 0.0;
    for (int t = 0; t < kTrials; ++t) {
      const std::uint64_t seed = trial_seed(c.seed, static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(t));
      Rng rng(seed);
      const RunResult run = run_sac(p.spec, sc, rng, false);
      TrialOutcome o;
      o.trial = t;
      o.seed = seed;
      o.first_hit = run.first_hit;
      trials.push_back(o);
      Rng mc(splitmix64(seed));
      pr_h += hypothesis_success_rate(run, target, p.spec.box(), 2000, mc);
    }
    theory::BoundInputs in;
    in.pr_uniform = pr_u;
    in.pr_hypothesis = pr_h / kTrials;
    in.lambda = sc.lambda;
    in.delta = c.delta;
    in.initial_samples = sc.samples.front();
    for (int t = 1; t <= sc.iterations; ++t) {
      in.iterations.push_back({sc.samples[static_cast<std::size_t>(t)], 0.0, 0.0, 0.0, 0.0});
    }
    const double bound = theory::theorem1_bound(in).value;
    const auto q = paa_quantile(trials, c.delta);
    const bool ok = q && static_cast<double>(*q) <= bound;
    held += ok;
    if (q) worst_ratio = std::max(worst_ratio, static_cast<double>(*q) / bound);
  }
  out.require(held >= 19, std::to_string(held) + " of " + std::to_string(kBatches) +
                              " batches below the bound (largest quantile/bound " + fmt(worst_ratio) + ")");
  return out;
}

// 6. One-side error and the measure inequality for sac2.
Outcome condition_enforcement() {
  Outcome out;
  const ExperimentConfig c = parse_config(
      "problem = sphere\ndimension = 2\nx_star = 0.5, 0.5\nalgorithm = sac2\n"
      "alpha_star = 0.0625, 0.015625, 0.00390625, 0.0009765625\ndiagnostic_runs = 10\nseed = 6\n"
      "mc_samples = 100000\n");
  const std::vector<ConditionRow> rows = condition_report(c);
  int one_side = 0, measure = 0;
  double worst_z = 0.0;
  for (const ConditionRow& r : rows) {
    one_side += !r.one_side_ok();
    measure += !r.measure_ok();
    if (r.one_side_se > 0.0) worst_z = std::max(worst_z, r.one_side_violation / r.one_side_se);
  }
  out.require(one_side == 0, std::to_string(one_side) + " of " + std::to_string(rows.size()) +
                                 " iterations with one-side violation beyond 3 sigma (largest " + fmt(worst_z) +
                                 " sigma)");
  out.require(measure == 0, std::to_string(measure) + " iterations where |D_h| exceeds |D_alpha_t| by 3 sigma");
  return out;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 7. Byte-identical CSVs from repeated CLI invocations.
Outcome determinism() {
  Outcome out;
  const auto root = std::filesystem::temp_directory_path() / "sal_acceptance_determinism";
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);
  const auto cfg = root / "exp.cfg";
  std::ofstream(cfg) << "problem = sphere\ndimension = 2\nx_star = 0.5, 0.5\nalgorithm = uniform, sac1, sac2\n"
                        "alpha_star = 0.015625, 0.00390625\ntrials = 100\ndiagnostic_runs = 2\n"
                        "mc_samples = 20000\nbootstrap = 50\n";
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"run", {kTrialsFile, kEstimatesFile}},
      {"sweep", {kTrialsFile, kEstimatesFile}},
      {"conditions", {kConditionsFile}},
      {"theory", {kTheoryFile}},
  };
  for (const auto& [cmd, files] : commands) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = root / (cmd + std::to_string(rep));
      const std::string line = std::string(SALOPT_EXE) + " " + cmd + " --config " + cfg.string() +
                               " --seed 77 --workers " + std::to_string(rep + 1) + " --out " + dir.string() +
                               " > /dev/null";
      out.require(std::system(line.c_str()) == 0, cmd + " run " + std::to_string(rep) + " exits 0");
    }
    for (const std::string& f : files) {
      const std::string a = read_all(root / (cmd + "0") / f);
      const std::string b = read_all(root / (cmd + "1") / f);
      out.require(!a.empty() && a == b, cmd + " " + f + " identical (" + std::to_string(a.size()) + " bytes)");
    }
  }
  std::filesystem::remove_all(root);
  return out;
}

// 8. Bound calculators: monotonicity grids and independently computed values.
Outcome bound_calculators() {
  Outcome out;
  std::ifstream in(SAL_SPOT_VALUES);
  const nlohmann::json spot = nlohmann::json::parse(in);
  const std::string check = "python3 " + std::string(SAL_ORACLE_SCRIPT) + " --check > /dev/null";
  out.require(std::system(check.c_str()) == 0, "oracle script reproduces the frozen values");

  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  out.require(near(theory::vc_bound(10000, 3, 0.5, 0.0), spot["vc_zero_d3_m10000_eta0.5"]), "vc_bound zero-error value");
  out.require(near(theory::vc_bound(1000, 3, 0.5, 0.1), spot["vc_general_d3_m1000_eta0.5_err0.1"]),
              "vc_bound general value");
  out.require(near(theory::psi(0.1, 3, 1000, 0.5, 0.5).value, spot["psi_d3_m1000_eta0.5_err0.1_kl0.5"]), "psi value");
  theory::IterationRecord rec{100, 0.1, 0.0, 0.0, 0.0};
  out.require(near(theory::theorem4_from_psi(std::span(&rec, 1), std::vector<double>{0.001}, 0.5, 0.01).value,
                   spot["theorem4_single_iteration"]),
              "theorem4 value");
  out.require(near(theory::lemma2_lower_bound(0.02, 0.1, 0.08).value, spot["lemma2_0.02_0.1_0.08"]), "lemma2 value");

  bool vc_mono = true;
  for (int d : {1, 2, 3, 8, 32}) {
    for (double err : {0.0, 0.1}) {
      double prev = 1e300;
      for (std::int64_t m = d; m <= 1000000; m = m * 3 / 2 + 1) {
        const double v = err == 0.0 ? theory::vc_bound_zero_error(m, d, 0.5) : theory::vc_bound_general(m, d, 0.5, err);
        vc_mono = vc_mono && v < prev;
        prev = v;
      }
    }
  }
  out.require(vc_mono, "vc_bound strictly decreasing in m");

  bool psi_mono = true;
  for (double e : {0.0, 0.1, 0.3}) {
    for (int d : {2, 4, 8}) {
      for (std::int64_t m : {100, 1000, 10000}) {
        for (double eta : {0.1, 0.5}) {
          for (double kl : {0.0, 0.3, 1.0}) {
            const double v = theory::psi(e, d, m, eta, kl).value;
            psi_mono = psi_mono && theory::psi(e + 0.05, d, m, eta, kl).value > v &&
                       theory::psi(e, d + 1, m, eta, kl).value > v && theory::psi(e, d, m, eta, kl + 0.1).value > v &&
                       theory::psi(e, d, m * 2, eta, kl).value < v && theory::psi(e, d, m, eta + 0.1, kl).value < v;
          }
        }
      }
    }
  }
  out.require(psi_mono, "psi increasing in error, d, KL and decreasing in m, eta");

  bool t4_mono = true;
  for (double p : {0.0, 0.001, 0.003}) {
    for (double kl : {0.0, 0.05, 0.2}) {
      theory::IterationRecord r{500, 0.1, 0.0, 0.0, kl};
      theory::IterationRecord r2{500, 0.1, 0.0, 0.0, kl + 0.05};
      const double v = theory::theorem4_from_psi(std::span(&r, 1), std::vector<double>{p}, 0.5, 0.02).value;
      t4_mono = t4_mono &&
                theory::theorem4_from_psi(std::span(&r, 1), std::vector<double>{p + 0.001}, 0.5, 0.02).value < v &&
                theory::theorem4_from_psi(std::span(&r2, 1), std::vector<double>{p}, 0.5, 0.02).value < v;
    }
  }
  out.require(t4_mono, "theorem4 decreasing in Psi and sampler KL");

  bool l2_mono = true;
  for (double cap : {0.01, 0.05}) {
    for (double h : {0.1, 0.3}) {
      for (double kl : {0.0, 0.1}) {
        const double v = theory::lemma2_lower_bound(cap, h, kl).value;
        l2_mono = l2_mono && theory::lemma2_lower_bound(cap, h * 2, kl).value < v &&
                  theory::lemma2_lower_bound(cap, h, kl + 0.1).value < v;
      }
    }
  }
  out.require(l2_mono, "lemma2 decreasing in |D_h| and KL");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 when no limit is stated
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--criterion", only, "criterion number (repeatable)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "geometry oracle equivalence", 60, geometry_oracles},
      {2, "uniform-search calibration", 60, uniform_calibration},
      {3, "scaling exponents on Sphere n=2", 600, scaling_exponents},
      {4, "Spike n=2 sac1 speedup at alpha*=2^-8", 300, spike_speedup},
      {5, "query bound sandwich", 300, theorem1_sandwich},
      {6, "condition enforcement for sac2", 0, condition_enforcement},
      {7, "determinism of harness subcommands", 0, determinism},
      {8, "bound calculators", 0, bound_calculators},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    if (c.time_limit_s > 0) o.require(secs < c.time_limit_s, "runtime " + fmt(secs) + " s < " + fmt(c.time_limit_s) + " s");
    for (const std::string& n : o.notes) std::cout << "    " << n << '\n';
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << fmt(secs) << " s)\n"
              << std::flush;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
