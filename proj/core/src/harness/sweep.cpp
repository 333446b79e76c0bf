#include "sal/harness/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "sal/harness/seeds.hpp"

namespace sal::harness {

std::optional<LinearFit> least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return std::nullopt;
  const double slope = sxy / sxx;
  return LinearFit{slope, my - slope * mx};
}

namespace {

std::optional<LinearFit> fit_points(std::span<const double> alphas, std::span<const std::int64_t> quantiles) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    x.push_back(std::log(1.0 / alphas[i]));
    y.push_back(std::log(static_cast<double>(quantiles[i])));
  }
  return least_squares(x, y);
}

double percentile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

SlopeReport slope_report(std::span<const PAAEstimate> estimates, int bootstrap, std::uint64_t seed) {
  SlopeReport rep;
  if (estimates.empty()) return rep;
  rep.algorithm = estimates.front().algorithm;
  std::vector<const PAAEstimate*> used;
  std::vector<std::int64_t> quantiles;
  for (const PAAEstimate& e : estimates) {
    if (e.valid()) {
      used.push_back(&e);
      rep.alphas_used.push_back(e.alpha_star);
      quantiles.push_back(*e.quantile);
    } else {
      rep.gaps.push_back(e.alpha_star);
    }
  }
  rep.fit = fit_points(rep.alphas_used, quantiles);
  if (!rep.fit || bootstrap < 1) return rep;

  std::vector<double> slopes;
  std::vector<TrialOutcome> resample;
  for (int b = 0; b < bootstrap; ++b) {
    Rng rng(trial_seed(seed, 0xb0075ULL + static_cast<std::uint64_t>(rep.algorithm), static_cast<std::uint64_t>(b)));
    std::vector<std::int64_t> q;
    for (const PAAEstimate* e : used) {
      std::uniform_int_distribution<std::size_t> pick(0, e->outcomes.size() - 1);
      resample.clear();
      for (std::size_t i = 0; i < e->outcomes.size(); ++i) resample.push_back(e->outcomes[pick(rng)]);
      const auto v = paa_quantile(resample, e->delta);
      if (!v) break;
      q.push_back(*v);
    }
    if (q.size() != used.size()) continue;
    if (const auto f = fit_points(rep.alphas_used, q)) slopes.push_back(f->slope);
  }
  rep.bootstrap_used = static_cast<int>(slopes.size());
  if (!slopes.empty()) {
    std::sort(slopes.begin(), slopes.end());
    rep.ci_low = percentile(slopes, 0.025);
    rep.ci_high = percentile(slopes, 0.975);
  }
  return rep;
}

SweepResult scaling_sweep(const ExperimentConfig& cfg) {
  SweepResult out;
  out.estimates = estimate_paa(cfg);
  const std::size_t per = cfg.alpha_stars.size();
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    const std::span<const PAAEstimate> group(out.estimates.data() + a * per, per);
    SlopeReport rep = slope_report(group, cfg.bootstrap, cfg.seed);
    rep.algorithm = cfg.algorithms[a];
    out.slopes.push_back(std::move(rep));
  }
  return out;
}

}  // namespace sal::harness
