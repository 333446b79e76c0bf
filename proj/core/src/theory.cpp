#include "sal/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sal/types.hpp"

namespace sal::theory {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double capacity_term(std::int64_t m, int d) {
  const double dd = d;
  return dd * std::log(2.0 * std::numbers::e * static_cast<double>(m) / dd);
}

void check_vc_args(std::int64_t m, int d, double eta) {
  if (d < 1 || m < d) throw DomainError("VC bound needs m >= d >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("VC bound needs eta in (0,1)");
}

}  // namespace

BoundValue theorem1_bound(const BoundInputs& in) {
  const double rate = (1.0 - in.lambda) * in.pr_uniform + in.lambda * in.pr_hypothesis;
  std::int64_t sum_m = 0;
  for (const IterationRecord& r : in.iterations) sum_m += r.samples;
  if (!(rate > 0.0)) return {kInf, BoundStatus::infinite, false};
  const double boost = std::log(1.0 / in.delta) / rate;
  return {static_cast<double>(in.initial_samples) + std::max(boost, static_cast<double>(sum_m)), BoundStatus::ok,
          false};
}

double vc_bound_general(std::int64_t m, int d, double eta, double train_err) {
  check_vc_args(m, d, eta);
  return train_err + std::sqrt(8.0 / static_cast<double>(m) * (capacity_term(m, d) + std::log(4.0 / eta)));
}

double vc_bound_zero_error(std::int64_t m, int d, double eta) {
  check_vc_args(m, d, eta);
  return 2.0 / static_cast<double>(m) * (capacity_term(m, d) + std::log(2.0 / eta));
}

double vc_bound(std::int64_t m, int d, double eta, double train_err) {
  if (!(train_err >= 0.0 && train_err <= 1.0)) throw DomainError("training error must lie in [0,1]");
  const double raw = train_err == 0.0 ? vc_bound_zero_error(m, d, eta) : vc_bound_general(m, d, eta, train_err);
  return std::min(1.0, raw);
}

BoundValue psi(double train_err, int d, std::int64_t m, double eta, double kl_sampling) {
  if (kl_sampling < 0.0) throw DomainError("KL divergence must be non-negative");
  if (kl_sampling >= 2.0) return {kInf, BoundStatus::undefined, false};
  const double numerator = vc_bound_general(m, d, eta, train_err);
  return {numerator / (1.0 - std::sqrt(kl_sampling / 2.0)), BoundStatus::ok, false};
}

BoundValue theorem4_from_psi(std::span<const IterationRecord> iterations, std::span<const double> psi_values,
                             double eta, double target_measure) {
  if (iterations.size() != psi_values.size() || iterations.empty()) {
    throw DomainError("theorem 4 bound needs one Psi per iteration");
  }
  double weighted = 0.0;
  double total_m = 0.0;
  for (std::size_t t = 0; t < iterations.size(); ++t) {
    const IterationRecord& r = iterations[t];
    const double p = psi_values[t];
    const double term = (target_measure - 2.0 * p) / (r.sublevel_measure + p) -
                        target_measure * std::sqrt(r.kl_sampler / 2.0);
    weighted += static_cast<double>(r.samples) * term;
    total_m += static_cast<double>(r.samples);
  }
  const double raw = (1.0 - eta) / total_m * weighted;
  const double clamped = std::clamp(raw, 0.0, 1.0);
  return {clamped, BoundStatus::ok, clamped != raw};
}

BoundValue theorem4_lower_bound(const BoundInputs& in, double target_measure) {
  std::vector<double> psis;
  psis.reserve(in.iterations.size());
  for (const IterationRecord& r : in.iterations) {
    const BoundValue p = psi(r.training_error, in.vc_dim, r.samples, in.eta, r.kl_mixture);
    if (!p.ok()) return {kInf, p.status, false};
    psis.push_back(p.value);
  }
  return theorem4_from_psi(in.iterations, psis, in.eta, target_measure);
}

BoundValue lemma2_lower_bound(double target_cap_h, double h_measure, double kl_sampler) {
  if (!(h_measure > 0.0)) throw DomainError("lemma 2 bound needs |D_h| > 0");
  if (target_cap_h < 0.0 || kl_sampler < 0.0) throw DomainError("measures and KL must be non-negative");
  const double value = target_cap_h / h_measure - target_cap_h * std::sqrt(kl_sampler / 2.0);
  return {value, BoundStatus::ok, value < 0.0};
}

BoundValue uniform_error_from_mixture(double eps_mixture, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0,1]");
  if (lambda >= 1.0) return {kInf, BoundStatus::undefined, false};
  return {std::min(1.0, eps_mixture / (1.0 - lambda)), BoundStatus::ok, false};
}

UniformComplexity uniform_paa_complexity(double pr_uniform, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0,1]");
  if (!(pr_uniform >= 0.0 && pr_uniform <= 1.0)) throw DomainError("Pr_u must lie in [0,1]");
  UniformComplexity out;
  if (pr_uniform == 0.0) {
    out.asymptotic = kInf;
    out.exact_quantile = std::numeric_limits<std::int64_t>::max();
    out.status = BoundStatus::infinite;
    return out;
  }
  out.asymptotic = std::log(1.0 / delta) / pr_uniform;
  if (delta >= 1.0) {
    out.exact_quantile = 0;
  } else if (pr_uniform >= 1.0) {
    out.exact_quantile = 1;
  } else {
    // Tolerance keeps exact integer ratios from rounding up a whole query.
    out.exact_quantile =
        static_cast<std::int64_t>(std::ceil(std::log(delta) / std::log1p(-pr_uniform) - 1e-9));
  }
  return out;
}

double mixture_kl(double lambda, double region_measure) {
  if (!(region_measure > 0.0 && region_measure <= 1.0)) throw DomainError("region measure must lie in (0,1]");
  if (lambda <= 0.0) return 0.0;
  const double inside = lambda / region_measure + (1.0 - lambda);
  double kl = region_measure * inside * std::log(inside);
  if (lambda < 1.0 && region_measure < 1.0) {
    kl += (1.0 - region_measure) * (1.0 - lambda) * std::log(1.0 - lambda);
  }
  return kl;
}

}  // namespace sal::theory
