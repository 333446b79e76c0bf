#pragma once

// Closed-form bounds for sandwich tests against experiments. Natural logarithms
// throughout. Bounds report their status instead of silently clamping.

#include <cstdint>
#include <span>
#include <vector>

namespace sal::theory {

enum class BoundStatus {
  ok,
  infinite,   // a success probability in a denominator is zero
  undefined,  // the expression has no meaning for the inputs (e.g. KL >= 2)
};

struct BoundValue {
  double value = 0.0;
  BoundStatus status = BoundStatus::ok;
  bool vacuous = false;  // lower bound <= 0, or clamped into [0,1]

  bool ok() const { return status == BoundStatus::ok; }
};

struct IterationRecord {
  std::int64_t samples = 0;       // m_t
  double sublevel_measure = 0.0;  // |D_alpha_t|
  double training_error = 0.0;    // empirical error of h_t
  double kl_mixture = 0.0;        // KL(D_t || U_X), sampling distribution of the batch
  double kl_sampler = 0.0;        // KL(T_h || U_{D_h})
};

struct BoundInputs {
  double pr_uniform = 0.0;      // Pr_u = |D_alpha*|
  double pr_hypothesis = 0.0;   // average success probability of T_h draws
  double lambda = 0.0;
  double delta = 0.1;
  double eta = 0.5;
  std::int64_t initial_samples = 0;  // m_0
  int vc_dim = 1;
  std::vector<IterationRecord> iterations;
};

/// m_0 + max(ln(1/delta) / ((1-lambda) Pr_u + lambda Pr_h), sum_t m_t).
BoundValue theorem1_bound(const BoundInputs& in);

/// Generalization bound with confidence 1 - eta; the zero-training-error
/// branch when train_err == 0. Capped at 1.
double vc_bound(std::int64_t m, int d, double eta, double train_err);
/// The branch with the square-root gap, uncapped, at any training error.
double vc_bound_general(std::int64_t m, int d, double eta, double train_err);
/// The linear zero-error branch, uncapped.
double vc_bound_zero_error(std::int64_t m, int d, double eta);

/// Uniform-distribution error bound: general-branch VC bound divided by
/// 1 - sqrt(kl_sampling / 2). Undefined when kl_sampling >= 2.
BoundValue psi(double train_err, int d, std::int64_t m, double eta, double kl_sampling);

/// Lower bound on the average hypothesis success probability. Each iteration
/// contributes (|D*| - 2 Psi_t) / (|D_t| + Psi_t) - |D*| sqrt(KL_sampler_t / 2),
/// weighted by m_t and scaled by 1 - eta. Clamped into [0,1] with the flag set.
BoundValue theorem4_lower_bound(const BoundInputs& in, double target_measure);

/// Same sum with Psi_t supplied directly (one entry per iteration).
BoundValue theorem4_from_psi(std::span<const IterationRecord> iterations, std::span<const double> psi_values,
                             double eta, double target_measure);

/// |D* ∩ D_h| / |D_h| - |D* ∩ D_h| sqrt(KL / 2). Reported raw; vacuous when < 0.
/// Throws DomainError when |D_h| == 0.
BoundValue lemma2_lower_bound(double target_cap_h, double h_measure, double kl_sampler);

/// eps / (1 - lambda), capped at 1. Undefined at lambda == 1.
BoundValue uniform_error_from_mixture(double eps_mixture, double lambda);

struct UniformComplexity {
  double asymptotic = 0.0;      // ln(1/delta) / Pr_u
  std::int64_t exact_quantile = 0;  // smallest k with (1 - Pr_u)^k <= delta
  BoundStatus status = BoundStatus::ok;
};

UniformComplexity uniform_paa_complexity(double pr_uniform, double delta);

/// KL(lambda U_D + (1-lambda) U_X || U_X) for a region of measure `region_measure`
/// inside a unit-volume X. Closed form; zero when lambda == 0.
double mixture_kl(double lambda, double region_measure);

}  // namespace sal::theory
