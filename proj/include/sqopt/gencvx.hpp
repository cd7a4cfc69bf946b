#pragma once

#include <cstdint>
#include <vector>

#include "sqopt/funcspace.hpp"

namespace sqo {

struct SamplingPlan {
  int points = 128;   // region sample size
  int lambdas = 33;   // uniform lambda values in [0,1]
  std::uint64_t seed = 7;
  bool polish = true;  // local ascent on the worst pair
};

/// Deterministic sample of a bounded region: a uniform grid on the line,
/// scrambled Halton points otherwise.
std::vector<Vec> sample_region(const SetOracle& region, int count, std::uint64_t seed);

enum class SQVerdict { Verified, Refuted };

struct SQReport {
  SQVerdict verdict = SQVerdict::Verified;
  Vec x, y;
  double lambda = 0.0;
  double violation = -kInf;  // largest h(z) - [max - lambda(1-lambda)(gamma/2)|x-y|^2]
  long samples = 0;
};

/// Sampled test of h(lambda y + (1-lambda) x) <= max{h(x),h(y)} - lambda(1-lambda)(gamma/2)|x-y|^2.
SQReport sq_check(const FnModel& h, const SetOracle& region, double gamma, const SamplingPlan& plan = {});

struct ModulusEstimate {
  bool quasiconvex = true;
  double gamma_lo = 0.0;  // largest modulus verified
  double gamma_hi = 0.0;  // smallest modulus refuted (+inf if none in the bracket)
  SQReport witness;       // refutation at gamma_hi
};

ModulusEstimate modulus_estimate(const FnModel& h, const SetOracle& region, double gamma_max = 10.0,
                                 double resolution = 1e-3, const SamplingPlan& plan = {});

/// h = (x'Ax/2 + a'x + alpha) / (x'Bx/2 + b'x + beta) on K = {m <= denominator <= M}.
struct QFPInstance {
  Mat A;
  Vec a;
  double alpha = 0.0;
  Mat B;
  Vec b;
  double beta = 1.0;
  double m = 1.0;
  double M = 1.0;

  int dim() const { return static_cast<int>(A.rows()); }
  double numerator(const Vec& x) const;
  double denominator(const Vec& x) const;
  double lambda_min() const;
  double modulus() const { return lambda_min() / M; }
};

QFPInstance qfp_from_params(const Params& p);
SetOracle qfp_region(const QFPInstance& inst);
FnModel qfp_build(const QFPInstance& inst);

struct StrongMinReport {
  bool holds = true;
  Vec witness;
  double gap = kInf;  // min of h(x) - h(xbar) - gamma|x - xbar|^2
  long samples = 0;
};

StrongMinReport strong_minimum_check(const FnModel& h, const Vec& xbar, const SetOracle& region, double gamma,
                                     const SamplingPlan& plan = {});

}  // namespace sqo
