#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqopt/gencvx.hpp"
#include "sqopt/levelcone.hpp"

namespace sqo {

enum class Classification { KKT, FJ, NotCertifiable };

const char* to_string(Classification c);

/// Multipliers and selections for
/// 0 = gamma0 v + gamma0_hat v_inf + sum_{mu_j>0} mu_j xi_j + sum_{mu_j=0} zeta_j.
struct FJCertificate {
  double gamma0 = 1.0;
  int gamma0_hat = 0;
  std::vector<int> active;          // constraint indices, 0-based
  std::vector<double> mu;           // one per active index
  std::vector<Vec> subgradients;    // strong when mu_j > 0, horizon otherwise
  Vec objective_vector;             // v when gamma0 > 0, v_inf otherwise
  double residual = kInf;
  Classification classification = Classification::NotCertifiable;
  bool from_penalization = false;   // requires |v_inf| = 1 when gamma0 = 0
  std::string note;
};

/// |gamma0 v + gamma0_hat v_inf + sum ...| after validating every selection.
double fj_residual(const FnModel& f, const ConstraintSystem& cs, const Vec& x, const FJCertificate& cert);

struct FJSearchOptions {
  int grid = 64;            // simplex spacing 1/grid
  int refine_rounds = 24;
  double tol = tol::kResidual;
};

struct FJSearchReport {
  FJCertificate best;          // returned certificate
  double min_residual = kInf;  // over every simplex point visited
  double coarse_residual = kInf;
  long evaluated = 0;
  RealSet1D objective_set, objective_horizon;  // dimension one only
  std::vector<RealSet1D> strong_sets, horizon_sets;
};

FJSearchReport fj_search(const FnModel& f, const ConstraintSystem& cs, const Vec& x, const FJSearchOptions& opt = {});

/// Residual of the interval sum for given multipliers (dimension one).
double fj_interval_residual(const FJSearchReport& data, double gamma0, const std::vector<double>& mu);

struct GCQReport {
  bool holds = false;
  RealSet1D normal_cone;
  RealSet1D assembled;  // un-closed union
  std::optional<double> witness;
  std::vector<std::string> patterns;
};

GCQReport gcq_check(const ConstraintSystem& cs, const Vec& x);

/// Pointedness, 0 outside each strong subdifferential and the horizon
/// intersection condition, under which the union needs no closure.
struct ClosureReport {
  bool pointed = false;
  bool zero_excluded = false;
  bool horizon_trivial = false;
  bool holds = false;
};

ClosureReport closure_conditions(const ConstraintSystem& cs, const Vec& x);

struct NNAMCReport {
  bool holds = true;
  std::string pattern;  // abnormal combination found
  double w = 0.0;
  std::vector<double> terms;
};

NNAMCReport nnamc_check(const FnModel& f, const ConstraintSystem& cs, const Vec& x);

struct GrowthReport {
  double mu_bar = 0.0;
  double radius = 0.5;  // V = B(x, radius)
  bool verified = false;
  double worst_gap = kInf;
  Vec worst_y;
  bool kkt_form_checked = false;
  double worst_gap_kkt = kInf;
  bool pseudoconvex_checked = false;
  double worst_gap_pseudoconvex = kInf;
  long samples = 0;
  std::vector<Hypothesis> hypotheses;
};

GrowthReport sufficiency_growth(const FnModel& f, const ConstraintSystem& cs, const Vec& x, const FJCertificate& cert,
                                double radius = 0.5, int samples = 2001);

enum class PenaltyCase { Bounded, Horizon, NonStationaryEvidence };

const char* to_string(PenaltyCase c);

struct PenaltyStep {
  double k = 0.0;
  Vec y;
  Vec v;       // regular subgradient sample at y
  Vec normal;  // 2k (y - proj y), a normal to Omega at proj y
  double value = 0.0;
};

struct PenaltyReport {
  std::vector<PenaltyStep> steps;
  PenaltyCase limit = PenaltyCase::Bounded;
  Vec v;           // limit of v_k, or of v_k/|v_k|
  double residual = kInf;  // dist(-v, N(Omega, x))
  double grid_step = 0.0;
  double delta = 1.0;
};

std::vector<double> default_penalty_schedule();

PenaltyReport penalize_certify(const FnModel& f, const SetOracle& omega, const Vec& x, double delta = 1.0,
                               std::vector<double> ks = {}, int grid = 40001);

double distance_to_set(const SetOracle& omega, const Vec& x, Vec* proj = nullptr);

struct QFPSufficiencyReport {
  FJCertificate cert;
  Vec fm_subgradient;
  bool fm_validated = false;
  bool certified = false;
  double gamma = 0.0;  // strong convexity modulus of the numerator
  GrowthReport growth;
};

QFPSufficiencyReport qfp_sufficiency(const QFPInstance& inst, double level, const FnModel& f, const Vec& x,
                                     std::optional<double> gamma0 = std::nullopt, double radius = 0.5,
                                     int samples = 1024, std::uint64_t seed = 7);

}  // namespace sqo
