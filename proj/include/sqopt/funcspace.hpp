#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqopt/common.hpp"
#include "sqopt/setoracle.hpp"

namespace sqo {

/// Analytic facts a catalog entry knows about itself. Nothing here is used as
/// a shortcut for a numerical verdict; flags feed hypothesis checks only.
struct FnAnnotations {
  bool lsc = false;
  bool usc = false;
  bool continuous = false;
  bool locally_lipschitz = false;
  bool quasiconvex = false;
  std::optional<double> sq_modulus;          // strong quasiconvexity modulus on sq_region
  std::optional<SetOracle> sq_region;
  std::optional<double> strong_convexity;    // modulus of strong convexity
  std::optional<double> pseudoconvex_alpha;  // f(y) >= f(x) + alpha |y-x|^2 growth constant
  std::vector<double> breakpoints;           // kinks and domain endpoints (dimension one)
  std::function<Vec(const Vec&)> gradient;   // empty unless smooth on its domain
};

/// Extended-real-valued function: +inf outside the domain, never -inf.
class FnModel {
 public:
  FnModel() = default;
  FnModel(std::string name, int dim, std::function<double(const Vec&)> f, SetOracle domain,
          FnAnnotations ann = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const SetOracle& domain() const { return domain_; }
  const FnAnnotations& ann() const { return ann_; }
  FnAnnotations& ann() { return ann_; }

  double eval(const Vec& x) const;
  double eval1(double x) const;

 private:
  std::string name_;
  int dim_ = 0;
  std::function<double(const Vec&)> f_;
  SetOracle domain_;
  FnAnnotations ann_;
};

double eval_extended(const FnModel& f, const Vec& x);

/// Geometric step schedule t_k = t0 * shrink^k, k = 0..steps-1. Limits are
/// read off the last `tail` quotients.
struct LimitSchedule {
  double t0 = 1e-2;
  double shrink = 0.5;
  int steps = 30;
  int tail = 10;
  double jitter = 1.0;  // Hadamard direction perturbation, relative to t

  void validate() const;
  double step(int k) const;
};

/// +-inf when the quotients q_k at steps t_k grow monotonically like
/// t^-p with p >= 1/4 past magnitude 100, 0 otherwise.
double divergence(const std::vector<double>& qs, const std::vector<double>& ts);

double dini_upper(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s = {});
double dini_lower(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s = {});
double hadamard_upper(const FnModel& f, const Vec& x, const Vec& d, const LimitSchedule& s = {});

/// S_f(x) = {y : f(y) <= f(x)}, or the strict version.
SetOracle sublevel_set(const FnModel& f, const Vec& x, bool strict);

/// Approximate interval-union picture of a one-dimensional set on [lo, hi]
/// from n grid cells, with endpoints refined by bisection.
RealSet1D reconstruct_line(const SetOracle& s, double lo, double hi, int n = 4096,
                           const std::vector<double>& extra = {});

struct IscReport {
  bool violation = false;
  Vec y;       // point of S_f(x) that sublevel sets at nearby x_k stay away from
  Vec x_k;
  double gap = 0.0;
  int probes = 0;
};

/// Probes inner semicontinuity of x -> S_f(x) cap V at xbar along
/// f-attentive sequences (x_k -> xbar with f(x_k) -> f(xbar)).
IscReport sublevel_isc_probe(const FnModel& f, const Vec& xbar, const SetOracle& V,
                             const std::vector<Vec>& probe_grid, const LimitSchedule& s = {});

using Params = std::map<std::string, std::string>;

/// Parses "k=v k=v ..." (whitespace separated, values may be double quoted).
Params parse_params(const std::string& text);
double param_double(const Params& p, const std::string& key, double fallback);
Vec parse_vector(const std::string& text);
Mat parse_matrix(const std::string& text);

struct CatalogEntry {
  std::string id;
  std::string summary;
  std::vector<std::string> params;
};

const std::vector<CatalogEntry>& catalog_entries();
FnModel catalog(const std::string& id, const Params& params = {}, int dim = 1);

}  // namespace sqo
