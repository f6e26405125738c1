#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "critgrad/fields.hpp"
#include "critgrad/geometry.hpp"
#include "critgrad/solver.hpp"

namespace critgrad {

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;       // includes the constant
  double constant = 1.0;
  double ratio = 0.0;     // lhs / rhs
  bool explicit_constant = false;
  Verdict verdict = Verdict::not_applicable;
  /// Ratios across mesh levels for the trend-based checks (coarse first).
  std::vector<double> refinement_ratios;
  std::string detail;
};

/// (integral of |v|^p delta)^{1/p}; p > 0 (not a norm below p = 1, the value
/// is still defined).
double lp_delta_norm(std::span<const double> v, double p, const Grid& grid);

struct InterpolationParams {
  double q = 1.0, m = 1.5, r = 2.0;  // 1 <= q <= m <= r
  double b = 0.5, d = 1.0;           // weight exponents, >= 0
  double gamma = 0.25;               // LHS weight exponent
};

/// Weighted interpolation bound with the explicit Hoelder constant
/// max(phi)^{gamma + theta b - (1-theta) d}, theta = (r-m)/(r-q):
///   int phi^gamma |v|^m <= C (int phi^-b |v|^q)^theta (int phi^d |v|^r)^{1-theta}.
/// Applicable when gamma >= d - (r-m)(b+d)/(r-q); outside that range the
/// report is marked not_applicable (the values are still computed).
/// phi defaults to the boundary distance.
InequalityReport check_interpolation(std::span<const double> v, const InterpolationParams& p,
                                     const Grid& grid, std::span<const double> phi = {});

using ScalarFunction = std::function<double(double, double)>;

struct HardyParams {
  double p = 1.0;
  double a = 1.5;   // must exceed p - 1
  double k = 0.0;
  int base_resolution = 21;
  int levels = 3;
};

struct HardyReport {
  InequalityReport sobolev;  // weighted Sobolev form, needs p < dim
  InequalityReport hardy;    // weighted Hardy form
};

/// Ratio LHS/(RHS1 + RHS2) of the weighted Sobolev and Hardy inequalities on
/// a sub-domain, evaluated over `levels` nested grid refinements. The
/// constants are empirical: a bounded ratio trend is the consistency signal.
/// v need not vanish on the boundary of omega. Throws when a <= p-1 (see
/// hardy_necessity_demo for that regime).
HardyReport hardy_sobolev_ratio(const ScalarFunction& v, const Domain& omega,
                                const HardyParams& params);

struct DivergenceReport {
  double p = 0.0, a = 0.0;
  std::vector<int> resolutions;
  std::vector<double> values;   // int delta^{a-p} per level
  std::vector<double> growth;   // values[i+1] / values[i]
  bool divergent = false;       // every growth factor >= 1.2
};

/// With v identically 1 the Hardy-form LHS is int delta^{a-p}; at a = p-1
/// it diverges under refinement, which is why a > p-1 is required.
DivergenceReport hardy_necessity_demo(double p, double a, const Domain& omega,
                                      std::span<const int> resolutions);

struct LowerBoundReport {
  double c1 = 0.0;              // 1/|Omega| in 1D, empirical in 2D
  double f_delta_integral = 0.0;
  double min_margin = 0.0;      // min over nodes of u - c1 * I * delta
  bool empirical = false;       // 2D exploratory mode
  std::string detail;
};

/// Pointwise lower bound u >= c1 (int f delta) delta for the right-hand side
/// f = mu |grad u|^2 + lambda c u + h assembled with the solver's gradient.
/// Requires f >= -1e-8 everywhere. In 1D c1 = 1/(b-a) (Green's function
/// bound); in 2D only the best empirical c1 is reported.
LowerBoundReport brezis_cabre_check(const SolutionState& state, const CoefficientField& mu,
                                    const CoefficientField& c, const CoefficientField& h,
                                    const Grid& grid);

struct IdentityReport {
  double max_away = 0.0;   // over interior nodes away from discontinuities
  double max_near = 0.0;   // over the remaining interior nodes
  double exclusion_radius = 0.0;
};

/// Discrete check of the substitution identity
///   -Lap(e^{ku} - 1) = k e^{ku} ((mu - k)|grad u|^2 + lambda c u + h),
/// which holds for solutions. Both sides are assembled with the solver's
/// stencils; indicator faces of mu and c are excluded from the away-norm.
/// `extra_faces` adds caller-known discontinuity coordinates (x axis).
IdentityReport exp_identity_check(std::span<const double> u, double lambda,
                                  const CoefficientField& mu, const CoefficientField& c,
                                  const CoefficientField& h, double k, const Grid& grid,
                                  std::span<const double> extra_faces = {});

}  // namespace critgrad
