#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "critgrad/geometry.hpp"

namespace critgrad {

/// Symbolic description of a coefficient: constants, indicators of sub-boxes,
/// powers of the boundary distance, and sums/products of these.
///
/// Text grammar (whitespace-insensitive):
///   expr   := term ('+' term)*
///   term   := factor ('*' factor)*
///   factor := NUMBER | 'delta' ['^' NUMBER] | 'indicator(' nums ')' | '(' expr ')'
/// 'chi' is accepted as an alias of 'indicator'; nums is "a,b" in 1D and
/// "ax,bx,ay,by" in 2D. Indicators are open: nodes on the sub-box faces get 0.
struct FieldSpec {
  enum class Kind { constant, distance_power, indicator, sum, product };

  Kind kind = Kind::constant;
  double value = 0.0;     // constant
  double exponent = 1.0;  // distance_power
  Box box;                // indicator
  std::vector<FieldSpec> terms;

  static FieldSpec constant(double k);
  static FieldSpec distance_power(double sigma);
  static FieldSpec indicator(const Box& b);
  static FieldSpec sum(std::vector<FieldSpec> terms);
  static FieldSpec product(std::vector<FieldSpec> terms);

  double eval(double x, double y, const Domain& domain) const;
  std::string str() const;  // canonical serialization
  /// Face coordinates of every indicator box, per axis; quadrature and
  /// stencil checks treat these as discontinuity locations.
  void collect_faces(std::vector<double>& x_faces, std::vector<double>& y_faces) const;
  /// All indicator boxes must lie inside `domain`; throws otherwise.
  void validate_boxes(const Domain& domain) const;
};

FieldSpec parse_field_spec(std::string_view text, int dim);

/// Nodal coefficient field with its generating spec and recorded support.
struct CoefficientField {
  std::vector<double> values;
  FieldSpec spec;
  /// Bounding box of nodes with |value| > support_tol; nullopt for the zero
  /// field.
  std::optional<Box> support;
  double max_abs = 0.0;

  static constexpr double support_tol = 1e-14;
};

CoefficientField make_field(const FieldSpec& spec, const Grid& grid);
CoefficientField make_field(std::string_view spec_text, const Grid& grid);
/// Field with given nodal values and an opaque spec record.
CoefficientField make_field_from_values(std::vector<double> values, const Grid& grid);

enum class Verdict { holds, fails, not_applicable };
std::string to_string(Verdict v);

struct HypothesisCheck {
  Verdict verdict = Verdict::not_applicable;
  std::string detail;
  // Witness slots; which ones are meaningful depends on the hypothesis.
  double x0 = 0.0, y0 = 0.0;
  double rho = 0.0;
  double eta = 0.0;
  double constant = 0.0;  // C1, c1 or mu0
  double sigma = 0.0;
  double margin = 0.0;
};

struct AssumptionParams {
  double sigma = 1.0;                 // exponent for the distance-decay checks
  double collar_fraction = 0.1;       // collar {delta < fraction * diam} for the growth check
  std::optional<Box> omega;           // sub-box for the "mu uniform on supp(c)" check
};

/// Verdicts for the structural hypotheses on (mu, c, h) with checkable
/// witnesses. Checks that need unsupplied parameters come back
/// not_applicable.
struct AssumptionReport {
  HypothesisCheck data_signs;              // mu, c, h nonnegative and nontrivial
  HypothesisCheck intersecting_supports;   // ball with both mu >= eta and c >= eta
  HypothesisCheck mu_uniform_on_c_support; // mu >= mu0 on a sub-box containing supp(c)
  HypothesisCheck c_decay_subdomain;       // c <= C1 dist(.,boundary of omega)^sigma
  HypothesisCheck c_decay;                 // c <= C1 delta^sigma on the domain
  HypothesisCheck mu_compact_support;      // supp(mu) strictly inside the domain
  HypothesisCheck mu_boundary_growth;      // mu >= c1 delta^sigma on a boundary collar
};

AssumptionReport check_assumptions(const CoefficientField& mu, const CoefficientField& c,
                                   const CoefficientField& h, const Grid& grid,
                                   const AssumptionParams& params = {});

}  // namespace critgrad
