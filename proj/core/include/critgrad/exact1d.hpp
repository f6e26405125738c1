#pragma once

#include "critgrad/fields.hpp"
#include "critgrad/geometry.hpp"

namespace critgrad {

/// One member of the closed-form solution family on (0,3): piecewise linear /
/// logarithmic / sinusoidal, glued C^1 at x = 1 and x = 2. The matching
/// conditions pin (eps, amp) for each index j, and lambda = (pi/2 + eps)^2.
struct ExactFamilyMember {
  int j = 1;
  double eps = 0.0;     // in (0, pi/2)
  double amp = 0.0;     // amplitude of the sinusoidal piece
  double lambda = 0.0;  // (pi/2 + eps)^2
};

/// Right-hand side of the matching equation for index j:
/// (j/(j+1)) / (j + log(j+1)).
double matching_rhs(int j);

/// g(eps) = (pi/2 + eps) tan(eps) - matching_rhs(j); the matching equation is
/// g = 0.
double matching_gap(double eps, int j);

/// Unique root of the matching equation in (0, pi/2); bisection plus a Newton
/// polish, |g| <= ~1e-13.
double solve_epsilon(int j);

ExactFamilyMember family_member(int j);

/// Piecewise evaluation on [0,3].
double evaluate_member(const ExactFamilyMember& m, double x);
/// Piecewise derivative (one-sided limits coincide at the junctions by
/// construction).
double member_derivative(const ExactFamilyMember& m, double x);
/// Location of the maximum, 3 - (pi/2)/(pi/2 + eps); the value there is amp.
double member_argmax(const ExactFamilyMember& m);

/// Nodal samples of the member on a grid over (0,3).
std::vector<double> member_values(const ExactFamilyMember& m, const Grid& grid);

Domain exact_family_domain();   // (0,3)
FieldSpec exact_family_mu();    // indicator(1,2)
FieldSpec exact_family_c();     // indicator(2,3)

struct MemberResidual {
  double smooth_inf = 0.0;  // sup over interior nodes away from the junctions
  double kink_inf = 0.0;    // sup over the junction-aligned nodes
  double l1 = 0.0;          // quadrature of |residual| over the domain
};

/// Residual of the full problem at lambda_j with the family coefficients and
/// h = 0, evaluated on the member's nodal samples.
MemberResidual residual_of_member(const ExactFamilyMember& m, const Grid& grid);

}  // namespace critgrad
