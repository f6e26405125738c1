#include "critgrad/exact1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "critgrad/solver.hpp"

namespace critgrad {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

double matching_rhs(int j) {
  if (j < 1) throw std::invalid_argument("matching_rhs: j must be >= 1");
  const double dj = static_cast<double>(j);
  return (dj / (dj + 1.0)) / (dj + std::log(dj + 1.0));
}

double matching_gap(double eps, int j) {
  return (kHalfPi + eps) * std::tan(eps) - matching_rhs(j);
}

double solve_epsilon(int j) {
  const double rhs = matching_rhs(j);
  // g is strictly increasing on [0, pi/2) and blows up at pi/2, so the
  // bracket below always contains the root.
  double lo = 1e-8, hi = kHalfPi - 1e-8;
  if (matching_gap(lo, j) > 0.0) lo = 1e-14;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (matching_gap(mid, j) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double eps = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double t = std::tan(eps);
    const double g = (kHalfPi + eps) * t - rhs;
    const double dg = t + (kHalfPi + eps) * (1.0 + t * t);
    const double next = eps - g / dg;
    if (next > lo && next < hi) eps = next;
    if (std::abs(g) < 1e-15) break;
  }
  return eps;
}

ExactFamilyMember family_member(int j) {
  ExactFamilyMember m;
  m.j = j;
  m.eps = solve_epsilon(j);
  const double dj = static_cast<double>(j);
  m.amp = (dj + std::log(dj + 1.0)) / std::cos(m.eps);
  m.lambda = (kHalfPi + m.eps) * (kHalfPi + m.eps);
  return m;
}

double evaluate_member(const ExactFamilyMember& m, double x) {
  const double j = static_cast<double>(m.j);
  if (x <= 0.0) return 0.0;
  if (x < 1.0) return j * x;
  if (x < 2.0) return j + std::log(1.0 + j * (x - 1.0));
  if (x < 3.0) return m.amp * std::sin((kHalfPi + m.eps) * (3.0 - x));
  return 0.0;
}

double member_derivative(const ExactFamilyMember& m, double x) {
  const double j = static_cast<double>(m.j);
  if (x < 1.0) return j;
  if (x < 2.0) return j / (1.0 + j * (x - 1.0));
  const double k = kHalfPi + m.eps;
  return -k * m.amp * std::cos(k * (3.0 - x));
}

double member_argmax(const ExactFamilyMember& m) {
  return 3.0 - kHalfPi / (kHalfPi + m.eps);
}

std::vector<double> member_values(const ExactFamilyMember& m, const Grid& grid) {
  if (grid.dim() != 1) throw std::invalid_argument("member_values: 1D grids only");
  std::vector<double> u(grid.num_nodes());
  for (int id = 0; id < grid.num_nodes(); ++id)
    u[id] = grid.on_boundary(id) ? 0.0 : evaluate_member(m, grid.node_x(id));
  return u;
}

Domain exact_family_domain() { return Domain::interval(0.0, 3.0); }

FieldSpec exact_family_mu() { return FieldSpec::indicator(Box::interval(1.0, 2.0)); }

FieldSpec exact_family_c() { return FieldSpec::indicator(Box::interval(2.0, 3.0)); }

MemberResidual residual_of_member(const ExactFamilyMember& m, const Grid& grid) {
  const Domain expected = exact_family_domain();
  if (grid.dim() != 1 || std::abs(grid.domain().box.x_lo - expected.box.x_lo) > 1e-12 ||
      std::abs(grid.domain().box.x_hi - expected.box.x_hi) > 1e-12)
    throw std::invalid_argument("residual_of_member: grid must cover (0,3)");

  const CoefficientField mu = make_field(exact_family_mu(), grid);
  const CoefficientField c = make_field(exact_family_c(), grid);
  const CoefficientField h = make_field(FieldSpec::constant(0.0), grid);
  const std::vector<double> u = member_values(m, grid);
  const std::vector<double> r = assemble_residual(u, m.lambda, mu, c, h, grid);

  MemberResidual out;
  const double near = 0.51 * grid.hx();
  std::vector<double> abs_r(r.size());
  for (int id = 0; id < grid.num_nodes(); ++id) {
    abs_r[id] = std::abs(r[id]);
    if (grid.on_boundary(id)) continue;
    const double x = grid.node_x(id);
    const bool at_kink = std::abs(x - 1.0) < near || std::abs(x - 2.0) < near;
    if (at_kink)
      out.kink_inf = std::max(out.kink_inf, abs_r[id]);
    else
      out.smooth_inf = std::max(out.smooth_inf, abs_r[id]);
  }
  out.l1 = integrate(abs_r, 0.0, grid);
  return out;
}

}  // namespace critgrad
