#include "critgrad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "critgrad/banded.hpp"
#include "critgrad/errors.hpp"
#include "critgrad/operators.hpp"

namespace critgrad {

namespace {

// Inverse power iteration for the smallest eigenvalue of A phi = value W phi,
// with A = -Lap_h over the unknowns listed in `nodes` and W a nonnegative
// nodal weight. Returns the eigenpair on the full grid.
EigenPair smallest_weighted_eig(const BandedMatrix& a, const std::vector<int>& nodes,
                                std::span<const double> weight, const Grid& grid,
                                const char* who) {
  const int n = a.n();
  BandedLU lu(a);
  if (lu.singular()) throw NumericalError(std::string(who) + ": singular operator");

  std::vector<double> phi(n, 1.0);
  auto normalize = [&](std::vector<double>& v) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += grid.quad_weight(nodes[k]) * v[k] * v[k];
    s = std::sqrt(s);
    if (s == 0.0) throw NumericalError(std::string(who) + ": iteration collapsed to zero");
    for (double& x : v) x /= s;
    return s;
  };
  normalize(phi);

  double value = 0.0;
  double prev = -1.0;
  int iter = 0;
  double residual = 0.0;
  const int max_iter = 1000;
  for (; iter < max_iter; ++iter) {
    std::vector<double> rhs(n);
    for (int k = 0; k < n; ++k) rhs[k] = weight[nodes[k]] * phi[k];
    std::vector<double> next = lu.solve(rhs);
    normalize(next);
    // Rayleigh quotient with the same discrete forms.
    const std::vector<double> a_phi = a.multiply(next);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
      const double w = grid.quad_weight(nodes[k]);
      num += w * next[k] * a_phi[k];
      den += w * next[k] * weight[nodes[k]] * next[k];
    }
    if (den <= 0.0) throw NumericalError(std::string(who) + ": weight form degenerate");
    value = num / den;
    phi = std::move(next);

    residual = 0.0;
    double phi_inf = 0.0;
    const std::vector<double> a_phi2 = a.multiply(phi);
    for (int k = 0; k < n; ++k) {
      residual = std::max(residual, std::abs(a_phi2[k] - value * weight[nodes[k]] * phi[k]));
      phi_inf = std::max(phi_inf, std::abs(phi[k]));
    }
    const bool value_settled = std::abs(value - prev) <= 1e-10 * std::max(1.0, std::abs(value));
    if (value_settled && residual <= 1e-9 * std::max(1.0, phi_inf)) break;
    prev = value;
  }

  // Sign fix: positive in the interior.
  double mass = 0.0;
  for (int k = 0; k < n; ++k) mass += phi[k];
  if (mass < 0.0)
    for (double& x : phi) x = -x;

  EigenPair out;
  out.value = value;
  out.iterations = iter;
  out.residual_inf = residual;
  out.vec.assign(grid.num_nodes(), 0.0);
  for (int k = 0; k < n; ++k) out.vec[nodes[k]] = phi[k];
  return out;
}

}  // namespace

EigenPair gamma1(const CoefficientField& c, const Grid& grid) {
  if (c.values.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("gamma1: weight does not match the grid");
  double cmin = 0.0, cmax = 0.0;
  for (double v : c.values) {
    cmin = std::min(cmin, v);
    cmax = std::max(cmax, v);
  }
  if (cmin < -1e-12) throw std::invalid_argument("gamma1: weight must be nonnegative");
  if (cmax <= 1e-14) throw std::invalid_argument("gamma1: weight vanishes identically");

  std::vector<int> nodes(grid.interior_nodes().begin(), grid.interior_nodes().end());
  return smallest_weighted_eig(neg_laplacian_matrix(grid), nodes, c.values, grid, "gamma1");
}

EigenPair dirichlet_eigpair(const Box& subbox, const Grid& grid) {
  const double tol = 1e-9 * (1.0 + grid.domain().diameter());
  if (!grid.domain().box.contains_box(subbox, tol))
    throw std::invalid_argument("dirichlet_eigpair: sub-box must lie inside the domain");

  // Unknowns are the nodes strictly inside the sub-box; its faces act as the
  // Dirichlet boundary. Faces need not be node-aligned, the active node set
  // defines the discrete box.
  std::vector<int> nodes;
  std::vector<int> local_index(grid.num_nodes(), -1);
  int i_lo = grid.nx(), i_hi = -1, j_lo = grid.ny(), j_hi = -1;
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const double x = grid.node_x(id), y = grid.node_y(id);
    bool inside = x > subbox.x_lo + tol && x < subbox.x_hi - tol;
    if (grid.dim() == 2)
      inside = inside && y > subbox.y_lo + tol && y < subbox.y_hi - tol;
    if (inside) {
      local_index[id] = static_cast<int>(nodes.size());
      nodes.push_back(id);
      i_lo = std::min(i_lo, grid.node_i(id));
      i_hi = std::max(i_hi, grid.node_i(id));
      j_lo = std::min(j_lo, grid.node_j(id));
      j_hi = std::max(j_hi, grid.node_j(id));
    }
  }
  if (nodes.empty())
    throw std::invalid_argument("dirichlet_eigpair: sub-box contains no grid nodes");

  const int n = static_cast<int>(nodes.size());
  const int band = grid.dim() == 1 ? 1 : i_hi - i_lo + 1;
  BandedMatrix a(n, band, band);
  const double ax = 1.0 / (grid.hx() * grid.hx());
  const double ay = grid.dim() == 2 ? 1.0 / (grid.hy() * grid.hy()) : 0.0;
  for (int k = 0; k < n; ++k) {
    const int id = nodes[k];
    const int i = grid.node_i(id), j = grid.node_j(id);
    a.set(k, k, grid.dim() == 1 ? 2.0 * ax : 2.0 * (ax + ay));
    const int left = local_index[grid.node(i - 1, j)];
    const int right = local_index[grid.node(i + 1, j)];
    if (left >= 0) a.set(k, left, -ax);
    if (right >= 0) a.set(k, right, -ax);
    if (grid.dim() == 2) {
      const int down = local_index[grid.node(i, j - 1)];
      const int up = local_index[grid.node(i, j + 1)];
      if (down >= 0) a.set(k, down, -ay);
      if (up >= 0) a.set(k, up, -ay);
    }
  }
  std::vector<double> unit_weight(grid.num_nodes(), 1.0);
  return smallest_weighted_eig(a, nodes, unit_weight, grid, "dirichlet_eigpair");
}

SolvabilityReport check_p0_solvability(double mu0, const CoefficientField& h,
                                       const Grid& grid) {
  SolvabilityReport out;
  out.mu0 = mu0;
  const EigenPair pair = gamma1(h, grid);  // same weighted problem with weight h
  out.nu1 = pair.value;
  out.margin = out.nu1 - mu0;
  out.solvable = mu0 < out.nu1;
  out.sobolev_criterion = "not evaluated (n <= 2)";
  return out;
}

ComparabilityBounds eigen_distance_comparability(std::span<const double> phi,
                                                 const Grid& grid) {
  if (phi.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("eigen_distance_comparability: size mismatch");
  ComparabilityBounds out;
  bool first = true;
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    const double ratio = phi[id] / grid.delta(id);
    if (first) {
      out.c_lower = out.c_upper = ratio;
      first = false;
    } else {
      out.c_lower = std::min(out.c_lower, ratio);
      out.c_upper = std::max(out.c_upper, ratio);
    }
  }
  return out;
}

double rayleigh_quotient(std::span<const double> phi, const CoefficientField& c,
                         const Grid& grid) {
  if (phi.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("rayleigh_quotient: size mismatch");
  const BandedMatrix a = neg_laplacian_matrix(grid);
  std::vector<double> interior(grid.num_interior());
  for (int k = 0; k < grid.num_interior(); ++k) interior[k] = phi[grid.interior_node(k)];
  const std::vector<double> a_phi = a.multiply(interior);
  double num = 0.0, den = 0.0;
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    const double w = grid.quad_weight(id);
    num += w * interior[k] * a_phi[k];
    den += w * c.values[id] * interior[k] * interior[k];
  }
  if (den <= 0.0) throw std::invalid_argument("rayleigh_quotient: weight form degenerate");
  return num / den;
}

Extrapolation richardson_extrapolate(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("richardson_extrapolate: need >= 2 values");
  Extrapolation out;
  if (values.size() == 2) {
    // Assume second order when only two levels are available.
    out.order = 2.0;
    out.value = values[1] + (values[1] - values[0]) / 3.0;
    return out;
  }
  const double v1 = values[values.size() - 3];
  const double v2 = values[values.size() - 2];
  const double v3 = values[values.size() - 1];
  const double d1 = v2 - v1, d2 = v3 - v2;
  if (d2 == 0.0 || d1 == 0.0 || d1 * d2 <= 0.0) {
    // Non-monotone or already converged; the finest value is the best guess.
    out.value = v3;
    out.order = 0.0;
    return out;
  }
  double p = std::log2(std::abs(d1 / d2));
  p = std::clamp(p, 0.25, 6.0);
  out.order = p;
  out.value = v3 + d2 / (std::pow(2.0, p) - 1.0);
  return out;
}

}  // namespace critgrad
