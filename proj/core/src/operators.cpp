#include "critgrad/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace critgrad {

namespace {

void check_size(std::span<const double> u, const Grid& grid, const char* who) {
  if (u.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument(std::string(who) + ": field size does not match grid");
}

// One axis of the gradient. n nodes along the line, stride between them.
inline double diff_along(std::span<const double> u, int base, int idx, int n, int stride,
                         double h) {
  const int c = base + idx * stride;
  if (idx == 0) return (-3.0 * u[c] + 4.0 * u[c + stride] - u[c + 2 * stride]) / (2.0 * h);
  if (idx == n - 1) return (3.0 * u[c] - 4.0 * u[c - stride] + u[c - 2 * stride]) / (2.0 * h);
  return (u[c + stride] - u[c - stride]) / (2.0 * h);
}

}  // namespace

GradientField gradient_field(std::span<const double> u, const Grid& grid) {
  check_size(u, grid, "gradient_field");
  GradientField g;
  g.gx.resize(grid.num_nodes());
  const int nx = grid.nx(), ny = grid.ny();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      g.gx[grid.node(i, j)] = diff_along(u, grid.node(0, j), i, nx, 1, grid.hx());
  if (grid.dim() == 2) {
    g.gy.resize(grid.num_nodes());
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        g.gy[grid.node(i, j)] = diff_along(u, grid.node(i, 0), j, ny, nx, grid.hy());
  }
  return g;
}

std::vector<double> gradient_squared(std::span<const double> u, const Grid& grid) {
  GradientField g = gradient_field(u, grid);
  std::vector<double> out(grid.num_nodes());
  for (int id = 0; id < grid.num_nodes(); ++id) {
    double s = g.gx[id] * g.gx[id];
    if (!g.gy.empty()) s += g.gy[id] * g.gy[id];
    out[id] = s;
  }
  return out;
}

std::vector<double> neg_laplacian(std::span<const double> u, const Grid& grid) {
  check_size(u, grid, "neg_laplacian");
  std::vector<double> out(grid.num_nodes(), 0.0);
  const double ax = 1.0 / (grid.hx() * grid.hx());
  const double ay = grid.dim() == 2 ? 1.0 / (grid.hy() * grid.hy()) : 0.0;
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    const int i = grid.node_i(id), j = grid.node_j(id);
    double v = ax * (2.0 * u[id] - u[grid.node(i - 1, j)] - u[grid.node(i + 1, j)]);
    if (grid.dim() == 2)
      v += ay * (2.0 * u[id] - u[grid.node(i, j - 1)] - u[grid.node(i, j + 1)]);
    out[id] = v;
  }
  return out;
}

BandedMatrix neg_laplacian_matrix(const Grid& grid) {
  const int n = grid.num_interior();
  const int band = grid.dim() == 1 ? 1 : grid.nx() - 2;
  BandedMatrix a(n, band, band);
  const double ax = 1.0 / (grid.hx() * grid.hx());
  const double ay = grid.dim() == 2 ? 1.0 / (grid.hy() * grid.hy()) : 0.0;
  for (int k = 0; k < n; ++k) {
    const int id = grid.interior_node(k);
    const int i = grid.node_i(id), j = grid.node_j(id);
    a.set(k, k, grid.dim() == 1 ? 2.0 * ax : 2.0 * (ax + ay));
    const int left = grid.interior_index(grid.node(i - 1, j));
    const int right = grid.interior_index(grid.node(i + 1, j));
    if (left >= 0) a.set(k, left, -ax);
    if (right >= 0) a.set(k, right, -ax);
    if (grid.dim() == 2) {
      const int down = grid.interior_index(grid.node(i, j - 1));
      const int up = grid.interior_index(grid.node(i, j + 1));
      if (down >= 0) a.set(k, down, -ay);
      if (up >= 0) a.set(k, up, -ay);
    }
  }
  return a;
}

double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  if (a.size() != b.size()) throw std::invalid_argument("l2_inner: size mismatch");
  check_size(a, grid, "l2_inner");
  double s = 0.0;
  for (int id = 0; id < grid.num_nodes(); ++id) s += grid.quad_weight(id) * a[id] * b[id];
  return s;
}

double l2_norm(std::span<const double> a, const Grid& grid) {
  return std::sqrt(l2_inner(a, a, grid));
}

double sup_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace critgrad
