#include "critgrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "critgrad/operators.hpp"

namespace critgrad {

namespace {

void check_fields(const CoefficientField& mu, const CoefficientField& c,
                  const CoefficientField& h, const Grid& grid, const char* who) {
  const size_t n = static_cast<size_t>(grid.num_nodes());
  if (mu.values.size() != n || c.values.size() != n || h.values.size() != n)
    throw std::invalid_argument(std::string(who) + ": fields do not match the grid");
}

std::vector<double> initial_iterate(const SolveOptions& opts, const Grid& grid,
                                    const char* who) {
  std::vector<double> u(grid.num_nodes(), 0.0);
  if (opts.init) {
    if (opts.init->size() != static_cast<size_t>(grid.num_nodes()))
      throw std::invalid_argument(std::string(who) + ": init size does not match grid");
    u = *opts.init;
    for (int id = 0; id < grid.num_nodes(); ++id)
      if (grid.on_boundary(id)) u[id] = 0.0;
  }
  return u;
}

}  // namespace

bool is_nonneg(std::span<const double> u) {
  for (double v : u)
    if (v < -1e-10) return false;
  return true;
}

double residual_inf_norm(std::span<const double> r) { return sup_norm(r); }

std::vector<double> assemble_residual(std::span<const double> u, double lambda,
                                      const CoefficientField& mu, const CoefficientField& c,
                                      const CoefficientField& h, const Grid& grid) {
  check_fields(mu, c, h, grid, "assemble_residual");
  if (u.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("assemble_residual: field size does not match grid");
  std::vector<double> r = neg_laplacian(u, grid);
  const std::vector<double> gsq = gradient_squared(u, grid);
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    r[id] -= mu.values[id] * gsq[id] + lambda * c.values[id] * u[id] + h.values[id];
  }
  return r;
}

BandedMatrix assemble_jacobian(std::span<const double> u, double lambda,
                               const CoefficientField& mu, const CoefficientField& c,
                               const Grid& grid) {
  if (u.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("assemble_jacobian: field size does not match grid");
  BandedMatrix jac = neg_laplacian_matrix(grid);
  const GradientField g = gradient_field(u, grid);
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    const int i = grid.node_i(id), j = grid.node_j(id);
    jac.add(k, k, -lambda * c.values[id]);
    // d/du_nbr of -mu * g^2 with central differences: -+ mu * g / h.
    const double mx = mu.values[id] * g.gx[id] / grid.hx();
    const int left = grid.interior_index(grid.node(i - 1, j));
    const int right = grid.interior_index(grid.node(i + 1, j));
    if (left >= 0) jac.add(k, left, mx);
    if (right >= 0) jac.add(k, right, -mx);
    if (grid.dim() == 2) {
      const double my = mu.values[id] * g.gy[id] / grid.hy();
      const int down = grid.interior_index(grid.node(i, j - 1));
      const int up = grid.interior_index(grid.node(i, j + 1));
      if (down >= 0) jac.add(k, down, my);
      if (up >= 0) jac.add(k, up, -my);
    }
  }
  return jac;
}

namespace {

double interior_inf(std::span<const double> r, const Grid& grid) {
  double m = 0.0;
  for (int k = 0; k < grid.num_interior(); ++k)
    m = std::max(m, std::abs(r[grid.interior_node(k)]));
  return m;
}

SolutionState finish_state(std::vector<double> u, double lambda, const CoefficientField& mu,
                           const CoefficientField& c, const CoefficientField& h,
                           const Grid& grid, bool converged, int iters, std::string note) {
  SolutionState st;
  st.lambda = lambda;
  st.u = std::move(u);
  const std::vector<double> r = assemble_residual(st.u, lambda, mu, c, h, grid);
  st.residual_inf = interior_inf(r, grid);
  st.nonneg = is_nonneg(st.u);
  st.converged = converged;
  st.iterations = iters;
  st.note = std::move(note);
  return st;
}

}  // namespace

SolutionState newton_solve(double lambda, const CoefficientField& mu,
                           const CoefficientField& c, const CoefficientField& h,
                           const Grid& grid, const SolveOptions& opts) {
  check_fields(mu, c, h, grid, "newton_solve");
  std::vector<double> u = initial_iterate(opts, grid, "newton_solve");

  double rnorm = interior_inf(assemble_residual(u, lambda, mu, c, h, grid), grid);
  for (int iter = 0; iter < opts.max_newton_iters; ++iter) {
    if (rnorm <= opts.tol_residual)
      return finish_state(std::move(u), lambda, mu, c, h, grid, true, iter, {});

    const std::vector<double> r = assemble_residual(u, lambda, mu, c, h, grid);
    const BandedMatrix jac = assemble_jacobian(u, lambda, mu, c, grid);
    BandedLU lu(jac);
    if (lu.singular() || lu.min_pivot_ratio() < 1e-14)
      return finish_state(std::move(u), lambda, mu, c, h, grid, false, iter,
                          "singular jacobian; likely near a fold, use continuation");
    std::vector<double> rhs(grid.num_interior());
    for (int k = 0; k < grid.num_interior(); ++k) rhs[k] = -r[grid.interior_node(k)];
    lu.solve_in_place(rhs);

    // Backtracking on the residual norm.
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= opts.min_step) {
      std::vector<double> trial = u;
      for (int k = 0; k < grid.num_interior(); ++k)
        trial[grid.interior_node(k)] += alpha * rhs[k];
      const double trial_norm =
          interior_inf(assemble_residual(trial, lambda, mu, c, h, grid), grid);
      if (std::isfinite(trial_norm) && trial_norm < rnorm) {
        u = std::move(trial);
        rnorm = trial_norm;
        accepted = true;
        break;
      }
      alpha *= opts.backtrack_factor;
    }
    if (!accepted)
      return finish_state(std::move(u), lambda, mu, c, h, grid, false, iter,
                          "line search stalled");
  }
  const bool ok = rnorm <= opts.tol_residual;
  return finish_state(std::move(u), lambda, mu, c, h, grid, ok, opts.max_newton_iters,
                      ok ? std::string{} : "newton iteration budget exhausted");
}

SolutionState cole_hopf_solve(double lambda, double mu0, const CoefficientField& c,
                              const CoefficientField& h, const Grid& grid,
                              const SolveOptions& opts) {
  if (!(mu0 > 0.0)) throw std::invalid_argument("cole_hopf_solve: mu0 must be positive");
  const size_t n = static_cast<size_t>(grid.num_nodes());
  if (c.values.size() != n || h.values.size() != n)
    throw std::invalid_argument("cole_hopf_solve: fields do not match the grid");

  // Transformed unknown w = e^{mu0 u} - 1; the residual of the transformed
  // problem is G(w) = -Lap_h w - lambda c (1+w) log(1+w) - mu0 h (1+w).
  std::vector<double> w(grid.num_nodes(), 0.0);
  if (opts.init) {
    if (opts.init->size() != n)
      throw std::invalid_argument("cole_hopf_solve: init size does not match grid");
    for (int id = 0; id < grid.num_nodes(); ++id)
      w[id] = grid.on_boundary(id) ? 0.0 : std::expm1(mu0 * (*opts.init)[id]);
  }

  auto transformed_residual = [&](const std::vector<double>& wv) {
    std::vector<double> r = neg_laplacian(wv, grid);
    for (int k = 0; k < grid.num_interior(); ++k) {
      const int id = grid.interior_node(k);
      const double lw = std::log1p(wv[id]);
      r[id] -= lambda * c.values[id] * (1.0 + wv[id]) * lw + mu0 * h.values[id] * (1.0 + wv[id]);
    }
    return r;
  };

  double rnorm = interior_inf(transformed_residual(w), grid);
  bool transformed_ok = false;
  int iter = 0;
  std::string note;
  for (; iter < opts.max_newton_iters; ++iter) {
    if (rnorm <= opts.tol_residual) {
      transformed_ok = true;
      break;
    }
    const std::vector<double> r = transformed_residual(w);
    BandedMatrix jac = neg_laplacian_matrix(grid);
    for (int k = 0; k < grid.num_interior(); ++k) {
      const int id = grid.interior_node(k);
      jac.add(k, k, -lambda * c.values[id] * (std::log1p(w[id]) + 1.0) - mu0 * h.values[id]);
    }
    BandedLU lu(jac);
    if (lu.singular() || lu.min_pivot_ratio() < 1e-14) {
      note = "transformed problem: singular jacobian";
      break;
    }
    std::vector<double> step(grid.num_interior());
    for (int k = 0; k < grid.num_interior(); ++k) step[k] = -r[grid.interior_node(k)];
    lu.solve_in_place(step);

    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= opts.min_step) {
      std::vector<double> trial = w;
      bool valid = true;
      for (int k = 0; k < grid.num_interior(); ++k) {
        const int id = grid.interior_node(k);
        trial[id] += alpha * step[k];
        if (trial[id] <= -1.0) valid = false;
      }
      if (valid) {
        const double trial_norm = interior_inf(transformed_residual(trial), grid);
        if (std::isfinite(trial_norm) && trial_norm < rnorm) {
          w = std::move(trial);
          rnorm = trial_norm;
          accepted = true;
          break;
        }
      }
      alpha *= opts.backtrack_factor;
    }
    if (!accepted) {
      note = rnorm > opts.tol_residual ? "transformed problem: line search stalled" : note;
      break;
    }
  }
  if (!transformed_ok && rnorm <= opts.tol_residual) transformed_ok = true;

  // Map back and polish on the original discretization; the transformed
  // solve supplies the initial guess, the polish pins the discrete root.
  const CoefficientField mu = make_field(FieldSpec::constant(mu0), grid);
  std::vector<double> u(grid.num_nodes(), 0.0);
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    if (w[id] <= -1.0)
      return finish_state(std::move(u), lambda, mu, c, h, grid, false, iter,
                          "w <= -1 encountered (invalid branch)");
    u[id] = std::log1p(w[id]) / mu0;
  }

  if (!transformed_ok)
    return finish_state(std::move(u), lambda, mu, c, h, grid, false, iter,
                        note.empty() ? "transformed solve did not converge" : note);

  SolveOptions polish = opts;
  polish.init = u;
  SolutionState st = newton_solve(lambda, mu, c, h, grid, polish);
  st.iterations += iter;
  st.note = st.converged ? "exponential substitution + polish" : st.note;
  return st;
}

}  // namespace critgrad
