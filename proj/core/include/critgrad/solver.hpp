#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "critgrad/banded.hpp"
#include "critgrad/fields.hpp"
#include "critgrad/geometry.hpp"

namespace critgrad {

/// One solution (or attempted solution) of the discrete problem at a fixed
/// lambda. `u` always spans the full grid with zeros at boundary nodes, and
/// residual_inf is the freshly assembled residual of the returned iterate.
struct SolutionState {
  double lambda = 0.0;
  std::vector<double> u;
  double residual_inf = 0.0;
  bool nonneg = true;   // min(u) >= -1e-10
  bool converged = false;
  int iterations = 0;
  std::string note;
};

struct SolveOptions {
  double tol_residual = 1e-10;
  int max_newton_iters = 50;
  double backtrack_factor = 0.5;
  double min_step = 1e-6;
  /// Initial iterate (full grid size); zero when absent. Boundary entries are
  /// forced to zero.
  std::optional<std::vector<double>> init;
};

/// Residual of -Lap_h(u) - mu |grad_h u|^2 - lambda c u - h at interior
/// nodes; boundary entries are zero.
std::vector<double> assemble_residual(std::span<const double> u, double lambda,
                                      const CoefficientField& mu, const CoefficientField& c,
                                      const CoefficientField& h, const Grid& grid);

/// Jacobian of assemble_residual over the interior unknowns: tridiagonal in
/// 1D, pentadiagonal block structure in 2D.
BandedMatrix assemble_jacobian(std::span<const double> u, double lambda,
                               const CoefficientField& mu, const CoefficientField& c,
                               const Grid& grid);

/// Damped Newton with residual-norm backtracking. Non-convergence and
/// singular Jacobians come back as converged=false with a note; folds should
/// be handled by continuation, not here.
SolutionState newton_solve(double lambda, const CoefficientField& mu,
                           const CoefficientField& c, const CoefficientField& h,
                           const Grid& grid, const SolveOptions& opts = {});

/// Constant-mu solver through the exponential substitution w = e^{mu0 u} - 1:
/// solves the gradient-free problem -Lap_h w = mu0 (1+w) (lambda c log(1+w)/mu0 + h)
/// by Newton, maps back, then polishes on the original discretization so the
/// result lands on the same discrete root that newton_solve targets.
SolutionState cole_hopf_solve(double lambda, double mu0, const CoefficientField& c,
                              const CoefficientField& h, const Grid& grid,
                              const SolveOptions& opts = {});

/// min(u) >= -1e-10 test used for the nonneg flag.
bool is_nonneg(std::span<const double> u);

double residual_inf_norm(std::span<const double> r);

}  // namespace critgrad
