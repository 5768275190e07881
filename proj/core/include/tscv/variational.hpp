#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tscv/calculus.hpp"
#include "tscv/lagrangian.hpp"
#include "tscv/timescale.hpp"

namespace tscv {

/// Basic problem: extremize the unified functional
///
///   u * sum L(t, u*y(xi(t)), D y(t)(u)) * gap(t)
///
/// with delta machinery (sigma shift, forward gaps) for u > 0 and nabla
/// machinery (rho shift, backward gaps) for u < 0, subject to y(a) = alpha
/// and y(b) = beta. Dense parts of the scale are refined with step h and the
/// refined grid is treated as a discrete scale.
class Problem {
public:
    /// Throws ParameterError for u == 0 or h <= 0. A grid without interior
    /// unknowns or residual points is accepted here; el_residual and the
    /// solvers reject it with DegenerateScaleError.
    Problem(TimeScale scale, double u, Lagrangian L, double alpha, double beta, double h = 1e-3);

    const TimeScale& scale() const noexcept { return scale_; }
    double u() const noexcept { return u_; }
    const Lagrangian& lagrangian() const noexcept { return L_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double h() const noexcept { return h_; }

    const GridFunction::GridPtr& grid() const noexcept { return grid_; }
    /// Grid window where the Euler-Lagrange residual is imposed: points of
    /// interior_kk2(scale) at which every shifted index the residual needs
    /// exists on the grid. Throws DegenerateScaleError when that set is
    /// empty.
    std::pair<std::size_t, std::size_t> residual_window() const;

    /// Affine interpolant between (a, alpha) and (b, beta) on the grid.
    GridFunction affine_guess() const;

private:
    TimeScale scale_;
    double u_;
    Lagrangian L_;
    double alpha_;
    double beta_;
    double h_;
    GridFunction::GridPtr grid_;
    std::optional<std::pair<std::size_t, std::size_t>> window_;
};

/// Basic problem plus the constraint  w-functional of G  =  K.
struct IsoProblem {
    Problem base;
    Lagrangian G;
    double w;
    double K;

    /// Throws ParameterError for w == 0.
    IsoProblem(Problem base, Lagrangian G, double w, double K);
};

struct Solution {
    explicit Solution(GridFunction y_) : y(std::move(y_)) {}

    GridFunction y;
    double functional_value = 0.0;
    /// Max |residual| over the problem's residual window. For isoperimetric
    /// problems this is the combined lambda0*R_L - lambda*R_G.
    double residual_max = 0.0;
    int iterations = 0;

    std::optional<double> lambda;
    std::optional<double> lambda0;
    std::optional<bool> normal_flag;
    /// Max |R_G| (constraint-side residual) for isoperimetric problems.
    std::optional<double> constraint_residual_max;
    /// Constraint functional at y.
    std::optional<double> constraint_value;
    /// The constraint does not depend on y at all.
    bool degenerate = false;
};

// -- building blocks on a single Lagrangian and direction ------------------

/// Unified functional of (L, u) at y (y must cover the whole grid); no
/// boundary check.
double unified_functional(const Lagrangian& L, double u, const GridFunction& y);

/// Unified Euler-Lagrange residual
///   R(t) = D(d3L(t, y o xi_u, D ybar(t)(u)))(u) - u * d2L(...)
/// evaluated through the contingent epiderivatives of the piecewise-linear
/// extensions of y and of d3L along y. Defined at every grid point where the
/// required shifts exist: indices 0..n-2 for u > 0, 2..n for u < 0.
GridFunction unified_residual(const Lagrangian& L, double u, const GridFunction& y);

/// Gradient of the discretized unified functional with respect to the
/// interior values y_1..y_{n-1}.
std::vector<double> unified_gradient(const Lagrangian& L, double u, const GridFunction& y);

// -- problem-level operations ----------------------------------------------

/// Unified functional; ContractError when y's boundary values differ from
/// alpha/beta or y is not on the problem grid.
double functional_value(const Problem& P, const GridFunction& y);

/// Unified residual restricted to the problem's residual window.
GridFunction el_residual(const Problem& P, const GridFunction& y);

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 100;
};

/// Newton iteration with backtracking on the stationarity system of the
/// discretized functional, started from the affine interpolant.
Solution solve(const Problem& P, const SolveOptions& opts = {});

/// Augmented Newton on (interior y, multiplier) for the isoperimetric
/// problem. The multiplier is reported in the orientation
/// R_L = lambda * R_G; abnormal extremizers are reported with
/// (lambda0, lambda) = (0, 1).
Solution solve_iso(const IsoProblem& IP, const SolveOptions& opts = {});

struct VerifyReport {
    bool boundary_ok = false;
    double boundary_error = 0.0;
    double residual_max = 0.0;
    double functional_value = 0.0;
    bool pass = false;
    std::string message;
};

/// Never throws for bad candidates; failures are described in the report.
VerifyReport verify(const Problem& P, const GridFunction& y, double tol);

} // namespace tscv
