#include "tscv/variational.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "tscv/epiderivative.hpp"
#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

namespace {

// Relative size of a full Newton step below which the iteration has reached
// the rounding floor of the discrete residual (second differences amplify
// rounding by 1/h^2, so the absolute stationarity tolerance can be out of
// reach on fine grids).
constexpr double kStepFloor = 1e-9;

void require_full(const GridFunction& y, const char* what) {
    if (y.first() != 0 || y.size() != y.grid().size()) {
        throw ContractError(std::string(what) + ": y must be defined on the whole grid");
    }
    if (y.size() < 2) {
        throw DomainError(std::string(what) + ": grid needs at least two points");
    }
}

/// Per-interval pieces of the discretized functional. Interval k joins grid
/// points k and k+1; for u > 0 it is evaluated at t_k with state y_{k+1}, for
/// u < 0 at t_{k+1} with state y_k. Slope is (y_{k+1} - y_k) / gap in both.
class DiscreteFunctional {
public:
    DiscreteFunctional(const Lagrangian& L, double u, const SampleGrid& grid)
        : L_(L), u_(u), grid_(grid),
          Lyy_(differentiate(L.dL_dy, Variable::y)),
          Lyv_(differentiate(L.dL_dy, Variable::v)),
          Lvv_(differentiate(L.dL_dv, Variable::v)) {}

    std::size_t points() const noexcept { return grid_.size(); }

    double value(std::span<const double> y) const {
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < y.size(); ++k) {
            const auto p = at(k, y);
            sum += u_ * p.gap * L_.L.eval(p.time, p.state, p.slope);
        }
        return sum;
    }

    /// Full-length gradient (boundary entries included).
    std::vector<double> gradient(std::span<const double> y) const {
        std::vector<double> g(y.size(), 0.0);
        for (std::size_t k = 0; k + 1 < y.size(); ++k) {
            const auto p = at(k, y);
            const double Ly = L_.dL_dy.eval(p.time, p.state, p.slope);
            const double Lv = L_.dL_dv.eval(p.time, p.state, p.slope);
            // d(state)/dy_s = u, d(slope)/dy_{k+1} = u/gap = -d(slope)/dy_k
            const double c = u_ * p.gap;
            const double dv = u_ / p.gap;
            g[k] += c * (-Lv * dv);
            g[k + 1] += c * (Lv * dv);
            g[state_index(k)] += c * Ly * u_;
        }
        return g;
    }

    /// Tridiagonal Hessian over the full grid: diag[i], off[i] = H(i, i+1).
    void hessian(std::span<const double> y, std::vector<double>& diag, std::vector<double>& off) const {
        diag.assign(y.size(), 0.0);
        off.assign(y.size() - 1, 0.0);
        for (std::size_t k = 0; k + 1 < y.size(); ++k) {
            const auto p = at(k, y);
            const double Lyy = Lyy_.eval(p.time, p.state, p.slope);
            const double Lyv = Lyv_.eval(p.time, p.state, p.slope);
            const double Lvv = Lvv_.eval(p.time, p.state, p.slope);
            const double c = u_ * p.gap;
            // local coordinates (y_k, y_{k+1})
            const double a[2] = {u_ > 0.0 ? 0.0 : u_, u_ > 0.0 ? u_ : 0.0};
            const double b[2] = {-u_ / p.gap, u_ / p.gap};
            double h[2][2];
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    h[i][j] = c * (Lyy * a[i] * a[j] + Lyv * (a[i] * b[j] + b[i] * a[j]) +
                                   Lvv * b[i] * b[j]);
                }
            }
            diag[k] += h[0][0];
            diag[k + 1] += h[1][1];
            off[k] += h[0][1];
        }
    }

    /// Normalization turning gradient entry j into the Euler-Lagrange
    /// residual at the point it belongs to: |u| times the forward gap of
    /// t_{j-1} (u > 0) or the backward gap of t_{j+1} (u < 0).
    double weight(std::size_t j) const {
        return std::abs(u_) * (u_ > 0.0 ? grid_[j] - grid_[j - 1] : grid_[j + 1] - grid_[j]);
    }

private:
    struct Point {
        double time;
        double state;
        double slope;
        double gap;
    };

    std::size_t state_index(std::size_t k) const noexcept { return u_ > 0.0 ? k + 1 : k; }

    Point at(std::size_t k, std::span<const double> y) const {
        const double gap = grid_[k + 1] - grid_[k];
        return {u_ > 0.0 ? grid_[k] : grid_[k + 1], u_ * y[state_index(k)],
                u_ * (y[k + 1] - y[k]) / gap, gap};
    }

    const Lagrangian& L_;
    double u_;
    const SampleGrid& grid_;
    Expr Lyy_;
    Expr Lyv_;
    Expr Lvv_;
};

// -- Newton driver -----------------------------------------------------------

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

struct NewtonOutcome {
    Vec x;
    int iterations = 0;
    double norm = 0.0;
};

struct NewtonSystem {
    /// Scaled residual; may throw EvalError for inadmissible x.
    std::function<Vec(const Vec&)> residual;
    /// Jacobian of the scaled residual.
    std::function<SpMat(const Vec&)> jacobian;
    /// Full-grid sample values for an iterate (attached to limit errors).
    std::function<std::vector<double>(const Vec&)> iterate_values;
};

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

NewtonOutcome newton(Vec x, const NewtonSystem& sys, const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) {
        throw ParameterError("solver tolerance must be positive");
    }
    if (opts.max_iter < 0) {
        throw ParameterError("max_iter must be non-negative");
    }
    Vec F = sys.residual(x);
    double norm = inf_norm(F);
    if (norm <= opts.tol) {
        return {x, 0, norm};
    }
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const SpMat J = sys.jacobian(x);
        lu.compute(J);
        if (lu.info() != Eigen::Success) {
            throw NumericalError("singular Jacobian in Newton iteration " + std::to_string(it));
        }
        const Vec step = lu.solve(-F);
        if (lu.info() != Eigen::Success || !step.allFinite()) {
            throw NumericalError("singular Jacobian in Newton iteration " + std::to_string(it));
        }
        const bool tiny = inf_norm(step) <= kStepFloor * (1.0 + inf_norm(x));

        const double phi0 = 0.5 * F.squaredNorm();
        double alpha = 1.0;
        bool accepted = false;
        Vec x_new;
        Vec F_new;
        for (int ls = 0; ls < 50; ++ls, alpha *= 0.5) {
            x_new = x + alpha * step;
            try {
                F_new = sys.residual(x_new);
            } catch (const EvalError&) {
                continue;
            }
            if (F_new.allFinite() && 0.5 * F_new.squaredNorm() <= (1.0 - 2e-4 * alpha) * phi0) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (tiny) {
                return {x, it, norm};
            }
            throw NumericalError("line search failed in Newton iteration " + std::to_string(it));
        }
        x = x_new;
        F = F_new;
        norm = inf_norm(F);
        if (norm <= opts.tol || tiny) {
            return {x, it, norm};
        }
    }
    throw IterationLimitError("Newton iteration did not converge within " +
                                  std::to_string(opts.max_iter) + " iterations",
                              sys.iterate_values(x));
}

std::vector<double> with_boundary(const Vec& interior, double alpha, double beta) {
    std::vector<double> y(static_cast<std::size_t>(interior.size()) + 2);
    y.front() = alpha;
    y.back() = beta;
    for (Eigen::Index j = 0; j < interior.size(); ++j) {
        y[static_cast<std::size_t>(j) + 1] = interior[j];
    }
    return y;
}

double max_abs(const GridFunction& f) {
    double m = 0.0;
    for (double v : f.values()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void check_on_grid(const Problem& P, const GridFunction& y, const char* what) {
    if (y.grid_ptr() != P.grid() && !(y.grid() == *P.grid())) {
        throw ContractError(std::string(what) + ": y is not sampled on the problem grid");
    }
    require_full(y, what);
}

bool boundary_matches(double value, double expected) {
    return std::abs(value - expected) <= 1e-12 * (1.0 + std::abs(expected));
}

void check_boundary(const Problem& P, const GridFunction& y, const char* what) {
    const auto vals = y.values();
    if (!boundary_matches(vals.front(), P.alpha()) || !boundary_matches(vals.back(), P.beta())) {
        std::ostringstream os;
        os << what << ": boundary values (" << detail::format_double(vals.front()) << ", "
           << detail::format_double(vals.back()) << ") differ from (alpha, beta) = ("
           << detail::format_double(P.alpha()) << ", " << detail::format_double(P.beta()) << ")";
        throw ContractError(os.str());
    }
}

GridFunction restrict_to(const GridFunction& f, std::size_t first, std::size_t last) {
    std::vector<double> v;
    v.reserve(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) {
        v.push_back(f.at_index(i));
    }
    return GridFunction(f.grid_ptr(), std::move(v), first);
}

void require_unknowns(const Problem& P) {
    if (P.grid()->size() < 3) {
        throw DegenerateScaleError("problem grid has no interior unknowns");
    }
    (void)P.residual_window();
}

} // namespace

// -- Problem -----------------------------------------------------------------

Problem::Problem(TimeScale scale, double u, Lagrangian L, double alpha, double beta, double h)
    : scale_(std::move(scale)), u_(u), L_(std::move(L)), alpha_(alpha), beta_(beta), h_(h) {
    if (u_ == 0.0 || !std::isfinite(u_)) {
        throw ParameterError(
            "u = 0 makes the problem trivial: the functional is constant and every admissible y "
            "solves it");
    }
    if (!std::isfinite(alpha_) || !std::isfinite(beta_)) {
        throw ParameterError("boundary values must be finite");
    }
    if (!(scale_.a() < scale_.b())) {
        throw ParameterError("time scale must contain at least two points");
    }
    grid_ = std::make_shared<const SampleGrid>(scale_.discretize(h_));

    const std::size_t n = grid_->size() - 1;
    if (n < 2) {
        return;
    }
    std::size_t lo = u_ > 0.0 ? 0 : 2;
    std::size_t hi = u_ > 0.0 ? n - 2 : n;
    try {
        const auto inner = interior_kk2(scale_);
        while (lo <= hi && !inner.contains((*grid_)[lo])) {
            ++lo;
        }
        while (hi >= lo && hi > 0 && !inner.contains((*grid_)[hi])) {
            --hi;
        }
        if (lo <= hi && inner.contains((*grid_)[lo]) && inner.contains((*grid_)[hi])) {
            window_ = std::make_pair(lo, hi);
        }
    } catch (const DegenerateScaleError&) {
        // no residual points; reported lazily
    }
}

std::pair<std::size_t, std::size_t> Problem::residual_window() const {
    if (!window_) {
        throw DegenerateScaleError("no point of the scale admits the Euler-Lagrange residual");
    }
    return *window_;
}

GridFunction Problem::affine_guess() const {
    const double a = scale_.a();
    const double b = scale_.b();
    return GridFunction::sample(grid_, [&](double t) {
        if (t == a) {
            return alpha_;
        }
        if (t == b) {
            return beta_;
        }
        return alpha_ + (beta_ - alpha_) * ((t - a) / (b - a));
    });
}

IsoProblem::IsoProblem(Problem base_, Lagrangian G_, double w_, double K_)
    : base(std::move(base_)), G(std::move(G_)), w(w_), K(K_) {
    if (w == 0.0 || !std::isfinite(w)) {
        throw ParameterError("constraint direction w must be nonzero");
    }
    if (!std::isfinite(K)) {
        throw ParameterError("constraint value K must be finite");
    }
}

// -- building blocks ---------------------------------------------------------

double unified_functional(const Lagrangian& L, double u, const GridFunction& y) {
    require_full(y, "functional");
    const auto ybar = extend(y);
    const auto& g = y.grid();
    const std::size_t n = y.size() - 1;
    // integrand on the window where the shift and the epiderivative exist
    std::vector<double> vals;
    vals.reserve(n);
    if (u > 0.0) {
        const auto ys = shift_sigma(y);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = epiderivative_closed(ybar, g[i], u);
            vals.push_back(L.L.eval(g[i], u * ys[i], d));
        }
        return u * delta_integral(GridFunction(y.grid_ptr(), std::move(vals), 0), g[0], g[n]);
    }
    const auto yr = shift_rho(y);
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = epiderivative_closed(ybar, g[i], u);
        vals.push_back(L.L.eval(g[i], u * yr[i - 1], d));
    }
    return u * nabla_integral(GridFunction(y.grid_ptr(), std::move(vals), 1), g[0], g[n]);
}

GridFunction unified_residual(const Lagrangian& L, double u, const GridFunction& y) {
    require_full(y, "residual");
    const std::size_t n = y.size() - 1;
    if (n < 2) {
        throw DegenerateScaleError("residual needs at least three grid points");
    }
    const auto ybar = extend(y);
    const auto& g = y.grid();

    // composed function d3L(t, (y o xi_u)(t), D ybar(t)(u)) and the d2L term
    const std::size_t first = u > 0.0 ? 0 : 1;
    const std::size_t last = u > 0.0 ? n - 1 : n;
    std::vector<double> p3;
    std::vector<double> p2;
    for (std::size_t i = first; i <= last; ++i) {
        const double state = u * y.at_index(u > 0.0 ? i + 1 : i - 1);
        const double d = epiderivative_closed(ybar, g[i], u);
        p3.push_back(L.dL_dv.eval(g[i], state, d));
        p2.push_back(L.dL_dy.eval(g[i], state, d));
    }
    const auto gbar = extend(GridFunction(y.grid_ptr(), p3, first));

    const std::size_t r_first = u > 0.0 ? 0 : 2;
    const std::size_t r_last = u > 0.0 ? n - 2 : n;
    std::vector<double> r;
    for (std::size_t i = r_first; i <= r_last; ++i) {
        r.push_back(epiderivative_closed(gbar, g[i], u) - u * p2[i - first]);
    }
    return GridFunction(y.grid_ptr(), std::move(r), r_first);
}

std::vector<double> unified_gradient(const Lagrangian& L, double u, const GridFunction& y) {
    require_full(y, "gradient");
    const DiscreteFunctional F(L, u, y.grid());
    auto g = F.gradient(y.values());
    return std::vector<double>(g.begin() + 1, g.end() - 1);
}

double functional_value(const Problem& P, const GridFunction& y) {
    check_on_grid(P, y, "functional_value");
    check_boundary(P, y, "functional_value");
    return unified_functional(P.lagrangian(), P.u(), y);
}

GridFunction el_residual(const Problem& P, const GridFunction& y) {
    check_on_grid(P, y, "el_residual");
    check_boundary(P, y, "el_residual");
    const auto [lo, hi] = P.residual_window();
    return restrict_to(unified_residual(P.lagrangian(), P.u(), y), lo, hi);
}

// -- solvers -----------------------------------------------------------------

namespace {

GridFunction make_y(const Problem& P, const Vec& interior) {
    return GridFunction(P.grid(), with_boundary(interior, P.alpha(), P.beta()));
}

Vec interior_of(const GridFunction& y) {
    Vec x(static_cast<Eigen::Index>(y.size()) - 2);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        x[j] = y[static_cast<std::size_t>(j) + 1];
    }
    return x;
}

/// Newton on the stationarity system of one functional.
NewtonOutcome stationary_point(const Problem& P, const Lagrangian& L, double u, const Vec& x0,
                               const SolveOptions& opts) {
    const DiscreteFunctional F(L, u, *P.grid());
    const auto m = static_cast<Eigen::Index>(P.grid()->size()) - 2;
    Vec inv_w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        inv_w[j] = 1.0 / F.weight(static_cast<std::size_t>(j) + 1);
    }
    NewtonSystem sys;
    sys.residual = [&](const Vec& x) {
        const auto y = with_boundary(x, P.alpha(), P.beta());
        const auto g = F.gradient(y);
        Vec r(m);
        for (Eigen::Index j = 0; j < m; ++j) {
            r[j] = g[static_cast<std::size_t>(j) + 1] * inv_w[j];
        }
        return r;
    };
    sys.jacobian = [&](const Vec& x) {
        const auto y = with_boundary(x, P.alpha(), P.beta());
        std::vector<double> diag;
        std::vector<double> off;
        F.hessian(y, diag, off);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(3 * m));
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto i = static_cast<std::size_t>(j) + 1;
            trip.emplace_back(j, j, diag[i] * inv_w[j]);
            if (j + 1 < m) {
                trip.emplace_back(j, j + 1, off[i] * inv_w[j]);
                trip.emplace_back(j + 1, j, off[i] * inv_w[j + 1]);
            }
        }
        SpMat J(m, m);
        J.setFromTriplets(trip.begin(), trip.end());
        return J;
    };
    sys.iterate_values = [&](const Vec& x) { return with_boundary(x, P.alpha(), P.beta()); };
    return newton(x0, sys, opts);
}

} // namespace

Solution solve(const Problem& P, const SolveOptions& opts) {
    require_unknowns(P);
    const auto out = stationary_point(P, P.lagrangian(), P.u(), interior_of(P.affine_guess()), opts);
    auto y = make_y(P, out.x);
    Solution s{y};
    s.functional_value = functional_value(P, y);
    s.residual_max = max_abs(el_residual(P, y));
    s.iterations = out.iterations;
    return s;
}

namespace {

struct IsoReport {
    double residual_L = 0.0;
    double residual_G = 0.0;
    double combined = 0.0;
};

IsoReport iso_residuals(const IsoProblem& IP, const GridFunction& y, double lambda0, double lambda) {
    const auto& P = IP.base;
    const auto [lo, hi] = P.residual_window();
    const auto RL = restrict_to(unified_residual(P.lagrangian(), P.u(), y), lo, hi);
    // the G side lives on its own direction's window; compare on the overlap
    const auto RG_full = unified_residual(IP.G, IP.w, y);
    IsoReport rep;
    rep.residual_L = max_abs(RL);
    for (std::size_t i = lo; i <= hi; ++i) {
        if (!RG_full.defined_at(i)) {
            continue;
        }
        const double rg = RG_full.at_index(i);
        rep.residual_G = std::max(rep.residual_G, std::abs(rg));
        rep.combined = std::max(rep.combined, std::abs(lambda0 * RL.at_index(i) - lambda * rg));
    }
    return rep;
}

Solution iso_solution(const IsoProblem& IP, const GridFunction& y, int iterations, double lambda,
                      double tol, bool abnormal_hint) {
    Solution s{y};
    s.iterations = iterations;
    s.functional_value = functional_value(IP.base, y);
    s.constraint_value = unified_functional(IP.G, IP.w, y);
    const auto normal = iso_residuals(IP, y, 1.0, lambda);
    s.constraint_residual_max = normal.residual_G;
    if (abnormal_hint || normal.residual_G <= tol) {
        s.normal_flag = false;
        s.lambda0 = 0.0;
        s.lambda = 1.0;
        s.residual_max = iso_residuals(IP, y, 0.0, 1.0).combined;
    } else {
        s.normal_flag = true;
        s.lambda0 = 1.0;
        s.lambda = lambda;
        s.residual_max = normal.combined;
    }
    return s;
}

} // namespace

Solution solve_iso(const IsoProblem& IP, const SolveOptions& opts) {
    const auto& P = IP.base;
    require_unknowns(P);
    const auto start = P.affine_guess();
    const double K_tol = opts.tol * std::max(1.0, std::abs(IP.K));

    if (IP.G.independent_of_state()) {
        const double Kval = unified_functional(IP.G, IP.w, start);
        if (std::abs(Kval - IP.K) > K_tol) {
            throw InfeasibleError("constraint functional does not depend on y and its value " +
                                  detail::format_double(Kval) + " differs from K = " +
                                  detail::format_double(IP.K));
        }
        const auto base = solve(P, opts);
        auto s = iso_solution(IP, base.y, base.iterations, 0.0, opts.tol, true);
        s.degenerate = true;
        return s;
    }

    // An extremal of the constraint functional that already meets K is an
    // abnormal extremizer candidate.
    try {
        const auto ext = stationary_point(P, IP.G, IP.w, interior_of(start), opts);
        const auto yG = make_y(P, ext.x);
        if (std::abs(unified_functional(IP.G, IP.w, yG) - IP.K) <= K_tol) {
            return iso_solution(IP, yG, ext.iterations, 0.0, opts.tol, true);
        }
    } catch (const Error&) {
        // no usable extremal of the constraint (e.g. singular second variation)
    }

    const DiscreteFunctional FL(P.lagrangian(), P.u(), *P.grid());
    const DiscreteFunctional FG(IP.G, IP.w, *P.grid());
    const auto m = static_cast<Eigen::Index>(P.grid()->size()) - 2;
    Vec inv_w(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        inv_w[j] = 1.0 / FL.weight(static_cast<std::size_t>(j) + 1);
    }
    auto split = [&](const Vec& x) { return with_boundary(x.head(m), P.alpha(), P.beta()); };

    NewtonSystem sys;
    sys.residual = [&](const Vec& x) {
        const auto y = split(x);
        const double mult = x[m];
        const auto gL = FL.gradient(y);
        const auto gG = FG.gradient(y);
        Vec r(m + 1);
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto i = static_cast<std::size_t>(j) + 1;
            r[j] = (gL[i] - mult * gG[i]) * inv_w[j];
        }
        r[m] = FG.value(y) - IP.K;
        return r;
    };
    sys.jacobian = [&](const Vec& x) {
        const auto y = split(x);
        const double mult = x[m];
        std::vector<double> dL, oL, dG, oG;
        FL.hessian(y, dL, oL);
        FG.hessian(y, dG, oG);
        const auto gG = FG.gradient(y);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(5 * m + 1));
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto i = static_cast<std::size_t>(j) + 1;
            trip.emplace_back(j, j, (dL[i] - mult * dG[i]) * inv_w[j]);
            if (j + 1 < m) {
                const double o = oL[i] - mult * oG[i];
                trip.emplace_back(j, j + 1, o * inv_w[j]);
                trip.emplace_back(j + 1, j, o * inv_w[j + 1]);
            }
            trip.emplace_back(j, m, -gG[i] * inv_w[j]);
            trip.emplace_back(m, j, gG[i]);
        }
        SpMat J(m + 1, m + 1);
        J.setFromTriplets(trip.begin(), trip.end());
        return J;
    };
    sys.iterate_values = split;

    Vec x0(m + 1);
    x0.head(m) = interior_of(start);
    x0[m] = 0.0;
    const double c0 = std::abs(FG.value(start.values()) - IP.K);

    NewtonOutcome out;
    try {
        out = newton(x0, sys, opts);
    } catch (const NumericalError& e) {
        // judge constraint progress on the last iterate we can reconstruct
        double c_last = c0;
        if (const auto* lim = dynamic_cast<const IterationLimitError*>(&e)) {
            c_last = std::abs(FG.value(lim->last_iterate()) - IP.K);
        }
        if (c_last > K_tol && c_last >= 0.5 * c0) {
            throw InfeasibleError(std::string("no progress on the isoperimetric constraint (|K[y] - K| = ") +
                                  detail::format_double(c_last) + "): " + e.what());
        }
        throw;
    }

    const auto y = make_y(P, out.x.head(m));
    // gradient multiplier -> orientation R_L = lambda * R_G
    const double lambda = out.x[m] * IP.w / P.u();
    return iso_solution(IP, y, out.iterations, lambda, opts.tol, false);
}

VerifyReport verify(const Problem& P, const GridFunction& y, double tol) {
    VerifyReport rep;
    std::ostringstream msg;
    try {
        check_on_grid(P, y, "verify");
        const auto vals = y.values();
        rep.boundary_error =
            std::max(std::abs(vals.front() - P.alpha()), std::abs(vals.back() - P.beta()));
        rep.boundary_ok = boundary_matches(vals.front(), P.alpha()) && boundary_matches(vals.back(), P.beta());
        if (!rep.boundary_ok) {
            msg << "boundary conditions violated (max error " << detail::format_double(rep.boundary_error)
                << "); ";
        }
        const auto [lo, hi] = P.residual_window();
        rep.residual_max = max_abs(restrict_to(unified_residual(P.lagrangian(), P.u(), y), lo, hi));
        rep.functional_value = unified_functional(P.lagrangian(), P.u(), y);
        if (rep.residual_max > tol) {
            msg << "Euler-Lagrange residual " << detail::format_double(rep.residual_max)
                << " exceeds tolerance " << detail::format_double(tol) << "; ";
        }
        rep.pass = rep.boundary_ok && rep.residual_max <= tol;
    } catch (const Error& e) {
        rep.pass = false;
        msg << e.what();
    }
    rep.message = rep.pass ? "ok" : msg.str();
    return rep;
}

} // namespace tscv
