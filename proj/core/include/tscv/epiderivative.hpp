#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tscv/calculus.hpp"

namespace tscv {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Continuous piecewise-affine function on [a, b], given by its breakpoints.
///
/// Built from a sampled time-scale function this is the extension whose
/// epigraph is the convexified union G(f): it agrees with f on the scale and
/// is the chord of slope (f(sigma(s)) - f(s)) / mu(s) across every gap.
class PLFunction {
public:
    /// Needs at least two strictly increasing breakpoints and finite values.
    PLFunction(std::vector<double> breakpoints, std::vector<double> values);

    double a() const noexcept { return x_.front(); }
    double b() const noexcept { return x_.back(); }
    std::span<const double> breakpoints() const noexcept { return x_; }
    std::span<const double> values() const noexcept { return y_; }
    std::size_t pieces() const noexcept { return x_.size() - 1; }

    /// Slope of piece k, i.e. on [x_k, x_{k+1}].
    double slope(std::size_t k) const { return (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]); }

    /// Affine interpolation; exact at breakpoints. DomainError outside [a, b].
    double operator()(double t) const;

    /// Right slope s+ (piece on [t, next)); +inf at t = b.
    double right_slope(double t) const;
    /// Left slope s- (piece on (prev, t]); +inf at t = a.
    double left_slope(double t) const;

    /// Distance from t to the nearest breakpoint other than t itself.
    double distance_to_other_breakpoint(double t) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;

    void require_domain(double t) const;
    /// Index k of the piece [x_k, x_{k+1}) containing t (last piece for t = b).
    std::size_t piece(double t) const;
};

/// Extension of a sampled function to [a, b] by chords across every gap.
PLFunction extend(const GridFunction& f);

/// Contingent epiderivative of a PL function in closed form:
/// 0 for u = 0, u*s+ for u > 0, u*s- for u < 0; +inf where the direction
/// leaves [a, b].
double epiderivative_closed(const PLFunction& fbar, double t, double u);

/// Difference quotients (f(t + h_k u) - f(t)) / h_k at h_k = h0 * 2^-k,
/// k = 0..k_max. Returns the last quotient, or +inf when t + h_k u leaves
/// [a, b] for every k.
double epiderivative_liminf(const PLFunction& fbar, double t, double u, double h0, int k_max);

/// The full quotient sequence behind epiderivative_liminf (inadmissible
/// steps are reported as +inf).
std::vector<double> epiderivative_quotients(const PLFunction& fbar, double t, double u, double h0,
                                            int k_max);

/// Contingent cone to Epi(fbar) at (t, lambda).
///
/// On the graph it is the epigraph of u -> D fbar(t)(u); strictly above the
/// graph every vertical direction is tangent, and at interior t the cone is
/// the whole plane. Directions leaving [a, b] are never tangent.
struct EpiCone {
    double t = 0.0;
    double lambda = 0.0;
    double slope_left = infinity;
    double slope_right = infinity;
    bool on_graph = true;
    bool interior = false;
    bool has_left = true;
    bool has_right = true;

    bool contains(double u, double v) const noexcept;
};

/// Throws ContractError when lambda < fbar(t) (point not in the epigraph).
EpiCone contingent_cone_epi(const PLFunction& fbar, double t, double lambda);

} // namespace tscv
