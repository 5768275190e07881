#include "tscv/epiderivative.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

PLFunction::PLFunction(std::vector<double> breakpoints, std::vector<double> values)
    : x_(std::move(breakpoints)), y_(std::move(values)) {
    if (x_.size() < 2) {
        throw ParameterError("PL function: needs at least two breakpoints");
    }
    if (x_.size() != y_.size()) {
        throw ParameterError("PL function: breakpoints and values differ in length");
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
            throw ParameterError("PL function: breakpoints and values must be finite");
        }
        if (i > 0 && !(x_[i - 1] < x_[i])) {
            throw ParameterError("PL function: breakpoints must be strictly increasing");
        }
    }
}

void PLFunction::require_domain(double t) const {
    if (!(t >= a() && t <= b())) {
        throw DomainError("PL function: " + detail::format_double(t) + " outside [" +
                          detail::format_double(a()) + ", " + detail::format_double(b()) + "]");
    }
}

std::size_t PLFunction::piece(double t) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const auto k = static_cast<std::size_t>(it - x_.begin());
    return std::min(k == 0 ? 0 : k - 1, x_.size() - 2);
}

double PLFunction::operator()(double t) const {
    require_domain(t);
    const auto k = piece(t);
    if (t == x_[k]) {
        return y_[k];
    }
    if (t == x_[k + 1]) {
        return y_[k + 1];
    }
    return y_[k] + (y_[k + 1] - y_[k]) * ((t - x_[k]) / (x_[k + 1] - x_[k]));
}

double PLFunction::right_slope(double t) const {
    require_domain(t);
    if (t == b()) {
        return infinity;
    }
    return slope(piece(t));
}

double PLFunction::left_slope(double t) const {
    require_domain(t);
    if (t == a()) {
        return infinity;
    }
    auto k = piece(t);
    if (t == x_[k]) {
        --k; // t is a breakpoint: the piece ending at t
    }
    return slope(k);
}

double PLFunction::distance_to_other_breakpoint(double t) const {
    double best = infinity;
    const auto it = std::lower_bound(x_.begin(), x_.end(), t);
    if (it != x_.end()) {
        const auto nxt = (*it == t) ? it + 1 : it;
        if (nxt != x_.end()) {
            best = std::min(best, *nxt - t);
        }
    }
    if (it != x_.begin()) {
        best = std::min(best, t - *(it - 1));
    }
    return best;
}

PLFunction extend(const GridFunction& f) {
    std::vector<double> x(f.size());
    std::vector<double> y(f.values().begin(), f.values().end());
    for (std::size_t k = 0; k < f.size(); ++k) {
        x[k] = f.t(k);
    }
    return PLFunction(std::move(x), std::move(y));
}

double epiderivative_closed(const PLFunction& fbar, double t, double u) {
    if (!std::isfinite(u)) {
        throw ParameterError("epiderivative: direction must be finite");
    }
    if (u > 0.0) {
        const double s = fbar.right_slope(t);
        return std::isinf(s) ? infinity : u * s;
    }
    if (u < 0.0) {
        const double s = fbar.left_slope(t);
        return std::isinf(s) ? infinity : u * s;
    }
    if (!(t >= fbar.a() && t <= fbar.b())) {
        throw DomainError("epiderivative: t outside [a, b]");
    }
    return 0.0;
}

std::vector<double> epiderivative_quotients(const PLFunction& fbar, double t, double u, double h0,
                                            int k_max) {
    if (!(t >= fbar.a() && t <= fbar.b())) {
        throw DomainError("epiderivative: t outside [a, b]");
    }
    if (u == 0.0 || !std::isfinite(u)) {
        throw ParameterError("liminf estimator: direction must be finite and nonzero");
    }
    if (!(h0 > 0.0) || k_max < 0) {
        throw ParameterError("liminf estimator: needs h0 > 0 and k_max >= 0");
    }
    const double ft = fbar(t);
    std::vector<double> q;
    q.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const double h = std::ldexp(h0, -k);
        const double s = t + h * u;
        if (s < fbar.a() || s > fbar.b()) {
            q.push_back(infinity);
        } else {
            q.push_back((fbar(s) - ft) / h);
        }
    }
    return q;
}

double epiderivative_liminf(const PLFunction& fbar, double t, double u, double h0, int k_max) {
    return epiderivative_quotients(fbar, t, u, h0, k_max).back();
}

bool EpiCone::contains(double u, double v) const noexcept {
    if (u > 0.0 && !has_right) {
        return false;
    }
    if (u < 0.0 && !has_left) {
        return false;
    }
    if (!on_graph) {
        return true;
    }
    if (u > 0.0) {
        return v >= slope_right * u;
    }
    if (u < 0.0) {
        return v >= slope_left * u;
    }
    return v >= 0.0;
}

EpiCone contingent_cone_epi(const PLFunction& fbar, double t, double lambda) {
    const double ft = fbar(t);
    if (lambda < ft) {
        throw ContractError("contingent cone: (t, lambda) lies below the graph");
    }
    EpiCone cone;
    cone.t = t;
    cone.lambda = lambda;
    cone.slope_left = fbar.left_slope(t);
    cone.slope_right = fbar.right_slope(t);
    cone.has_left = t > fbar.a();
    cone.has_right = t < fbar.b();
    cone.on_graph = lambda == ft;
    cone.interior = !cone.on_graph && cone.has_left && cone.has_right;
    return cone;
}

} // namespace tscv
