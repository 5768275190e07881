#include "tscv/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

GridFunction::GridFunction(GridPtr grid, std::vector<double> values, std::size_t first)
    : grid_(std::move(grid)), values_(std::move(values)), first_(first) {
    if (!grid_) {
        throw ParameterError("grid function: null grid");
    }
    if (values_.empty()) {
        throw ParameterError("grid function: no values");
    }
    if (first_ + values_.size() > grid_->size()) {
        throw ParameterError("grid function: window exceeds grid");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw ParameterError("grid function: values must be finite");
        }
    }
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = f((*grid)[i]);
    }
    return GridFunction(std::move(grid), std::move(v));
}

double GridFunction::at_index(std::size_t i) const {
    if (!defined_at(i)) {
        throw DomainError("grid function: index " + std::to_string(i) + " outside its domain");
    }
    return values_[i - first_];
}

double GridFunction::at(double t) const {
    const auto i = grid_->find(t);
    if (i == SampleGrid::npos || !defined_at(i)) {
        throw DomainError("grid function: " + detail::format_double(t) + " is not a point of its domain");
    }
    return values_[i - first_];
}

namespace {

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (f.grid_ptr() != g.grid_ptr() && !(f.grid() == g.grid())) {
        throw ContractError("grid functions live on different grids");
    }
}

template <class Op>
GridFunction combine(const GridFunction& f, const GridFunction& g, Op op) {
    require_same_grid(f, g);
    const auto lo = std::max(f.first(), g.first());
    const auto hi = std::min(f.last(), g.last());
    if (lo > hi) {
        throw DomainError("grid functions have disjoint domains");
    }
    std::vector<double> v(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
        v[i - lo] = op(f.at_index(i), g.at_index(i));
    }
    return GridFunction(f.grid_ptr(), std::move(v), lo);
}

void require_two(const GridFunction& f, const char* op) {
    if (f.size() < 2) {
        throw DomainError(std::string(op) + ": needs at least two points");
    }
}

} // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
    return combine(f, g, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
    return combine(f, g, [](double x, double y) { return x - y; });
}

GridFunction operator*(const GridFunction& f, const GridFunction& g) {
    return combine(f, g, [](double x, double y) { return x * y; });
}

GridFunction operator*(double c, const GridFunction& f) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (auto& x : v) {
        x *= c;
    }
    return GridFunction(f.grid_ptr(), std::move(v), f.first());
}

double grid_mu(const SampleGrid& grid, std::size_t i) {
    return i + 1 < grid.size() ? grid[i + 1] - grid[i] : 0.0;
}

double grid_nu(const SampleGrid& grid, std::size_t i) {
    return i > 0 ? grid[i] - grid[i - 1] : 0.0;
}

GridFunction delta_deriv(const GridFunction& f) {
    require_two(f, "delta derivative");
    const auto& g = f.grid();
    std::vector<double> d(f.size() - 1);
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const auto i = f.first() + k;
        d[k] = (f[k + 1] - f[k]) / (g[i + 1] - g[i]);
    }
    return GridFunction(f.grid_ptr(), std::move(d), f.first());
}

GridFunction nabla_deriv(const GridFunction& f) {
    require_two(f, "nabla derivative");
    const auto& g = f.grid();
    std::vector<double> d(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) {
        const auto i = f.first() + k;
        d[k - 1] = (f[k] - f[k - 1]) / (g[i] - g[i - 1]);
    }
    return GridFunction(f.grid_ptr(), std::move(d), f.first() + 1);
}

GridFunction shift_sigma(const GridFunction& f) {
    require_two(f, "sigma shift");
    return GridFunction(f.grid_ptr(), std::vector<double>(f.values().begin() + 1, f.values().end()),
                        f.first());
}

GridFunction shift_rho(const GridFunction& f) {
    require_two(f, "rho shift");
    return GridFunction(f.grid_ptr(), std::vector<double>(f.values().begin(), f.values().end() - 1),
                        f.first() + 1);
}

namespace {

std::pair<std::size_t, std::size_t> integration_bounds(const GridFunction& f, double c, double d) {
    const auto& g = f.grid();
    const auto ic = g.find(c);
    const auto id = g.find(d);
    if (ic == SampleGrid::npos || id == SampleGrid::npos) {
        throw DomainError("integral bounds must be grid points");
    }
    if (ic > id) {
        throw DomainError("integral bounds must satisfy c <= d");
    }
    return {ic, id};
}

} // namespace

double delta_integral(const GridFunction& f, double c, double d) {
    const auto [ic, id] = integration_bounds(f, c, d);
    const auto& g = f.grid();
    double sum = 0.0;
    for (std::size_t i = ic; i < id; ++i) {
        sum += f.at_index(i) * (g[i + 1] - g[i]);
    }
    return sum;
}

double nabla_integral(const GridFunction& f, double c, double d) {
    const auto [ic, id] = integration_bounds(f, c, d);
    const auto& g = f.grid();
    double sum = 0.0;
    for (std::size_t i = ic + 1; i <= id; ++i) {
        sum += f.at_index(i) * (g[i] - g[i - 1]);
    }
    return sum;
}

} // namespace tscv
