#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "tscv/timescale.hpp"

namespace tscv {

/// Real values sampled on a contiguous window of a SampleGrid.
///
/// The window [first, first + size) lets derivatives and shifts drop the
/// points where they are undefined (the last point for delta quantities, the
/// first for nabla ones) while still referring to the full grid, so the jump
/// operators of the discretized scale stay available at every defined point.
class GridFunction {
public:
    using GridPtr = std::shared_ptr<const SampleGrid>;

    GridFunction(GridPtr grid, std::vector<double> values, std::size_t first = 0);

    /// Samples `f` at every grid point.
    static GridFunction sample(GridPtr grid, const std::function<double(double)>& f);

    const GridPtr& grid_ptr() const noexcept { return grid_; }
    const SampleGrid& grid() const noexcept { return *grid_; }

    std::size_t first() const noexcept { return first_; }
    std::size_t last() const noexcept { return first_ + values_.size() - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const& noexcept { return values_; }
    /// Temporaries hand over their storage so the result cannot dangle.
    std::vector<double> values() && noexcept { return std::move(values_); }

    /// True when grid index `i` lies inside the window.
    bool defined_at(std::size_t i) const noexcept { return i >= first_ && i <= last(); }
    /// Value at grid index `i`; throws DomainError outside the window.
    double at_index(std::size_t i) const;
    /// Value at grid point `t` (exact match); throws DomainError otherwise.
    double at(double t) const;

    double t(std::size_t local) const { return (*grid_)[first_ + local]; }
    double operator[](std::size_t local) const { return values_[local]; }

    /// Pointwise arithmetic on the common window; both operands must share a
    /// grid (same object or equal points).
    friend GridFunction operator+(const GridFunction& f, const GridFunction& g);
    friend GridFunction operator-(const GridFunction& f, const GridFunction& g);
    friend GridFunction operator*(const GridFunction& f, const GridFunction& g);
    friend GridFunction operator*(double c, const GridFunction& f);

private:
    GridPtr grid_;
    std::vector<double> values_;
    std::size_t first_;
};

/// Forward jump gap t_{i+1} - t_i of the discretized scale.
double grid_mu(const SampleGrid& grid, std::size_t i);
/// Backward jump gap t_i - t_{i-1}.
double grid_nu(const SampleGrid& grid, std::size_t i);

GridFunction delta_deriv(const GridFunction& f);
GridFunction nabla_deriv(const GridFunction& f);

/// f^sigma: value at t_i is f(t_{i+1}).
GridFunction shift_sigma(const GridFunction& f);
/// f^rho: value at t_i is f(t_{i-1}).
GridFunction shift_rho(const GridFunction& f);

/// Left-rectangle sum over grid points in [c, d).
double delta_integral(const GridFunction& f, double c, double d);
/// Right-rectangle sum over grid points in (c, d].
double nabla_integral(const GridFunction& f, double c, double d);

} // namespace tscv
