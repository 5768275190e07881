#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscv {

/// Closed interval [left, right]; left == right is an isolated point.
struct Segment {
    double left = 0.0;
    double right = 0.0;

    bool is_point() const noexcept { return left == right; }
    double length() const noexcept { return right - left; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class Side { dense, scattered };

/// Right/left classification of a point of a time scale.
struct PointClass {
    Side right = Side::dense;
    Side left = Side::dense;

    bool isolated() const noexcept { return right == Side::scattered && left == Side::scattered; }
    bool dense() const noexcept { return right == Side::dense && left == Side::dense; }

    friend bool operator==(const PointClass&, const PointClass&) = default;
};

/// Finite set of sample points of a time scale. Segment endpoints are stored
/// exactly; points produced by subdividing an interval carry `dense == true`.
class SampleGrid {
public:
    SampleGrid() = default;
    SampleGrid(std::vector<double> points, std::vector<bool> dense);

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const double> points() const noexcept { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }
    bool is_dense(std::size_t i) const { return dense_[i]; }

    /// Index of `t` if it is a grid point (exact comparison), otherwise npos.
    std::size_t find(double t) const noexcept;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const SampleGrid&, const SampleGrid&) = default;

private:
    std::vector<double> points_;
    std::vector<bool> dense_;
};

/// A bounded time scale: a finite union of closed intervals and isolated
/// points, stored as sorted segments separated by positive gaps.
///
/// Jump operators follow the usual endpoint conventions sigma(b) = b and
/// rho(a) = a. All comparisons against stored endpoints are exact.
class TimeScale {
public:
    /// Normalizes an arbitrary collection of segments: sorts them and merges
    /// overlapping or touching ones. Throws ParameterError when empty, when a
    /// segment has left > right, or when an endpoint is not finite.
    explicit TimeScale(std::vector<Segment> segments);

    static TimeScale interval(double left, double right);
    static TimeScale points(std::span<const double> pts);
    /// Integers k*step for k = 0..n shifted by `origin`.
    static TimeScale lattice(double origin, double step, std::size_t n);

    /// Parses `interval l r` / `points p1 p2 ...` lines. Blank lines and
    /// `#` comments are skipped. ParseError::position() is the 1-based line.
    static TimeScale parse(std::string_view text);

    std::span<const Segment> segments() const noexcept { return segments_; }
    double a() const noexcept { return segments_.front().left; }
    double b() const noexcept { return segments_.back().right; }

    bool contains(double t) const noexcept;
    double sigma(double t) const;
    double rho(double t) const;
    double mu(double t) const;
    double nu(double t) const;
    PointClass classify(double t) const;

    /// T^kappa: drops b when it is left-scattered.
    TimeScale truncate_kappa() const;
    /// T_kappa: drops a when it is right-scattered.
    TimeScale truncate_kappa_sub() const;

    /// Set intersection. Throws DegenerateScaleError when empty.
    TimeScale intersect(const TimeScale& other) const;

    /// Every segment endpoint exactly, intervals split into ceil(len/h) equal
    /// steps. Throws ParameterError for h <= 0.
    SampleGrid discretize(double h) const;

    /// Time-scale literal, one line per segment, 17 significant digits.
    std::string to_string() const;

    friend bool operator==(const TimeScale&, const TimeScale&) = default;

private:
    std::vector<Segment> segments_;

    std::size_t segment_index(double t) const noexcept;
    std::size_t require(double t) const;
};

/// (T^kappa)^kappa intersected with (T_kappa)_kappa, the set where the
/// Euler-Lagrange conditions are imposed. Throws DegenerateScaleError when
/// empty.
TimeScale interior_kk2(const TimeScale& T);

std::ostream& operator<<(std::ostream& os, const TimeScale& T);

} // namespace tscv
