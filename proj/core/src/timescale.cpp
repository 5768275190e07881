#include "tscv/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

SampleGrid::SampleGrid(std::vector<double> points, std::vector<bool> dense)
    : points_(std::move(points)), dense_(std::move(dense)) {
    if (points_.size() != dense_.size()) {
        throw ParameterError("sample grid: points and dense flags differ in length");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i - 1] < points_[i])) {
            throw ParameterError("sample grid: points must be strictly increasing");
        }
    }
}

std::size_t SampleGrid::find(double t) const noexcept {
    const auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it == points_.end() || *it != t) {
        return npos;
    }
    return static_cast<std::size_t>(it - points_.begin());
}

TimeScale::TimeScale(std::vector<Segment> segments) {
    if (segments.empty()) {
        throw ParameterError("time scale: no segments");
    }
    for (const auto& s : segments) {
        if (!std::isfinite(s.left) || !std::isfinite(s.right)) {
            throw ParameterError("time scale: segment endpoints must be finite");
        }
        if (s.left > s.right) {
            throw ParameterError("time scale: segment with left > right");
        }
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& x, const Segment& y) { return x.left < y.left; });
    segments_.reserve(segments.size());
    for (const auto& s : segments) {
        if (!segments_.empty() && s.left <= segments_.back().right) {
            segments_.back().right = std::max(segments_.back().right, s.right);
        } else {
            segments_.push_back(s);
        }
    }
}

TimeScale TimeScale::interval(double left, double right) {
    return TimeScale({Segment{left, right}});
}

TimeScale TimeScale::points(std::span<const double> pts) {
    std::vector<Segment> segs;
    segs.reserve(pts.size());
    for (double p : pts) {
        segs.push_back({p, p});
    }
    return TimeScale(std::move(segs));
}

TimeScale TimeScale::lattice(double origin, double step, std::size_t n) {
    if (!(step > 0.0)) {
        throw ParameterError("lattice: step must be positive");
    }
    std::vector<double> pts(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        pts[k] = origin + static_cast<double>(k) * step;
    }
    return points(pts);
}

TimeScale TimeScale::parse(std::string_view text) {
    std::vector<Segment> segs;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto tokens = detail::split_ws(detail::strip_comment(lines[i]));
        if (tokens.empty()) {
            continue;
        }
        std::vector<double> nums;
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            const auto x = detail::parse_double(tokens[k]);
            if (!x) {
                throw ParseError("line " + std::to_string(lineno) + ": invalid number '" +
                                     std::string(tokens[k]) + "'",
                                 lineno, ParseError::Location::line);
            }
            nums.push_back(*x);
        }
        if (tokens[0] == "interval") {
            if (nums.size() != 2) {
                throw ParseError("line " + std::to_string(lineno) +
                                     ": 'interval' takes exactly two numbers",
                                 lineno, ParseError::Location::line);
            }
            if (nums[0] > nums[1]) {
                throw ParseError("line " + std::to_string(lineno) + ": interval with left > right",
                                 lineno, ParseError::Location::line);
            }
            segs.push_back({nums[0], nums[1]});
        } else if (tokens[0] == "points") {
            if (nums.empty()) {
                throw ParseError("line " + std::to_string(lineno) +
                                     ": 'points' needs at least one number",
                                 lineno, ParseError::Location::line);
            }
            for (double p : nums) {
                segs.push_back({p, p});
            }
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": expected 'interval' or 'points', got '" +
                                 std::string(tokens[0]) + "'",
                             lineno, ParseError::Location::line);
        }
    }
    if (segs.empty()) {
        throw ParseError("time scale: no 'interval' or 'points' lines", lines.size(),
                         ParseError::Location::line);
    }
    return TimeScale(std::move(segs));
}

std::size_t TimeScale::segment_index(double t) const noexcept {
    // first segment whose right end is >= t
    const auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                                     [](const Segment& s, double x) { return s.right < x; });
    if (it == segments_.end() || t < it->left) {
        return static_cast<std::size_t>(-1);
    }
    return static_cast<std::size_t>(it - segments_.begin());
}

std::size_t TimeScale::require(double t) const {
    const auto k = segment_index(t);
    if (k == static_cast<std::size_t>(-1)) {
        std::ostringstream os;
        os << "point " << detail::format_double(t) << " is not in the time scale";
        throw DomainError(os.str());
    }
    return k;
}

bool TimeScale::contains(double t) const noexcept {
    return segment_index(t) != static_cast<std::size_t>(-1);
}

double TimeScale::sigma(double t) const {
    const auto k = require(t);
    if (t < segments_[k].right) {
        return t;
    }
    return k + 1 < segments_.size() ? segments_[k + 1].left : t;
}

double TimeScale::rho(double t) const {
    const auto k = require(t);
    if (t > segments_[k].left) {
        return t;
    }
    return k > 0 ? segments_[k - 1].right : t;
}

double TimeScale::mu(double t) const { return sigma(t) - t; }

double TimeScale::nu(double t) const { return t - rho(t); }

PointClass TimeScale::classify(double t) const {
    PointClass pc;
    pc.right = sigma(t) == t ? Side::dense : Side::scattered;
    pc.left = rho(t) == t ? Side::dense : Side::scattered;
    return pc;
}

TimeScale TimeScale::truncate_kappa() const {
    if (classify(b()).left == Side::scattered) {
        // left-scattered maximum is necessarily an isolated last segment
        return TimeScale(std::vector<Segment>(segments_.begin(), segments_.end() - 1));
    }
    return *this;
}

TimeScale TimeScale::truncate_kappa_sub() const {
    if (classify(a()).right == Side::scattered) {
        return TimeScale(std::vector<Segment>(segments_.begin() + 1, segments_.end()));
    }
    return *this;
}

TimeScale TimeScale::intersect(const TimeScale& other) const {
    std::vector<Segment> out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& x = segments_;
    const auto& y = other.segments_;
    while (i < x.size() && j < y.size()) {
        const double lo = std::max(x[i].left, y[j].left);
        const double hi = std::min(x[i].right, y[j].right);
        if (lo <= hi) {
            out.push_back({lo, hi});
        }
        if (x[i].right < y[j].right) {
            ++i;
        } else {
            ++j;
        }
    }
    if (out.empty()) {
        throw DegenerateScaleError("time scale intersection is empty");
    }
    return TimeScale(std::move(out));
}

SampleGrid TimeScale::discretize(double h) const {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ParameterError("discretize: step h must be positive and finite");
    }
    std::vector<double> pts;
    std::vector<bool> dense;
    for (const auto& s : segments_) {
        pts.push_back(s.left);
        dense.push_back(false);
        if (s.is_point()) {
            continue;
        }
        const double len = s.length();
        auto n = static_cast<std::size_t>(std::ceil(len / h));
        // a last step shorter than 1e-12*len is rounding noise in len/h
        if (n > 1 && len - static_cast<double>(n - 1) * h <= 1e-12 * len) {
            --n;
        }
        n = std::max<std::size_t>(n, 1);
        for (std::size_t k = 1; k < n; ++k) {
            const double p = s.left + len * (static_cast<double>(k) / static_cast<double>(n));
            if (p > pts.back() && p < s.right) {
                pts.push_back(p);
                dense.push_back(true);
            }
        }
        pts.push_back(s.right);
        dense.push_back(false);
    }
    return SampleGrid(std::move(pts), std::move(dense));
}

std::string TimeScale::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

TimeScale interior_kk2(const TimeScale& T) {
    const auto upper = T.truncate_kappa().truncate_kappa();
    const auto lower = T.truncate_kappa_sub().truncate_kappa_sub();
    return upper.intersect(lower);
}

std::ostream& operator<<(std::ostream& os, const TimeScale& T) {
    for (const auto& s : T.segments()) {
        if (s.is_point()) {
            os << "points " << detail::format_double(s.left) << '\n';
        } else {
            os << "interval " << detail::format_double(s.left) << ' '
               << detail::format_double(s.right) << '\n';
        }
    }
    return os;
}

} // namespace tscv
