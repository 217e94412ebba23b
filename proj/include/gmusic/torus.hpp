#ifndef GMUSIC_TORUS_HPP
#define GMUSIC_TORUS_HPP

//
// Geometry of point sets on the torus T = R/2piZ: wrap-around distance,
// minimum separation, and permutation-minimized l-infinity matching.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gmusic/errors.hpp"

namespace gmusic {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Canonicalize a real angle into [0, 2pi). Values within 1e-12 of 2pi map
// to 0 so floating-point drift cannot produce duplicate endpoints.
inline double canonicalize_angle(double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("canonicalize_angle: non-finite input");
    double v = t - two_pi * std::floor(t / two_pi);
    if (v < 0.0) v += two_pi;
    if (v >= two_pi || two_pi - v < 1e-12) v = 0.0;
    return v;
}

// |u - v|_T = min over integers l of |u - v + 2*pi*l|, always in [0, pi].
inline double wrap_distance(double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v))
        throw std::invalid_argument("wrap_distance: non-finite input");
    double d = std::fmod(std::fabs(u - v), two_pi);
    return std::min(d, two_pi - d);
}

// A point on the torus, canonicalized to [0, 2pi).
class TorusPoint {
public:
    TorusPoint() : value_(0.0) {}
    explicit TorusPoint(double t) : value_(canonicalize_angle(t)) {}

    double value() const noexcept { return value_; }

    friend bool operator<(TorusPoint a, TorusPoint b) { return a.value_ < b.value_; }
    friend bool operator==(TorusPoint a, TorusPoint b) { return a.value_ == b.value_; }

private:
    double value_;
};

// Strictly increasing set of points on the torus; the unknown frequencies.
class FrequencySet {
public:
    FrequencySet() = default;

    // Points are canonicalized, sorted, and checked for duplicates.
    explicit FrequencySet(std::vector<double> pts) {
        if (pts.empty())
            throw std::invalid_argument("FrequencySet: empty point set");
        points_.reserve(pts.size());
        for (double t : pts) points_.push_back(canonicalize_angle(t));
        std::sort(points_.begin(), points_.end());
        for (std::size_t j = 1; j < points_.size(); ++j)
            if (points_[j] == points_[j - 1])
                throw std::invalid_argument("FrequencySet: duplicate point");
    }

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t j) const { return points_[j]; }
    const std::vector<double>& values() const noexcept { return points_; }

    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<double> points_;
};

// Delta(x) = min_{j != k} |x_j - x_k|_T. A singleton returns 2pi by
// convention: it trivially satisfies any separation bound.
inline double min_separation(const FrequencySet& x) {
    const std::size_t r = x.size();
    if (r == 1) return two_pi;
    double best = std::numeric_limits<double>::infinity();
    // points are sorted, so only consecutive gaps plus the wrap gap matter
    for (std::size_t j = 1; j < r; ++j)
        best = std::min(best, x[j] - x[j - 1]);
    best = std::min(best, two_pi - (x[r - 1] - x[0]));
    return best;
}

// min over bijections sigma of max_j |x_j - y_{sigma(j)}|_T.
// For circularly sorted sets the optimum is attained by a cyclic shift of
// the sorted order, so all r shifts are evaluated (O(r^2)).
inline double matching_distance_inf(const FrequencySet& x, const FrequencySet& y) {
    const std::size_t r = x.size();
    if (r != y.size())
        throw std::invalid_argument("matching_distance_inf: cardinality mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < r; ++s) {
        double worst = 0.0;
        for (std::size_t j = 0; j < r; ++j)
            worst = std::max(worst, wrap_distance(x[j], y[(j + s) % r]));
        best = std::min(best, worst);
    }
    return best;
}

} // namespace gmusic

#endif
