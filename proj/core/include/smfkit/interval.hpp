#ifndef SMFKIT_INTERVAL_HPP
#define SMFKIT_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace smfkit::geom {

// Global incidence tolerance for floating-point geometry.
inline constexpr double kTol = 1e-9;

// Closed real interval [lo, hi] with a distinguished EMPTY value.
class Interval {
public:
    Interval() : lo_(0), hi_(0), empty_(true) {} // EMPTY

    Interval(double lo, double hi) : lo_(lo), hi_(hi), empty_(false) {
        if (!(lo <= hi)) {
            throw std::invalid_argument("Interval: lo must not exceed hi");
        }
    }

    static Interval empty() { return {}; }
    static Interval point(double x) { return {x, x}; }

    bool is_empty() const { return empty_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double diameter() const { return empty_ ? 0.0 : hi_ - lo_; }

    bool contains(double x, double tol = 0.0) const {
        return !empty_ && x >= lo_ - tol && x <= hi_ + tol;
    }
    bool contains(const Interval& other, double tol = 0.0) const {
        if (other.empty_) {
            return true;
        }
        return !empty_ && other.lo_ >= lo_ - tol && other.hi_ <= hi_ + tol;
    }

    Interval intersect(const Interval& other) const {
        if (empty_ || other.empty_) {
            return empty();
        }
        const double lo = std::max(lo_, other.lo_);
        const double hi = std::min(hi_, other.hi_);
        return lo <= hi ? Interval(lo, hi) : empty();
    }

    // Minkowski sum.
    friend Interval operator+(const Interval& a, const Interval& b) {
        if (a.empty_ || b.empty_) {
            return empty();
        }
        return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }

    // Image under x -> a*x.
    Interval scaled(double a) const {
        if (empty_) {
            return empty();
        }
        return a >= 0 ? Interval(a * lo_, a * hi_) : Interval(a * hi_, a * lo_);
    }

    Interval shifted(double c) const {
        return empty_ ? empty() : Interval(lo_ + c, hi_ + c);
    }

    Interval inflated(double eps) const {
        return empty_ ? empty() : Interval(lo_ - eps, hi_ + eps);
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        if (a.empty_ != b.empty_) {
            return false;
        }
        return a.empty_ || (a.lo_ == b.lo_ && a.hi_ == b.hi_);
    }

private:
    double lo_;
    double hi_;
    bool empty_;
};

// Exact range image for maps that are nondecreasing on x. The caller
// asserts monotonicity; sin(x)+x qualifies since its slope 1+cos(x) is
// never negative.
inline Interval interval_image_monotone(const std::function<double(double)>& f,
                                        const Interval& x) {
    if (x.is_empty()) {
        return Interval::empty();
    }
    return Interval(f(x.lo()), f(x.hi()));
}

// Axis-aligned box, dimension 1..3.
class Box {
public:
    explicit Box(std::vector<Interval> axes) : axes_(std::move(axes)) {
        if (axes_.empty() || axes_.size() > 3) {
            throw std::invalid_argument("Box: dimension must be 1..3");
        }
    }

    std::size_t dim() const { return axes_.size(); }
    const Interval& axis(std::size_t i) const { return axes_.at(i); }
    const std::vector<Interval>& axes() const { return axes_; }

    bool is_empty() const {
        return std::any_of(axes_.begin(), axes_.end(),
                           [](const Interval& a) { return a.is_empty(); });
    }

private:
    std::vector<Interval> axes_;
};

} // namespace smfkit::geom

#endif
