#pragma once

#include <stdexcept>

#include "effopt/dyadic.hpp"

namespace effopt {

// Closed interval with exact dyadic endpoints.  Every enclosure-producing
// operation in this library returns an Interval guaranteed to contain the
// exact real value.
class Interval {
 public:
  Interval() = default;  // [0, 0]
  Interval(Dyadic point) : lo_(point), hi_(std::move(point)) {}  // NOLINT
  Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("interval endpoints out of order");
  }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).mul_pow2(-1); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo_ - b.hi_, a.hi_ - b.lo_};
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Dyadic c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    Dyadic lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
      if (c[i] < lo) lo = c[i];
      if (c[i] > hi) hi = c[i];
    }
    return {lo, hi};
  }

  // Exact scaling.
  Interval scaled(const Dyadic& s) const {
    if (s.sign() >= 0) return {lo_ * s, hi_ * s};
    return {hi_ * s, lo_ * s};
  }
  Interval mul_pow2(long k) const { return {lo_.mul_pow2(k), hi_.mul_pow2(k)}; }

  static Interval hull(const Interval& a, const Interval& b) {
    return {a.lo_ < b.lo_ ? a.lo_ : b.lo_, a.hi_ > b.hi_ ? a.hi_ : b.hi_};
  }

  // Intersection of two enclosures of the same quantity.  Throws if the
  // inputs are disjoint, which would mean one of them was not sound.
  static Interval intersect(const Interval& a, const Interval& b) {
    Dyadic lo = a.lo_ > b.lo_ ? a.lo_ : b.lo_;
    Dyadic hi = a.hi_ < b.hi_ ? a.hi_ : b.hi_;
    if (lo > hi) throw std::logic_error("disjoint enclosures of one value");
    return {lo, hi};
  }

 private:
  Dyadic lo_, hi_;
};

}  // namespace effopt
