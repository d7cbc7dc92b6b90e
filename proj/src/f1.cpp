#include "effopt/f1.hpp"

namespace effopt {

namespace {

const Dyadic kOne{1}, kThree{3};

// x2 >= 0 half.
Dyadic upper_eval(const Dyadic& x1, const Dyadic& x2) {
  Dyadic half_x2 = x2.mul_pow2(-1);
  if (x1 < -kOne) return -(kOne + half_x2) * x1 + (half_x2 - kOne);
  if (x1 > kOne) return (kOne + half_x2) * x1 + (kThree * half_x2 - kOne);
  return (x2 * x1 + kThree * x2).mul_pow2(-1);
}

// x2 <= 0 half.
Dyadic lower_eval(const Dyadic& x1, const Dyadic& x2) {
  Dyadic half_x2 = x2.mul_pow2(-1);
  if (x1 < -kOne) return (half_x2 - kOne) * x1 - (kThree * half_x2 + kOne);
  if (x1 > kOne) return (kOne - half_x2) * x1 - (half_x2 + kOne);
  return (x2 * x1 - kThree * x2).mul_pow2(-1);
}

// Slope in x1 within one half-plane; region -1 / 0 / +1 relative to the breaks.
Dyadic slope1(const Dyadic& x2, bool upper, int region) {
  Dyadic half_x2 = x2.mul_pow2(-1);
  if (region == 0) return half_x2;
  if (upper) return region < 0 ? -(kOne + half_x2) : kOne + half_x2;
  return region < 0 ? half_x2 - kOne : kOne - half_x2;
}

// Slope in x2 within one half-plane.
Dyadic slope2(const Dyadic& x1, bool upper, int region) {
  Dyadic half_x1 = x1.mul_pow2(-1);
  Dyadic half = kOne.mul_pow2(-1), three_half = kThree.mul_pow2(-1);
  if (upper) {
    if (region < 0) return -half_x1 + half;
    if (region > 0) return half_x1 + three_half;
    return half_x1 + three_half;  // (x1 + 3)/2
  }
  if (region < 0) return half_x1 - three_half;
  if (region > 0) return -half_x1 - half;
  return half_x1 - three_half;  // (x1 - 3)/2
}

int region_of(const Dyadic& x1) {
  if (x1 < -kOne) return -1;
  if (x1 > kOne) return 1;
  return 0;
}

}  // namespace

Dyadic f1_eval(const Dyadic& x1, const Dyadic& x2) {
  return x2.sign() >= 0 ? upper_eval(x1, x2) : lower_eval(x1, x2);
}

OneSided f1_partial(const Dyadic& x1, const Dyadic& x2, int axis) {
  if (axis != 0 && axis != 1) throw std::invalid_argument("axis must be 0 or 1");
  bool upper = x2.sign() >= 0;
  int region = region_of(x1);
  if (axis == 0) {
    // d/dx1 is continuous across x2 = 0; the only breaks are x1 = +-1.
    if (x1 == -kOne) return {slope1(x2, upper, -1), slope1(x2, upper, 0)};
    if (x1 == kOne) return {slope1(x2, upper, 0), slope1(x2, upper, 1)};
    Dyadic s = slope1(x2, upper, region);
    return {s, s};
  }
  // d/dx2 is continuous across x1 = +-1; the only break is x2 = 0.
  if (x2.is_zero()) return {slope2(x1, false, region), slope2(x1, true, region)};
  Dyadic s = slope2(x1, upper, region);
  return {s, s};
}

Dyadic f1_axis_lipschitz(const Rect& rect, int axis) {
  auto absmax = [](const std::pair<Dyadic, Dyadic>& ax) {
    Dyadic a = ax.first.abs(), b = ax.second.abs();
    return a > b ? a : b;
  };
  if (axis == 0) {
    // |slope| <= 1 + |x2|/2
    return Dyadic(1) + absmax(rect.axis(1)).mul_pow2(-1);
  }
  // |slope| <= (|x1| + 3)/2
  return (absmax(rect.axis(0)) + Dyadic(3)).mul_pow2(-1);
}

}  // namespace effopt
