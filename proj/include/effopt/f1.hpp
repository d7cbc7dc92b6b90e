#pragma once

#include "effopt/rect.hpp"

namespace effopt {

// Piecewise linear plane function: for each fixed x2 it is convex in x1 with
// three linear pieces broken at x1 = -1 and x1 = 1, for each fixed x1 convex
// in x2 with two pieces broken at x2 = 0, nonnegative, and zero exactly on
// the segment [-1,1] x {0}.  Evaluation is exact dyadic arithmetic.
Dyadic f1_eval(const Dyadic& x1, const Dyadic& x2);

// One-sided slopes along an axis.  Away from the breaks both sides agree;
// on a break the pair is the honest subgradient bracket.
struct OneSided {
  Dyadic left, right;
  bool seam() const { return !(left == right); }
  const Dyadic& value() const {
    if (seam()) throw std::logic_error("two-sided slope queried at a seam");
    return left;
  }
};

OneSided f1_partial(const Dyadic& x1, const Dyadic& x2, int axis);

// Upper bound for |d f1 / d axis| over the rect, from branch coefficients.
Dyadic f1_axis_lipschitz(const Rect& rect, int axis);

}  // namespace effopt
