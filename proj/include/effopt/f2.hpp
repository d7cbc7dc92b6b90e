#pragma once

#include "effopt/exp.hpp"
#include "effopt/gstar.hpp"
#include "effopt/rect.hpp"

namespace effopt {

// Smooth companion to f1: gstar(x1) + x2^2 * e^{-alpha*x1} (x2 < 0) or
// x2^2 * e^{+alpha*x1} (x2 >= 0).  Continuously differentiable, strictly
// convex in each coordinate (in x1 for x2 != 0), flat exactly on
// [-limit, limit] x {0}.
struct F2Params {
  GStarParams gstar;
  Rat alpha{1, 10};

  void validate() const {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  }
};

// e^{alpha*x1} when positive_side, else e^{-alpha*x1}.
Interval f2_exp_factor(const F2Params& p, const Dyadic& x1, bool positive_side,
                       int prec);

Interval f2_eval(const F2Params& p, const Dyadic& x1, const Dyadic& x2,
                 int prec);

// d f2 / d x1.  Certification mirrors gstar_deriv.
SlopeEnclosure f2_partial_x1(const F2Params& p, const Dyadic& x1,
                             const Dyadic& x2, int prec,
                             int probe_budget = 64);

// d f2 / d x2 = 2 * x2 * e^{+-alpha*x1}; exactly zero on the x1-axis.
Interval f2_partial_x2(const F2Params& p, const Dyadic& x1, const Dyadic& x2,
                       int prec);

// Upper bound for |d f2 / d axis| over the rect via interval evaluation.
Dyadic f2_axis_lipschitz(const F2Params& p, const Rect& rect, int axis,
                         int prec = 53);

// Interval scaled by an exact rational, outward-rounded at 2^-grid.
Interval scale_rat(const Interval& v, const Rat& r, long grid);

}  // namespace effopt
