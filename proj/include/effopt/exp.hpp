#pragma once

#include "effopt/interval.hpp"

namespace effopt {

// Certified enclosure of e^t at a dyadic point; width <= 2^-prec.
Interval exp_point(const Dyadic& t, int prec);

// Enclosure of { e^y : y in x }.  Width <= width(x) * e^hi(x) + 2^-prec.
// Refining prec by 8 never widens the result.
Interval interval_exp(const Interval& x, int prec);

}  // namespace effopt
