#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "effopt/f2.hpp"
#include "effopt/interval.hpp"
#include "effopt/rect.hpp"

namespace effopt {

// Raised when a derivative enclosure straddles zero at the full precision
// budget, so no bisection step can be certified.  This is the effectiveness
// obstruction itself, not a numerical accident.
struct NoCertifiedSign : std::runtime_error {
  Dyadic at;
  int prec_reached;
  NoCertifiedSign(Dyadic point, int prec)
      : std::runtime_error("no certified derivative sign at " +
                           point.to_string() + " within precision budget"),
        at(std::move(point)),
        prec_reached(prec) {}
};

// The set of minimizers of a one-variable restriction: either a shrinking
// enclosure of a unique point or a segment.  outer_only marks segments that
// are only known to contain the true minimizer set.
struct LocalMinSet {
  enum class Kind { singleton, segment };
  enum class Certification { two_sided, outer_only };

  Kind kind = Kind::singleton;
  Interval point;       // singleton enclosure
  Interval seg_lo, seg_hi;  // segment endpoint enclosures
  Certification cert = Certification::two_sided;

  static LocalMinSet singleton(Interval p) {
    LocalMinSet s;
    s.kind = Kind::singleton;
    s.point = std::move(p);
    return s;
  }
  static LocalMinSet segment(Interval lo, Interval hi, Certification c) {
    LocalMinSet s;
    s.kind = Kind::segment;
    s.seg_lo = std::move(lo);
    s.seg_hi = std::move(hi);
    s.cert = c;
    return s;
  }
};

// Tie-breaking rule choosing one element of a minimizer segment.  The choice
// is always explicit; nothing in the library picks silently.
struct AssignmentPolicy {
  enum class Kind { left_end, right_end, midpoint, fixed };
  Kind kind = Kind::midpoint;
  Dyadic fixed_value;

  static AssignmentPolicy left() { return {Kind::left_end, Dyadic()}; }
  static AssignmentPolicy right() { return {Kind::right_end, Dyadic()}; }
  static AssignmentPolicy mid() { return {Kind::midpoint, Dyadic()}; }
  static AssignmentPolicy fixed(Dyadic v) { return {Kind::fixed, std::move(v)}; }

  Dyadic choose(const Dyadic& lo, const Dyadic& hi) const {
    switch (kind) {
      case Kind::left_end: return lo;
      case Kind::right_end: return hi;
      case Kind::midpoint: return (lo + hi).mul_pow2(-1);
      default:
        if (fixed_value < lo || fixed_value > hi)
          throw std::invalid_argument("fixed policy value outside the segment");
        return fixed_value;
    }
  }
};

// Minimizer sets and assignment functions of f1 (half-width a of the first
// rect axis; the step levels are +-min(1, a)).
LocalMinSet m1_f1(const Dyadic& x2, const Dyadic& a = Dyadic(2));
Dyadic g1_f1(const Dyadic& x2, const AssignmentPolicy& policy,
             const Dyadic& a = Dyadic(2));
Dyadic g2_f1(const Dyadic& x1);

struct PrecBudget {
  int start = 64;
  int max = 4096;
};

// Certified derivative enclosure of the function being minimized.
using DerivOracle = std::function<Interval(const Dyadic&, int prec)>;

// Certified-sign bisection on the derivative of a convex function.  Returns
// a singleton enclosure of width <= tol (or an exact point when a probe hits
// derivative zero).  Falls back to an endpoint when the derivative has a
// constant certified sign.  Throws NoCertifiedSign when a probe cannot be
// signed within the budget.
LocalMinSet convex_1d_min(const DerivOracle& deriv, const Interval& dom,
                          const Dyadic& tol, const PrecBudget& budget = {});

// Minimizer of f2(., x2) over the first rect axis for x2 != 0.
Interval g1_f2(const F2Params& p, const Dyadic& x2, const Dyadic& tol,
               const Rect& rect, const PrecBudget& budget = {},
               int probe_budget = 64);

// Full minimizer set of f2 in the first coordinate.  x2 != 0 yields the
// certified singleton; x2 = 0 yields the flat segment, with two-sided
// certified endpoints for standard sequences and an outer-only hull
// [-xi_B, xi_B] (B = probe budget) when the sequence hides its limit.
LocalMinSet m1_f2(const F2Params& p, const Dyadic& x2, const Rect& rect,
                  const Dyadic& tol, const PrecBudget& budget = {},
                  int probe_budget = 64);

// A box objective with certified evaluation and per-axis Lipschitz bounds.
// lower_on, when set, gives a tighter certified lower bound of f over an
// axis-aligned cell; cells fall back to center-value minus Lipschitz radius
// without it.
struct BoxObjective {
  int dim = 0;
  std::function<Interval(std::span<const Dyadic>, int prec)> eval;
  std::vector<Dyadic> axis_lipschitz;
  std::function<Dyadic(std::span<const Interval>, int prec)> lower_on;
};

BoxObjective f1_objective(const Rect& rect);
BoxObjective f2_objective(const F2Params& p, const Rect& rect);
// One-dimensional slice y -> f1(y, x2).
BoxObjective f1_slice_objective(const Dyadic& x2, const Rect& rect);

// Enclosure of min over the rect, width <= tol, by Lipschitz branch and
// bound on cell centers.  prec = 0 scales evaluation precision to tol.
Interval global_min_enclosure(const BoxObjective& f, const Rect& rect,
                              const Dyadic& tol, int prec = 0);

// max(|G(-delta) - amp|, |G(delta) + amp|): how far a would-be approximant
// sits from the two-level step of amplitude amp at +-delta.  Certified to be
// >= amp - L*delta for every L-Lipschitz G.
Dyadic approx_gap(const std::function<Dyadic(const Dyadic&)>& g,
                  const Dyadic& delta, const Dyadic& amp = Dyadic(1));

}  // namespace effopt
