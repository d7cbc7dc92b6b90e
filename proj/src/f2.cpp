#include "effopt/f2.hpp"

namespace effopt {

namespace {

// Truncation depth making the gstar tail 2^-N (|x|+xi_1)^2 beat 2^-prec.
int gstar_terms_for(const GStarParams& g, const Dyadic& x, int prec) {
  Rat reach = to_rat(x.abs()) + g.seq.term(1);
  Rat sq = reach * reach;
  long bits = 1;
  if (sq >= 1) {
    mpz_class q = sq.get_num() / sq.get_den();
    bits += static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
  }
  int n = prec + 2 + static_cast<int>(bits);
  return std::max(g.default_terms, n);
}

}  // namespace

Interval scale_rat(const Interval& v, const Rat& r, long grid) {
  if (is_dyadic(r)) return v.scaled(to_dyadic_exact(r));
  Rat lo = to_rat(v.lo()) * r, hi = to_rat(v.hi()) * r;
  if (r < 0) std::swap(lo, hi);
  return Interval(rat_floor_to_grid(lo, grid), rat_ceil_to_grid(hi, grid));
}

Interval f2_exp_factor(const F2Params& p, const Dyadic& x1, bool positive_side,
                       int prec) {
  Rat arg = p.alpha * to_rat(x1);
  if (!positive_side) arg = -arg;
  Interval arg_enc = enclose_rat(arg, prec + 8);
  return interval_exp(arg_enc, prec + 2);
}

Interval f2_eval(const F2Params& p, const Dyadic& x1, const Dyadic& x2,
                 int prec) {
  if (prec < 1) throw std::invalid_argument("precision must be >= 1");
  p.validate();
  int terms = gstar_terms_for(p.gstar, x1, prec + 1);
  Interval g = gstar_eval(p.gstar, x1, terms, prec + 64);
  if (x2.is_zero()) return g;
  Interval well = f2_exp_factor(p, x1, x2.sign() > 0, prec + 2).scaled(x2 * x2);
  return g + well;
}

SlopeEnclosure f2_partial_x1(const F2Params& p, const Dyadic& x1,
                             const Dyadic& x2, int prec, int probe_budget) {
  if (prec < 1) throw std::invalid_argument("precision must be >= 1");
  p.validate();
  int terms = std::max(p.gstar.default_terms, prec + 4);
  SlopeEnclosure g = gstar_deriv(p.gstar, x1, terms, probe_budget, prec + 64);
  if (x2.is_zero()) return g;
  bool pos = x2.sign() > 0;
  Interval well = f2_exp_factor(p, x1, pos, prec + 2).scaled(x2 * x2);
  Interval du = scale_rat(well, pos ? p.alpha : -p.alpha, prec + 8);
  return {g.value + du, g.cert, g.piece};
}

Interval f2_partial_x2(const F2Params& p, const Dyadic& x1, const Dyadic& x2,
                       int prec) {
  p.validate();
  if (x2.is_zero()) return Interval(Dyadic(0));
  Interval factor = f2_exp_factor(p, x1, x2.sign() > 0, prec + 2);
  return factor.scaled(x2.mul_pow2(1));
}

Dyadic f2_axis_lipschitz(const F2Params& p, const Rect& rect, int axis,
                         int prec) {
  p.validate();
  auto absmax = [](const std::pair<Dyadic, Dyadic>& ax) {
    Dyadic a = ax.first.abs(), b = ax.second.abs();
    return a > b ? a : b;
  };
  Dyadic A = absmax(rect.axis(0)), B = absmax(rect.axis(1));
  Interval e_hi = f2_exp_factor(p, A, true, prec);  // e^{alpha*A} dominates
  if (axis == 1) return e_hi.scaled(B.mul_pow2(1)).hi();
  // |gstar'| <= 2 * (A - limit)+ <= 2A on [-A, A]; well term <= alpha B^2 e^{alpha A}
  Interval well = scale_rat(e_hi.scaled(B * B), p.alpha, prec);
  return A.mul_pow2(1) + well.hi();
}

}  // namespace effopt
