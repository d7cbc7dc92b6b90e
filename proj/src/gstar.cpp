#include "effopt/gstar.hpp"

#include <stdexcept>

namespace effopt {

namespace {

long effective_grid(long grid, int terms) {
  return grid > 0 ? grid : terms + 64;
}

Interval interval_from_rats(const Rat& lo, const Rat& hi, long grid) {
  Dyadic l = is_dyadic(lo) ? to_dyadic_exact(lo) : rat_floor_to_grid(lo, grid);
  Dyadic h = is_dyadic(hi) ? to_dyadic_exact(hi) : rat_ceil_to_grid(hi, grid);
  return Interval(l, h);
}

// c0(n) = sum_{k>=n} xi_k 2^-(k-1), enclosed with `terms` exact summands.
std::pair<Rat, Rat> c0_bounds(const SequenceSpec& seq, int n, int terms) {
  Rat partial = 0;
  for (int k = n; k < n + terms; ++k)
    partial += seq.term(k) * SequenceSpec::pow2_rat(-(k - 1));
  Rat tail = seq.term(n) * SequenceSpec::pow2_rat(-(n + terms - 2));
  return {partial, partial + tail};
}

}  // namespace

Interval gstar_eval(const GStarParams& p, const Dyadic& x, int terms,
                    long grid) {
  if (terms < 1) throw std::invalid_argument("truncation must be >= 1");
  grid = effective_grid(grid, terms);
  Rat t = to_rat(x.abs());
  if (t <= p.seq.limit()) return Interval(Dyadic(0));

  Rat partial = 0;
  for (int n = 1; n <= terms; ++n) {
    Rat xi = p.seq.term(n);
    if (t > xi) {
      Rat d = t - xi;
      partial += d * d * SequenceSpec::pow2_rat(-n);
    }
  }
  Rat reach = t + p.seq.term(1);
  Rat tail = reach * reach * SequenceSpec::pow2_rat(-terms);
  return interval_from_rats(partial, partial + tail, grid);
}

SlopeEnclosure gstar_deriv(const GStarParams& p, const Dyadic& x, int terms,
                           int probe_budget, long grid) {
  if (terms < 1) throw std::invalid_argument("truncation must be >= 1");
  if (probe_budget < 1) throw std::invalid_argument("probe budget must be >= 1");
  grid = effective_grid(grid, terms);
  const SequenceSpec& seq = p.seq;
  Rat t = to_rat(x.abs());
  int sign = x.sign();

  // Flat-segment membership: standard sequences may consult the exact limit,
  // plateau sequences only the public base.
  if (sign == 0) return {Interval(Dyadic(0)), SlopeCert::certified, 0};
  if (seq.kind() == SequenceSpec::Kind::standard) {
    if (t <= seq.limit()) return {Interval(Dyadic(0)), SlopeCert::certified, 0};
  } else if (t <= seq.base()) {
    return {Interval(Dyadic(0)), SlopeCert::certified, 0};
  }

  // Locate the piece: smallest n with xi_n < |x|.
  int piece = 0;
  if (seq.kind() == SequenceSpec::Kind::standard) {
    // |x| > limit here, so the search terminates: 2^-n < |x| - xi* eventually.
    for (int n = 1;; ++n) {
      if (seq.term(n) < t) {
        piece = n;
        break;
      }
      if (n > (1 << 20)) throw std::logic_error("piece search ran away");
    }
  } else {
    for (int n = 1; n <= probe_budget; ++n) {
      if (seq.term(n) < t) {
        piece = n;
        break;
      }
    }
    if (piece == 0) {
      // Unresolved band (base, xi_B]: the true slope magnitude lies between 0
      // and the slope just right of xi_B, where B is the deepest probe.
      int B = probe_budget;
      auto [c0lo, c0hi] = c0_bounds(seq, B + 1, terms);
      Rat c1 = SequenceSpec::pow2_rat(-(B + 1 - 2));
      Rat at_edge_hi = c1 * seq.term(B) - c0lo;  // slope at xi_B, upper bound
      if (at_edge_hi < 0) at_edge_hi = 0;
      Interval mag = interval_from_rats(Rat(0), at_edge_hi, grid);
      Interval val = sign > 0 ? mag : -mag;
      return {val, SlopeCert::one_sided, -1};
    }
  }

  auto [c0lo, c0hi] = c0_bounds(seq, piece, terms);
  Rat c1 = SequenceSpec::pow2_rat(-(piece - 2));
  // x > 0: c1*x - c0;  x < 0: c1*x + c0 (mirror of the positive side).
  Rat pos_lo = c1 * t - c0hi, pos_hi = c1 * t - c0lo;
  Rat vlo = sign > 0 ? pos_lo : Rat(-pos_hi);
  Rat vhi = sign > 0 ? pos_hi : Rat(-pos_lo);
  return {interval_from_rats(vlo, vhi, grid), SlopeCert::certified, piece};
}

}  // namespace effopt
