#pragma once

#include "effopt/interval.hpp"
#include "effopt/sequence.hpp"

namespace effopt {

// The convex series function built from a xi-sequence: a sum of shifted
// squared hinges 2^-n * hinge_n(x), flat exactly on [-limit, limit], with a
// piecewise linear derivative whose pieces are delimited by the xi_n.
struct GStarParams {
  SequenceSpec seq;
  int default_terms = 53;
};

// Enclosure [S_N, S_N + T_N]: the exact N-term partial sum plus the tail
// bound 2^-N * (|x| + xi_1)^2.  Exactly [0,0] when |x| <= limit.
// Endpoints stay bit-exact dyadic whenever the sequence is dyadic; otherwise
// they are rounded outward at 2^-grid.
Interval gstar_eval(const GStarParams& p, const Dyadic& x, int terms,
                    long grid = 0);

enum class SlopeCert {
  certified,  // piece located (or flat segment membership proven)
  one_sided,  // |x| below every probed xi_n but above the public base:
              // membership in the flat segment cannot be confirmed
};

struct SlopeEnclosure {
  Interval value;
  SlopeCert cert = SlopeCert::certified;
  int piece = 0;  // n of the active linear piece; 0 = flat segment; -1 = hull
};

// Derivative enclosure.  Piece slopes c1(n) = 2^-(n-2) are exact; offsets
// c0(n) are enclosed by an N-term partial sum plus the tail bound
// xi_n * 2^-(n+N-2).  Standard sequences always certify (their limit is
// public); plateau sequences only consult probed terms and the public base,
// and return a one_sided hull for inputs in the unresolved band.
SlopeEnclosure gstar_deriv(const GStarParams& p, const Dyadic& x, int terms,
                           int probe_budget = 64, long grid = 0);

}  // namespace effopt
