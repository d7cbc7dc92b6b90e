#pragma once

#include <functional>

#include "effopt/dyadic.hpp"

namespace effopt {

// Stage-indexed rational approximants r_n of some real x, promising
// |x - r_n| <= 2^-n.  The accessor is the whole interface; the contract is
// what the checks below interrogate.
struct Representation {
  std::function<Dyadic(int)> at;

  Dyadic operator()(int n) const { return at(n); }
};

// True iff |limit - r_n| <= 2^-n for every n = 0..N.  The limit must be the
// exact limit, which is only available for test fixtures.
bool effective_convergence_check(const Representation& rep, const Dyadic& limit,
                                 int N);

// The index at which the representation contract guarantees error <= 2^-M.
// Trivially M; it is the honest baseline that adversarial sequences defeat.
int stopping_index(const Representation& rep, int M);

}  // namespace effopt
