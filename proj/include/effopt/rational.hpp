#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "effopt/interval.hpp"

namespace effopt {

// Exact rationals appear in two places only: series coefficients built from a
// rational xi-sequence, and the curvature parameter alpha.  Everything they
// touch leaves the kernel as a certified dyadic enclosure.
using Rat = mpq_class;

inline Rat to_rat(const Dyadic& d) {
  Rat r(d.mant());
  if (d.exp() >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(d.exp()));
    r *= Rat(p);
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-d.exp()));
    r /= Rat(p);
  }
  return r;
}

inline bool is_dyadic(const Rat& r) {
  mpz_class den = r.get_den();  // canonical, positive
  return mpz_popcount(den.get_mpz_t()) == 1;
}

inline Dyadic to_dyadic_exact(const Rat& r) {
  mpz_class den = r.get_den();
  long k = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
  return Dyadic(r.get_num(), -k);
}

Dyadic rat_floor_to_grid(const Rat& r, long grid);
Dyadic rat_ceil_to_grid(const Rat& r, long grid);

// Smallest certified interval with endpoints on the 2^-grid lattice; exact
// (zero width) whenever the rational is itself dyadic.
inline Interval enclose_rat(const Rat& r, long grid) {
  if (is_dyadic(r)) return Interval(to_dyadic_exact(r));
  return Interval(rat_floor_to_grid(r, grid), rat_ceil_to_grid(r, grid));
}

// Accepts everything Dyadic::parse does plus arbitrary "p/q" fractions and
// arbitrary terminating decimals.
std::optional<Rat> parse_rational(std::string_view s);

std::string rat_string(const Rat& r);

}  // namespace effopt
