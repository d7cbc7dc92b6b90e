#include "effopt/exp.hpp"

#include <stdexcept>

namespace effopt {
namespace {

// Taylor sum of e^u for |u| <= 1/2 in fixed point at scale 2^-W.
// Terms are carried truncated toward zero; each step loses at most 2 ulps of
// its own and halves the inherited error, so every term is within 4 ulps and
// the summed slop is below 4K.
mpz_class taylor_fixed(const Dyadic& u, long W, int K, long* err_ulps) {
  mpz_class term = 1;
  mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(W));
  mpz_class sum = term;
  const mpz_class& m = u.mant();
  long e = u.exp();
  for (int k = 1; k <= K; ++k) {
    term *= m;
    if (e >= 0) {
      mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(e));
    } else {
      mpz_tdiv_q_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(-e));
    }
    mpz_tdiv_q_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(k));
    sum += term;
  }
  *err_ulps = 4L * K;
  return sum;
}

Interval raw_exp_point(const Dyadic& t, int prec) {
  if (t.is_zero()) return Interval(Dyadic(1));
  long L = t.floor_log2_abs();
  if (L > 20) throw std::domain_error("exp argument out of supported range");
  long s = std::max<long>(0, L + 2);                 // |t * 2^-s| <= 1/2
  long growth = (L >= 0 ? (2L << (L + 1)) : 2) + 2;  // covers log2(e^|t|)
  long w = prec + 2 * s + growth + 16;

  for (;; w += 32) {
    // remainder of the K-term series: 2^-K / (K+1)!
    int K = 1;
    {
      mpz_class fact = 2, bound = 1;
      mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(),
                   static_cast<unsigned long>(w + 12));
      mpz_class lhs = fact;
      mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(K));
      while (lhs < bound) {
        ++K;
        fact *= K + 1;
        lhs = fact;
        mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(K));
      }
    }

    long W = w + 10;
    Dyadic tp = t.mul_pow2(-s);
    // Rounding the reduced argument to W bits costs at most
    // e^(1/2) * 2^-(W+?) which 16 ulps at scale W cover comfortably.
    Dyadic u = floor_to_grid(tp, W);
    long err = 0;
    mpz_class sum = taylor_fixed(u, W, K, &err);
    mpz_class rem;
    {
      mpz_class fact = 1;
      for (int k = 2; k <= K + 1; ++k) fact *= k;
      mpz_class num = 1;
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(),
                   static_cast<unsigned long>(W - K > 0 ? W - K : 0));
      mpz_cdiv_q(rem.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
      rem += 1;
    }
    mpz_class slack = rem + err + 16;
    Interval enc(Dyadic(sum - slack, -W), Dyadic(sum + slack, -W));
    if (enc.lo().sign() <= 0) continue;  // parameters too loose, retry wider

    // undo the argument reduction: square s times, rounding outward
    bool ok = true;
    for (long i = 0; i < s; ++i) {
      Dyadic lo = enc.lo() * enc.lo(), hi = enc.hi() * enc.hi();
      enc = Interval(floor_to_grid(lo, w), ceil_to_grid(hi, w));
      if (enc.lo().sign() <= 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (enc.width() <= Dyadic::pow2(-prec)) return enc;
  }
}

}  // namespace

Interval exp_point(const Dyadic& t, int prec) {
  if (prec < 1) throw std::invalid_argument("exp precision must be >= 1");
  Interval e = raw_exp_point(t, prec);
  if (prec > 8) e = Interval::intersect(e, exp_point(t, prec - 8));
  return e;
}

Interval interval_exp(const Interval& x, int prec) {
  if (prec < 1) throw std::invalid_argument("exp precision must be >= 1");
  if (x.is_point()) return exp_point(x.lo(), prec);
  Interval lo = exp_point(x.lo(), prec + 1);
  Interval hi = exp_point(x.hi(), prec + 1);
  return Interval(lo.lo(), hi.hi());
}

}  // namespace effopt
