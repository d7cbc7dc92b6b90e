#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace effopt {

// Exact binary rational m * 2^e with arbitrary-size mantissa.
// Canonical form: m is odd or zero; zero carries e = 0.
// Addition, subtraction and multiplication never round.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : mant_(v) { canonicalize(); }  // NOLINT: implicit on purpose
  Dyadic(int v) : mant_(v) { canonicalize(); }   // NOLINT
  Dyadic(mpz_class m, long e) : mant_(std::move(m)), exp_(e) { canonicalize(); }

  // 2^k, including negative k.
  static Dyadic pow2(long k) { return Dyadic(mpz_class(1), k); }

  const mpz_class& mant() const { return mant_; }
  long exp() const { return exp_; }

  bool is_zero() const { return mant_ == 0; }
  int sign() const { return sgn(mant_); }
  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  // Exact scaling by 2^k.
  Dyadic mul_pow2(long k) const {
    if (is_zero()) return Dyadic();
    Dyadic r;
    r.mant_ = mant_;
    r.exp_ = exp_ + k;
    return r;
  }

  friend Dyadic operator-(const Dyadic& a) {
    Dyadic r;
    r.mant_ = -a.mant_;
    r.exp_ = a.exp_;
    if (r.mant_ == 0) r.exp_ = 0;
    return r;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exp_, b.exp_);
    mpz_class m;
    mpz_mul_2exp(m.get_mpz_t(), a.mant_.get_mpz_t(),
                 static_cast<unsigned long>(a.exp_ - e));
    mpz_class mb;
    mpz_mul_2exp(mb.get_mpz_t(), b.mant_.get_mpz_t(),
                 static_cast<unsigned long>(b.exp_ - e));
    m += mb;
    return Dyadic(std::move(m), e);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    Dyadic r;
    r.mant_ = a.mant_ * b.mant_;  // odd * odd stays odd
    r.exp_ = a.exp_ + b.exp_;
    return r;
  }

  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  // Three-way comparison of the exact values.
  friend int cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    Dyadic d = a - b;
    return d.sign();
  }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

  // floor(log2 |x|); undefined for zero.
  long floor_log2_abs() const {
    return exp_ + static_cast<long>(mpz_sizeinbase(mant_.get_mpz_t(), 2)) - 1;
  }

  double to_double() const {
    long ex = 0;
    double d = mpz_get_d_2exp(&ex, mant_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(ex + exp_));
  }

  // "m/2^k" for negative exponents, plain integer otherwise.
  std::string to_string() const;
  // Exact decimal expansion (dyadics always terminate).
  std::string decimal_string() const;

  // Accepts integers, "p/q" with q a power of two, terminating decimals that
  // are exact in binary, and "2^-k" / "-2^-k". Anything else: nullopt.
  static std::optional<Dyadic> parse(std::string_view s);

 private:
  mpz_class mant_{0};
  long exp_{0};

  void canonicalize() {
    if (mant_ == 0) {
      exp_ = 0;
      return;
    }
    auto tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
      exp_ += static_cast<long>(tz);
    }
  }
};

// Largest multiple of 2^-grid that is <= x.  Exact when x already lies on
// the grid.
Dyadic floor_to_grid(const Dyadic& x, long grid);
// Smallest multiple of 2^-grid that is >= x.
Dyadic ceil_to_grid(const Dyadic& x, long grid);

enum class ArithKind { add, sub, mul };
inline Dyadic dyadic_arith(const Dyadic& a, const Dyadic& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return a + b;
    case ArithKind::sub: return a - b;
    default: return a * b;
  }
}

}  // namespace effopt
