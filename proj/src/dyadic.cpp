#include "effopt/dyadic.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace effopt {

std::string Dyadic::to_string() const {
  if (exp_ >= 0) {
    mpz_class v;
    mpz_mul_2exp(v.get_mpz_t(), mant_.get_mpz_t(),
                 static_cast<unsigned long>(exp_));
    return v.get_str();
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-exp_));
  return mant_.get_str() + "/" + den.get_str();
}

std::string Dyadic::decimal_string() const {
  if (is_zero()) return "0";
  if (exp_ >= 0) {
    mpz_class v;
    mpz_mul_2exp(v.get_mpz_t(), mant_.get_mpz_t(),
                 static_cast<unsigned long>(exp_));
    return v.get_str();
  }
  // m / 2^k == m * 5^k / 10^k
  unsigned long k = static_cast<unsigned long>(-exp_);
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
  mpz_class scaled = mant_ * five;
  bool neg = scaled < 0;
  std::string digits = (neg ? mpz_class(-scaled) : scaled).get_str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  return (neg ? "-" : "") + digits;
}

namespace {

bool is_pow2(const mpz_class& v) {
  return v > 0 && mpz_popcount(v.get_mpz_t()) == 1;
}

std::optional<Dyadic> parse_decimal(std::string_view s) {
  // [sign] digits [. digits]
  std::string intpart, fracpart;
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) intpart += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) fracpart += s[i++];
  }
  if (i != s.size() || (intpart.empty() && fracpart.empty())) return std::nullopt;
  mpz_class num(intpart.empty() ? "0" : intpart);
  for (char c : fracpart) num = num * 10 + (c - '0');
  if (neg) num = -num;
  unsigned long d = fracpart.size();
  if (d == 0) return Dyadic(num, 0);
  // num / 10^d is dyadic iff 5^d divides num
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, d);
  if (!mpz_divisible_p(num.get_mpz_t(), five.get_mpz_t())) return std::nullopt;
  mpz_class m = num / five;
  return Dyadic(m, -static_cast<long>(d));
}

}  // namespace

std::optional<Dyadic> Dyadic::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  // 2^k notation, optionally signed: "2^-10", "-2^3"
  size_t caret = s.find('^');
  if (caret != std::string_view::npos) {
    std::string_view head = s.substr(0, caret), tail = s.substr(caret + 1);
    bool neg = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
      neg = head[0] == '-';
      head = head.substr(1);
    }
    if (head != "2" || tail.empty()) return std::nullopt;
    try {
      long k = std::stol(std::string(tail));
      Dyadic r = Dyadic::pow2(k);
      return neg ? -r : r;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (p.empty() || q.empty()) return std::nullopt;
    try {
      mpz_class num(p), den(q);
      if (!is_pow2(den)) return std::nullopt;
      long k = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
      return Dyadic(num, -k);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return parse_decimal(s);
}

Dyadic floor_to_grid(const Dyadic& x, long grid) {
  if (x.is_zero()) return x;
  if (x.exp() >= -grid) return x;  // already on the grid
  unsigned long shift = static_cast<unsigned long>(-grid - x.exp());
  mpz_class q;
  mpz_fdiv_q_2exp(q.get_mpz_t(), x.mant().get_mpz_t(), shift);
  return Dyadic(q, -grid);
}

Dyadic ceil_to_grid(const Dyadic& x, long grid) {
  if (x.is_zero()) return x;
  if (x.exp() >= -grid) return x;
  unsigned long shift = static_cast<unsigned long>(-grid - x.exp());
  mpz_class q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), x.mant().get_mpz_t(), shift);
  return Dyadic(q, -grid);
}

}  // namespace effopt
