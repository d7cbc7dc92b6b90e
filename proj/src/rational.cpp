#include "effopt/rational.hpp"

#include <cctype>

namespace effopt {

Dyadic rat_floor_to_grid(const Rat& r, long grid) {
  // floor(r * 2^grid) * 2^-grid
  mpz_class num = r.get_num(), den = r.get_den();
  if (grid >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(grid));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-grid));
  }
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Dyadic(q, -grid);
}

Dyadic rat_ceil_to_grid(const Rat& r, long grid) {
  mpz_class num = r.get_num(), den = r.get_den();
  if (grid >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(grid));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-grid));
  }
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Dyadic(q, -grid);
}

std::optional<Rat> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (auto d = Dyadic::parse(s)) return to_rat(*d);
  size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (p.empty() || q.empty()) return std::nullopt;
    try {
      mpz_class num(p), den(q);
      if (den == 0) return std::nullopt;
      Rat r(num, den);
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  // terminating decimal with a non-dyadic value, e.g. "0.1"
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
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, fracpart.size());
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace effopt
