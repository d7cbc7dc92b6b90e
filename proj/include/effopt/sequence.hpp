#pragma once

#include <functional>
#include <stdexcept>

#include "effopt/rational.hpp"

namespace effopt {

// Strictly decreasing rational sequence xi_1 > xi_2 > ... with limit in (0,1).
//
// standard:  xi_n = xi* + 2^-n, limit xi* (the limit is public knowledge).
// plateau:   agrees with a standard sequence based on xi_base up to the
//            hidden index K, then settles onto xi_base + 2^-(K+1) instead:
//            xi_n = xi_base + 2^-(K+1) + 2^-(n+1) for n > K.  Any observer
//            reading at most K terms cannot tell the two limits apart even
//            though they differ by exactly 2^-(K+1).
class SequenceSpec {
 public:
  enum class Kind { standard, plateau };

  static SequenceSpec standard(Rat xi_star) {
    if (!(xi_star > 0 && xi_star < 1))
      throw std::invalid_argument("xi* must lie in (0,1)");
    return SequenceSpec(Kind::standard, std::move(xi_star), 0);
  }

  static SequenceSpec plateau(Rat xi_base, int hidden_index) {
    if (hidden_index < 1) throw std::invalid_argument("hidden index must be >= 1");
    if (xi_base < 0) throw std::invalid_argument("xi base must be >= 0");
    Rat limit = xi_base + pow2_rat(-(hidden_index + 1));
    if (!(limit > 0 && limit < 1))
      throw std::invalid_argument("plateau limit must lie in (0,1)");
    return SequenceSpec(Kind::plateau, std::move(xi_base), hidden_index);
  }

  Kind kind() const { return kind_; }
  const Rat& base() const { return base_; }
  int hidden_index() const { return hidden_; }

  Rat term(int n) const {
    if (n < 1) throw std::invalid_argument("sequence index starts at 1");
    if (kind_ == Kind::standard || n <= hidden_)
      return base_ + pow2_rat(-n);
    return base_ + pow2_rat(-(hidden_ + 1)) + pow2_rat(-(n + 1));
  }

  Rat limit() const {
    if (kind_ == Kind::standard) return base_;
    return base_ + pow2_rat(-(hidden_ + 1));
  }

  static Rat pow2_rat(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k >= 0 ? k : -k));
    return k >= 0 ? Rat(p) : Rat(1, p);
  }

 private:
  SequenceSpec(Kind k, Rat b, int h) : kind_(k), base_(std::move(b)), hidden_(h) {}

  Kind kind_;
  Rat base_;
  int hidden_;
};

// Read-counting view used to run stopping rules as black boxes with a strict
// query budget.
class CountingSequence {
 public:
  CountingSequence(const SequenceSpec& seq, int budget)
      : seq_(seq), budget_(budget) {}

  Rat operator()(int n) {
    if (reads_ >= budget_) throw std::runtime_error("sequence query budget exhausted");
    ++reads_;
    return seq_.term(n);
  }
  int reads() const { return reads_; }

 private:
  const SequenceSpec& seq_;
  int budget_;
  int reads_ = 0;
};

}  // namespace effopt
