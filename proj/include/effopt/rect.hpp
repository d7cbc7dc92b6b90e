#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "effopt/dyadic.hpp"

namespace effopt {

// Box constraint: a product of closed intervals with dyadic endpoints.
class Rect {
 public:
  explicit Rect(std::vector<std::pair<Dyadic, Dyadic>> axes)
      : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("rect must have an axis");
    for (const auto& [a, b] : axes_)
      if (!(a < b)) throw std::invalid_argument("rect needs a < b per axis");
  }

  // [-a,a] x [-b,b]
  static Rect centered2(const Dyadic& a, const Dyadic& b) {
    if (a.sign() <= 0 || b.sign() <= 0)
      throw std::invalid_argument("half-widths must be positive");
    return Rect({{-a, a}, {-b, b}});
  }

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::pair<Dyadic, Dyadic>& axis(int i) const { return axes_.at(i); }

  bool contains(std::span<const Dyadic> x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (x[i] < axes_[i].first || x[i] > axes_[i].second) return false;
    return true;
  }

  std::vector<Dyadic> midpoint() const {
    std::vector<Dyadic> m;
    m.reserve(axes_.size());
    for (const auto& [a, b] : axes_) m.push_back((a + b).mul_pow2(-1));
    return m;
  }

 private:
  std::vector<std::pair<Dyadic, Dyadic>> axes_;
};

}  // namespace effopt
