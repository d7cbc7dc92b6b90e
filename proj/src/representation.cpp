#include "effopt/representation.hpp"

#include <stdexcept>

namespace effopt {

bool effective_convergence_check(const Representation& rep, const Dyadic& limit,
                                 int N) {
  for (int n = 0; n <= N; ++n) {
    Dyadic err = (limit - rep.at(n)).abs();
    if (err > Dyadic::pow2(-n)) return false;
  }
  return true;
}

int stopping_index(const Representation&, int M) {
  if (M < 0) throw std::invalid_argument("target exponent must be >= 0");
  return M;
}

}  // namespace effopt
