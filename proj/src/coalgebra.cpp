#include "ckspace/coalgebra.hpp"

#include <stdexcept>

namespace ckspace {

void ModelParams::validate() const {
  for (double v : {z, b1, b2, beta0, k, gamma}) {
    if (!std::isfinite(v)) throw std::invalid_argument("ModelParams: non-finite constant");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("ModelParams: sign must be +1 or -1");
}

}  // namespace ckspace
