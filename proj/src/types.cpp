#include "nhirota/types.hpp"

#include <cmath>

namespace nh {

void Params::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ConfigError("alpha and beta must be finite");
    if (kappa != 1 && kappa != -1) throw ConfigError("kappa must be +1 or -1");
}

}  // namespace nh
