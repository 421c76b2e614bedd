#pragma once

#include "stochlie/core.hpp"

namespace stochlie {

/// Matrix exponential via scaling-and-squaring with the degree-13 Pade
/// approximant. Accurate to machine precision for double inputs at the
/// small sizes used here.
Matrix expm(const Matrix& a);

}  // namespace stochlie
