#pragma once

#include <vector>

#include <gmpxx.h>

#include "rf/errors.hpp"

namespace rf {

// In-place LLL reduction (delta = 3/4) of an integer row basis. All-integer
// bookkeeping (Gram determinants d_i and scaled coefficients lambda_{i,j}), so
// no precision loss at any entry size. Rows must be linearly independent.
void lll_reduce(std::vector<std::vector<mpz_class>>& basis);

}  // namespace rf
