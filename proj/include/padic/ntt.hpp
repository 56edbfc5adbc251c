#pragma once

#include <cstddef>

#include <gmp.h>

namespace padic {

/// r = a * b for non-negative a, b by a three-prime number-theoretic
/// transform over 64-bit limbs. r may alias a or b.
void ntt_mul(mpz_ptr r, mpz_srcptr a, mpz_srcptr b);

/// Limb count from which poly_mul_trunc hands Kronecker products to ntt_mul.
inline constexpr std::size_t kNttThresholdLimbs = 1024;

}  // namespace padic
