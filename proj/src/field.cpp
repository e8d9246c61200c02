#include "csplit/field.hpp"

#include <string>

#include "csplit/errors.hpp"

namespace csplit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 2 || p > 2147483647u || !is_prime(p))
    throw InvalidInput("field modulus " + std::to_string(p) + " is not a prime in [2, 2^31-1]");
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw InvariantViolation("inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

}  // namespace csplit
