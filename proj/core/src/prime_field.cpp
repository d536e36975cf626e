#include "sofic/prime_field.hpp"

#include <string>

#include "sofic/errors.hpp"

namespace sofic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw DomainError("not a prime below 2^31: " + std::to_string(p));
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DomainError("inverse of zero in GF(p)");
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a % p_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

}  // namespace sofic
