#ifndef SOFIC_PRIME_FIELD_HPP
#define SOFIC_PRIME_FIELD_HPP

#include <cstdint>

namespace sofic {

/// Arithmetic in GF(p) for a prime p < 2^31.
///
/// Values are plain `std::uint32_t` in [0, p); products fit in 64 bits.
class PrimeField {
 public:
  /// Throws DomainError unless p is a prime below 2^31.
  explicit PrimeField(std::uint64_t p);

  std::uint32_t prime() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const {
    const std::int64_t m = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(m < 0 ? m + p_ : m);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;  // a, b < 2^31
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  /// Throws DomainError for a == 0.
  std::uint32_t inv(std::uint32_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace sofic

#endif  // SOFIC_PRIME_FIELD_HPP
