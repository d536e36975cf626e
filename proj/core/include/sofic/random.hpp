#ifndef SOFIC_RANDOM_HPP
#define SOFIC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "sofic/fp_matrix.hpp"
#include "sofic/prime_field.hpp"

namespace sofic {

/// Seeded generator whose draws are identical on every platform: the engine
/// is mt19937_64 and bounded draws use rejection sampling rather than the
/// implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

FpMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, PrimeField field);
/// Product of random n x k and k x n factors, so the rank is at most k.
FpMatrix random_low_rank(Rng& rng, std::size_t n, std::size_t k, PrimeField field);
/// Redraws until invertible.
FpMatrix random_invertible(Rng& rng, std::size_t n, PrimeField field);

}  // namespace sofic

#endif  // SOFIC_RANDOM_HPP
