#include "sofic/random.hpp"

#include "sofic/errors.hpp"

namespace sofic {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("Rng::below needs a positive bound");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("Rng::between with an empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

FpMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, PrimeField field) {
  FpMatrix m(rows, cols, field);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<std::int64_t>(rng.below(field.prime())));
  }
  return m;
}

FpMatrix random_low_rank(Rng& rng, std::size_t n, std::size_t k, PrimeField field) {
  if (k == 0) return FpMatrix(n, n, field);
  return mat_mul(random_matrix(rng, n, k, field), random_matrix(rng, k, n, field));
}

FpMatrix random_invertible(Rng& rng, std::size_t n, PrimeField field) {
  for (;;) {
    FpMatrix m = random_matrix(rng, n, n, field);
    if (rank(m) == n) return m;
  }
}

}  // namespace sofic
