#include <cstdint>
#include <utility>
#include <vector>

#include "sofic/errors.hpp"
#include "sofic/fp_matrix.hpp"

namespace sofic {

// Rows packed 64 columns per word; elimination is word-wise XOR.
std::size_t rank_gf2_packed(const FpMatrix& m) {
  if (m.prime() != 2) throw DomainError("rank_gf2_packed requires p = 2");
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::uint64_t> bits(m.rows() * words, 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (row[c]) bits[r * words + c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  auto word = [&](std::size_t r, std::size_t w) -> std::uint64_t& {
    return bits[r * words + w];
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t pivot = rank;
    while (pivot < m.rows() && !(word(pivot, w) & mask)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      for (std::size_t k = w; k < words; ++k) std::swap(word(pivot, k), word(rank, k));
    }
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      if (word(i, w) & mask) {
        for (std::size_t k = w; k < words; ++k) word(i, k) ^= word(rank, k);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace sofic
