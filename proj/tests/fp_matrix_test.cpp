#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "sofic/errors.hpp"
#include "sofic/fp_matrix.hpp"
#include "sofic/random.hpp"

namespace sofic {
namespace {

using Vec = std::vector<std::uint32_t>;

// All vectors in the column span, by enumerating coefficient tuples.
std::set<Vec> span_by_enumeration(const FpMatrix& m) {
  const auto& f = m.field();
  std::set<Vec> out;
  std::vector<std::uint32_t> coeff(m.cols(), 0);
  for (;;) {
    Vec v(m.rows(), 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (std::size_t r = 0; r < m.rows(); ++r) v[r] = f.add(v[r], f.mul(coeff[c], m(r, c)));
    }
    out.insert(v);
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == m.prime()) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  return out;
}

std::size_t log_p(std::size_t count, std::uint32_t p) {
  std::size_t k = 0;
  while (count > 1) {
    EXPECT_EQ(count % p, 0u);
    count /= p;
    ++k;
  }
  return k;
}

TEST(FpMatrix, RankExamples) {
  const PrimeField f2(2);
  EXPECT_EQ(rank(FpMatrix::identity(5, f2)), 5u);
  EXPECT_EQ(rank(FpMatrix::from_rows(f2, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})), 1u);
  EXPECT_EQ(rank(FpMatrix(4, 6, f2)), 0u);
  EXPECT_EQ(rank(FpMatrix(0, 0, f2)), 0u);
}

TEST(FpMatrix, NullityExamples) {
  const PrimeField f2(2);
  EXPECT_EQ(nullity(FpMatrix::identity(4, f2)), 0u);
  EXPECT_EQ(nullity(FpMatrix(3, 7, f2)), 7u);
  EXPECT_EQ(nullity(FpMatrix::from_rows(f2, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})), 2u);
}

TEST(FpMatrix, FromRowsReducesEntries) {
  const auto m = FpMatrix::from_rows(PrimeField(5), {{-1, 7}, {10, 3}});
  EXPECT_EQ(m(0, 0), 4u);
  EXPECT_EQ(m(0, 1), 2u);
  EXPECT_EQ(m(1, 0), 0u);
  EXPECT_THROW(FpMatrix::from_rows(PrimeField(5), {{1, 2}, {3}}), DomainError);
}

TEST(FpMatrix, ShapeMismatchesThrow) {
  const PrimeField f(3);
  EXPECT_THROW(mat_mul(FpMatrix(2, 3, f), FpMatrix(2, 3, f)), DomainError);
  EXPECT_THROW(mat_add(FpMatrix(2, 3, f), FpMatrix(3, 2, f)), DomainError);
  EXPECT_THROW(mat_add(FpMatrix(2, 2, f), FpMatrix(2, 2, PrimeField(5))), DomainError);
  EXPECT_THROW(subspace_dims(FpMatrix(3, 1, f), FpMatrix(4, 1, f)), DomainError);
  EXPECT_THROW(hconcat(FpMatrix(3, 1, f), FpMatrix(4, 1, f)), DomainError);
}

TEST(FpMatrix, ArithmeticSpotChecks) {
  Rng rng(11);
  const PrimeField f(7);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_matrix(rng, 3, 3, f);
    const auto b = random_matrix(rng, 3, 3, f);
    const auto c = random_matrix(rng, 3, 3, f);
    EXPECT_EQ(mat_mul(a, FpMatrix::identity(3, f)), a);
    EXPECT_EQ(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c)));
    EXPECT_EQ(mat_mul(a, mat_add(b, c)), mat_add(mat_mul(a, b), mat_mul(a, c)));
    EXPECT_EQ(mat_sub(mat_add(a, b), b), a);
    EXPECT_EQ(transpose(transpose(a)), a);
    EXPECT_EQ(mat_scale(a, 7).is_zero(), true);
  }
}

TEST(FpMatrix, AdditionOverGf2IsXor) {
  Rng rng(3);
  const PrimeField f(2);
  const auto a = random_matrix(rng, 5, 9, f);
  const auto b = random_matrix(rng, 5, 9, f);
  const auto s = mat_add(a, b);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 9; ++c) EXPECT_EQ(s(r, c), a(r, c) ^ b(r, c));
  }
}

TEST(FpMatrix, EchelonTransformReproducesReducedForm) {
  Rng rng(5);
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    for (int t = 0; t < 30; ++t) {
      const auto rows = 1 + rng.below(9);
      const auto cols = 1 + rng.below(9);
      const auto m = t % 2 ? random_matrix(rng, rows, cols, f)
                           : mat_mul(random_matrix(rng, rows, 2, f), random_matrix(rng, 2, cols, f));
      const auto e = echelon(m);
      EXPECT_EQ(mat_mul(e.transform, m), e.reduced);
      EXPECT_EQ(rank(e.transform), rows);
      EXPECT_EQ(e.rank(), rank_generic(m));
      for (std::size_t i = 0; i < e.rank(); ++i) {
        EXPECT_EQ(e.reduced(i, e.pivot_columns[i]), 1u);
        for (std::size_t r = 0; r < rows; ++r) {
          if (r != i) {
            EXPECT_EQ(e.reduced(r, e.pivot_columns[i]), 0u);
          }
        }
        if (i) {
          EXPECT_LT(e.pivot_columns[i - 1], e.pivot_columns[i]);
        }
      }
      for (std::size_t r = e.rank(); r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) EXPECT_EQ(e.reduced(r, c), 0u);
      }
    }
  }
}

TEST(FpMatrix, RankMatchesSpanEnumeration) {
  Rng rng(17);
  for (const std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (int t = 0; t < 40; ++t) {
      const auto m = random_matrix(rng, 1 + rng.below(6), 1 + rng.below(p == 5 ? 4 : 6), f);
      EXPECT_EQ(rank(m), log_p(span_by_enumeration(m).size(), p));
    }
  }
}

TEST(FpMatrix, PackedGf2KernelAgreesWithGeneric) {
  Rng rng(2024);
  const PrimeField f(2);
  for (int t = 0; t < 1000; ++t) {
    const auto rows = 1 + rng.below(140);
    const auto cols = 1 + rng.below(140);
    FpMatrix m = t % 3 == 0 ? random_low_rank(rng, std::max(rows, cols), rng.below(20), f)
                            : random_matrix(rng, rows, cols, f);
    ASSERT_EQ(rank_gf2_packed(m), rank_generic(m)) << "trial " << t;
  }
  EXPECT_THROW(rank_gf2_packed(FpMatrix(2, 2, PrimeField(3))), DomainError);
}

TEST(FpMatrix, KernelBasisSpansTheKernel) {
  Rng rng(8);
  for (const std::uint32_t p : {2u, 3u, 7u}) {
    const PrimeField f(p);
    for (int t = 0; t < 30; ++t) {
      const auto m = random_low_rank(rng, 1 + rng.below(10), rng.below(5), f);
      const auto k = kernel_basis(m);
      EXPECT_EQ(k.rows(), m.cols());
      EXPECT_EQ(k.cols(), nullity(m));
      EXPECT_TRUE(mat_mul(m, k).is_zero());
      EXPECT_EQ(rank(k), k.cols());
    }
  }
}

TEST(FpMatrix, RankInequalities) {
  Rng rng(23);
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    for (int t = 0; t < 40; ++t) {
      const auto n = 1 + rng.below(12);
      const auto a = random_low_rank(rng, n, rng.below(n + 1), f);
      const auto b = random_low_rank(rng, n, rng.below(n + 1), f);
      EXPECT_LE(rank(mat_mul(a, b)), std::min(rank(a), rank(b)));
      EXPECT_LE(rank(mat_add(a, b)), rank(a) + rank(b));
      EXPECT_EQ(rank(a) + nullity(a), n);
    }
  }
}

TEST(SubspaceDims, Examples) {
  const PrimeField f3(3);
  const auto a = FpMatrix::from_rows(f3, {{1, 0}, {2, 1}, {0, 1}, {1, 1}});
  EXPECT_EQ(subspace_dims(a, a).dim_intersection, 2u);
  EXPECT_EQ(subspace_dims(a, a).dim_sum, 2u);

  const auto e12 = FpMatrix::from_rows(f3, {{1, 0}, {0, 1}, {0, 0}, {0, 0}});
  const auto e34 = FpMatrix::from_rows(f3, {{0, 0}, {0, 0}, {1, 0}, {0, 1}});
  const auto d = subspace_dims(e12, e34);
  EXPECT_EQ(d.dim_a, 2u);
  EXPECT_EQ(d.dim_b, 2u);
  EXPECT_EQ(d.dim_intersection, 0u);
  EXPECT_EQ(d.dim_sum, 4u);
}

TEST(SubspaceDims, IntersectionMatchesEnumeration) {
  Rng rng(99);
  for (const std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField f(p);
    for (int t = 0; t < 40; ++t) {
      const auto n = 1 + rng.below(p == 5 ? 4 : 8);
      const auto a = random_matrix(rng, n, 1 + rng.below(p == 5 ? 3 : 4), f);
      const auto b = random_matrix(rng, n, 1 + rng.below(p == 5 ? 3 : 4), f);
      const auto sa = span_by_enumeration(a);
      const auto sb = span_by_enumeration(b);
      std::size_t common = 0;
      for (const auto& v : sa) common += sb.count(v);
      const auto d = subspace_dims(a, b);
      EXPECT_EQ(d.dim_intersection, log_p(common, p));
      EXPECT_EQ(d.dim_sum, rank(hconcat(a, b)));
      EXPECT_EQ(d.dim_intersection + d.dim_sum, d.dim_a + d.dim_b);
    }
  }
}

TEST(RegularWitness, Examples) {
  const PrimeField f3(3);
  const FpMatrix zero(3, 3, f3);
  EXPECT_TRUE(mat_mul(mat_mul(zero, regular_witness(zero)), zero) == zero);

  const auto x = FpMatrix::from_rows(f3, {{1, 2}, {0, 1}});
  const auto y = regular_witness(x);
  EXPECT_EQ(y, *inverse(x));

  const auto diag = FpMatrix::from_rows(f3, {{1, 0}, {0, 0}});
  EXPECT_EQ(mat_mul(mat_mul(diag, diag), diag), diag);
  EXPECT_EQ(mat_mul(mat_mul(diag, regular_witness(diag)), diag), diag);
}

TEST(RegularWitness, RectangularAndRandom) {
  Rng rng(31);
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField f(p);
    for (int t = 0; t < 40; ++t) {
      const auto rows = 1 + rng.below(10);
      const auto cols = 1 + rng.below(10);
      const auto x = t % 2 ? random_matrix(rng, rows, cols, f)
                           : mat_mul(random_matrix(rng, rows, 2, f), random_matrix(rng, 2, cols, f));
      const auto y = regular_witness(x);
      EXPECT_EQ(y.rows(), cols);
      EXPECT_EQ(y.cols(), rows);
      EXPECT_EQ(mat_mul(mat_mul(x, y), x), x);
    }
  }
}

TEST(Inverse, SingularHasNone) {
  const PrimeField f(5);
  EXPECT_FALSE(inverse(FpMatrix::from_rows(f, {{1, 2}, {2, 4}})).has_value());
  EXPECT_FALSE(inverse(FpMatrix(2, 3, f)).has_value());
  const auto m = FpMatrix::from_rows(f, {{2, 1}, {1, 1}});
  EXPECT_EQ(mat_mul(m, *inverse(m)), FpMatrix::identity(2, f));
}

TEST(MatrixText, RoundTrip) {
  Rng rng(1);
  const auto m = random_matrix(rng, 3, 4, PrimeField(11));
  std::stringstream s;
  write_matrix(s, m);
  EXPECT_EQ(read_matrix(s), m);
}

TEST(MatrixText, Malformed) {
  std::istringstream missing("3 2 2\n1 2 3\n");
  EXPECT_THROW(read_matrix(missing), ParseError);
  std::istringstream not_prime("4 1 1\n1\n");
  EXPECT_THROW(read_matrix(not_prime), ParseError);
  std::istringstream junk("3 1 1\nx\n");
  EXPECT_THROW(read_matrix(junk), ParseError);
}

}  // namespace
}  // namespace sofic
