#ifndef SOFIC_FP_MATRIX_HPP
#define SOFIC_FP_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sofic/prime_field.hpp"

namespace sofic {

/// Dense row-major matrix over GF(p). Entries are always reduced mod p.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, PrimeField field);

  static FpMatrix identity(std::size_t n, PrimeField field);
  /// Entries may be any integers; they are reduced mod p. Rows must have
  /// equal length.
  static FpMatrix from_rows(PrimeField field,
                            const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }
  std::uint32_t prime() const { return field_.prime(); }
  bool is_square() const { return rows_ == cols_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::int64_t value) {
    data_[r * cols_ + c] = field_.reduce(value);
  }
  /// Adds `value` (already reduced) to entry (r, c).
  void accumulate(std::size_t r, std::size_t c, std::uint32_t value) {
    auto& x = data_[r * cols_ + c];
    x = field_.add(x, value);
  }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  bool is_zero() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint32_t> data_;
};

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_add(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_sub(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_scale(const FpMatrix& a, std::int64_t k);
FpMatrix transpose(const FpMatrix& a);
/// [a | b]; row counts must agree.
FpMatrix hconcat(const FpMatrix& a, const FpMatrix& b);

/// Reduced row echelon form with the row operations that produced it:
/// `transform * original == reduced`, `transform` invertible.
struct EchelonDecomposition {
  FpMatrix reduced;
  FpMatrix transform;
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const { return pivot_columns.size(); }
};

/// Deterministic pivoting: columns left to right, first nonzero row below
/// the current pivot row.
EchelonDecomposition echelon(const FpMatrix& m);

/// Dimension of the column space. Dispatches to the bit-packed kernel for
/// p = 2 and to the generic kernel otherwise.
std::size_t rank(const FpMatrix& m);
std::size_t rank_generic(const FpMatrix& m);
/// Throws DomainError unless p = 2.
std::size_t rank_gf2_packed(const FpMatrix& m);

/// cols - rank: the dimension of {x : m x = 0}.
std::size_t nullity(const FpMatrix& m);

/// Columns form a basis of the right kernel {x : m x = 0}.
FpMatrix kernel_basis(const FpMatrix& m);

struct SubspaceDims {
  std::size_t dim_a;
  std::size_t dim_b;
  std::size_t dim_intersection;
  std::size_t dim_sum;
};

/// Dimensions of the column spans of `a` and `b`, their sum and their
/// intersection. The intersection is computed from the kernel of [a | -b],
/// not from the other three numbers.
SubspaceDims subspace_dims(const FpMatrix& a, const FpMatrix& b);

/// A generalized inverse: returns y with x y x = x. Works for any shape;
/// y has the transposed shape of x.
FpMatrix regular_witness(const FpMatrix& x);

std::optional<FpMatrix> inverse(const FpMatrix& m);

/// Text format: a header line "p rows cols" followed by the entries in
/// row-major order, whitespace separated.
FpMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const FpMatrix& m);

}  // namespace sofic

#endif  // SOFIC_FP_MATRIX_HPP
