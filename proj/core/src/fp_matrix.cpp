#include "sofic/fp_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

#include "sofic/errors.hpp"

namespace sofic {

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, PrimeField field) {
  FpMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(
    PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(rows.size(), cols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::uint32_t x) { return x == 0; });
}

namespace {

void require_same_field(const FpMatrix& a, const FpMatrix& b) {
  if (a.prime() != b.prime()) {
    throw DomainError("matrices over different primes: " +
                      std::to_string(a.prime()) + " vs " +
                      std::to_string(b.prime()));
  }
}

void require_same_shape(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("matrix shape mismatch");
  }
}

// row[dst] -= factor * row[src], starting at column `from`.
void row_axpy(FpMatrix& m, std::size_t dst, std::size_t src,
              std::uint32_t factor, std::size_t from) {
  const auto& f = m.field();
  const std::uint32_t neg = f.neg(factor);
  auto d = m.row(dst);
  const auto s = std::as_const(m).row(src);
  for (std::size_t c = from; c < m.cols(); ++c) {
    if (s[c] != 0) d[c] = f.add(d[c], f.mul(neg, s[c]));
  }
}

void row_scale(FpMatrix& m, std::size_t r, std::uint32_t factor) {
  for (auto& x : m.row(r)) x = m.field().mul(x, factor);
}

void row_swap(FpMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(m.row(a).begin(), m.row(a).end(), m.row(b).begin());
}

}  // namespace

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw DomainError("mat_mul: inner dimensions differ");
  const auto& f = a.field();
  FpMatrix out(a.rows(), b.cols(), f);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    const auto arow = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint32_t x = arow[k];
      if (x == 0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (brow[j] != 0) dst[j] = f.add(dst[j], f.mul(x, brow[j]));
      }
    }
  }
  return out;
}

FpMatrix mat_add(const FpMatrix& a, const FpMatrix& b) {
  require_same_shape(a, b);
  FpMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto d = out.row(r);
    const auto s = b.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) d[c] = a.field().add(d[c], s[c]);
  }
  return out;
}

FpMatrix mat_sub(const FpMatrix& a, const FpMatrix& b) {
  require_same_shape(a, b);
  FpMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto d = out.row(r);
    const auto s = b.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) d[c] = a.field().sub(d[c], s[c]);
  }
  return out;
}

FpMatrix mat_scale(const FpMatrix& a, std::int64_t k) {
  const std::uint32_t factor = a.field().reduce(k);
  FpMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) row_scale(out, r, factor);
  return out;
}

FpMatrix transpose(const FpMatrix& a) {
  FpMatrix out(a.cols(), a.rows(), a.field());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.row(c)[r] = a(r, c);
  }
  return out;
}

FpMatrix hconcat(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw DomainError("hconcat: row counts differ");
  FpMatrix out(a.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto d = out.row(r);
    std::copy(a.row(r).begin(), a.row(r).end(), d.begin());
    std::copy(b.row(r).begin(), b.row(r).end(), d.begin() + a.cols());
  }
  return out;
}

EchelonDecomposition echelon(const FpMatrix& m) {
  const auto& f = m.field();
  FpMatrix reduced = m;
  FpMatrix transform = FpMatrix::identity(m.rows(), f);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && reduced(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    row_swap(reduced, r, pivot);
    row_swap(transform, r, pivot);
    const std::uint32_t inv = f.inv(reduced(r, c));
    row_scale(reduced, r, inv);
    row_scale(transform, r, inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const std::uint32_t factor = reduced(i, c);
      if (factor == 0) continue;
      row_axpy(reduced, i, r, factor, c);
      row_axpy(transform, i, r, factor, 0);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(reduced), std::move(transform), std::move(pivots)};
}

std::size_t rank_generic(const FpMatrix& m) {
  const auto& f = m.field();
  FpMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    row_swap(a, r, pivot);
    row_scale(a, r, f.inv(a(r, c)));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const std::uint32_t factor = a(i, c);
      if (factor != 0) row_axpy(a, i, r, factor, c);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const FpMatrix& m) {
  return m.prime() == 2 ? rank_gf2_packed(m) : rank_generic(m);
}

std::size_t nullity(const FpMatrix& m) { return m.cols() - rank(m); }

FpMatrix kernel_basis(const FpMatrix& m) {
  const auto dec = echelon(m);
  const auto& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : dec.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FpMatrix basis(m.cols(), free_cols.size(), f);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    basis.set(fc, k, 1);
    for (std::size_t i = 0; i < dec.pivot_columns.size(); ++i) {
      basis.row(dec.pivot_columns[i])[k] = f.neg(dec.reduced(i, fc));
    }
  }
  return basis;
}

SubspaceDims subspace_dims(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) {
    throw DomainError("subspace_dims: ambient dimensions differ");
  }
  SubspaceDims d{};
  d.dim_a = rank(a);
  d.dim_b = rank(b);
  d.dim_sum = rank(hconcat(a, b));
  // (u, w) in ker [a | -b]  <=>  a u = b w; the intersection is a * U.
  const FpMatrix kernel = kernel_basis(hconcat(a, mat_scale(b, -1)));
  FpMatrix u(a.cols(), kernel.cols(), a.field());
  for (std::size_t r = 0; r < a.cols(); ++r) {
    std::copy(kernel.row(r).begin(), kernel.row(r).end(), u.row(r).begin());
  }
  d.dim_intersection = rank(mat_mul(a, u));
  return d;
}

FpMatrix regular_witness(const FpMatrix& x) {
  // With T x = R in reduced form and P the selector sending pivot row i to
  // pivot column c_i, R P R = R, hence x (P T) x = T^{-1} R P R = x.
  const auto dec = echelon(x);
  FpMatrix selector(x.cols(), x.rows(), x.field());
  for (std::size_t i = 0; i < dec.pivot_columns.size(); ++i) {
    selector.set(dec.pivot_columns[i], i, 1);
  }
  return mat_mul(selector, dec.transform);
}

std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (!m.is_square()) return std::nullopt;
  auto dec = echelon(m);
  if (dec.rank() != m.rows()) return std::nullopt;
  return std::move(dec.transform);
}

FpMatrix read_matrix(std::istream& in) {
  std::uint64_t p = 0;
  std::int64_t rows = -1, cols = -1;
  if (!(in >> p >> rows >> cols) || rows < 0 || cols < 0) {
    throw ParseError("matrix header must be 'p rows cols'");
  }
  if (!is_prime(p) || p >= (std::uint64_t{1} << 31)) {
    throw ParseError("matrix header: " + std::to_string(p) + " is not a supported prime");
  }
  const PrimeField field(p);
  FpMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
             field);
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) {
      std::int64_t v = 0;
      if (!(in >> v)) {
        throw ParseError("matrix body truncated at entry (" + std::to_string(r) +
                         ", " + std::to_string(c) + ")");
      }
      m.set(r, c, v);
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after matrix: '" + extra + "'");
  return m;
}

void write_matrix(std::ostream& out, const FpMatrix& m) {
  out << m.prime() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m(r, c);
    }
    out << '\n';
  }
}

}  // namespace sofic
