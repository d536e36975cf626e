#ifndef SOFIC_GROUP_RING_HPP
#define SOFIC_GROUP_RING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofic/fp_matrix.hpp"
#include "sofic/group.hpp"
#include "sofic/prime_field.hpp"

namespace sofic {

/// A finitely supported element of the group algebra GF(p)[G]. Zero
/// coefficients are never stored.
class GroupRingElement {
 public:
  GroupRingElement(Group group, PrimeField field);

  static GroupRingElement zero(const Group& group, PrimeField field);
  static GroupRingElement one(const Group& group, PrimeField field);
  static GroupRingElement monomial(const Group& group, PrimeField field,
                                   const GroupElement& g, std::int64_t coeff = 1);
  /// Repeated elements are summed; coefficients reduced mod p.
  static GroupRingElement from_terms(
      const Group& group, PrimeField field,
      const std::vector<std::pair<GroupElement, std::int64_t>>& terms);

  const Group& group() const { return group_; }
  const PrimeField& field() const { return field_; }
  std::uint32_t prime() const { return field_.prime(); }

  /// Coefficient map in canonical element order.
  const std::map<GroupElement, std::uint32_t>& terms() const { return terms_; }
  std::vector<GroupElement> support() const;
  std::uint32_t coefficient(const GroupElement& g) const;
  bool is_zero() const { return terms_.empty(); }

  void add_term(const GroupElement& g, std::uint32_t coeff);

  std::string to_string() const;

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b);

 private:
  Group group_;
  PrimeField field_;
  std::map<GroupElement, std::uint32_t> terms_;
};

/// Convolution: (a b)(g) = sum over s t = g of a(s) b(t).
/// Throws DomainError when the groups or primes differ.
GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement ring_add(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement ring_sub(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement ring_scale(const GroupRingElement& a, std::int64_t k);

/// True iff a is exactly 1 * identity.
bool ring_is_one(const GroupRingElement& a);

/// Matrix of left multiplication by `a` on GF(p)[G] in the basis of group
/// elements (finite groups only): column h holds a * h.
FpMatrix regular_representation(const GroupRingElement& a);

/// The element whose coefficient vector (in the basis of `group.elements()`)
/// is column `column` of m. Finite groups only.
GroupRingElement element_from_regular_column(const Group& group, const FpMatrix& m,
                                             std::size_t column);

/// Solves a b = 1 through the regular representation of a finite group.
std::optional<GroupRingElement> right_inverse(const GroupRingElement& a);

/// Square matrices with entries in GF(p)[G].
class RingMatrix {
 public:
  RingMatrix(std::size_t n, const Group& group, PrimeField field);

  static RingMatrix identity(std::size_t n, const Group& group, PrimeField field);

  std::size_t size() const { return n_; }
  const Group& group() const { return group_; }
  const PrimeField& field() const { return field_; }

  const GroupRingElement& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  GroupRingElement& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  bool is_identity() const;

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  std::size_t n_;
  Group group_;
  PrimeField field_;
  std::vector<GroupRingElement> entries_;
};

RingMatrix ring_matrix_mul(const RingMatrix& a, const RingMatrix& b);

/// Block matrix of regular representations, (n|G|) x (n|G|).
FpMatrix regular_representation(const RingMatrix& a);

/// Inverse of `regular_representation`: reads each block's identity column.
/// Does not check that the blocks are themselves regular representations.
RingMatrix ring_matrix_from_blocks(const Group& group, const FpMatrix& m, std::size_t n);

/// Solves A B = I through the block regular representation.
std::optional<RingMatrix> right_inverse(const RingMatrix& a);

}  // namespace sofic

#endif  // SOFIC_GROUP_RING_HPP
