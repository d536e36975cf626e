#ifndef SOFIC_GROUP_HPP
#define SOFIC_GROUP_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sofic {

/// Canonical form of a group element. Finite table groups use a single
/// coordinate (the table index); Z^d and its finite quotients use one
/// coordinate per factor. Equal canonical forms <=> equal elements, and the
/// lexicographic order on coordinates is the canonical order.
struct GroupElement {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

enum class GroupKind {
  kFiniteTable,    // explicit multiplication table
  kFreeAbelian,    // Z^d
  kFiniteQuotient  // Z/n_1 x ... x Z/n_d, a finite quotient of Z^d
};

struct Generator {
  std::string name;
  GroupElement element;
};

/// A finitely generated group with exact multiplication.
///
/// Copies share the immutable implementation; two groups compare equal when
/// their descriptions agree (kind, table or moduli, generators).
class Group {
 public:
  /// `table[a][b]` is the index of a*b. Generators are named table indices;
  /// the symmetric set B is completed with inverses named "<name>^-1".
  static Group finite_table(std::string name,
                            std::vector<std::vector<std::uint32_t>> table,
                            std::vector<std::pair<std::string, std::uint32_t>> generators);

  /// Closure of permutations of {0..degree-1}, composed as (s t)(i) = s(t(i)).
  /// Elements are indexed in lexicographic order of their images, so the
  /// identity is index 0.
  static Group from_permutations(
      std::string name, std::size_t degree,
      std::vector<std::pair<std::string, std::vector<std::uint32_t>>> generators);

  /// Z^d with the unit vectors as primary generators. Default names: "t" for
  /// d = 1, "x", "y", "z" for d <= 3, otherwise "x1".."xd".
  static Group free_abelian(std::size_t rank,
                            std::vector<std::string> generator_names = {});

  /// Z/n_1 x ... x Z/n_d, generator names as for free_abelian of rank d.
  static Group finite_quotient(std::vector<std::int64_t> moduli,
                               std::vector<std::string> generator_names = {});

  GroupKind kind() const;
  const std::string& name() const;
  bool is_finite() const { return kind() != GroupKind::kFreeAbelian; }
  /// Number of coordinates in canonical forms.
  std::size_t arity() const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  /// a^k for any integer k.
  GroupElement power(const GroupElement& a, std::int64_t k) const;
  /// True when `g` is a valid canonical form for this group.
  bool contains(const GroupElement& g) const;

  /// Generators as declared, without inverse completion.
  const std::vector<Generator>& primary_generators() const;
  /// The symmetric generating set B: each primary generator followed by its
  /// inverse when that inverse is a new element.
  const std::vector<Generator>& generators() const;
  /// Index into generators() by name.
  std::optional<std::size_t> generator_index(const std::string& name) const;

  /// Finite groups only (throws DomainError otherwise).
  std::size_t order() const;
  /// All elements in canonical order. Finite groups only.
  std::vector<GroupElement> elements() const;
  /// Position of g in elements(). Finite groups only.
  std::size_t index_of(const GroupElement& g) const;
  /// Multiplication table (index form) of a finite group.
  const std::vector<std::vector<std::uint32_t>>& table() const;
  /// Z/n_i moduli for finite quotients.
  const std::vector<std::int64_t>& moduli() const;

  /// Evaluates a word such as "x y^-1 x^2" or "1" (identity). Tokens are
  /// primary generator names with an optional integer exponent; '*' and
  /// whitespace separate tokens.
  GroupElement evaluate(const std::string& word) const;

  /// Canonical text: "3" for table groups and rank-1 groups, "(1,-2)" for
  /// multi-coordinate groups.
  std::string format(const GroupElement& g) const;
  GroupElement parse_element(const std::string& text) const;

  friend bool operator==(const Group& a, const Group& b);

  struct Impl;

 private:
  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct BallOptions {
  std::size_t max_elements = std::size_t{1} << 20;
};

/// The word-length ball N_r around the identity with respect to B, growing
/// by left multiplication (x -> b x). Elements are ordered by word length,
/// ties by canonical order.
class Ball {
 public:
  Ball(int radius, std::vector<GroupElement> elements, std::vector<int> lengths);

  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<int>& lengths() const { return lengths_; }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }

  bool contains(const GroupElement& g) const { return index_.count(g) != 0; }
  std::optional<std::size_t> index_of(const GroupElement& g) const;
  /// Word length of g, or nullopt when g lies outside the ball.
  std::optional<int> length_of(const GroupElement& g) const;

 private:
  int radius_;
  std::vector<GroupElement> elements_;
  std::vector<int> lengths_;
  std::map<GroupElement, std::size_t> index_;
};

/// Throws PreconditionError for r < 0 and ResourceError if the ball would
/// exceed `options.max_elements`.
Ball ball(const Group& group, int r, BallOptions options = {});

/// Smallest r with g in N_r, searching up to `max_radius`.
std::optional<int> word_length(const Group& group, const GroupElement& g,
                               int max_radius);

}  // namespace sofic

#endif  // SOFIC_GROUP_HPP
