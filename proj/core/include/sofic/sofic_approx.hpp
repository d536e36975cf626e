#ifndef SOFIC_SOFIC_APPROX_HPP
#define SOFIC_SOFIC_APPROX_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/map_on_v.hpp"
#include "sofic/rational.hpp"

namespace sofic {

/// A finite set V with self-maps phi(g) for g in a finite subset F of G,
/// aimed at tolerance epsilon. phi is only stored on F.
class SoficApproximation {
 public:
  /// The identity is adjoined to F (mapped to the identity of V) when absent.
  /// Throws DomainError for repeated elements, foreign elements, maps of the
  /// wrong size or epsilon outside (0, 1).
  SoficApproximation(Group group, std::size_t v_size, std::vector<GroupElement> elements,
                     std::vector<MapOnV> maps, Rational epsilon, std::string label = {});

  const Group& group() const { return group_; }
  std::size_t v_size() const { return v_size_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<MapOnV>& maps() const { return maps_; }
  const Rational& epsilon() const { return epsilon_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  bool contains(const GroupElement& g) const { return index_.count(g) != 0; }
  std::optional<std::size_t> index_of(const GroupElement& g) const;
  /// Throws DomainError when g is not in F.
  const MapOnV& phi(const GroupElement& g) const;
  std::size_t identity_index() const;

 private:
  Group group_;
  std::size_t v_size_;
  std::vector<GroupElement> elements_;
  std::vector<MapOnV> maps_;
  Rational epsilon_;
  std::string label_;
  std::map<GroupElement, std::size_t> index_;
};

struct PairDefect {
  std::size_t e;  // index into F
  std::size_t f;
  GroupElement product;
  /// Disagreement fraction of phi(e) phi(f) against phi(ef); empty when
  /// ef lies outside F.
  std::optional<Rational> fraction;
};

struct ElementAgreement {
  std::size_t index;   // into F, never the identity
  Rational agreement;  // fraction of fixed points of phi(e)
};

/// Exact defects of the three soficity conditions.
struct DefectReport {
  std::size_t element_count = 0;  // |F|
  std::vector<PairDefect> pairs;  // all |F|^2 ordered pairs, row-major
  Rational defect_b;              // phi(1) against the identity map
  std::vector<ElementAgreement> defect_c;
  Rational max_a;  // over pairs with ef in F
  Rational max_c;
  std::size_t excluded_pairs = 0;

  Rational max_abc() const;
  /// Disagreement fraction of phi(e) phi(f) against phi(ef), if measured.
  std::optional<Rational> pair_fraction(std::size_t e, std::size_t f) const;
  /// (a) and (b) within eps, every agreement in (c) strictly below eps.
  bool satisfies(const Rational& eps) const;
};

DefectReport defect_report(const SoficApproximation& approx);

/// m disjoint copies of V; vertex (v, copy) is copy * |V| + v. Defects are
/// unchanged.
SoficApproximation amplify(const SoficApproximation& approx, std::size_t copies);

/// The box prod [lower_i, lower_i + side_i) in Z^d, points in lexicographic
/// order.
struct BoxWindow {
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> sides;

  static BoxWindow cube(std::size_t dim, std::int64_t side);
  std::size_t size() const;
};

/// The whole of a finite group, in canonical order.
struct WholeGroup {};

using Window = std::variant<BoxWindow, WholeGroup>;

/// phi(g)(v) = g v when g v stays in the window, v otherwise. The group must
/// be Z^d for a box window and finite for WholeGroup.
SoficApproximation folner_approx(const Group& group, const Window& window,
                                 std::vector<GroupElement> elements, Rational epsilon,
                                 std::string label = {});

/// Number of window points v with F v not contained in the window.
std::size_t folner_boundary(const Group& group, const BoxWindow& window,
                            const std::vector<GroupElement>& elements);

/// A homomorphism from a finitely generated group onto a finite group,
/// given by the images of the primary generators.
class QuotientHom {
 public:
  /// Throws DomainError unless the images define a homomorphism onto `target`.
  QuotientHom(Group source, Group target, std::vector<GroupElement> generator_images);

  /// Z^d (or a finite quotient of it) onto Z/n_1 x ... x Z/n_d by reduction.
  static QuotientHom reduction(const Group& source, std::vector<std::int64_t> moduli);
  /// The identity map of a finite group.
  static QuotientHom identity(const Group& finite_group);

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  GroupElement apply(const GroupElement& g) const;

 private:
  Group source_;
  Group target_;
  std::vector<GroupElement> images_;
  // Finite table sources: image of every element, by index.
  std::vector<GroupElement> table_images_;
};

/// V = Q, phi(g) = left translation by the image of g.
SoficApproximation quotient_approx(const QuotientHom& hom, std::vector<GroupElement> elements,
                                   Rational epsilon, std::string label = {});

/// Plain-text approximation file. Header lines "sofic-approximation 1",
/// "group <name>", "vertices <n>", "epsilon <p/q>", "label <text>",
/// "elements <k>", then one line per element: canonical form followed by
/// its |V| images.
void write_approximation(std::ostream& out, const SoficApproximation& approx);
SoficApproximation read_approximation(std::istream& in, const Group& group);

}  // namespace sofic

#endif  // SOFIC_SOFIC_APPROX_HPP
