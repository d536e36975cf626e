#ifndef SOFIC_RANK_FUNCTION_HPP
#define SOFIC_RANK_FUNCTION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sofic/fp_matrix.hpp"
#include "sofic/group_ring.hpp"
#include "sofic/rational.hpp"
#include "sofic/sofic_approx.hpp"

namespace sofic {

/// phi(g) extended linearly to GF(p)^V: M_g has a single 1 in each column v,
/// in row phi(g)(v). Matrices are materialized on demand.
class Linearization {
 public:
  Linearization(SoficApproximation approx, PrimeField field);

  const SoficApproximation& approximation() const { return approx_; }
  const PrimeField& field() const { return field_; }
  std::size_t size() const { return approx_.v_size(); }

  /// Throws DomainError when g is not in F.
  FpMatrix matrix(const GroupElement& g) const;

 private:
  SoficApproximation approx_;
  PrimeField field_;
};

Linearization linearize(const SoficApproximation& approx, PrimeField field);

/// T(a) = sum of k_s M_s. Throws DomainError naming the support elements
/// outside F, or when the primes or groups differ.
FpMatrix represent(const GroupRingElement& a, const Linearization& lin);

/// rank(M) / n. Throws DomainError unless M is square and nonempty.
Rational normalized_rank(const FpMatrix& m);

struct RankLevel {
  std::size_t level;  // 1-based position in the family
  std::string label;
  std::size_t vertices;
  std::optional<Rational> value;  // empty when the level was skipped
  std::string warning;
};

/// Normalized ranks of one element along a refining family, with the tail
/// statistics used in place of the ultralimit.
struct RankSequence {
  std::string element;
  std::vector<RankLevel> levels;

  std::size_t warning_count() const;
  /// Values of measured levels, in order.
  std::vector<Rational> values() const;
  std::optional<Rational> last() const;
  /// Over the last ceil(m / 2) of the m measured levels.
  std::optional<Rational> tail_min() const;
  std::optional<Rational> tail_max() const;
};

/// Levels whose F misses part of the support are skipped with a warning.
RankSequence pseudo_rank_sequence(const GroupRingElement& a,
                                  const std::vector<SoficApproximation>& family);

struct HomDefect {
  Rational rank_fraction;  // normalized rank of M_g M_h - M_{gh}
  Rational disagreement;   // |{v : phi(g) phi(h) v != phi(gh) v}| / |V|
  bool within_bound() const { return rank_fraction <= disagreement; }
};

/// Only the columns where phi(g) phi(h) and phi(gh) disagree are nonzero, so
/// the rank is taken on those columns alone. Throws DomainError unless g, h
/// and gh lie in F.
HomDefect hom_defect(const GroupElement& g, const GroupElement& h, const Linearization& lin);

/// Greedy maximal X in vertex order: p is admissible when the phi(s)(p),
/// s in S, are pairwise distinct, and is added when none of them was hit by
/// an earlier member of X. Throws DomainError for an empty S or S not in F.
std::vector<std::uint32_t> separated_set(const SoficApproximation& approx,
                                         const std::vector<GroupElement>& support);

struct InjectivityReport {
  std::size_t support_size = 0;
  std::size_t vertices = 0;
  std::vector<std::uint32_t> separated;
  std::size_t rank = 0;
  bool images_distinct = false;  // the e_{phi(s)(q)} for q in X are distinct
  std::size_t inadmissible = 0;  // vertices with a repeated image
  Rational eps_injective;        // max over s of 1 - |im phi(s)| / |V|
  Rational eps_measured;         // eps_injective + inadmissible / (|S| |V|)
  Rational bound;                // (1 - eps_measured |S|) / |S|^2

  Rational fraction() const;
  bool rank_holds() const { return images_distinct && rank >= separated.size(); }
  bool bound_holds() const { return fraction() >= bound; }
  /// |X| / |V| >= 1 / |S|^2 - 2 |S| eps_measured.
  bool trend_holds() const;
};

/// Throws DomainError for a = 0 or a support outside F.
InjectivityReport injectivity_bound_check(const GroupRingElement& a, const Linearization& lin);

struct FinitenessLevel {
  std::size_t level;
  std::string label;
  std::size_t vertices;
  std::optional<Rational> rank_ab;  // normalized rank of T(a) T(b) - I
  std::optional<Rational> rank_ba;
  bool exact = false;  // phi is multiplicative on F, as for quotient levels
  std::string warning;
};

struct FinitenessVerdict {
  std::string a;
  std::string b;
  bool ab_is_one = false;
  bool ba_is_one = false;
  std::vector<FinitenessLevel> levels;

  /// ab = 1 but ba != 1.
  bool counterexample() const { return ab_is_one && !ba_is_one; }
  /// Every measured exact level agrees with the ring verdict (rank 0 when
  /// the product is 1). Inexact levels only approach 0.
  bool corroborated() const;
};

/// Truth comes from exact ring products; the levels are evidence only.
/// Throws DomainError for elements over different groups or primes.
FinitenessVerdict direct_finiteness_check(const GroupRingElement& a, const GroupRingElement& b,
                                          const std::vector<SoficApproximation>& family);

struct StableFinitenessResult {
  bool ab_is_identity = false;
  bool ba_is_identity = false;
  bool matrices_agree = false;  // regular representations of AB, BA are I as well
  bool counterexample() const { return ab_is_identity && !ba_is_identity; }
};

/// Matrices over the group algebra of a finite group.
StableFinitenessResult stable_finiteness_check(const RingMatrix& a, const RingMatrix& b);

struct AxiomsReport {
  std::uint32_t prime = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t checks_normalized = 0;  // N(1) = 1, N(0) = 0
  std::size_t violations_normalized = 0;
  std::size_t checks_product = 0;  // N(xy) <= N(x), N(xy) <= N(y)
  std::size_t violations_product = 0;
  std::size_t checks_additive = 0;  // N(e + f) = N(e) + N(f)
  std::size_t violations_additive = 0;

  std::size_t violations() const {
    return violations_normalized + violations_product + violations_additive;
  }
};

/// Exact checks of the pseudo-rank axioms for N = rank / n on n x n
/// matrices over GF(p). Orthogonal idempotents are disjoint coordinate
/// projectors conjugated by a random invertible matrix.
AxiomsReport pseudo_rank_axioms_check(std::uint32_t p, std::size_t n, std::size_t trials,
                                      std::uint64_t seed);

struct RegularityReport {
  std::uint32_t prime = 0;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t verified = 0;  // x y x = x recomputed from scratch
};

/// x y x == x for the generalized inverse y.
bool verify_regular_witness(const FpMatrix& x, const FpMatrix& y);

/// Random square matrices of random rank.
RegularityReport regularity_check(std::uint32_t p, std::size_t n, std::size_t trials,
                                  std::uint64_t seed);

}  // namespace sofic

#endif  // SOFIC_RANK_FUNCTION_HPP
