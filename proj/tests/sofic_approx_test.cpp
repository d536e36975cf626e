#include <gtest/gtest.h>

#include <sstream>

#include "sofic/errors.hpp"
#include "sofic/family.hpp"
#include "sofic/random.hpp"
#include "sofic/sofic_approx.hpp"
#include "test_support.hpp"

namespace sofic {
namespace {

using testing::el;

// Translation of a box point, clamped to "stay put" when it leaves the box.
std::vector<std::int64_t> box_shift(const std::vector<std::int64_t>& v,
                                    const std::vector<std::int64_t>& g, std::int64_t n) {
  std::vector<std::int64_t> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i] + g[i];
    if (w[i] < 0 || w[i] >= n) return v;
  }
  return w;
}

// Disagreement count of phi(e) phi(f) against phi(e + f) on the cube [0, n)^d,
// enumerated point by point from coordinates.
std::size_t box_pair_disagreements(std::size_t d, std::int64_t n, const std::vector<std::int64_t>& e,
                                   const std::vector<std::int64_t>& f) {
  std::vector<std::int64_t> ef(d);
  for (std::size_t i = 0; i < d; ++i) ef[i] = e[i] + f[i];
  std::size_t count = 0;
  std::vector<std::int64_t> v(d, 0);
  while (true) {
    if (box_shift(box_shift(v, f, n), e, n) != box_shift(v, ef, n)) ++count;
    std::size_t i = d;
    while (i > 0 && ++v[i - 1] == n) v[--i] = 0;
    if (i == 0) break;
  }
  return count;
}

MapOnV truncated_shift(std::size_t n, std::uint32_t k) {
  std::vector<std::uint32_t> img(n);
  for (std::uint32_t v = 0; v < n; ++v) img[v] = v + k < n ? v + k : v;
  return MapOnV(img);
}

MapOnV random_map(Rng& rng, std::size_t n) {
  std::vector<std::uint32_t> img(n);
  for (auto& x : img) x = static_cast<std::uint32_t>(rng.below(n));
  return MapOnV(img);
}

TEST(MapOnV, Basics) {
  EXPECT_THROW(MapOnV({}), DomainError);
  EXPECT_THROW(MapOnV({0, 2}), DomainError);
  EXPECT_TRUE(MapOnV::identity(4).is_identity());
  EXPECT_EQ(MapOnV::constant(4, 2).image_size(), 1u);
  EXPECT_EQ(MapOnV({1, 0, 2}).image_size(), 3u);
}

TEST(MapOnV, ShiftExamples) {
  const auto s = truncated_shift(5, 1);
  EXPECT_EQ(similarity_fraction(s, MapOnV::identity(5)), Rational(4, 5));
  EXPECT_EQ(compose(s, s), MapOnV({2, 3, 4, 4, 4}));
  EXPECT_EQ(similarity_fraction(compose(s, s), truncated_shift(5, 2)), Rational(1, 5));

  // Cyclic rotation by one disagrees with the identity everywhere.
  EXPECT_EQ(similarity_fraction(MapOnV({1, 2, 3, 4, 0}), MapOnV::identity(5)), Rational(1));
  EXPECT_EQ(agreement_fraction(s, MapOnV::identity(5)), Rational(1, 5));
}

TEST(MapOnV, SimilarityIsAPseudometric) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const auto a = random_map(rng, n), b = random_map(rng, n), c = random_map(rng, n);
    ASSERT_EQ(similarity_fraction(a, a), Rational(0));
    ASSERT_EQ(similarity_fraction(a, b), similarity_fraction(b, a));
    ASSERT_LE(similarity_fraction(a, c), similarity_fraction(a, b) + similarity_fraction(b, c));
    ASSERT_EQ(similarity_fraction(a, b) + agreement_fraction(a, b), Rational(1));
  }
}

TEST(MapOnV, EpsilonPredicates) {
  const auto s = truncated_shift(5, 1);
  const auto id = MapOnV::identity(5);
  EXPECT_TRUE(epsilon_similar(s, id, Rational(4, 5)));
  EXPECT_FALSE(epsilon_similar(s, id, Rational(3, 5)));
  // One agreement out of five: different at eps only when 1/5 < eps.
  EXPECT_FALSE(epsilon_different(s, id, Rational(1, 5)));
  EXPECT_TRUE(epsilon_different(s, id, Rational(1, 4)));
}

TEST(SoficApproximation, ConstructorValidation) {
  const auto z = Group::free_abelian(1);
  const auto id = MapOnV::identity(3);
  const Rational half(1, 2);
  EXPECT_THROW(SoficApproximation(z, 0, {}, {}, half), DomainError);
  EXPECT_THROW(SoficApproximation(z, 3, {el(1), el(1)}, {id, id}, half), DomainError);
  EXPECT_THROW(SoficApproximation(z, 3, {el(1)}, {MapOnV::identity(4)}, half), DomainError);
  EXPECT_THROW(SoficApproximation(z, 3, {el(1)}, {id}, Rational(0)), DomainError);
  EXPECT_THROW(SoficApproximation(z, 3, {el(1)}, {id}, Rational(1)), DomainError);
  EXPECT_THROW(SoficApproximation(z, 3, {el(1, 0)}, {id}, half), DomainError);
  EXPECT_THROW(SoficApproximation(z, 3, {el(1)}, {}, half), DomainError);

  const SoficApproximation a(z, 3, {el(1)}, {MapOnV({1, 2, 2})}, half);
  EXPECT_TRUE(a.contains(z.identity()));
  EXPECT_TRUE(a.phi(z.identity()).is_identity());
  EXPECT_THROW(a.phi(el(2)), DomainError);
}

TEST(Defects, QuotientApproximationIsExact) {
  const auto z = Group::free_abelian(1);
  for (std::int64_t n : {4, 8, 16}) {
    const auto hom = QuotientHom::reduction(z, {n});
    const auto approx = quotient_approx(hom, ball(z, 2).elements(), Rational(1, 2));
    const auto rep = defect_report(approx);
    EXPECT_EQ(rep.max_a, Rational(0));
    EXPECT_EQ(rep.defect_b, Rational(0));
    EXPECT_EQ(rep.max_c, Rational(0));
    EXPECT_EQ(rep.excluded_pairs, 25u - 19u);
  }
}

TEST(Defects, QuotientAgreementDetectsTheKernel) {
  const auto z = Group::free_abelian(1);
  const auto hom = QuotientHom::reduction(z, {4});
  const auto approx = quotient_approx(hom, {el(1), el(4)}, Rational(1, 2));
  const auto rep = defect_report(approx);
  ASSERT_EQ(rep.defect_c.size(), 2u);
  for (const auto& c : rep.defect_c) {
    const auto& g = approx.elements()[c.index];
    EXPECT_EQ(c.agreement, g == el(4) ? Rational(1) : Rational(0));
  }
  EXPECT_EQ(rep.max_c, Rational(1));
  EXPECT_FALSE(rep.satisfies(Rational(1, 2)));
}

TEST(Defects, FolnerBoxOnZ) {
  const auto z = Group::free_abelian(1);
  for (std::int64_t n : {8, 16, 32}) {
    const auto approx =
        folner_approx(z, BoxWindow::cube(1, n), ball(z, 2).elements(), Rational(1, 2));
    const auto rep = defect_report(approx);
    const auto e = *approx.index_of(el(1));
    EXPECT_EQ(rep.pair_fraction(e, e), Rational(1, n));
    // The single bad point of (+1, +1) is n - 2.
    const auto twice = compose(approx.phi(el(1)), approx.phi(el(1)));
    std::vector<std::uint32_t> bad;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (twice(v) != approx.phi(el(2))(v)) bad.push_back(v);
    }
    EXPECT_EQ(bad, std::vector<std::uint32_t>{static_cast<std::uint32_t>(n - 2)});
    EXPECT_EQ(rep.defect_b, Rational(0));
  }
}

TEST(Defects, FolnerPairsOutsideFAreExcluded) {
  const auto z = Group::free_abelian(1);
  const auto approx = folner_approx(z, BoxWindow::cube(1, 8), {el(-1), el(0), el(1)}, Rational(1, 2));
  const auto rep = defect_report(approx);
  const auto e = *approx.index_of(el(1));
  EXPECT_FALSE(rep.pair_fraction(e, e).has_value());
  EXPECT_EQ(rep.excluded_pairs, 2u);
}

TEST(Defects, FolnerMatchesCoordinateEnumeration) {
  for (std::size_t d : {1u, 2u}) {
    const auto g = Group::free_abelian(d);
    for (std::int64_t n : {4, 7, 8}) {
      const auto approx = folner_approx(g, BoxWindow::cube(d, n), ball(g, 2).elements(), Rational(1, 2));
      const auto rep = defect_report(approx);
      const auto& elems = approx.elements();
      const auto volume = static_cast<std::int64_t>(approx.v_size());
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
          const auto frac = rep.pair_fraction(i, j);
          const auto prod = g.multiply(elems[i], elems[j]);
          ASSERT_EQ(frac.has_value(), approx.contains(prod));
          if (!frac) continue;
          const auto count = box_pair_disagreements(d, n, elems[i].coords, elems[j].coords);
          ASSERT_EQ(*frac, Rational(static_cast<std::int64_t>(count), volume));
        }
      }
    }
  }
}

TEST(Defects, FolnerDefectDecaysLikeOneOverSide) {
  for (std::size_t d : {1u, 2u}) {
    const auto g = Group::free_abelian(d);
    for (int r : {1, 2}) {
      Rational previous(0);
      for (std::int64_t n : {8, 16, 32}) {
        const auto rep = defect_report(
            folner_approx(g, BoxWindow::cube(d, n), ball(g, r).elements(), Rational(1, 2)));
        // Bad points lie in a band of width 2r along the faces.
        EXPECT_LE(rep.max_a, Rational(2 * r, n));
        if (d == 2 && r == 1) {
          EXPECT_LE(rep.max_a, Rational(2, n));
        }
        if (d == 1 && n > 8) {
          EXPECT_EQ(rep.max_a * 2, previous);
        }
        previous = rep.max_a;
      }
    }
  }
}

TEST(Defects, FolnerBoundaryCount) {
  const auto z2 = Group::free_abelian(2);
  // Points of [0,8)^2 whose unit neighbours leave the box.
  EXPECT_EQ(folner_boundary(z2, BoxWindow::cube(2, 8), ball(z2, 1).elements()), 64u - 36u);
  EXPECT_THROW(folner_boundary(z2, BoxWindow::cube(1, 8), ball(z2, 1).elements()), DomainError);
}

TEST(Defects, FormulaForElementsThatLeaveTheBox) {
  // phi(g)(v) = g v inside the box and v otherwise.
  const auto z = Group::free_abelian(1);
  const std::int64_t n = 6;
  const auto approx = folner_approx(z, BoxWindow::cube(1, n), {el(1)}, Rational(1, 2));
  EXPECT_EQ(approx.phi(el(1)), MapOnV({1, 2, 3, 4, 5, 5}));
  const auto shifted = folner_approx(z, BoxWindow{{-2}, {4}}, {el(-1)}, Rational(1, 2));
  // Points -2, -1, 0, 1.
  EXPECT_EQ(shifted.phi(el(-1)), MapOnV({0, 0, 1, 2}));
}

TEST(Defects, WholeGroupWindowIsTheRegularAction) {
  for (const auto& file : testing::finite_fixture_files()) {
    const auto g = load_group_file(file).group;
    const auto approx = folner_approx(g, WholeGroup{}, ball(g, 2).elements(), Rational(1, 2));
    ASSERT_EQ(approx.v_size(), g.order()) << file;
    const auto rep = defect_report(approx);
    ASSERT_EQ(rep.max_a, Rational(0)) << file;
    ASSERT_EQ(rep.max_c, Rational(0)) << file;
  }
}

TEST(QuotientHom, FiniteTableHomomorphisms) {
  const auto s3 = testing::fixture_group("groups/finite/s3.json");
  const auto z2 = Group::finite_quotient({2});
  const auto z3 = Group::finite_quotient({3});
  const auto a = s3.evaluate("a");
  const auto b = s3.evaluate("b");
  const QuotientHom sign(s3, z2, {el(0), el(1)});
  EXPECT_EQ(sign.apply(s3.multiply(a, b)), el(1));
  EXPECT_EQ(sign.apply(s3.multiply(b, b)), el(0));
  EXPECT_THROW(QuotientHom(s3, z3, {el(1), el(0)}), DomainError);
  EXPECT_THROW(QuotientHom(s3, z2, {el(0)}), DomainError);
  EXPECT_THROW(QuotientHom(s3, Group::free_abelian(1), {el(0), el(1)}), DomainError);
  EXPECT_THROW(QuotientHom(s3, z2, {el(0), el(0)}), DomainError);  // not onto
}

TEST(QuotientHom, Reductions) {
  const auto z2 = Group::free_abelian(2);
  const auto hom = QuotientHom::reduction(z2, {3, 5});
  EXPECT_EQ(hom.apply(el(-1, 7)), el(2, 2));
  EXPECT_THROW(QuotientHom::reduction(z2, {3}), DomainError);
  EXPECT_THROW(QuotientHom::reduction(Group::finite_quotient({2}), {4}), DomainError);
  const auto onto = QuotientHom::reduction(Group::finite_quotient({8}), {4});
  EXPECT_EQ(onto.apply(el(6)), el(2));
}

TEST(Amplify, DefectsAreUnchanged) {
  const auto z = Group::free_abelian(1);
  const auto approx = folner_approx(z, BoxWindow::cube(1, 8), ball(z, 2).elements(), Rational(1, 4));
  const auto big = amplify(approx, 3);
  EXPECT_EQ(big.v_size(), 24u);
  const auto r1 = defect_report(approx);
  const auto r3 = defect_report(big);
  EXPECT_EQ(r1.max_a, r3.max_a);
  EXPECT_EQ(r1.max_c, r3.max_c);
  for (std::size_t i = 0; i < r1.pairs.size(); ++i) EXPECT_EQ(r1.pairs[i].fraction, r3.pairs[i].fraction);
  EXPECT_EQ(big.phi(el(1))(8 + 3), 8u + 4u);
  EXPECT_THROW(amplify(approx, 0), DomainError);
}

TEST(ApproximationFile, RoundTrip) {
  const auto z2 = Group::free_abelian(2);
  const auto approx = folner_approx(z2, BoxWindow::cube(2, 4), ball(z2, 1).elements(), Rational(1, 8), "box 4");
  std::stringstream s;
  write_approximation(s, approx);
  const auto back = read_approximation(s, z2);
  EXPECT_EQ(back.v_size(), approx.v_size());
  EXPECT_EQ(back.elements(), approx.elements());
  EXPECT_EQ(back.maps(), approx.maps());
  EXPECT_EQ(back.epsilon(), approx.epsilon());
  EXPECT_EQ(back.label(), "box 4");
}

TEST(ApproximationFile, MalformedInput) {
  const auto z = Group::free_abelian(1);
  const auto approx = folner_approx(z, BoxWindow::cube(1, 4), {el(1)}, Rational(1, 2));
  std::stringstream good;
  write_approximation(good, approx);
  const std::string text = good.str();

  auto parse = [&](const std::string& s) {
    std::istringstream in(s);
    return read_approximation(in, z);
  };
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("sofic-approximation 2\n"), ParseError);
  EXPECT_THROW(parse(text.substr(0, text.size() - 4)), ParseError);
  std::string bad_image = text;
  bad_image.replace(bad_image.rfind(' '), 2, " 9");
  EXPECT_THROW(parse(bad_image), ParseError);
}

TEST(Family, EpsilonAndLabels) {
  EXPECT_EQ(level_epsilon(1), Rational(1, 2));
  EXPECT_EQ(level_epsilon(3), Rational(1, 8));
  const auto z = Group::free_abelian(1);
  const auto fam = quotient_family(z, {4, 8, 16}, 2);
  ASSERT_EQ(fam.size(), 3u);
  for (std::size_t k = 0; k < fam.size(); ++k) {
    EXPECT_EQ(fam[k].epsilon(), level_epsilon(k + 1));
    EXPECT_EQ(fam[k].elements(), ball(z, 2).elements());
    EXPECT_FALSE(fam[k].label().empty());
  }
  EXPECT_EQ(fam[2].v_size(), 16u);
  const auto box = folner_family(Group::free_abelian(2), {4, 8}, 1);
  EXPECT_EQ(box[1].v_size(), 64u);
}

TEST(Family, FiniteGroupsUseCopiesOfTheRegularAction) {
  const auto c2 = load_group_file(testing::fixture("groups/cyclic2.json")).group;
  const auto fam = quotient_family(c2, {2, 4, 8}, 2);
  EXPECT_EQ(fam[2].v_size(), 8u);
  for (const auto& a : fam) EXPECT_EQ(defect_report(a).max_a, Rational(0));
  EXPECT_THROW(quotient_family(c2, {3}, 2), DomainError);
  const auto s3 = testing::fixture_group("groups/finite/s3.json");
  EXPECT_EQ(folner_family(s3, {6, 12}, 1)[1].v_size(), 12u);
  EXPECT_THROW(folner_family(s3, {8}, 1), DomainError);
}

TEST(Family, ZSquaredQuotientsAreExact) {
  const auto z2 = Group::free_abelian(2);
  for (const auto& a : quotient_family(z2, {5, 7}, 2)) {
    const auto rep = defect_report(a);
    EXPECT_EQ(rep.max_a, Rational(0));
    EXPECT_EQ(rep.max_c, Rational(0));
    EXPECT_TRUE(rep.satisfies(a.epsilon()));
  }
}

}  // namespace
}  // namespace sofic
