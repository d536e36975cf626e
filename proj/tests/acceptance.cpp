// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sofic/bridge.hpp"
#include "sofic/family.hpp"
#include "sofic/group_io.hpp"
#include "sofic/random.hpp"
#include "sofic/rank_function.hpp"
#include "test_support.hpp"

namespace sofic {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

GroupRingElement random_element(Rng& rng, const Group& g, PrimeField f,
                                const std::vector<GroupElement>& pool, std::size_t max_terms) {
  GroupRingElement a(g, f);
  while (a.is_zero()) {
    const std::size_t terms = 1 + rng.below(max_terms);
    for (std::size_t i = 0; i < terms; ++i) {
      a.add_term(pool[rng.below(pool.size())],
                 static_cast<std::uint32_t>(1 + rng.below(f.prime() - 1)));
    }
  }
  return a;
}

FpMatrix random_rank_matrix(Rng& rng, std::size_t rows, std::size_t cols, PrimeField f) {
  const std::size_t k = rng.below(std::min(rows, cols) + 1);
  if (k == 0) return FpMatrix(rows, cols, f);
  return mat_mul(random_matrix(rng, rows, k, f), random_matrix(rng, k, cols, f));
}

// All vectors in the column span, as strings of coordinates.
std::set<std::vector<std::uint32_t>> span_of(const FpMatrix& m) {
  const std::uint32_t p = m.prime();
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> coeff(m.cols(), 0);
  while (true) {
    std::vector<std::uint32_t> v(m.rows(), 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.field().add(v[r], m.field().mul(coeff[c], m(r, c)));
    }
    out.insert(v);
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  return out;
}

std::size_t log_p(std::size_t count, std::uint32_t p) {
  std::size_t d = 0;
  while (count > 1) {
    count /= p;
    ++d;
  }
  return d;
}

Outcome pseudo_rank_axioms() {
  Outcome o;
  std::uint64_t seed = 1;
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (const std::size_t n : {8u, 32u, 64u}) {
      const auto rep = pseudo_rank_axioms_check(p, n, 200, seed++);
      o.require(rep.violations() == 0, "violations at p=" + std::to_string(p) + " n=" + std::to_string(n));
      o.require(rep.checks_additive >= 200, "too few additivity checks");
    }
  }
  o.detail = o.ok ? "12 configurations x 200 trials, 0 violations" : o.detail;
  return o;
}

Outcome rank_nullity_and_modular_law() {
  Outcome o;
  Rng rng(2024);
  const std::uint32_t primes[] = {2, 3, 5, 7};
  for (int t = 0; t < 500; ++t) {
    const PrimeField f(primes[t % 4]);
    const std::size_t n = 1 + rng.below(64);
    const std::size_t cols = 1 + rng.below(64);
    const auto a = random_rank_matrix(rng, n, cols, f);
    const auto k = kernel_basis(a);
    o.require(rank(a) + nullity(a) == cols, "rank + nullity != cols");
    o.require(k.cols() == nullity(a) && rank(k) == k.cols(), "kernel basis has the wrong dimension");
    o.require(mat_mul(a, k).is_zero(), "kernel basis not in the kernel");

    const auto b = random_rank_matrix(rng, n, 1 + rng.below(64), f);
    const auto d = subspace_dims(a, b);
    o.require(d.dim_intersection + d.dim_sum == d.dim_a + d.dim_b, "modular law fails");
    o.require(d.dim_sum == rank(hconcat(a, b)) && d.dim_a == rank(a) && d.dim_b == rank(b),
              "subspace dimensions disagree with ranks");
  }
  int brute = 0;
  for (int t = 0; t < 200; ++t) {
    const PrimeField f(t % 2 == 0 ? 2 : 3);
    const std::size_t n = 1 + rng.below(f.prime() == 2 ? 8 : 5);
    const auto a = random_rank_matrix(rng, n, 1 + rng.below(4), f);
    const auto b = random_rank_matrix(rng, n, 1 + rng.below(4), f);
    const auto sa = span_of(a), sb = span_of(b);
    std::size_t common = 0;
    for (const auto& v : sa) common += sb.count(v);
    o.require(log_p(common, f.prime()) == subspace_dims(a, b).dim_intersection,
              "intersection disagrees with enumeration");
    ++brute;
  }
  if (o.ok) o.detail = "500 instances n <= 64, " + std::to_string(brute) + " enumerated at n <= 8";
  return o;
}

Outcome regularity() {
  Outcome o;
  std::size_t total = 0;
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    std::size_t verified = 0;
    for (const std::size_t n : {8u, 16u, 32u, 64u}) {
      const auto rep = regularity_check(p, n, 125, 100 + p * 64 + n);
      verified += rep.verified;
      total += rep.trials;
    }
    o.require(verified == 500, "p=" + std::to_string(p) + ": " + std::to_string(verified) + "/500 verified");
  }
  if (o.ok) o.detail = std::to_string(total) + " matrices, x y x = x for all";
  return o;
}

Outcome hom_defect_inequality() {
  Outcome o;
  std::size_t pairs = 0;
  for (const std::size_t d : {1u, 2u}) {
    const auto g = Group::free_abelian(d);
    const auto b1 = ball(g, 1).elements();
    for (const std::int64_t n : {8, 16, 32, 64}) {
      const auto lin = linearize(folner_family(g, {n}, 2)[0], PrimeField(2));
      for (const auto& x : b1) {
        for (const auto& y : b1) {
          const auto hd = hom_defect(x, y, lin);
          o.require(hd.within_bound(), "rank exceeds disagreement");
          ++pairs;
        }
      }
      if (d == 1) {
        const auto hd = hom_defect(testing::el(1), testing::el(1), lin);
        o.require(hd.rank_fraction == Rational(1, n), "(+1,+1) is not 1/n at n=" + std::to_string(n));
      }
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs within bound, (+1,+1) = 1/n";
  return o;
}

Outcome separated_set_bound() {
  Outcome o;
  Rng rng(55);
  const auto z = Group::free_abelian(1);
  std::size_t checked = 0;
  for (const std::uint32_t p : {2u, 3u}) {
    const PrimeField f(p);
    std::vector<SoficApproximation> levels = folner_family(z, {64}, 3);
    for (const auto& q : quotient_family(z, {16, 32, 64}, 3)) levels.push_back(q);
    const auto s3 = testing::fixture_group("groups/finite/s3.json");
    for (const auto& q : quotient_family(s3, {6, 12, 24}, 3)) levels.push_back(q);
    for (const auto& approx : levels) {
      const auto lin = linearize(approx, f);
      const auto pool = ball(approx.group(), 3).elements();
      for (int t = 0; t < 50; ++t) {
        const auto a = random_element(rng, approx.group(), f, pool, 4);
        const auto rep = injectivity_bound_check(a, lin);
        o.require(rep.support_size <= 4, "support too large");
        o.require(rep.rank_holds(), "rank(T(a)) < |X| on " + approx.label());
        o.require(rep.bound_holds(), "|X|/|V| below the bound on " + approx.label());
        o.require(rep.trend_holds(), "|X|/|V| below the trend on " + approx.label());
        ++checked;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " elements on boxes and quotients";
  return o;
}

Outcome direct_finiteness() {
  Outcome o;
  Rng rng(66);
  std::size_t groups = 0, units = 0;
  for (const auto& file : testing::finite_fixture_files()) {
    const auto g = load_group_file(file).group;
    const auto order = static_cast<std::int64_t>(g.order());
    const auto family = quotient_family(g, {order, 2 * order}, 16);
    const auto pool = g.elements();
    ++groups;
    for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const PrimeField f(p);
      int found = 0;
      for (int attempt = 0; attempt < 5000 && found < 20; ++attempt) {
        const auto a = random_element(rng, g, f, pool, 4);
        const auto b = right_inverse(a);
        if (!b) continue;
        ++found;
        const auto v = direct_finiteness_check(a, *b, family);
        o.require(v.ab_is_one && v.ba_is_one, "ab = 1 without ba = 1 in " + g.name());
        for (const auto& l : v.levels) {
          o.require(l.exact && l.rank_ab == Rational(0) && l.rank_ba == Rational(0),
                    "matrices disagree at a quotient level of " + g.name());
        }
      }
      o.require(found == 20, "fewer than 20 units found in " + g.name() + " over GF(" + std::to_string(p) + ")");
      units += static_cast<std::size_t>(found);
    }
  }
  o.require(groups == 42, "expected 42 fixtures, found " + std::to_string(groups));
  if (o.ok) o.detail = std::to_string(groups) + " groups, " + std::to_string(units) + " units";
  return o;
}

Outcome definition_round_trip() {
  Outcome o;
  const auto z = Group::free_abelian(1);
  for (const std::int64_t n : {8, 16, 32}) {
    const auto approx = quotient_family(z, {n}, 6)[0];
    const auto fwd = maps_to_graph(approx, 2, Rational(1, 10));
    o.require(fwd.good.vertices.size() == static_cast<std::size_t>(n), "V_0 != V at n=" + std::to_string(n));
    const auto rt = round_trip(approx, 2, Rational(1, 10));
    o.require(rt.mismatches.empty() && rt.compared == static_cast<std::size_t>(n) * 5,
              "round trip mismatch at n=" + std::to_string(n));
  }
  std::size_t instances = 0;
  for (const std::size_t d : {1u, 2u}) {
    const auto g = Group::free_abelian(d);
    for (const int r : {0, 1, 2}) {
      for (const std::int64_t n : {8, 12, 16}) {
        const auto approx = folner_family(g, {n}, 2 * r + 2)[0];
        const auto res = maps_to_graph(approx, r, Rational(1, 2));
        const auto bound = bad_vertex_bound(defect_report(approx), approx.v_size(), ball(g, r + 1).size(),
                                            ball(g, r).size(), g.generators().size());
        const auto bad = static_cast<std::int64_t>(approx.v_size() - res.good.vertices.size());
        o.require(Rational(bad) <= bound, "counting bound fails");
        ++instances;
      }
    }
  }
  Rng rng(77);
  for (int t = 0; t < 10; ++t) {
    const auto q = static_cast<std::int64_t>(1 + rng.below(100));
    const Rational delta(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q)) + 1), q);
    const auto r1 = static_cast<std::int64_t>(1 + rng.below(50));
    const auto r0 = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(r1)));
    const auto b = static_cast<std::int64_t>(1 + rng.below(8));
    const Rational expected = delta / Rational(4 * r1 * r1 + r0 * b);
    o.require(epsilon_threshold(delta, static_cast<std::size_t>(r1), static_cast<std::size_t>(r0),
                                static_cast<std::size_t>(b)) == expected,
              "threshold formula mismatch");
  }
  if (o.ok) o.detail = "n in {8,16,32} exact, " + std::to_string(instances) + " counting-bound instances";
  return o;
}

Outcome stable_finiteness() {
  Outcome o;
  Rng rng(88);
  int pairs = 0;
  for (int attempt = 0; attempt < 5000 && pairs < 50; ++attempt) {
    const std::uint32_t primes[] = {2, 3, 5, 7};
    const PrimeField f(primes[rng.below(4)]);
    const auto g = Group::finite_quotient({static_cast<std::int64_t>(2 + rng.below(7))});
    const auto pool = g.elements();
    RingMatrix a(2, g, f);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) a.at(i, j) = random_element(rng, g, f, pool, 3);
    }
    const auto b = right_inverse(a);
    if (!b) continue;
    ++pairs;
    const auto res = stable_finiteness_check(a, *b);
    o.require(res.ab_is_identity, "solved B is not a right inverse");
    o.require(res.ba_is_identity, "AB = I but BA != I");
    o.require(res.matrices_agree, "regular representation disagrees");
  }
  o.require(pairs == 50, "only " + std::to_string(pairs) + " invertible pairs found");
  if (o.ok) o.detail = std::to_string(pairs) + " pairs, BA = I for all";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace sofic

int main() {
  using namespace sofic;
  const std::vector<Criterion> criteria = {
      {1, "pseudo-rank axioms", 30, pseudo_rank_axioms},
      {2, "rank-nullity and modular law", 30, rank_nullity_and_modular_law},
      {3, "regularity witnesses", 60, regularity},
      {4, "homomorphism-defect inequality", 60, hom_defect_inequality},
      {5, "separated-set bound", 120, separated_set_bound},
      {6, "direct finiteness", 120, direct_finiteness},
      {7, "definition round trip", 30, definition_round_trip},
      {8, "stable finiteness", 30, stable_finiteness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                secs, c.limit_seconds, o.detail.c_str(), in_time ? "" : " [over time]");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
