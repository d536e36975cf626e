#include "sofic/rank_function.hpp"

#include <algorithm>

#include "sofic/errors.hpp"
#include "sofic/random.hpp"

namespace sofic {

namespace {

std::int64_t as_int(std::size_t n) { return static_cast<std::int64_t>(n); }

bool pairwise_distinct(std::vector<std::uint32_t> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

std::vector<const MapOnV*> support_maps(const SoficApproximation& approx,
                                        const std::vector<GroupElement>& support) {
  if (support.empty()) throw DomainError("empty support");
  std::vector<const MapOnV*> maps;
  for (const auto& s : support) maps.push_back(&approx.phi(s));
  return maps;
}

}  // namespace

// --- linearization -----------------------------------------------------------

Linearization::Linearization(SoficApproximation approx, PrimeField field)
    : approx_(std::move(approx)), field_(field) {}

FpMatrix Linearization::matrix(const GroupElement& g) const {
  const MapOnV& map = approx_.phi(g);
  FpMatrix m(size(), size(), field_);
  for (std::size_t v = 0; v < size(); ++v) m.set(map(v), v, 1);
  return m;
}

Linearization linearize(const SoficApproximation& approx, PrimeField field) {
  return Linearization(approx, field);
}

FpMatrix represent(const GroupRingElement& a, const Linearization& lin) {
  if (!(a.field() == lin.field())) {
    throw DomainError("element over GF(" + std::to_string(a.prime()) +
                      ") applied to a linearization over GF(" +
                      std::to_string(lin.field().prime()) + ")");
  }
  const SoficApproximation& approx = lin.approximation();
  if (!(a.group() == approx.group())) throw DomainError("element and approximation use different groups");
  std::string missing;
  for (const auto& [g, c] : a.terms()) {
    if (!approx.contains(g)) missing += (missing.empty() ? "" : ", ") + approx.group().format(g);
  }
  if (!missing.empty()) throw DomainError("support not covered by F: " + missing);
  FpMatrix m(lin.size(), lin.size(), lin.field());
  for (const auto& [g, c] : a.terms()) {
    const MapOnV& map = approx.phi(g);
    for (std::size_t v = 0; v < lin.size(); ++v) m.accumulate(map(v), v, c);
  }
  return m;
}

Rational normalized_rank(const FpMatrix& m) {
  if (!m.is_square() || m.rows() == 0) throw DomainError("normalized_rank needs a nonempty square matrix");
  return Rational(as_int(rank(m)), as_int(m.rows()));
}

// --- rank sequences ----------------------------------------------------------

std::size_t RankSequence::warning_count() const {
  return static_cast<std::size_t>(
      std::count_if(levels.begin(), levels.end(), [](const RankLevel& l) { return !l.value; }));
}

std::vector<Rational> RankSequence::values() const {
  std::vector<Rational> out;
  for (const auto& l : levels) {
    if (l.value) out.push_back(*l.value);
  }
  return out;
}

std::optional<Rational> RankSequence::last() const {
  const auto v = values();
  if (v.empty()) return std::nullopt;
  return v.back();
}

std::optional<Rational> RankSequence::tail_min() const {
  const auto v = values();
  if (v.empty()) return std::nullopt;
  return *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
}

std::optional<Rational> RankSequence::tail_max() const {
  const auto v = values();
  if (v.empty()) return std::nullopt;
  return *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
}

RankSequence pseudo_rank_sequence(const GroupRingElement& a,
                                  const std::vector<SoficApproximation>& family) {
  RankSequence seq;
  seq.element = a.to_string();
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& approx = family[k];
    RankLevel level{k + 1, approx.label(), approx.v_size(), std::nullopt, {}};
    try {
      level.value = normalized_rank(represent(a, Linearization(approx, a.field())));
    } catch (const DomainError& e) {
      level.warning = e.what();
    }
    seq.levels.push_back(std::move(level));
  }
  return seq;
}

// --- homomorphism defect -----------------------------------------------------

HomDefect hom_defect(const GroupElement& g, const GroupElement& h, const Linearization& lin) {
  const SoficApproximation& approx = lin.approximation();
  const GroupElement gh = approx.group().multiply(g, h);
  for (const auto* x : {&g, &h, &gh}) {
    if (!approx.contains(*x)) {
      throw DomainError("hom_defect: " + approx.group().format(*x) + " is not in F");
    }
  }
  const MapOnV& pg = approx.phi(g);
  const MapOnV& ph = approx.phi(h);
  const MapOnV& pgh = approx.phi(gh);
  std::vector<std::uint32_t> bad;
  for (std::uint32_t v = 0; v < lin.size(); ++v) {
    if (pg(ph(v)) != pgh(v)) bad.push_back(v);
  }
  // Column v of M_g M_h - M_gh is e_{phi(g)phi(h)v} - e_{phi(gh)v}.
  FpMatrix cols(lin.size(), bad.size(), lin.field());
  for (std::size_t j = 0; j < bad.size(); ++j) {
    cols.set(pg(ph(bad[j])), j, 1);
    cols.set(pgh(bad[j]), j, -1);
  }
  const auto n = as_int(lin.size());
  return HomDefect{Rational(as_int(rank(cols)), n), Rational(as_int(bad.size()), n)};
}

// --- separated sets ----------------------------------------------------------

std::vector<std::uint32_t> separated_set(const SoficApproximation& approx,
                                         const std::vector<GroupElement>& support) {
  const auto maps = support_maps(approx, support);
  std::vector<char> hit(approx.v_size(), 0);
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> images(maps.size());
  for (std::uint32_t p = 0; p < approx.v_size(); ++p) {
    bool free = true;
    for (std::size_t s = 0; s < maps.size(); ++s) {
      images[s] = (*maps[s])(p);
      free = free && !hit[images[s]];
    }
    if (!free || !pairwise_distinct(images)) continue;
    chosen.push_back(p);
    for (const auto w : images) hit[w] = 1;
  }
  return chosen;
}

Rational InjectivityReport::fraction() const {
  return Rational(as_int(separated.size()), as_int(vertices));
}

bool InjectivityReport::trend_holds() const {
  const auto s = as_int(support_size);
  return fraction() >= Rational(1, s * s) - Rational(2 * s) * eps_measured;
}

InjectivityReport injectivity_bound_check(const GroupRingElement& a, const Linearization& lin) {
  if (a.is_zero()) throw DomainError("injectivity_bound_check needs a nonzero element");
  const SoficApproximation& approx = lin.approximation();
  const FpMatrix t = represent(a, lin);
  const auto support = a.support();
  const auto maps = support_maps(approx, support);

  InjectivityReport r;
  r.support_size = support.size();
  r.vertices = lin.size();
  r.separated = separated_set(approx, support);
  r.rank = rank(t);

  std::vector<std::uint32_t> all;
  for (const auto q : r.separated) {
    for (const auto* m : maps) all.push_back((*m)(q));
  }
  r.images_distinct = pairwise_distinct(std::move(all));

  std::vector<std::uint32_t> images(maps.size());
  for (std::uint32_t p = 0; p < lin.size(); ++p) {
    for (std::size_t s = 0; s < maps.size(); ++s) images[s] = (*maps[s])(p);
    if (!pairwise_distinct(images)) ++r.inadmissible;
  }
  const auto n = as_int(lin.size());
  const auto s = as_int(support.size());
  for (const auto* m : maps) {
    r.eps_injective = std::max(r.eps_injective, Rational(n - as_int(m->image_size()), n));
  }
  r.eps_measured = r.eps_injective + Rational(as_int(r.inadmissible), s * n);
  r.bound = (Rational(1) - r.eps_measured * s) / (s * s);
  return r;
}

// --- finiteness --------------------------------------------------------------

bool FinitenessVerdict::corroborated() const {
  const Rational zero(0);
  return std::all_of(levels.begin(), levels.end(), [&](const FinitenessLevel& l) {
    if (!l.exact) return true;
    return (!ab_is_one || !l.rank_ab || *l.rank_ab == zero) &&
           (!ba_is_one || !l.rank_ba || *l.rank_ba == zero);
  });
}

FinitenessVerdict direct_finiteness_check(const GroupRingElement& a, const GroupRingElement& b,
                                          const std::vector<SoficApproximation>& family) {
  const GroupRingElement ab = ring_mul(a, b);
  const GroupRingElement ba = ring_mul(b, a);
  FinitenessVerdict verdict;
  verdict.a = a.to_string();
  verdict.b = b.to_string();
  verdict.ab_is_one = ring_is_one(ab);
  verdict.ba_is_one = ring_is_one(ba);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& approx = family[k];
    FinitenessLevel level{k + 1, approx.label(), approx.v_size(), std::nullopt, std::nullopt, false, {}};
    try {
      const Linearization lin(approx, a.field());
      const FpMatrix ta = represent(a, lin);
      const FpMatrix tb = represent(b, lin);
      const FpMatrix id = FpMatrix::identity(lin.size(), a.field());
      level.rank_ab = normalized_rank(mat_sub(mat_mul(ta, tb), id));
      level.rank_ba = normalized_rank(mat_sub(mat_mul(tb, ta), id));
      const DefectReport defects = defect_report(approx);
      level.exact = defects.max_a == Rational(0) && defects.defect_b == Rational(0);
    } catch (const DomainError& e) {
      level.rank_ab.reset();
      level.rank_ba.reset();
      level.warning = e.what();
    }
    verdict.levels.push_back(std::move(level));
  }
  return verdict;
}

StableFinitenessResult stable_finiteness_check(const RingMatrix& a, const RingMatrix& b) {
  const RingMatrix ab = ring_matrix_mul(a, b);
  const RingMatrix ba = ring_matrix_mul(b, a);
  StableFinitenessResult r;
  r.ab_is_identity = ab.is_identity();
  r.ba_is_identity = ba.is_identity();
  const FpMatrix rab = regular_representation(ab);
  const FpMatrix rba = regular_representation(ba);
  const FpMatrix id = FpMatrix::identity(rab.rows(), a.field());
  r.matrices_agree = (rab == id) == r.ab_is_identity && (rba == id) == r.ba_is_identity;
  return r;
}

// --- pseudo-rank axioms ------------------------------------------------------

AxiomsReport pseudo_rank_axioms_check(std::uint32_t p, std::size_t n, std::size_t trials,
                                      std::uint64_t seed) {
  if (n == 0 || trials == 0) throw DomainError("axioms check needs n >= 1 and trials >= 1");
  const PrimeField field(p);
  Rng rng(seed);
  AxiomsReport r{p, n, trials, seed};
  const auto N = [](const FpMatrix& m) { return normalized_rank(m); };
  const FpMatrix id = FpMatrix::identity(n, field);
  const FpMatrix zero(n, n, field);

  for (std::size_t t = 0; t < trials; ++t) {
    // (a)
    const auto lambda = static_cast<std::int64_t>(1 + rng.below(p - 1));
    for (const bool ok : {N(id) == Rational(1), N(zero) == Rational(0),
                          N(mat_scale(id, lambda)) == Rational(1)}) {
      ++r.checks_normalized;
      if (!ok) ++r.violations_normalized;
    }

    // (b)
    const FpMatrix x = random_low_rank(rng, n, rng.below(n + 1), field);
    const FpMatrix y = random_low_rank(rng, n, rng.below(n + 1), field);
    const Rational nxy = N(mat_mul(x, y));
    for (const bool ok : {nxy <= N(x), nxy <= N(y)}) {
      ++r.checks_product;
      if (!ok) ++r.violations_product;
    }

    // (c): coordinates split among e, f and neither; half the trials use
    // complementary projectors.
    const bool complementary = rng.below(2) == 0;
    FpMatrix de(n, n, field);
    FpMatrix df(n, n, field);
    for (std::size_t i = 0; i < n; ++i) {
      const auto slot = rng.below(complementary ? 2 : 3);
      if (slot == 0) de.set(i, i, 1);
      if (slot == 1) df.set(i, i, 1);
    }
    const FpMatrix c = random_invertible(rng, n, field);
    const FpMatrix c_inv = *inverse(c);
    const FpMatrix e = mat_mul(mat_mul(c, de), c_inv);
    const FpMatrix f = mat_mul(mat_mul(c, df), c_inv);
    const bool orthogonal_idempotents = mat_mul(e, e) == e && mat_mul(f, f) == f &&
                                        mat_mul(e, f).is_zero() && mat_mul(f, e).is_zero();
    ++r.checks_additive;
    if (!orthogonal_idempotents || N(mat_add(e, f)) != N(e) + N(f)) ++r.violations_additive;
  }
  return r;
}

// --- regularity ----------------------------------------------------------------

bool verify_regular_witness(const FpMatrix& x, const FpMatrix& y) {
  if (y.rows() != x.cols() || y.cols() != x.rows()) return false;
  return mat_mul(mat_mul(x, y), x) == x;
}

RegularityReport regularity_check(std::uint32_t p, std::size_t n, std::size_t trials,
                                  std::uint64_t seed) {
  if (n == 0 || trials == 0) throw DomainError("regularity check needs n >= 1 and trials >= 1");
  const PrimeField field(p);
  Rng rng(seed);
  RegularityReport r{p, n, trials, seed, 0};
  for (std::size_t t = 0; t < trials; ++t) {
    // Alternate full random matrices with deliberately rank-deficient ones.
    const FpMatrix x = t % 2 == 0 ? random_matrix(rng, n, n, field)
                                  : random_low_rank(rng, n, rng.below(n + 1), field);
    if (verify_regular_witness(x, regular_witness(x))) ++r.verified;
  }
  return r;
}

}  // namespace sofic
