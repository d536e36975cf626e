#include "sofic/sofic_approx.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "sofic/errors.hpp"

namespace sofic {

SoficApproximation::SoficApproximation(Group group, std::size_t v_size,
                                       std::vector<GroupElement> elements,
                                       std::vector<MapOnV> maps, Rational epsilon,
                                       std::string label)
    : group_(std::move(group)),
      v_size_(v_size),
      elements_(std::move(elements)),
      maps_(std::move(maps)),
      epsilon_(epsilon),
      label_(std::move(label)) {
  if (v_size_ == 0) throw DomainError("approximation needs |V| >= 1");
  if (elements_.size() != maps_.size()) throw DomainError("one map per element of F required");
  if (epsilon_ <= 0 || epsilon_ >= 1) throw DomainError("epsilon must lie in (0, 1)");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!group_.contains(elements_[i])) throw DomainError("element of F outside the group");
    if (maps_[i].size() != v_size_) throw DomainError("map size differs from |V|");
    if (!index_.emplace(elements_[i], i).second) throw DomainError("repeated element in F");
  }
  const GroupElement id = group_.identity();
  if (!index_.count(id)) {
    elements_.insert(elements_.begin(), id);
    maps_.insert(maps_.begin(), MapOnV::identity(v_size_));
    index_.clear();
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  }
}

std::optional<std::size_t> SoficApproximation::index_of(const GroupElement& g) const {
  const auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const MapOnV& SoficApproximation::phi(const GroupElement& g) const {
  const auto i = index_of(g);
  if (!i) throw DomainError("element " + group_.format(g) + " is not in F");
  return maps_[*i];
}

std::size_t SoficApproximation::identity_index() const { return *index_of(group_.identity()); }

// --- defects ---------------------------------------------------------------

Rational DefectReport::max_abc() const { return std::max({max_a, defect_b, max_c}); }

std::optional<Rational> DefectReport::pair_fraction(std::size_t e, std::size_t f) const {
  if (e >= element_count || f >= element_count) return std::nullopt;
  return pairs[e * element_count + f].fraction;
}

bool DefectReport::satisfies(const Rational& eps) const {
  return max_a <= eps && defect_b <= eps && (defect_c.empty() || max_c < eps);
}

DefectReport defect_report(const SoficApproximation& approx) {
  const auto& F = approx.elements();
  const auto& group = approx.group();
  DefectReport report;
  report.element_count = F.size();
  report.max_a = 0;
  report.max_c = 0;
  report.pairs.reserve(F.size() * F.size());
  for (std::size_t e = 0; e < F.size(); ++e) {
    for (std::size_t f = 0; f < F.size(); ++f) {
      PairDefect pd{e, f, group.multiply(F[e], F[f]), std::nullopt};
      if (const auto ef = approx.index_of(pd.product)) {
        const MapOnV& a = approx.maps()[e];
        const MapOnV& b = approx.maps()[f];
        const MapOnV& c = approx.maps()[*ef];
        std::int64_t bad = 0;
        for (std::size_t v = 0; v < approx.v_size(); ++v) bad += a(b(v)) != c(v);
        pd.fraction = Rational(bad, static_cast<std::int64_t>(approx.v_size()));
        report.max_a = std::max(report.max_a, *pd.fraction);
      } else {
        ++report.excluded_pairs;
      }
      report.pairs.push_back(std::move(pd));
    }
  }
  const std::size_t id = approx.identity_index();
  const MapOnV identity = MapOnV::identity(approx.v_size());
  report.defect_b = similarity_fraction(approx.maps()[id], identity);
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i == id) continue;
    ElementAgreement ea{i, agreement_fraction(approx.maps()[i], identity)};
    report.max_c = std::max(report.max_c, ea.agreement);
    report.defect_c.push_back(ea);
  }
  return report;
}

SoficApproximation amplify(const SoficApproximation& approx, std::size_t copies) {
  if (copies == 0) throw DomainError("amplify needs at least one copy");
  const std::size_t n = approx.v_size();
  std::vector<MapOnV> maps;
  for (const auto& m : approx.maps()) {
    std::vector<std::uint32_t> images(n * copies);
    for (std::size_t c = 0; c < copies; ++c) {
      for (std::size_t v = 0; v < n; ++v) {
        images[c * n + v] = static_cast<std::uint32_t>(c * n + m(v));
      }
    }
    maps.emplace_back(std::move(images));
  }
  return SoficApproximation(approx.group(), n * copies, approx.elements(), std::move(maps),
                            approx.epsilon(),
                            approx.label() + (copies > 1 ? " x" + std::to_string(copies) : ""));
}

// --- Folner builder ----------------------------------------------------------

BoxWindow BoxWindow::cube(std::size_t dim, std::int64_t side) {
  return BoxWindow{std::vector<std::int64_t>(dim, 0), std::vector<std::int64_t>(dim, side)};
}

std::size_t BoxWindow::size() const {
  std::size_t n = 1;
  for (auto s : sides) n *= static_cast<std::size_t>(std::max<std::int64_t>(s, 0));
  return n;
}

namespace {

void check_box(const Group& group, const BoxWindow& window) {
  if (group.kind() != GroupKind::kFreeAbelian) {
    throw DomainError("box windows need a free abelian group");
  }
  if (window.lower.size() != group.arity() || window.sides.size() != group.arity()) {
    throw DomainError("box window dimension differs from the rank");
  }
  if (window.size() == 0) throw DomainError("empty window");
  if (window.size() > (std::size_t{1} << 26)) throw ResourceError("window too large");
}

// Lexicographic index of a point, or nullopt outside the box.
std::optional<std::size_t> box_index(const BoxWindow& w, const std::vector<std::int64_t>& x) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t off = x[i] - w.lower[i];
    if (off < 0 || off >= w.sides[i]) return std::nullopt;
    idx = idx * static_cast<std::size_t>(w.sides[i]) + static_cast<std::size_t>(off);
  }
  return idx;
}

std::vector<std::vector<std::int64_t>> box_points(const BoxWindow& w) {
  std::vector<std::vector<std::int64_t>> pts;
  pts.reserve(w.size());
  std::vector<std::int64_t> x = w.lower;
  for (std::size_t k = 0; k < w.size(); ++k) {
    pts.push_back(x);
    for (std::size_t i = x.size(); i-- > 0;) {
      if (++x[i] < w.lower[i] + w.sides[i]) break;
      x[i] = w.lower[i];
    }
  }
  return pts;
}

}  // namespace

SoficApproximation folner_approx(const Group& group, const Window& window,
                                 std::vector<GroupElement> elements, Rational epsilon,
                                 std::string label) {
  for (const auto& g : elements) {
    if (!group.contains(g)) throw DomainError("element of F outside the group");
  }
  std::vector<MapOnV> maps;
  std::size_t n = 0;
  if (const auto* box = std::get_if<BoxWindow>(&window)) {
    check_box(group, *box);
    const auto points = box_points(*box);
    n = points.size();
    for (const auto& g : elements) {
      std::vector<std::uint32_t> images(n);
      for (std::size_t v = 0; v < n; ++v) {
        const auto moved = group.multiply(g, GroupElement{points[v]});
        const auto w = box_index(*box, moved.coords);
        images[v] = static_cast<std::uint32_t>(w ? *w : v);
      }
      maps.emplace_back(std::move(images));
    }
  } else {
    if (!group.is_finite()) throw DomainError("whole-group window needs a finite group");
    const auto elems = group.elements();
    n = elems.size();
    for (const auto& g : elements) {
      std::vector<std::uint32_t> images(n);
      for (std::size_t v = 0; v < n; ++v) {
        images[v] = static_cast<std::uint32_t>(group.index_of(group.multiply(g, elems[v])));
      }
      maps.emplace_back(std::move(images));
    }
  }
  return SoficApproximation(group, n, std::move(elements), std::move(maps), epsilon,
                            std::move(label));
}

std::size_t folner_boundary(const Group& group, const BoxWindow& window,
                            const std::vector<GroupElement>& elements) {
  check_box(group, window);
  std::size_t count = 0;
  for (const auto& x : box_points(window)) {
    for (const auto& g : elements) {
      if (!box_index(window, group.multiply(g, GroupElement{x}).coords)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

// --- quotient builder ------------------------------------------------------

QuotientHom::QuotientHom(Group source, Group target, std::vector<GroupElement> generator_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images)) {
  if (!target_.is_finite()) throw DomainError("quotient target must be finite");
  const auto& gens = source_.primary_generators();
  if (images_.size() != gens.size()) throw DomainError("need one image per primary generator");
  for (const auto& img : images_) {
    if (!target_.contains(img)) throw DomainError("generator image outside the target");
  }

  if (source_.kind() == GroupKind::kFiniteTable) {
    const std::size_t n = source_.order();
    std::vector<std::optional<GroupElement>> image(n);
    const std::size_t id = source_.index_of(source_.identity());
    image[id] = target_.identity();
    std::deque<std::size_t> queue{id};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        for (int sign : {1, -1}) {
          const auto b = sign > 0 ? gens[i].element : source_.inverse(gens[i].element);
          const auto b_img = sign > 0 ? images_[i] : target_.inverse(images_[i]);
          const std::size_t y = source_.index_of(source_.multiply(b, GroupElement{{static_cast<std::int64_t>(x)}}));
          if (!image[y]) {
            image[y] = target_.multiply(b_img, *image[x]);
            queue.push_back(y);
          }
        }
      }
    }
    // Every relation b x = y must be respected.
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::size_t y = source_.index_of(source_.multiply(gens[i].element, GroupElement{{static_cast<std::int64_t>(x)}}));
        if (*image[y] != target_.multiply(images_[i], *image[x])) {
          throw DomainError("generator images do not define a homomorphism");
        }
      }
    }
    for (auto& im : image) table_images_.push_back(std::move(*im));
  } else {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      for (std::size_t j = 0; j < images_.size(); ++j) {
        if (target_.multiply(images_[i], images_[j]) != target_.multiply(images_[j], images_[i])) {
          throw DomainError("images of commuting generators do not commute");
        }
      }
      if (source_.kind() == GroupKind::kFiniteQuotient &&
          target_.power(images_[i], source_.moduli()[i]) != target_.identity()) {
        throw DomainError("generator image order does not divide the source modulus");
      }
    }
  }

  // Sampled products on a small ball.
  const Ball sample = ball(source_, 2);
  for (const auto& a : sample.elements()) {
    for (const auto& b : sample.elements()) {
      if (apply(source_.multiply(a, b)) != target_.multiply(apply(a), apply(b))) {
        throw DomainError("generator images do not define a homomorphism");
      }
    }
  }

  // Onto.
  std::set<GroupElement> reached{target_.identity()};
  std::deque<GroupElement> queue{target_.identity()};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& img : images_) {
      for (const auto& step : {img, target_.inverse(img)}) {
        auto y = target_.multiply(step, x);
        if (reached.insert(y).second) queue.push_back(std::move(y));
      }
    }
  }
  if (reached.size() != target_.order()) throw DomainError("quotient map is not onto");
}

QuotientHom QuotientHom::reduction(const Group& source, std::vector<std::int64_t> moduli) {
  if (source.kind() == GroupKind::kFiniteTable) {
    throw DomainError("reduction needs Z^d or a finite quotient of it");
  }
  if (moduli.size() != source.arity()) throw DomainError("one modulus per coordinate required");
  std::vector<std::string> names;
  for (const auto& g : source.primary_generators()) names.push_back(g.name);
  Group target = Group::finite_quotient(moduli, names);
  std::vector<GroupElement> images;
  for (const auto& g : target.primary_generators()) images.push_back(g.element);
  return QuotientHom(source, std::move(target), std::move(images));
}

QuotientHom QuotientHom::identity(const Group& finite_group) {
  std::vector<GroupElement> images;
  for (const auto& g : finite_group.primary_generators()) images.push_back(g.element);
  return QuotientHom(finite_group, finite_group, std::move(images));
}

GroupElement QuotientHom::apply(const GroupElement& g) const {
  if (!source_.contains(g)) throw DomainError("element outside the quotient source");
  if (source_.kind() == GroupKind::kFiniteTable) return table_images_[source_.index_of(g)];
  GroupElement out = target_.identity();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out = target_.multiply(out, target_.power(images_[i], g.coords[i]));
  }
  return out;
}

SoficApproximation quotient_approx(const QuotientHom& hom, std::vector<GroupElement> elements,
                                   Rational epsilon, std::string label) {
  const Group& q = hom.target();
  const auto qs = q.elements();
  std::vector<MapOnV> maps;
  for (const auto& g : elements) {
    const GroupElement image = hom.apply(g);
    std::vector<std::uint32_t> images(qs.size());
    for (std::size_t v = 0; v < qs.size(); ++v) {
      images[v] = static_cast<std::uint32_t>(q.index_of(q.multiply(image, qs[v])));
    }
    maps.emplace_back(std::move(images));
  }
  return SoficApproximation(hom.source(), qs.size(), std::move(elements), std::move(maps),
                            epsilon, std::move(label));
}

// --- text format -------------------------------------------------------------

void write_approximation(std::ostream& out, const SoficApproximation& approx) {
  out << "sofic-approximation 1\n";
  out << "group " << approx.group().name() << '\n';
  out << "vertices " << approx.v_size() << '\n';
  out << "epsilon " << to_string(approx.epsilon()) << '\n';
  out << "label " << approx.label() << '\n';
  out << "elements " << approx.elements().size() << '\n';
  for (std::size_t i = 0; i < approx.elements().size(); ++i) {
    out << approx.group().format(approx.elements()[i]);
    for (auto x : approx.maps()[i].images()) out << ' ' << x;
    out << '\n';
  }
}

namespace {

std::string expect_line(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("approximation file: missing '" + key + "'");
  if (line.rfind(key, 0) != 0) {
    throw ParseError("approximation file: expected '" + key + "', got '" + line + "'");
  }
  const std::string rest = line.substr(key.size());
  return rest.empty() ? rest : rest.substr(1);
}

std::size_t to_size(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("approximation file: bad count '" + s + "'");
}

}  // namespace

SoficApproximation read_approximation(std::istream& in, const Group& group) {
  if (expect_line(in, "sofic-approximation") != "1") {
    throw ParseError("approximation file: unsupported version");
  }
  expect_line(in, "group");
  const std::size_t n = to_size(expect_line(in, "vertices"));
  const Rational eps = parse_rational(expect_line(in, "epsilon"));
  std::string label = expect_line(in, "label");
  const std::size_t k = to_size(expect_line(in, "elements"));
  std::vector<GroupElement> elements;
  std::vector<MapOnV> maps;
  for (std::size_t i = 0; i < k; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("approximation file: truncated");
    std::istringstream row(line);
    std::string elem;
    row >> elem;
    elements.push_back(group.parse_element(elem));
    std::vector<std::uint32_t> images;
    std::int64_t x = 0;
    while (row >> x) {
      if (x < 0) throw ParseError("approximation file: negative image");
      images.push_back(static_cast<std::uint32_t>(x));
    }
    if (!row.eof() || images.size() != n) {
      throw ParseError("approximation file: row " + std::to_string(i) + " needs " +
                       std::to_string(n) + " images");
    }
    try {
      maps.emplace_back(std::move(images));
    } catch (const DomainError& e) {
      throw ParseError(std::string("approximation file: ") + e.what());
    }
  }
  return SoficApproximation(group, n, std::move(elements), std::move(maps), eps, std::move(label));
}

}  // namespace sofic
