#include "sofic/bridge.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "sofic/errors.hpp"

namespace sofic {

// --- LabeledDigraph ----------------------------------------------------------

LabeledDigraph::LabeledDigraph(std::size_t vertex_count, std::vector<std::string> labels)
    : vertex_count_(vertex_count), labels_(std::move(labels)), edges_(labels_.size()) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels_[i] == labels_[j]) throw DomainError("duplicate edge label '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> LabeledDigraph::label_index(const std::string& name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == name) return i;
  }
  return std::nullopt;
}

void LabeledDigraph::add_edge(std::size_t label, std::uint32_t src, std::uint32_t dst) {
  if (label >= labels_.size()) throw DomainError("edge label out of range");
  if (src >= vertex_count_ || dst >= vertex_count_) throw DomainError("edge endpoint out of range");
  auto& list = edges_[label];
  const std::pair<std::uint32_t, std::uint32_t> e{src, dst};
  const auto it = std::lower_bound(list.begin(), list.end(), e);
  if (it != list.end() && *it == e) return;
  const bool clash = (it != list.end() && it->first == src) ||
                     (it != list.begin() && std::prev(it)->first == src);
  if (clash) functional_ = false;
  list.insert(it, e);
}

std::size_t LabeledDigraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& l : edges_) n += l.size();
  return n;
}

bool LabeledDigraph::is_functional() const { return functional_; }

std::optional<std::uint32_t> LabeledDigraph::target(std::size_t label, std::uint32_t v) const {
  const auto& list = edges_[label];
  const auto it = std::lower_bound(list.begin(), list.end(),
                                   std::pair<std::uint32_t, std::uint32_t>{v, 0});
  if (it == list.end() || it->first != v) return std::nullopt;
  return it->second;
}

// --- charts ----------------------------------------------------------------

std::string ChartFailure::describe() const {
  std::string what;
  switch (kind) {
    case ChartFailureKind::kNonFunctional: what = "graph is not functional per label"; break;
    case ChartFailureKind::kUnknownLabel: what = "graph lacks label"; break;
    case ChartFailureKind::kMissingEdge: what = "missing edge"; break;
    case ChartFailureKind::kNotWellDefined: what = "geodesics disagree"; break;
    case ChartFailureKind::kNotInjective: what = "chart not injective"; break;
    case ChartFailureKind::kEdgeMismatch: what = "edge leaves the chart"; break;
    case ChartFailureKind::kExtraEdge: what = "extra edge inside the ball"; break;
  }
  if (!element.empty()) what += " at " + element;
  if (!label.empty()) what += " (label " + label + ")";
  return what;
}

LabeledDigraph cayley_ball_graph(const Group& group, const Ball& ball) {
  std::vector<std::string> labels;
  for (const auto& b : group.generators()) labels.push_back(b.name);
  LabeledDigraph graph(ball.size(), labels);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t k = 0; k < group.generators().size(); ++k) {
      const auto j = ball.index_of(group.multiply(group.generators()[k].element, ball[i]));
      if (j) graph.add_edge(k, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j));
    }
  }
  return graph;
}

LabeledDigraph cayley_ball_graph(const Group& group, int r) {
  return cayley_ball_graph(group, ball(group, r));
}

ChartResult chart_from_graph(const LabeledDigraph& graph, std::uint32_t v, const Ball& ball,
                             const Group& group) {
  const auto& B = group.generators();
  if (v >= graph.vertex_count()) throw DomainError("base vertex out of range");
  if (!graph.is_functional()) return ChartFailure{ChartFailureKind::kNonFunctional, "", ""};
  std::vector<std::size_t> label_of(B.size());
  for (std::size_t k = 0; k < B.size(); ++k) {
    const auto l = graph.label_index(B[k].name);
    if (!l) return ChartFailure{ChartFailureKind::kUnknownLabel, "", B[k].name};
    label_of[k] = *l;
  }
  std::vector<GroupElement> inv_b;
  for (const auto& b : B) inv_b.push_back(group.inverse(b.element));

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> images(ball.size(), kUnset);
  images[0] = v;
  for (std::size_t i = 1; i < ball.size(); ++i) {
    const int len = ball.lengths()[i];
    for (std::size_t k = 0; k < B.size(); ++k) {
      // g = b x with |x| = |g| - 1
      const auto x = ball.index_of(group.multiply(inv_b[k], ball[i]));
      if (!x || ball.lengths()[*x] != len - 1) continue;
      const auto w = graph.target(label_of[k], images[*x]);
      if (!w) return ChartFailure{ChartFailureKind::kMissingEdge, group.format(ball[*x]), B[k].name};
      if (images[i] == kUnset) {
        images[i] = *w;
      } else if (images[i] != *w) {
        return ChartFailure{ChartFailureKind::kNotWellDefined, group.format(ball[i]), B[k].name};
      }
    }
  }

  std::vector<std::uint32_t> owner(graph.vertex_count(), kUnset);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (owner[images[i]] != kUnset) {
      return ChartFailure{ChartFailureKind::kNotInjective, group.format(ball[i]), ""};
    }
    owner[images[i]] = static_cast<std::uint32_t>(i);
  }

  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t k = 0; k < B.size(); ++k) {
      const auto w = graph.target(label_of[k], images[i]);
      const auto j = ball.index_of(group.multiply(B[k].element, ball[i]));
      if (j) {
        if (!w) return ChartFailure{ChartFailureKind::kMissingEdge, group.format(ball[i]), B[k].name};
        if (*w != images[*j]) {
          return ChartFailure{ChartFailureKind::kEdgeMismatch, group.format(ball[i]), B[k].name};
        }
      } else if (w && owner[*w] != kUnset) {
        return ChartFailure{ChartFailureKind::kExtraEdge, group.format(ball[i]), B[k].name};
      }
    }
  }
  return BallChart{v, ball.radius(), std::move(images)};
}

ChartResult chart_from_graph(const LabeledDigraph& graph, std::uint32_t v, int r,
                             const Group& group) {
  return chart_from_graph(graph, v, ball(group, r), group);
}

// --- graph -> maps -----------------------------------------------------------

namespace {

// phi(g)(v) = psi_v(g) on the good set, v elsewhere; elements must lie in nr.
SoficApproximation maps_from_charts(const LabeledDigraph& graph, const GoodSet& good,
                                    const Ball& nr, std::vector<GroupElement> elements,
                                    const Group& group, Rational epsilon) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<std::uint32_t>> images(elements.size());
  for (auto& im : images) {
    im.resize(n);
    for (std::size_t v = 0; v < n; ++v) im[v] = static_cast<std::uint32_t>(v);
  }
  std::vector<std::size_t> positions;
  for (const auto& e : elements) positions.push_back(*nr.index_of(e));
  for (const auto v : good.vertices) {
    if (v >= n) throw PreconditionError("good vertex out of range");
    const ChartResult chart = chart_from_graph(graph, v, nr, group);
    if (const auto* failure = std::get_if<ChartFailure>(&chart)) {
      throw PreconditionError("no chart at vertex " + std::to_string(v) + ": " +
                              failure->describe());
    }
    const auto& psi = std::get<BallChart>(chart);
    for (std::size_t i = 0; i < elements.size(); ++i) images[i][v] = psi.images[positions[i]];
  }
  std::vector<MapOnV> maps;
  for (auto& im : images) maps.emplace_back(std::move(im));
  return SoficApproximation(group, n, std::move(elements), std::move(maps), epsilon,
                            "from graph r=" + std::to_string(nr.radius()));
}

}  // namespace

SoficApproximation graph_to_maps(const LabeledDigraph& graph, const GoodSet& good, int r,
                                 std::vector<GroupElement> elements, const Group& group,
                                 Rational epsilon) {
  if (std::find(elements.begin(), elements.end(), group.identity()) == elements.end()) {
    elements.insert(elements.begin(), group.identity());
  }
  const Ball nr = ball(group, r);
  for (const auto& e : elements) {
    for (const auto& f : elements) {
      if (!nr.contains(group.multiply(e, f))) {
        throw PreconditionError("F F is not inside N_" + std::to_string(r) + ": " +
                                group.format(e) + " * " + group.format(f));
      }
    }
  }
  return maps_from_charts(graph, good, nr, std::move(elements), group, epsilon);
}

// --- maps -> graph -----------------------------------------------------------

MapsToGraphResult maps_to_graph(const SoficApproximation& approx, int r, Rational delta) {
  if (r < 0) throw PreconditionError("radius must be non-negative");
  const Group& group = approx.group();
  const Ball big = ball(group, 2 * r + 2);
  for (const auto& g : big.elements()) {
    if (!approx.contains(g)) {
      throw PreconditionError("F does not contain N_" + std::to_string(2 * r + 2) + " (missing " +
                              group.format(g) + ")");
    }
  }
  const Ball nr = ball(group, r);
  const Ball nr1 = ball(group, r + 1);
  const auto& B = group.generators();
  const std::size_t n = approx.v_size();

  std::vector<std::string> labels;
  for (const auto& b : B) labels.push_back(b.name);
  LabeledDigraph graph(n, labels);
  std::vector<const MapOnV*> phi_b;
  for (std::size_t k = 0; k < B.size(); ++k) {
    phi_b.push_back(&approx.phi(B[k].element));
    for (std::uint32_t v = 0; v < n; ++v) graph.add_edge(k, v, (*phi_b[k])(v));
  }

  std::vector<const MapOnV*> psi;  // psi[i](v) = phi(N_{r+1}[i])(v)
  for (const auto& g : nr1.elements()) psi.push_back(&approx.phi(g));
  // (A) terms: index of b g in N_{r+1} for g in N_r.
  std::vector<std::vector<std::size_t>> bg(nr.size(), std::vector<std::size_t>(B.size()));
  std::vector<std::size_t> g_in_r1(nr.size());
  for (std::size_t i = 0; i < nr.size(); ++i) {
    g_in_r1[i] = *nr1.index_of(nr[i]);
    for (std::size_t k = 0; k < B.size(); ++k) {
      bg[i][k] = *nr1.index_of(group.multiply(B[k].element, nr[i]));
    }
  }

  GoodSet good;
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    bool ok = true;
    for (std::size_t i = 0; i < nr.size() && ok; ++i) {
      const std::uint32_t w = (*psi[g_in_r1[i]])(v);
      for (std::size_t k = 0; k < B.size() && ok; ++k) ok = (*psi[bg[i][k]])(v) == (*phi_b[k])(w);
    }
    ++stamp;
    for (std::size_t i = 0; i < nr1.size() && ok; ++i) {
      const std::uint32_t w = (*psi[i])(v);
      if (seen[w] == stamp) ok = false;
      seen[w] = stamp;
    }
    if (ok) good.vertices.push_back(v);
  }
  good.delta = Rational(1) - Rational(static_cast<std::int64_t>(good.vertices.size()),
                                      static_cast<std::int64_t>(n));
  return MapsToGraphResult{std::move(graph), std::move(good), delta};
}

Rational epsilon_threshold(const Rational& delta, std::size_t ball_r1_size,
                           std::size_t ball_r_size, std::size_t generator_count) {
  const auto a = static_cast<std::int64_t>(ball_r1_size);
  const auto denom = 4 * a * a + static_cast<std::int64_t>(ball_r_size * generator_count);
  return delta / Rational(denom);
}

Rational bad_vertex_bound(const DefectReport& report, std::size_t v_size,
                          std::size_t ball_r1_size, std::size_t ball_r_size,
                          std::size_t generator_count) {
  const auto n = static_cast<std::int64_t>(v_size);
  const auto a = static_cast<std::int64_t>(ball_r1_size);
  const auto equations = static_cast<std::int64_t>(ball_r_size * generator_count);
  return Rational(equations) * report.max_a * n + Rational(4 * a * a) * report.max_abc() * n;
}

RoundTripReport round_trip(const SoficApproximation& approx, int r, Rational delta) {
  const auto forward = maps_to_graph(approx, r, delta);
  const Group& group = approx.group();
  const Ball nr = ball(group, r);
  RoundTripReport report;
  report.good_vertices = forward.good.vertices.size();
  // The backward construction on all of N_r; F F inside N_r only matters for
  // the defect guarantees, not for the pointwise comparison.
  const auto back =
      maps_from_charts(forward.graph, forward.good, nr, nr.elements(), group, approx.epsilon());
  for (const auto& g : nr.elements()) {
    const MapOnV& rebuilt = back.phi(g);
    const MapOnV& original = approx.phi(g);
    for (const auto v : forward.good.vertices) {
      ++report.compared;
      if (rebuilt(v) != original(v)) report.mismatches.emplace_back(v, g);
    }
  }
  return report;
}

// --- text formats ------------------------------------------------------------

void write_edge_list(std::ostream& out, const LabeledDigraph& graph) {
  out << "vertices " << graph.vertex_count() << '\n';
  for (std::size_t l = 0; l < graph.labels().size(); ++l) {
    for (const auto& [src, dst] : graph.edges(l)) {
      out << graph.labels()[l] << ' ' << src << ' ' << dst << '\n';
    }
  }
}

namespace {

std::int64_t parse_count(const std::string& token, const std::string& what, std::size_t line) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoll(token, &pos);
    if (pos == token.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + token + "'");
}

}  // namespace

LabeledDigraph read_edge_list(std::istream& in, const Group& group) {
  std::vector<std::string> labels;
  for (const auto& b : group.generators()) labels.push_back(b.name);
  std::optional<std::size_t> declared;
  std::vector<std::tuple<std::size_t, std::int64_t, std::int64_t>> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first) || first[0] == '#') continue;
    std::string a, b, extra;
    if (first == "vertices") {
      if (!(row >> a) || (row >> extra)) throw ParseError("line " + std::to_string(lineno) + ": expected 'vertices <n>'");
      if (declared || !edges.empty()) throw ParseError("line " + std::to_string(lineno) + ": misplaced 'vertices'");
      declared = static_cast<std::size_t>(parse_count(a, "vertex count", lineno));
      continue;
    }
    if (!(row >> a >> b) || (row >> extra)) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'label src dst'");
    }
    const auto it = std::find(labels.begin(), labels.end(), first);
    if (it == labels.end()) {
      throw ParseError("line " + std::to_string(lineno) + ": unknown label '" + first + "'");
    }
    edges.emplace_back(static_cast<std::size_t>(it - labels.begin()),
                       parse_count(a, "source", lineno), parse_count(b, "target", lineno));
  }
  std::size_t n = declared.value_or(0);
  if (!declared) {
    for (const auto& [l, s, d] : edges) n = std::max<std::size_t>(n, std::max(s, d) + 1);
  }
  if (n == 0) throw ParseError("edge list has no vertices");
  LabeledDigraph graph(n, labels);
  for (const auto& [l, s, d] : edges) {
    if (static_cast<std::size_t>(s) >= n || static_cast<std::size_t>(d) >= n) {
      throw ParseError("edge endpoint beyond declared vertex count");
    }
    graph.add_edge(l, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(d));
  }
  return graph;
}

void write_good_set(std::ostream& out, const GoodSet& good, std::size_t v_size) {
  out << "# good set: " << good.vertices.size() << " of " << v_size << " vertices\n";
  out << "delta " << to_string(good.delta) << '\n';
  for (const auto v : good.vertices) out << v << '\n';
}

GoodSet read_good_set(std::istream& in, std::size_t v_size) {
  GoodSet good;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first) || first[0] == '#') continue;
    if (first == "delta") continue;  // recomputed below
    const auto v = parse_count(first, "vertex", lineno);
    if (static_cast<std::size_t>(v) >= v_size) throw ParseError("good vertex out of range");
    good.vertices.push_back(static_cast<std::uint32_t>(v));
  }
  std::sort(good.vertices.begin(), good.vertices.end());
  good.vertices.erase(std::unique(good.vertices.begin(), good.vertices.end()), good.vertices.end());
  good.delta = Rational(1) - Rational(static_cast<std::int64_t>(good.vertices.size()),
                                      static_cast<std::int64_t>(v_size));
  return good;
}

}  // namespace sofic
