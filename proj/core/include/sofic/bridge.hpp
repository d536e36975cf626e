#ifndef SOFIC_BRIDGE_HPP
#define SOFIC_BRIDGE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/rational.hpp"
#include "sofic/sofic_approx.hpp"

namespace sofic {

/// A finite directed graph with edges labeled by names (generators of B).
/// Edges may be arbitrary; `target` is only meaningful for graphs that are
/// functional per label (at most one outgoing edge per label and vertex).
class LabeledDigraph {
 public:
  LabeledDigraph(std::size_t vertex_count, std::vector<std::string> labels);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> label_index(const std::string& name) const;

  void add_edge(std::size_t label, std::uint32_t src, std::uint32_t dst);
  /// Edges of one label, sorted by (src, dst).
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges(std::size_t label) const {
    return edges_[label];
  }
  std::size_t edge_count() const;

  bool is_functional() const;
  /// The unique out-neighbour along `label`, if any (functional graphs).
  std::optional<std::uint32_t> target(std::size_t label, std::uint32_t v) const;

  friend bool operator==(const LabeledDigraph&, const LabeledDigraph&) = default;

 private:
  std::size_t vertex_count_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges_;
  bool functional_ = true;
};

/// The chart psi_v : N_r -> V, indexed like the ball.
struct BallChart {
  std::uint32_t base;
  int radius;
  std::vector<std::uint32_t> images;  // images[i] = psi_v(ball[i])
};

/// The good set V_0 and its measured defect delta = 1 - |V_0| / |V|.
struct GoodSet {
  std::vector<std::uint32_t> vertices;  // sorted
  Rational delta;
};

enum class ChartFailureKind {
  kNonFunctional,  // some vertex has two out-edges with one label
  kUnknownLabel,   // a generator of B has no label in the graph
  kMissingEdge,    // an edge needed to follow a geodesic is absent
  kNotWellDefined, // two geodesics to g end at different vertices
  kNotInjective,   // two ball elements share an image
  kEdgeMismatch,   // the b-edge from psi(g) does not end at psi(b g)
  kExtraEdge       // an edge inside the image ball has no counterpart in N_r
};

struct ChartFailure {
  ChartFailureKind kind;
  std::string element;  // canonical form of the offending ball element
  std::string label;    // offending label, when one is involved
  std::string describe() const;
};

using ChartResult = std::variant<BallChart, ChartFailure>;

/// Vertices N_r in ball order; an edge (g, b g) labeled b whenever b g lies
/// in N_r.
LabeledDigraph cayley_ball_graph(const Group& group, int r);
/// cayley_ball_graph for a precomputed ball.
LabeledDigraph cayley_ball_graph(const Group& group, const Ball& ball);

/// Follows labeled edges from v along geodesics. Succeeds iff the result is
/// well defined, injective, and an isomorphism of labeled graphs between N_r
/// and the r-ball around v. Labels are matched to B by name.
ChartResult chart_from_graph(const LabeledDigraph& graph, std::uint32_t v, const Ball& ball,
                             const Group& group);
ChartResult chart_from_graph(const LabeledDigraph& graph, std::uint32_t v, int r,
                             const Group& group);

/// phi(g)(v) = psi_v(g) for v in V_0 and phi(g)(v) = v elsewhere.
/// Throws PreconditionError unless F F is inside N_r and every v in V_0 has
/// a chart.
SoficApproximation graph_to_maps(const LabeledDigraph& graph, const GoodSet& good, int r,
                                 std::vector<GroupElement> elements, const Group& group,
                                 Rational epsilon);

struct MapsToGraphResult {
  LabeledDigraph graph;
  GoodSet good;
  Rational delta_target;
  bool meets_target() const { return good.delta <= delta_target; }
};

/// Edges (v, phi(b)(v)) labeled b; V_0 is the set of v where
///   (A) psi_v(b g) = psi_{psi_v(g)}(b) for g in N_r, b in B, and
///   (C) psi_v(g) != psi_v(h) for g != h in N_{r+1},
/// with psi_v(g) = phi(g)(v). Throws PreconditionError unless F contains
/// N_{2r+2} (which includes B).
MapsToGraphResult maps_to_graph(const SoficApproximation& approx, int r, Rational delta);

/// delta / (4 |N_{r+1}|^2 + |N_r| |B|): below this epsilon, condition-based
/// approximations yield the graph definition at (r, delta).
Rational epsilon_threshold(const Rational& delta, std::size_t ball_r1_size,
                           std::size_t ball_r_size, std::size_t generator_count);

/// Upper bound on |V \ V_0| from the measured defects:
/// (|N_r| |B|) max_a |V| + 4 |N_{r+1}|^2 max_abc |V|.
Rational bad_vertex_bound(const DefectReport& report, std::size_t v_size,
                          std::size_t ball_r1_size, std::size_t ball_r_size,
                          std::size_t generator_count);

struct RoundTripReport {
  std::size_t good_vertices = 0;
  std::size_t compared = 0;  // (v, g) pairs checked
  std::vector<std::pair<std::uint32_t, GroupElement>> mismatches;
};

/// maps_to_graph, then the chart construction of graph_to_maps on all of
/// N_r, compared with phi on V_0 pointwise.
RoundTripReport round_trip(const SoficApproximation& approx, int r, Rational delta);

/// "label src dst" per line, preceded by "vertices <n>". Lines starting
/// with '#' are comments.
void write_edge_list(std::ostream& out, const LabeledDigraph& graph);
/// Labels are taken from `group`'s B; unknown labels are a ParseError.
LabeledDigraph read_edge_list(std::istream& in, const Group& group);

/// "delta <p/q>" then one vertex per line.
void write_good_set(std::ostream& out, const GoodSet& good, std::size_t v_size);
GoodSet read_good_set(std::istream& in, std::size_t v_size);

}  // namespace sofic

#endif  // SOFIC_BRIDGE_HPP
