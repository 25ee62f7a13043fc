#pragma once

// Planar diagrams of virtual knots as 4-regular combinatorial maps.
//
// A diagram is stored as its knot traversal: a cyclic sequence of visits,
// two per crossing. Each visit records whether the strand passes over, under
// or virtually, and whether it crosses the other strand from its right to
// its left. That bit fixes the rotation at the crossing, so the traversal
// determines the whole map. Darts are derived: visit i owns the entering
// dart 2i and the leaving dart 2i+1, and edge i joins visit i to visit i+1.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vmeander/gauss.hpp"

namespace vmeander {

using Dart = int;

class DiagramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VisitKind : std::uint8_t { Over, Under, Virtual };

struct Visit {
  int vertex = 0;
  VisitKind kind = VisitKind::Virtual;
  bool right_to_left = false;

  friend bool operator==(const Visit&, const Visit&) = default;
};

/// The outer face is pinned to one side of an edge so that it can be
/// followed through rewrites.
struct OuterAnchor {
  std::size_t edge = 0;
  bool left = true;

  friend bool operator==(const OuterAnchor&, const OuterAnchor&) = default;
};

struct Face {
  std::vector<Dart> darts;  // boundary walked with the face on the left
};

struct CrossingLabel {
  bool classical = false;
  int sign = 0;      // classical only
  int over_pair = 0; // 0: rotation slots {0,2}, 1: slots {1,3}
};

/// Bookkeeping for rewrites: where each visit of the new diagram came from.
/// Inserted visits point at the old visit whose strand they were placed on
/// or next to, or -1 when they belong to newly drawn strands.
struct VisitOrigin {
  long old = -1;
  bool inserted = false;
};

class PlanarDiagram {
 public:
  /// The embedded circle.
  PlanarDiagram();

  /// Validates the traversal: every vertex twice, consistent passages and
  /// crossing directions, genus zero.
  static PlanarDiagram from_visits(std::vector<Visit> visits, OuterAnchor outer = {});

  const std::vector<Visit>& visits() const { return visits_; }
  std::size_t visit_count() const { return visits_.size(); }
  std::size_t edge_count() const { return visits_.size(); }
  int vertex_count() const { return static_cast<int>(visits_.size() / 2); }
  int classical_count() const { return classical_; }
  int virtual_count() const { return vertex_count() - classical_; }
  bool empty() const { return visits_.empty(); }

  std::size_t partner(std::size_t visit) const { return partner_[visit]; }
  std::size_t next(std::size_t visit) const { return (visit + 1) % visits_.size(); }
  std::size_t prev(std::size_t visit) const {
    return (visit + visits_.size() - 1) % visits_.size();
  }
  bool is_classical_visit(std::size_t visit) const {
    return visits_[visit].kind != VisitKind::Virtual;
  }
  /// Sign of the classical crossing at `visit` (0 for virtual).
  int sign_at(std::size_t visit) const;
  /// Visit indices of each vertex id, first visit first.
  std::pair<std::size_t, std::size_t> visits_of(int vertex) const;
  std::vector<int> vertex_ids() const;

  // Dart structure.
  static Dart in_dart(std::size_t visit) { return static_cast<Dart>(2 * visit); }
  static Dart out_dart(std::size_t visit) { return static_cast<Dart>(2 * visit + 1); }
  static std::size_t visit_of(Dart d) { return static_cast<std::size_t>(d) / 2; }
  static bool is_out(Dart d) { return d % 2 == 1; }
  int dart_count() const { return static_cast<int>(2 * visits_.size()); }
  Dart alpha(Dart d) const;
  Dart sigma(Dart d) const { return sigma_[d]; }
  Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
  /// Counter-clockwise rotation at the vertex of `visit`, starting with the
  /// entering dart of the vertex's first visit.
  std::array<Dart, 4> rotation_at(std::size_t visit) const;
  CrossingLabel label_at(std::size_t visit) const;
  /// Edge carried by a dart: out(i) and in(i+1) both carry edge i.
  std::size_t edge_of(Dart d) const;

  const std::vector<Face>& faces() const { return faces_; }
  int face_of(Dart d) const { return face_of_[d]; }
  int left_face(std::size_t edge) const;
  int right_face(std::size_t edge) const;
  int outer_face() const;
  const OuterAnchor& outer_anchor() const { return outer_; }
  bool edge_on_outer_face(std::size_t edge) const;
  int genus() const;

  /// Same diagram with the outer face moved to `face`.
  PlanarDiagram with_outer_face(int face) const;
  /// Vertex ids relabelled 0..V-1 by first visit.
  PlanarDiagram canonical() const;
  int max_vertex_id() const;

  friend bool operator==(const PlanarDiagram& a, const PlanarDiagram& b);

 private:
  void build();

  std::vector<Visit> visits_;
  OuterAnchor outer_;
  std::vector<std::size_t> partner_;
  std::vector<Dart> sigma_, sigma_inv_;
  std::vector<Face> faces_;
  std::vector<int> face_of_;
  int classical_ = 0;
};

int genus(const PlanarDiagram& d);
const std::vector<Face>& faces(const PlanarDiagram& d);

/// Canonical realization. Codes of Carter genus zero are drawn without
/// virtual crossings; other codes are drawn with the crossings on a line and
/// the edges as half-circle chains, each edge-edge intersection virtual.
PlanarDiagram from_gauss(const GaussCode& code);

/// Classical crossings in traversal order; virtual crossings are erased.
GaussCode to_gauss(const PlanarDiagram& d);

/// Maps each visit to its record index in to_gauss(d), -1 for virtual.
std::vector<long> gauss_positions(const PlanarDiagram& d);

struct DiagramArc {
  std::size_t start_edge = 0;       // the arc begins inside this edge
  std::size_t end_edge = 0;         // and ends inside this one
  std::vector<std::size_t> visits;  // passed visits in traversal order

  std::vector<std::pair<int, std::size_t>> passed_vertices(const PlanarDiagram& d) const;
};

struct ArcDecomposition {
  std::vector<std::size_t> cut_edges;
  std::vector<DiagramArc> arcs;
  std::vector<int> per_arc_classical_self;
  std::vector<int> per_arc_any_self;
  /// classical_between[i][j]: classical crossings joining arcs i and j (i != j).
  std::vector<std::vector<int>> classical_between;
  std::vector<int> arc_of_visit;

  int arc_count() const { return static_cast<int>(arcs.size()); }
  /// Number of classical visits lying on arc i.
  int classical_on(int arc) const;
};

/// Cuts the traversal at the given darts; out(i) and in(i+1) both cut edge i.
ArcDecomposition decompose(const PlanarDiagram& d, const std::vector<Dart>& cut_darts);
ArcDecomposition decompose_edges(const PlanarDiagram& d, std::vector<std::size_t> cut_edges);

struct TwoArcWitness {
  bool holds = false;
  std::size_t first_cut = 0;   // edge index
  std::size_t second_cut = 0;  // edge index
};

TwoArcWitness semimeander_witness(const PlanarDiagram& d);
TwoArcWitness strong_semimeander_witness(const PlanarDiagram& d);
TwoArcWitness meander_witness(const PlanarDiagram& d);
TwoArcWitness strong_meander_witness(const PlanarDiagram& d);

bool is_semimeander(const PlanarDiagram& d);
bool is_strong_semimeander(const PlanarDiagram& d);
bool is_meander(const PlanarDiagram& d);
bool is_strong_meander(const PlanarDiagram& d);

/// A traversal arc through pairwise distinct crossings holding the most
/// distinct classical crossings; ties go to the earliest start.
DiagramArc longest_simple_arc(const PlanarDiagram& d);

/// Structured text format (see docs/formats.md).
std::string serialize_diagram(const PlanarDiagram& d);
PlanarDiagram parse_diagram(std::string_view text);
bool looks_like_diagram(std::string_view text);

}  // namespace vmeander
