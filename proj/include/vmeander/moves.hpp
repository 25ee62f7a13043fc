#pragma once

// Local moves on planar diagrams: classical and virtual Reidemeister moves,
// the semivirtual move, detours and crossing slides. Every move is a pure
// function of (diagram, move) so traces replay exactly.
//
// Site conventions (visit and dart indices refer to the diagram the move is
// applied to):
//   R1/VR1 apply    {vertex}                      remove a kink
//   R1 inverse      {edge, left, over_first}      add a kink on `edge`
//   VR1 inverse     {edge, left}
//   R2/VR2 apply    {vertex, vertex}              remove a bigon
//   R2 inverse      {dart, dart, first_over}      push a finger from the edge
//   VR2 inverse     {dart, dart}                  of the first dart across the
//                                                 edge of the second (same face)
//   R3/VR3/SemiVirtual {vertex, vertex, vertex}   flip a triangle face
//   XStep apply     {visit, dir}                  slide the crossing at `visit`
//                                                 past its neighbour visit+dir
//   XStep inverse   {vertex, vertex}              undo a slide by naming the
//                                                 crossing pair it created
//   DetourStep      {visit u, visit w, dart...}   reroute the strand between
//                                                 u and w across the listed
//                                                 darts of the opened map; an
//                                                 optional trailing entry
//                                                 -1-(2*edge+left) fixes the
//                                                 result's outer face

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vmeander/diagram.hpp"

namespace vmeander {

enum class MoveKind { R1, R2, R3, VR1, VR2, VR3, SemiVirtual, DetourStep, XStep };
enum class MoveDirection { Apply, Inverse };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(std::string_view s);

struct Move {
  MoveKind kind = MoveKind::R1;
  MoveDirection direction = MoveDirection::Apply;
  std::vector<long> site;

  friend bool operator==(const Move&, const Move&) = default;
};

class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Result of a rewrite with per-visit provenance.
struct Rewrite {
  PlanarDiagram diagram;
  std::vector<VisitOrigin> origin;  // one per visit of `diagram`
};

Rewrite apply_move_traced(const PlanarDiagram& d, const Move& m);
PlanarDiagram apply_move(const PlanarDiagram& d, const Move& m);

struct TraceStep {
  Move move;
  int delta_classical = 0;
  int delta_virtual = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct MoveTrace {
  PlanarDiagram initial;
  std::vector<TraceStep> steps;

  /// Appends a step and returns the new diagram.
  PlanarDiagram push(const PlanarDiagram& current, const Move& m);
  void append(const MoveTrace& other);
};

/// Replays `trace` from its initial diagram. Throws MoveError naming the
/// first step that fails or whose recorded delta disagrees.
PlanarDiagram replay(const MoveTrace& trace);

/// Trace file: the initial diagram, the step lines, then the final diagram.
std::string serialize_trace(const MoveTrace& trace, const PlanarDiagram& final_diagram);
struct ParsedTrace {
  std::optional<PlanarDiagram> initial;
  std::vector<TraceStep> steps;
  long declared_steps = 0;
  std::optional<PlanarDiagram> final_diagram;
  std::string final_text;

  bool complete() const {
    return declared_steps == static_cast<long>(steps.size()) && final_diagram.has_value();
  }
};
/// Throws MoveError on malformed lines. A step count that disagrees with the
/// header or a missing final diagram is reported through complete().
ParsedTrace parse_trace(std::string_view text);

// ---- crossing slides -------------------------------------------------------

struct XStepResult {
  Rewrite rewrite;
  Move move;
  std::size_t moved_visit = 0;  // new index of the slid visit
  int new_vertices[2] = {-1, -1};
};

/// Slides the crossing whose visit is `visit` along its strand past the
/// adjacent crossing at visit+dir (dir = +1 or -1). The other strand of the
/// slid crossing picks up two crossings with the other strand of the passed
/// crossing. They are classical exactly when both crossings involved are,
/// at the level of the slid crossing, and carry opposite signs.
XStepResult x_step(const PlanarDiagram& d, std::size_t visit, int dir);

/// Slides along the strand `steps` times in direction `dir`, recording the
/// x-steps in `trace`. Returns the final diagram; `visit` is updated to the
/// slid visit's index and `flags`, when given, is carried along: new visits
/// inherit the flag of the visit they were placed next to.
PlanarDiagram pull_crossing_along(const PlanarDiagram& d, std::size_t& visit, int dir, int steps,
                                  MoveTrace& trace, std::vector<int>* flags = nullptr);

// ---- detours ---------------------------------------------------------------

/// The diagram with the strand from visit u to visit w removed. Remaining
/// visits are renumbered from w (index 0) to u (index M-1); the loose ends
/// are the tip darts 2M (attached to w) and 2M+1 (attached to u).
struct OpenMap {
  std::vector<std::size_t> kept;  // old visit index per open-map visit
  std::vector<Dart> alpha;
  std::vector<Dart> sigma_inv;
  std::vector<int> face_of;
  std::vector<std::vector<Dart>> faces;
  int tip_face = -1;  // the face holding both tips

  std::size_t visit_count() const { return kept.size(); }
  /// Dart on the other side of the edge carrying `d`.
  Dart across(Dart d) const;
  /// Edge index (the visit it leaves) of a non-tip dart.
  std::size_t edge_of(Dart d) const;
  bool is_tip_edge(Dart d) const;
};

OpenMap open_segment(const PlanarDiagram& d, std::size_t u, std::size_t w);

/// Reroutes the strand from u to w: it leaves u's tip, crosses the edges of
/// the listed darts in order (each dart lies in the face the route is in)
/// and returns to w's tip. Every new intersection is virtual. `outer` names
/// an edge side of the result for the outer face; by default it is carried.
Rewrite detour(const PlanarDiagram& d, std::size_t u, std::size_t w,
               const std::vector<Dart>& crossed, std::optional<OuterAnchor> outer = {});

/// Anchor on an edge of the rewritten traversal that survived untouched and
/// bordered the old outer face, if there is one.
std::optional<OuterAnchor> carry_outer_anchor(const PlanarDiagram& before,
                                              const std::vector<Visit>& after,
                                              const std::vector<VisitOrigin>& origin);

/// Builds the rewritten diagram, carrying the outer face over (largest face
/// when nothing of the old outer face survives).
Rewrite finish_rewrite(const PlanarDiagram& before, std::vector<Visit> visits,
                       std::vector<VisitOrigin> origin);

}  // namespace vmeander
