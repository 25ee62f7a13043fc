#include "vmeander/moves.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace vmeander {

namespace {

constexpr std::array<const char*, 9> kKindNames = {
    "R1", "R2", "R3", "VR1", "VR2", "VR3", "SemiVirtual", "DetourStep", "XStep"};

[[noreturn]] void fail(const std::string& what) { throw MoveError(what); }

VisitKind flip(VisitKind k) {
  switch (k) {
    case VisitKind::Over:
      return VisitKind::Under;
    case VisitKind::Under:
      return VisitKind::Over;
    default:
      return VisitKind::Virtual;
  }
}

/// Accumulates a rewrite of the old traversal: visits can be dropped,
/// replaced, or get new visits right before or after them.
struct Splice {
  const PlanarDiagram& d;
  std::vector<char> keep;
  std::vector<std::size_t> content;  // old visit placed at this slot
  std::vector<std::vector<Visit>> before, after;

  explicit Splice(const PlanarDiagram& diagram)
      : d(diagram),
        keep(diagram.visit_count(), 1),
        content(diagram.visit_count()),
        before(diagram.visit_count()),
        after(diagram.visit_count()) {
    for (std::size_t i = 0; i < content.size(); ++i) content[i] = i;
  }

  Rewrite finish() const {
    std::vector<Visit> out;
    std::vector<VisitOrigin> origin;
    for (std::size_t slot = 0; slot < content.size(); ++slot) {
      const std::size_t i = content[slot];
      for (const Visit& v : before[i]) {
        out.push_back(v);
        origin.push_back({static_cast<long>(i), true});
      }
      if (keep[i]) {
        out.push_back(d.visits()[i]);
        origin.push_back({static_cast<long>(i), false});
      }
      for (const Visit& v : after[i]) {
        out.push_back(v);
        origin.push_back({static_cast<long>(i), true});
      }
    }
    return finish_rewrite(d, std::move(out), std::move(origin));
  }
};

void expect_kind(const Move& m, MoveKind expected) {
  if (m.kind != expected) {
    fail("site matches a " + to_string(expected) + " move, not " + to_string(m.kind));
  }
}

void expect_site(const Move& m, std::size_t n) {
  if (m.site.size() != n) {
    fail(to_string(m.kind) + " expects " + std::to_string(n) + " site values");
  }
}

std::size_t visit_index(const PlanarDiagram& d, long v) {
  if (v < 0 || static_cast<std::size_t>(v) >= d.visit_count()) fail("visit out of range");
  return static_cast<std::size_t>(v);
}

std::pair<std::size_t, std::size_t> vertex_visits(const PlanarDiagram& d, long v) {
  try {
    return d.visits_of(static_cast<int>(v));
  } catch (const DiagramError&) {
    fail("unknown vertex " + std::to_string(v));
  }
}

// ---- R1 / VR1 ---------------------------------------------------------------

Rewrite remove_kink(const PlanarDiagram& d, const Move& m) {
  expect_site(m, 1);
  const auto [a, b] = vertex_visits(d, m.site[0]);
  if (d.next(a) != b && d.next(b) != a) fail("vertex is not a kink");
  expect_kind(m, d.is_classical_visit(a) ? MoveKind::R1 : MoveKind::VR1);
  Splice s(d);
  s.keep[a] = s.keep[b] = 0;
  return s.finish();
}

Rewrite add_kink(const PlanarDiagram& d, const Move& m) {
  const bool classical = m.kind == MoveKind::R1;
  expect_site(m, classical ? 3 : 2);
  const bool left = m.site[1] != 0;
  const int id = d.max_vertex_id() + 1;
  Visit first{id, VisitKind::Virtual, left};
  Visit second{id, VisitKind::Virtual, !left};
  if (classical) {
    first.kind = m.site[2] != 0 ? VisitKind::Over : VisitKind::Under;
    second.kind = flip(first.kind);
  }
  if (d.empty()) {
    if (m.site[0] != 0) fail("the circle has only edge 0");
    std::vector<Visit> v{first, second};
    PlanarDiagram out = PlanarDiagram::from_visits(v, OuterAnchor{1, true});
    return {out, {{-1, true}, {-1, true}}};
  }
  const std::size_t e = visit_index(d, m.site[0]);
  Splice s(d);
  s.after[e] = {first, second};
  return s.finish();
}

// ---- R2 / VR2 ---------------------------------------------------------------

Rewrite remove_bigon(const PlanarDiagram& d, const Move& m) {
  expect_site(m, 2);
  if (m.site[0] == m.site[1]) fail("bigon needs two vertices");
  const auto [a1, a2] = vertex_visits(d, m.site[0]);
  const auto [b1, b2] = vertex_visits(d, m.site[1]);
  const auto adjacent = [&](std::size_t x, std::size_t y) {
    return d.next(x) == y || d.next(y) == x;
  };
  const auto edge_between = [&](std::size_t x, std::size_t y) {
    return d.next(x) == y ? x : y;
  };
  const auto is_bigon_face = [&](std::size_t e1, std::size_t e2) {
    for (int f : {d.left_face(e1), d.right_face(e1)}) {
      const auto& darts = d.faces()[f].darts;
      if (darts.size() != 2) continue;
      for (Dart x : darts) {
        if (d.edge_of(x) == e2 && e1 != e2) return true;
      }
    }
    return false;
  };
  const std::array<std::array<std::size_t, 4>, 2> pairings{
      std::array<std::size_t, 4>{a1, b1, a2, b2}, std::array<std::size_t, 4>{a1, b2, a2, b1}};
  for (const auto& p : pairings) {
    if (!adjacent(p[0], p[1]) || !adjacent(p[2], p[3])) continue;
    const std::size_t e1 = edge_between(p[0], p[1]);
    const std::size_t e2 = edge_between(p[2], p[3]);
    if (!is_bigon_face(e1, e2)) continue;
    const bool ca = d.is_classical_visit(a1);
    const bool cb = d.is_classical_visit(b1);
    if (ca != cb) fail("bigon mixes a classical and a virtual crossing");
    expect_kind(m, ca ? MoveKind::R2 : MoveKind::VR2);
    if (ca && d.visits()[p[0]].kind != d.visits()[p[1]].kind) {
      fail("bigon strands alternate over and under");
    }
    Splice s(d);
    s.keep[a1] = s.keep[a2] = s.keep[b1] = s.keep[b2] = 0;
    return s.finish();
  }
  fail("vertices do not bound a bigon face");
}

Rewrite add_bigon(const PlanarDiagram& d, const Move& m) {
  const bool classical = m.kind == MoveKind::R2;
  expect_site(m, classical ? 3 : 2);
  if (d.empty()) fail("the circle has no darts");
  const Dart d1 = static_cast<Dart>(m.site[0]);
  const Dart d2 = static_cast<Dart>(m.site[1]);
  if (d1 < 0 || d2 < 0 || d1 >= d.dart_count() || d2 >= d.dart_count()) fail("dart out of range");
  if (d.face_of(d1) != d.face_of(d2)) fail("darts do not share a face");
  const std::size_t e1 = d.edge_of(d1);
  const std::size_t e2 = d.edge_of(d2);
  if (e1 == e2) fail("finger must cross a different edge");
  const bool l1 = PlanarDiagram::is_out(d1);
  const bool l2 = PlanarDiagram::is_out(d2);
  const int a = d.max_vertex_id() + 1;
  const int b = a + 1;
  const VisitKind k1 = classical ? (m.site[2] != 0 ? VisitKind::Over : VisitKind::Under)
                                 : VisitKind::Virtual;
  const VisitKind k2 = flip(k1);
  const bool rl_a = !l2;
  Visit s1a{a, k1, rl_a}, s1b{b, k1, !rl_a};
  Visit s2a{a, k2, !rl_a}, s2b{b, k2, rl_a};
  Splice s(d);
  s.after[e1] = {s1a, s1b};
  if (l1 == l2) {
    s.after[e2] = {s2b, s2a};
  } else {
    s.after[e2] = {s2a, s2b};
  }
  return s.finish();
}

// ---- R3 / VR3 / SemiVirtual -------------------------------------------------

Rewrite flip_triangle(const PlanarDiagram& d, const Move& m) {
  expect_site(m, 3);
  std::set<int> want{static_cast<int>(m.site[0]), static_cast<int>(m.site[1]),
                     static_cast<int>(m.site[2])};
  if (want.size() != 3) fail("triangle needs three distinct vertices");
  for (const Face& f : d.faces()) {
    if (f.darts.size() != 3) continue;
    std::set<int> got;
    for (Dart x : f.darts) got.insert(d.visits()[PlanarDiagram::visit_of(x)].vertex);
    if (got != want) continue;
    std::array<std::size_t, 3> edges{};
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      edges[k] = d.edge_of(f.darts[k]);
      const std::size_t i = edges[k];
      if (d.visits()[i].vertex == d.visits()[d.next(i)].vertex) ok = false;
    }
    if (!ok) continue;
    int classical = 0;
    for (int v : want) classical += d.is_classical_visit(vertex_visits(d, v).first);
    MoveKind kind = MoveKind::R3;
    if (classical == 0) {
      kind = MoveKind::VR3;
    } else if (classical == 1) {
      kind = MoveKind::SemiVirtual;
    } else if (classical == 2) {
      fail("triangle with two classical crossings and one virtual crossing is forbidden");
    }
    expect_kind(m, kind);
    if (kind == MoveKind::R3) {
      bool has_top = false;
      for (std::size_t e : edges) {
        has_top |= d.visits()[e].kind == VisitKind::Over &&
                   d.visits()[d.next(e)].kind == VisitKind::Over;
      }
      if (!has_top) fail("no strand passes over both of its triangle crossings");
    }
    Splice s(d);
    for (std::size_t e : edges) std::swap(s.content[e], s.content[d.next(e)]);
    return s.finish();
  }
  fail("vertices do not bound a triangle face");
}

// ---- crossing slides --------------------------------------------------------

struct SlideOut {
  Rewrite rewrite;
  std::size_t moved = 0;
};

SlideOut slide(const PlanarDiagram& d, std::size_t yq, int dir, int id1, int id2) {
  if (dir != 1 && dir != -1) fail("slide direction must be +1 or -1");
  if (d.empty()) fail("nothing to slide");
  const std::size_t L = d.visit_count();
  if (yq >= L) fail("visit out of range");
  const std::size_t zq = dir > 0 ? d.next(yq) : d.prev(yq);
  const Visit& yqv = d.visits()[yq];
  const Visit& zqv = d.visits()[zq];
  if (yqv.vertex == zqv.vertex) fail("slide past the same crossing");
  const std::size_t yp = d.partner(yq);
  const std::size_t zr = d.partner(zq);
  const Visit& yP = d.visits()[yp];
  const Visit& zR = d.visits()[zr];
  const bool classical = d.is_classical_visit(yq) && d.is_classical_visit(zq);
  const VisitKind kp = classical ? yP.kind : VisitKind::Virtual;
  const VisitKind kr = flip(kp);
  const bool rl1 = zR.right_to_left != (dir > 0);
  Splice s(d);
  s.before[yp].push_back({id1, kp, rl1});
  s.after[yp].push_back({id2, kp, !rl1});
  if (zR.right_to_left == yP.right_to_left) {
    s.before[zr].push_back({id1, kr, !rl1});
    s.after[zr].push_back({id2, kr, rl1});
  } else {
    s.before[zr].push_back({id2, kr, rl1});
    s.after[zr].push_back({id1, kr, !rl1});
  }
  std::swap(s.content[yq], s.content[zq]);
  SlideOut out{s.finish(), 0};
  for (std::size_t j = 0; j < out.rewrite.origin.size(); ++j) {
    const auto& o = out.rewrite.origin[j];
    if (!o.inserted && o.old == static_cast<long>(yq)) out.moved = j;
  }
  return out;
}

bool same_cycle(const std::vector<Visit>& a, const std::vector<Visit>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < b.size(); ++r) {
    bool eq = true;
    for (std::size_t i = 0; i < a.size() && eq; ++i) eq = a[i] == b[(i + r) % b.size()];
    if (eq) return true;
  }
  return false;
}

Rewrite unslide(const PlanarDiagram& d, const Move& m) {
  expect_site(m, 2);
  const int n1 = static_cast<int>(m.site[0]);
  const int n2 = static_cast<int>(m.site[1]);
  const auto [a1, a2] = vertex_visits(d, n1);
  const auto [b1, b2] = vertex_visits(d, n2);
  for (std::size_t p1 : {a1, a2}) {
    for (std::size_t p2 : {b1, b2}) {
      if (d.next(d.next(p1)) != p2) continue;
      const std::size_t mid = d.next(p1);
      const std::size_t r1 = d.partner(p1);
      const std::size_t r2 = d.partner(p2);
      std::size_t zr;
      if (d.next(d.next(r1)) == r2) {
        zr = d.next(r1);
      } else if (d.next(d.next(r2)) == r1) {
        zr = d.next(r2);
      } else {
        continue;
      }
      const std::size_t yq = d.partner(mid);
      const std::size_t zq = d.partner(zr);
      if (d.next(yq) != zq && d.prev(yq) != zq) continue;
      // Undo: drop the pair and swap the slid crossing back.
      Splice s(d);
      s.keep[p1] = s.keep[p2] = s.keep[r1] = s.keep[r2] = 0;
      std::swap(s.content[yq], s.content[zq]);
      Rewrite cand;
      try {
        cand = s.finish();
      } catch (const std::invalid_argument&) {
        continue;
      }
      std::size_t new_yq = 0;
      for (std::size_t j = 0; j < cand.origin.size(); ++j) {
        if (cand.origin[j].old == static_cast<long>(yq)) new_yq = j;
      }
      const int dir = d.next(yq) == zq ? -1 : 1;
      try {
        const SlideOut redo = slide(cand.diagram, new_yq, dir, n1, n2);
        if (same_cycle(redo.rewrite.diagram.visits(), d.visits())) return cand;
      } catch (const std::invalid_argument&) {
      }
    }
  }
  fail("vertices are not a pair created by a crossing slide");
}

}  // namespace

// ---- public API ---------------------------------------------------------------

std::string to_string(MoveKind k) { return kKindNames[static_cast<int>(k)]; }

MoveKind move_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (s == kKindNames[i]) return static_cast<MoveKind>(i);
  }
  fail("unknown move kind '" + std::string(s) + "'");
}

std::optional<OuterAnchor> carry_outer_anchor(const PlanarDiagram& before,
                                              const std::vector<Visit>& after,
                                              const std::vector<VisitOrigin>& origin) {
  if (before.empty() || after.empty()) return std::nullopt;
  const int outer = before.outer_face();
  const std::size_t n = after.size();
  for (std::size_t j = 0; j < n; ++j) {
    const VisitOrigin& a = origin[j];
    const VisitOrigin& b = origin[(j + 1) % n];
    if (a.inserted || b.inserted || a.old < 0 || b.old < 0) continue;
    const std::size_t e = static_cast<std::size_t>(a.old);
    if (static_cast<std::size_t>(b.old) != before.next(e)) continue;
    if (before.left_face(e) == outer) return OuterAnchor{j, true};
    if (before.right_face(e) == outer) return OuterAnchor{j, false};
  }
  return std::nullopt;
}

Rewrite finish_rewrite(const PlanarDiagram& before, std::vector<Visit> visits,
                       std::vector<VisitOrigin> origin) {
  if (visits.empty()) return {PlanarDiagram(), {}};
  const auto anchor = carry_outer_anchor(before, visits, origin);
  PlanarDiagram out;
  try {
    out = PlanarDiagram::from_visits(std::move(visits), anchor.value_or(OuterAnchor{}));
  } catch (const DiagramError& e) {
    throw MoveError(std::string("move produced an invalid diagram: ") + e.what());
  }
  if (!anchor) {
    int best = 0;
    for (int f = 1; f < static_cast<int>(out.faces().size()); ++f) {
      if (out.faces()[f].darts.size() > out.faces()[best].darts.size()) best = f;
    }
    out = out.with_outer_face(best);
  }
  return {std::move(out), std::move(origin)};
}

XStepResult x_step(const PlanarDiagram& d, std::size_t visit, int dir) {
  const int id = d.max_vertex_id() + 1;
  SlideOut s = slide(d, visit, dir, id, id + 1);
  XStepResult r;
  r.rewrite = std::move(s.rewrite);
  r.move = Move{MoveKind::XStep, MoveDirection::Apply, {static_cast<long>(visit), dir}};
  r.moved_visit = s.moved;
  r.new_vertices[0] = id;
  r.new_vertices[1] = id + 1;
  return r;
}

PlanarDiagram pull_crossing_along(const PlanarDiagram& d, std::size_t& visit, int dir, int steps,
                                  MoveTrace& trace, std::vector<int>* flags) {
  PlanarDiagram cur = d;
  for (int k = 0; k < steps; ++k) {
    XStepResult r = x_step(cur, visit, dir);
    trace.steps.push_back({r.move, r.rewrite.diagram.classical_count() - cur.classical_count(),
                           r.rewrite.diagram.virtual_count() - cur.virtual_count()});
    if (flags) {
      std::vector<int> next(r.rewrite.origin.size());
      for (std::size_t j = 0; j < next.size(); ++j) next[j] = (*flags)[r.rewrite.origin[j].old];
      *flags = std::move(next);
    }
    visit = r.moved_visit;
    cur = std::move(r.rewrite.diagram);
  }
  return cur;
}

// ---- detours ------------------------------------------------------------------

Dart OpenMap::across(Dart d) const {
  const std::size_t j = static_cast<std::size_t>(d) / 2;
  return d % 2 == 1 ? static_cast<Dart>(2 * (j + 1)) : static_cast<Dart>(2 * (j - 1) + 1);
}

std::size_t OpenMap::edge_of(Dart d) const {
  const std::size_t j = static_cast<std::size_t>(d) / 2;
  return d % 2 == 1 ? j : j - 1;
}

bool OpenMap::is_tip_edge(Dart d) const {
  const Dart m = static_cast<Dart>(2 * kept.size());
  return d >= m || d == 0 || d == m - 1;
}

OpenMap open_segment(const PlanarDiagram& d, std::size_t u, std::size_t w) {
  const std::size_t L = d.visit_count();
  if (u >= L || w >= L) fail("segment end out of range");
  if (u == w) fail("segment ends must differ");
  std::vector<char> removed(L, 0);
  for (std::size_t i = d.next(u); i != w; i = d.next(i)) {
    if (d.is_classical_visit(i)) fail("segment passes a classical crossing");
    const std::size_t p = d.partner(i);
    if (p == u || p == w) fail("segment meets its own end crossing");
    removed[i] = removed[p] = 1;
  }
  OpenMap om;
  for (std::size_t i = w;; i = d.next(i)) {
    if (!removed[i]) om.kept.push_back(i);
    if (i == u) break;
  }
  const std::size_t M = om.kept.size();
  const Dart t_w = static_cast<Dart>(2 * M);
  const Dart t_u = t_w + 1;
  const int nd = static_cast<int>(2 * M + 2);
  om.alpha.assign(nd, -1);
  for (std::size_t j = 0; j + 1 < M; ++j) {
    om.alpha[2 * j + 1] = static_cast<Dart>(2 * (j + 1));
    om.alpha[2 * (j + 1)] = static_cast<Dart>(2 * j + 1);
  }
  om.alpha[0] = t_w;
  om.alpha[t_w] = 0;
  om.alpha[2 * (M - 1) + 1] = t_u;
  om.alpha[t_u] = static_cast<Dart>(2 * (M - 1) + 1);

  std::vector<long> open_index(L, -1);
  for (std::size_t j = 0; j < M; ++j) open_index[om.kept[j]] = static_cast<long>(j);
  om.sigma_inv.assign(nd, -1);
  om.sigma_inv[t_w] = t_w;
  om.sigma_inv[t_u] = t_u;
  for (std::size_t j = 0; j < M; ++j) {
    const long pj = open_index[d.partner(om.kept[j])];
    if (pj < static_cast<long>(j)) continue;
    const std::size_t a = j, b = static_cast<std::size_t>(pj);
    const bool b_rl = d.visits()[om.kept[b]].right_to_left;
    const std::array<Dart, 4> rot{static_cast<Dart>(2 * a), static_cast<Dart>(b_rl ? 2 * b : 2 * b + 1),
                                  static_cast<Dart>(2 * a + 1),
                                  static_cast<Dart>(b_rl ? 2 * b + 1 : 2 * b)};
    for (int k = 0; k < 4; ++k) om.sigma_inv[rot[(k + 1) % 4]] = rot[k];
  }
  om.face_of.assign(nd, -1);
  for (Dart x = 0; x < nd; ++x) {
    if (om.face_of[x] >= 0) continue;
    const int id = static_cast<int>(om.faces.size());
    om.faces.emplace_back();
    for (Dart e = x; om.face_of[e] < 0; e = om.sigma_inv[om.alpha[e]]) {
      om.face_of[e] = id;
      om.faces.back().push_back(e);
    }
  }
  om.tip_face = om.face_of[t_u];
  if (om.face_of[t_w] != om.tip_face) fail("segment tips lie in different faces");
  return om;
}

Rewrite detour(const PlanarDiagram& d, std::size_t u, std::size_t w,
               const std::vector<Dart>& crossed, std::optional<OuterAnchor> outer) {
  const OpenMap om = open_segment(d, u, w);
  const std::size_t M = om.visit_count();
  const Dart t_w = static_cast<Dart>(2 * M);
  const Dart t_u = t_w + 1;
  const int nd = static_cast<int>(2 * M + 2);

  // Chords of the route, one per face passage, with doubled boundary
  // positions: a tip sits at 2*index, an edge crossing at 2*index+1.
  struct Chord {
    int face;
    long from, to;
  };
  const auto position = [&](Dart x) {
    const auto& f = om.faces[om.face_of[x]];
    return static_cast<long>(std::find(f.begin(), f.end(), x) - f.begin());
  };
  std::vector<Chord> chords;
  std::set<std::size_t> used_edges;
  std::map<int, int> face_visits;
  int face = om.tip_face;
  long from = 2 * position(t_u);
  face_visits[face] = 1;
  for (Dart c : crossed) {
    if (c < 0 || c >= nd) fail("route dart out of range");
    if (om.is_tip_edge(c)) fail("route may not cross the rerouted strand's own ends");
    if (om.face_of[c] != face) fail("route dart does not lie in the current face");
    if (!used_edges.insert(om.edge_of(c)).second) fail("route crosses an edge twice");
    chords.push_back({face, from, 2 * position(c) + 1});
    const Dart back = om.across(c);
    face = om.face_of[back];
    if (++face_visits[face] > 2) fail("route enters a face more than twice");
    from = 2 * position(back) + 1;
  }
  if (face != om.tip_face) fail("route does not return to the segment's face");
  chords.push_back({face, from, 2 * position(t_w)});

  int next_id = d.max_vertex_id() + 1;
  // crossings between chords sharing a face
  std::vector<std::vector<Visit>> chord_self(chords.size());
  for (std::size_t k = 0; k < chords.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (chords[j].face != chords[k].face) continue;
      const long S = 2 * static_cast<long>(om.faces[chords[k].face].size());
      const auto in_arc = [&](long x) {
        const long off = ((x - chords[j].from) % S + S) % S;
        const long span = ((chords[j].to - chords[j].from) % S + S) % S;
        return off > 0 && off < span;
      };
      if (in_arc(chords[k].from) == in_arc(chords[k].to)) continue;
      const bool later_rl = in_arc(chords[k].from);
      const int id = next_id++;
      chord_self[j].push_back({id, VisitKind::Virtual, !later_rl});
      chord_self[k].push_back({id, VisitKind::Virtual, later_rl});
    }
  }
  std::vector<Visit> route;
  std::vector<std::vector<Visit>> on_edge(M);
  for (std::size_t k = 0; k < chords.size(); ++k) {
    for (const Visit& v : chord_self[k]) route.push_back(v);
    if (k < crossed.size()) {
      const Dart c = crossed[k];
      const bool rl = !(c % 2 == 1);
      const int id = next_id++;
      route.push_back({id, VisitKind::Virtual, rl});
      on_edge[om.edge_of(c)].push_back({id, VisitKind::Virtual, !rl});
    }
  }
  std::vector<Visit> out;
  std::vector<VisitOrigin> origin;
  for (std::size_t j = 0; j < M; ++j) {
    out.push_back(d.visits()[om.kept[j]]);
    origin.push_back({static_cast<long>(om.kept[j]), false});
    for (const Visit& v : on_edge[j]) {
      out.push_back(v);
      origin.push_back({static_cast<long>(om.kept[j]), true});
    }
  }
  for (const Visit& v : route) {
    out.push_back(v);
    origin.push_back({static_cast<long>(u), true});
  }
  if (outer) {
    if (outer->edge >= out.size()) fail("outer face edge out of range");
    try {
      return {PlanarDiagram::from_visits(std::move(out), *outer), std::move(origin)};
    } catch (const DiagramError& e) {
      throw MoveError(std::string("move produced an invalid diagram: ") + e.what());
    }
  }
  return finish_rewrite(d, std::move(out), std::move(origin));
}

// ---- dispatch -------------------------------------------------------------------

Rewrite apply_move_traced(const PlanarDiagram& d, const Move& m) {
  const bool inverse = m.direction == MoveDirection::Inverse;
  switch (m.kind) {
    case MoveKind::R1:
    case MoveKind::VR1:
      return inverse ? add_kink(d, m) : remove_kink(d, m);
    case MoveKind::R2:
    case MoveKind::VR2:
      return inverse ? add_bigon(d, m) : remove_bigon(d, m);
    case MoveKind::R3:
    case MoveKind::VR3:
    case MoveKind::SemiVirtual:
      return flip_triangle(d, m);
    case MoveKind::XStep:
      if (inverse) return unslide(d, m);
      expect_site(m, 2);
      return x_step(d, visit_index(d, m.site[0]), static_cast<int>(m.site[1])).rewrite;
    case MoveKind::DetourStep: {
      if (inverse) fail("a detour is undone by another detour");
      if (m.site.size() < 2) fail("DetourStep expects at least two site values");
      std::vector<Dart> crossed;
      std::optional<OuterAnchor> outer;
      for (std::size_t i = 2; i < m.site.size(); ++i) {
        if (m.site[i] >= 0) {
          if (outer) fail("outer face entry must come last");
          crossed.push_back(static_cast<Dart>(m.site[i]));
        } else {
          const long code = -1 - m.site[i];
          outer = OuterAnchor{static_cast<std::size_t>(code / 2), code % 2 == 1};
        }
      }
      return detour(d, visit_index(d, m.site[0]), visit_index(d, m.site[1]), crossed, outer);
    }
  }
  fail("unknown move");
}

PlanarDiagram apply_move(const PlanarDiagram& d, const Move& m) {
  return apply_move_traced(d, m).diagram;
}

PlanarDiagram MoveTrace::push(const PlanarDiagram& current, const Move& m) {
  PlanarDiagram next = apply_move(current, m);
  steps.push_back({m, next.classical_count() - current.classical_count(),
                   next.virtual_count() - current.virtual_count()});
  return next;
}

void MoveTrace::append(const MoveTrace& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

PlanarDiagram replay(const MoveTrace& trace) {
  PlanarDiagram cur = trace.initial;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    PlanarDiagram next;
    try {
      next = apply_move(cur, s.move);
    } catch (const std::invalid_argument& e) {
      throw MoveError("step " + std::to_string(k + 1) + ": " + e.what());
    }
    const int dc = next.classical_count() - cur.classical_count();
    const int dv = next.virtual_count() - cur.virtual_count();
    if (dc != s.delta_classical || dv != s.delta_virtual) {
      throw MoveError("step " + std::to_string(k + 1) + ": recorded delta " +
                      std::to_string(s.delta_classical) + "," + std::to_string(s.delta_virtual) +
                      " but the move changes counts by " + std::to_string(dc) + "," +
                      std::to_string(dv));
    }
    cur = std::move(next);
  }
  return cur;
}

std::string serialize_trace(const MoveTrace& trace, const PlanarDiagram& final_diagram) {
  std::ostringstream os;
  os << serialize_diagram(trace.initial);
  os << "trace steps=" << trace.steps.size() << '\n';
  for (const TraceStep& s : trace.steps) {
    os << "step " << to_string(s.move.kind) << ' '
       << (s.move.direction == MoveDirection::Apply ? "apply" : "inverse") << " site=";
    if (s.move.site.empty()) os << '-';
    for (std::size_t i = 0; i < s.move.site.size(); ++i) {
      if (i) os << ',';
      os << s.move.site[i];
    }
    os << " delta=" << s.delta_classical << ',' << s.delta_virtual << '\n';
  }
  os << "final\n" << serialize_diagram(final_diagram);
  return os.str();
}

namespace {

std::vector<long> parse_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  if (text == "-") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      fail("bad " + what + " value '" + item + "'");
    }
  }
  return out;
}

}  // namespace

ParsedTrace parse_trace(std::string_view text) {
  ParsedTrace out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  bool in_final = false;
  std::string initial_text, final_text;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (in_final) {
      final_text += line + '\n';
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header && tag != "trace") {
      initial_text += line + '\n';
    } else if (tag == "trace") {
      if (header) fail("second trace header");
      std::string f;
      ls >> f;
      if (f.rfind("steps=", 0) != 0) fail("bad trace header");
      const auto n = parse_list(f.substr(6), "step count");
      if (n.size() != 1 || n[0] < 0) fail("bad trace header");
      out.declared_steps = n[0];
      header = true;
    } else if (tag == "step") {
      std::string kind, dir, site, delta;
      ls >> kind >> dir >> site >> delta;
      if (site.rfind("site=", 0) != 0 || delta.rfind("delta=", 0) != 0) {
        fail("bad step line '" + line + "'");
      }
      TraceStep s;
      s.move.kind = move_kind_from_string(kind);
      if (dir == "apply") {
        s.move.direction = MoveDirection::Apply;
      } else if (dir == "inverse") {
        s.move.direction = MoveDirection::Inverse;
      } else {
        fail("bad move direction '" + dir + "'");
      }
      s.move.site = parse_list(site.substr(5), "site");
      const auto dl = parse_list(delta.substr(6), "delta");
      if (dl.size() != 2) fail("delta needs two values");
      s.delta_classical = static_cast<int>(dl[0]);
      s.delta_virtual = static_cast<int>(dl[1]);
      out.steps.push_back(std::move(s));
    } else if (tag == "final") {
      in_final = true;
    } else {
      fail("unexpected trace line '" + line + "'");
    }
  }
  if (!header) fail("missing trace header");
  const auto diagram = [](const std::string& t, const char* what) {
    try {
      return parse_diagram(t);
    } catch (const DiagramError& e) {
      fail(std::string("bad ") + what + " diagram: " + e.what());
    }
  };
  if (!initial_text.empty()) out.initial = diagram(initial_text, "initial");
  if (in_final && final_text.find_first_not_of(" \t\r\n") != std::string::npos) {
    out.final_text = final_text;
    out.final_diagram = diagram(final_text, "final");
  }
  return out;
}

}  // namespace vmeander
