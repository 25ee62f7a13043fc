#include "vmeander/algorithms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace vmeander {

namespace {

// Pulling state: the diagram, which visits lie on the arc I, and the
// x-steps taken so far.
struct Pulling {
  PlanarDiagram d;
  std::vector<int> on;
  MoveTrace trace;
};

struct Found {
  std::size_t visit = 0;
  int passed = 0;
  int passed_classical = 0;
};

std::pair<std::size_t, std::size_t> arc_ends(const Pulling& s) {
  const std::size_t n = s.d.visit_count();
  std::size_t start = 0, end = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s.on[i] && !s.on[s.d.prev(i)]) start = i;
    if (s.on[i] && !s.on[s.d.next(i)]) end = i;
  }
  return {start, end};
}

std::unordered_map<int, int> on_count(const Pulling& s) {
  std::unordered_map<int, int> c;
  for (std::size_t i = 0; i < s.d.visit_count(); ++i) c[s.d.visits()[i].vertex] += s.on[i];
  return c;
}

int off_count(const Pulling& s) {
  int n = 0;
  for (const auto& [v, c] : on_count(s)) n += c == 0;
  return n;
}

int classical_on_arc(const Pulling& s) {
  int n = 0;
  for (std::size_t i = 0; i < s.d.visit_count(); ++i) n += s.on[i] && s.d.is_classical_visit(i);
  return n;
}

// First visit off I whose crossing has no visit on I, scanning outward from
// the end of I (forward) or from its start (backward).
std::optional<Found> scan(const Pulling& s, bool forward) {
  if (s.d.empty()) return std::nullopt;
  const auto [start, end] = arc_ends(s);
  const auto has = on_count(s);
  Found f;
  std::size_t i = forward ? s.d.next(end) : s.d.prev(start);
  const std::size_t stop = forward ? start : end;
  for (; i != stop; i = forward ? s.d.next(i) : s.d.prev(i)) {
    if (has.at(s.d.visits()[i].vertex) == 0) {
      f.visit = i;
      return f;
    }
    ++f.passed;
    f.passed_classical += s.d.is_classical_visit(i);
  }
  return std::nullopt;
}

int pull_cost(const Pulling& s, const Found& f) {
  return s.d.is_classical_visit(f.visit) ? 2 * f.passed_classical : 0;
}

int vertex_of(const Pulling& s, const Found& f) { return s.d.visits()[f.visit].vertex; }

void pull(Pulling& s, const Found& f, bool forward) {
  std::size_t v = f.visit;
  s.d = pull_crossing_along(s.d, v, forward ? -1 : 1, f.passed, s.trace, &s.on);
  s.on[v] = 1;
}

std::vector<std::size_t> cuts_of_labels(const PlanarDiagram& d, const std::vector<int>& label) {
  std::vector<std::size_t> cuts;
  for (std::size_t e = 0; e < d.visit_count(); ++e) {
    if (label[e] != label[d.next(e)]) cuts.push_back(e);
  }
  return cuts;
}

bool all_arcs_simple(const ArcDecomposition& dec) {
  return std::all_of(dec.per_arc_any_self.begin(), dec.per_arc_any_self.end(),
                     [](int x) { return x == 0; });
}

SemimeanderResult start_result(const PlanarDiagram& input) {
  SemimeanderResult r;
  r.diagram = input.canonical();
  r.trace.initial = r.diagram;
  r.input_classical = r.diagram.classical_count();
  r.input_crossings = r.diagram.vertex_count();
  return r;
}

void finish_counts(SemimeanderResult& r) {
  r.output_classical = r.diagram.classical_count();
  r.output_crossings = r.diagram.vertex_count();
  r.identity = r.trace.steps.empty();
}

SemimeanderResult identity_result(const PlanarDiagram& input, const TwoArcWitness& w) {
  SemimeanderResult r = start_result(input);
  if (!r.diagram.empty()) r.cuts = decompose_edges(r.diagram, {w.first_cut, w.second_cut});
  finish_counts(r);
  return r;
}

Pulling start_pulling(const PlanarDiagram& d) {
  Pulling s{d, std::vector<int>(d.visit_count(), 0), {}};
  for (std::size_t v : longest_simple_arc(d).visits) s.on[v] = 1;
  return s;
}

void finish_pulling(SemimeanderResult& r, Pulling& s) {
  r.diagram = s.d;
  r.trace.steps = std::move(s.trace.steps);
  if (!r.diagram.empty()) {
    r.cuts = decompose_edges(r.diagram, cuts_of_labels(r.diagram, s.on));
    if (r.cuts.arc_count() != 2 || !all_arcs_simple(r.cuts)) {
      throw std::logic_error("pulling did not end in a strong semimeander");
    }
  }
  finish_counts(r);
}

PullRound begin_round(const Pulling& s) {
  PullRound p;
  p.off_before = off_count(s);
  p.classical_before = s.d.classical_count();
  p.classical_on_arc = classical_on_arc(s);
  return p;
}

void end_round(SemimeanderResult& r, const Pulling& s, PullRound p) {
  p.off_after = off_count(s);
  p.classical_after = s.d.classical_count();
  if (p.off_after >= p.off_before) {
    throw std::logic_error("crossings off the arc did not decrease");
  }
  r.rounds.push_back(p);
}

void pull_cheaper(Pulling& s, const Found& f, const Found& b) {
  if (pull_cost(s, f) <= pull_cost(s, b)) {
    pull(s, f, true);
  } else {
    pull(s, b, false);
  }
}

}  // namespace

bool within_sqrt3_power(long long c, int n) {
  if (c <= 0) return true;
  if (n > 80) return true;
  __int128 p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return static_cast<__int128>(c) * c <= p;
}

SemimeanderResult semimeanderize(const PlanarDiagram& input) {
  const TwoArcWitness w = strong_semimeander_witness(input);
  if (input.empty() || w.holds) return identity_result(input, w);
  SemimeanderResult r = start_result(input);
  Pulling s = start_pulling(r.diagram);
  while (const auto f = scan(s, true)) {
    const auto b = scan(s, false);
    PullRound p = begin_round(s);
    pull_cheaper(s, *f, *b);
    p.pulls = 1;
    end_round(r, s, p);
  }
  finish_pulling(r, s);
  return r;
}

SemimeanderResult semimeanderize_bounded(const PlanarDiagram& input) {
  if (!is_reduced(to_gauss(input))) throw AlgorithmError("input diagram is not reduced");
  const int n = input.vertex_count();
  const auto bounded = [n](SemimeanderResult r) {
    r.bound_value = std::pow(std::sqrt(3.0), n);
    r.within_bound = within_sqrt3_power(r.output_classical, n) &&
                     within_sqrt3_power(r.output_crossings, n);
    return r;
  };
  const TwoArcWitness w = strong_semimeander_witness(input);
  if (input.empty() || w.holds) return bounded(identity_result(input, w));
  if (n <= 6) {
    SemimeanderResult r = semimeanderize(input);
    r.small_counterexample = true;
    return bounded(std::move(r));
  }

  SemimeanderResult r = start_result(input);
  Pulling s = start_pulling(r.diagram);
  while (const auto f = scan(s, true)) {
    const auto b = scan(s, false);
    PullRound p = begin_round(s);
    if (vertex_of(s, *f) != vertex_of(s, *b)) {
      pull(s, *f, true);
      p.pulls = 1;
      if (const auto b2 = scan(s, false)) {
        pull(s, *b2, false);
        p.pulls = 2;
      }
    } else if (p.off_before == 1) {
      pull_cheaper(s, *f, *b);
      p.pulls = 1;
    } else {
      // Both ends reach the same crossing first: pull it from one side and
      // then the next free crossing on that side; keep the cheaper side.
      std::array<Pulling, 2> side{s, s};
      std::array<int, 2> pulls{1, 1};
      for (int i = 0; i < 2; ++i) {
        const bool forward = i == 0;
        pull(side[i], forward ? *f : *b, forward);
        if (const auto g = scan(side[i], forward)) {
          pull(side[i], *g, forward);
          pulls[i] = 2;
        }
      }
      const int pick = side[1].d.classical_count() < side[0].d.classical_count() ? 1 : 0;
      s = std::move(side[pick]);
      p.pulls = pulls[pick];
    }
    end_round(r, s, p);
  }
  finish_pulling(r, s);
  return bounded(std::move(r));
}

SemimeanderResult meanderize(const PlanarDiagram& input) {
  const TwoArcWitness mw = strong_meander_witness(input);
  if (input.empty() || mw.holds) {
    SemimeanderResult r = identity_result(input, mw);
    r.semimeander_classical = r.output_classical;
    return r;
  }
  SemimeanderResult r = semimeanderize(input);
  r.semimeander_classical = r.diagram.classical_count();
  const PlanarDiagram cur = r.diagram;
  const std::vector<int> label = r.cuts.arc_of_visit;
  const auto& cuts = r.cuts.cut_edges;
  if (cur.edge_on_outer_face(cuts[0]) && cur.edge_on_outer_face(cuts[1])) return r;

  // Move the free end at cut u next to the cut y that stays.
  const int moving = cur.edge_on_outer_face(cuts[0]) ? 1 : 0;
  const std::size_t u = cuts[moving];
  const std::size_t y = cuts[1 - moving];
  const std::size_t w = cur.next(u);
  const int arc_a = label[u];
  const int arc_b = label[w];
  const OpenMap om = open_segment(cur, u, w);
  std::vector<long> open_index(cur.visit_count(), -1);
  for (std::size_t j = 0; j < om.kept.size(); ++j) open_index[om.kept[j]] = static_cast<long>(j);
  const Dart old_outer = cur.faces()[cur.outer_face()].darts.front();
  const int outer = om.face_of[2 * open_index[PlanarDiagram::visit_of(old_outer)] + old_outer % 2];
  const long yj = open_index[y];
  const std::array<int, 2> beside_y{om.face_of[2 * yj + 1], om.face_of[2 * (yj + 1)]};

  // breadth-first search over faces crossing only edges of one arc
  const auto search = [&](int from, int arc, bool may_cross_y) {
    std::vector<int> dist(om.faces.size(), -1);
    std::vector<Dart> via(om.faces.size(), -1);
    std::deque<int> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (Dart x : om.faces[f]) {
        if (om.is_tip_edge(x)) continue;
        const std::size_t old_edge = om.kept[om.edge_of(x)];
        if (old_edge == y ? !may_cross_y : label[old_edge] != arc) continue;
        const int g = om.face_of[om.across(x)];
        if (dist[g] >= 0) continue;
        dist[g] = dist[f] + 1;
        via[g] = x;
        queue.push_back(g);
      }
    }
    return std::pair{dist, via};
  };
  const auto path_to = [&](const std::vector<Dart>& via, int from, int to) {
    std::vector<Dart> path;
    for (int f = to; f != from; f = om.face_of[via[f]]) path.push_back(via[f]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  const auto [dist1, via1] = search(om.tip_face, arc_b, false);
  int meet = -1;
  for (int f : beside_y) {
    if (dist1[f] < 0) continue;
    if (meet < 0 || dist1[f] < dist1[meet] || (dist1[f] == dist1[meet] && f == outer)) meet = f;
  }
  if (meet < 0) throw std::logic_error("no route to the other cut");
  std::vector<Dart> crossed = path_to(via1, om.tip_face, meet);
  const std::size_t out_len = crossed.size();
  const auto [dist2, via2] = search(meet, arc_a, true);
  if (dist2[om.tip_face] < 0) throw std::logic_error("no route back from the other cut");
  for (Dart x : path_to(via2, meet, om.tip_face)) crossed.push_back(x);

  const Rewrite trial = detour(cur, u, w, crossed);
  const PlanarDiagram& nd = trial.diagram;
  std::vector<int> next_label(nd.visit_count());
  std::vector<char> is_route(nd.visit_count(), 0);
  for (std::size_t j = 0; j < nd.visit_count(); ++j) {
    const auto& o = trial.origin[j];
    next_label[j] = label[o.old];
    is_route[j] = o.inserted && o.old == static_cast<long>(u);
    if (o.inserted && o.old == static_cast<long>(y)) next_label[j] = arc_a;
  }
  std::size_t through = 0;
  for (std::size_t j = 0; j < nd.visit_count(); ++j) {
    if (!is_route[j]) continue;
    if (through == out_len) {
      next_label[j] = arc_b;
      continue;
    }
    next_label[j] = arc_a;
    if (!is_route[nd.partner(j)]) ++through;
  }

  // Outer face: one bordering both cuts, the carried one if it does.
  const auto cuts_now = cuts_of_labels(nd, next_label);
  const auto borders_both = [&](int f) {
    for (std::size_t c : cuts_now) {
      if (nd.left_face(c) != f && nd.right_face(c) != f) return false;
    }
    return true;
  };
  int chosen = borders_both(nd.outer_face()) ? nd.outer_face() : -1;
  for (int f = 0; chosen < 0 && f < static_cast<int>(nd.faces().size()); ++f) {
    if (borders_both(f)) chosen = f;
  }
  if (chosen < 0) throw std::logic_error("cuts do not share a face after rerouting");
  const Dart x = nd.faces()[chosen].darts.front();
  const std::size_t xv = PlanarDiagram::visit_of(x);
  const OuterAnchor anchor =
      PlanarDiagram::is_out(x) ? OuterAnchor{xv, true} : OuterAnchor{nd.prev(xv), false};

  Move m{MoveKind::DetourStep, MoveDirection::Apply, {static_cast<long>(u), static_cast<long>(w)}};
  for (Dart c : crossed) m.site.push_back(c);
  m.site.push_back(-1 - static_cast<long>(2 * anchor.edge + (anchor.left ? 1 : 0)));
  PlanarDiagram moved = r.trace.push(cur, m);
  if (moved.visits() != nd.visits()) throw std::logic_error("detour replay diverged");

  r.diagram = std::move(moved);
  r.cuts = decompose_edges(r.diagram, cuts_now);
  for (std::size_t e : r.cuts.cut_edges) {
    if (!r.diagram.edge_on_outer_face(e)) throw std::logic_error("cut left off the outer face");
  }
  if (r.cuts.arc_count() != 2 || !all_arcs_simple(r.cuts)) {
    throw std::logic_error("rerouting broke the semimeander");
  }
  if (r.diagram.classical_count() != r.semimeander_classical) {
    throw std::logic_error("rerouting changed the classical crossings");
  }
  finish_counts(r);
  return r;
}

bool MergeResult::within_square_bound() const {
  const long long k1 = from_split.arc_count();
  const long long c = input_classical;
  return static_cast<long long>(increase) * k1 * k1 <= 2 * c * c;
}

MergeResult merge_arcs(const PlanarDiagram& input, const ArcDecomposition& dec) {
  if (dec.arc_count() < 3) throw AlgorithmError("merging needs at least three arcs");
  MergeResult r;
  const PlanarDiagram d = input.canonical();
  try {
    r.from_split = decompose_edges(d, dec.cut_edges);
  } catch (const DiagramError& e) {
    throw AlgorithmError(std::string("invalid decomposition: ") + e.what());
  }
  for (int x : r.from_split.per_arc_classical_self) {
    if (x != 0) throw AlgorithmError("an arc has a classical self-crossing");
  }
  const ArcDecomposition& from = r.from_split;
  const int k1 = from.arc_count();
  r.trace.initial = d;
  r.input_classical = d.classical_count();

  int J = 0;
  for (int a = 1; a < k1; ++a) {
    if (from.classical_on(a) < from.classical_on(J)) J = a;
  }
  const int prev_arc = (J + k1 - 1) % k1;
  const int next_arc = (J + 1) % k1;
  r.chosen_arc = J;
  r.n_min = from.classical_on(J);
  r.toward_previous = from.classical_between[J][next_arc] > from.classical_between[J][prev_arc];
  const int target = r.toward_previous ? prev_arc : next_arc;
  const int receiver = r.toward_previous ? next_arc : prev_arc;
  r.m = from.classical_between[J][target];

  PlanarDiagram cur = d;
  std::vector<int> label = from.arc_of_visit;
  for (int moved = 0; moved < r.m; ++moved) {
    const std::size_t n = cur.visit_count();
    std::size_t first = 0, last = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == J && label[cur.prev(i)] != J) first = i;
      if (label[i] == J && label[cur.next(i)] != J) last = i;
    }
    // walk J away from the receiving neighbour to the first crossing with
    // the target arc
    const bool backward = !r.toward_previous;
    std::size_t i = backward ? first : last;
    while (!(cur.is_classical_visit(i) && label[cur.partner(i)] == target)) {
      if (i == (backward ? last : first)) throw std::logic_error("lost a crossing between arcs");
      i = backward ? cur.next(i) : cur.prev(i);
    }
    // passing a virtual self-crossing of J adds visits ahead, so slide
    // until J's end is reached rather than a fixed number of times
    while (label[backward ? cur.prev(i) : cur.next(i)] == J) {
      cur = pull_crossing_along(cur, i, backward ? -1 : 1, 1, r.trace, &label);
    }
    label[i] = receiver;
  }
  for (int& l : label) {
    if (l == J) l = target;
  }
  r.diagram = cur;
  r.to_split = decompose_edges(cur, cuts_of_labels(cur, label));
  if (r.to_split.arc_count() != k1 - 1) throw std::logic_error("merge produced the wrong arc count");
  for (int x : r.to_split.per_arc_classical_self) {
    if (x != 0) throw std::logic_error("merge left a classical self-crossing");
  }
  r.increase = cur.classical_count() - r.input_classical;
  return r;
}

KArcBounds karc_upper_bounds(const GaussCode& code, int kmax, long budget) {
  if (code.chord_count() > 10) throw AlgorithmError("search is limited to 10 chords");
  if (kmax < 1) throw AlgorithmError("kmax must be at least 1");
  KArcBounds out;
  std::vector<std::optional<int>> raw(kmax + 1);
  const auto record = [&](const PlanarDiagram& d) {
    const int k = min_arc_number(to_gauss(d)).min_arcs;
    for (int kk = k; kk <= kmax; ++kk) {
      if (!raw[kk] || d.classical_count() < *raw[kk]) raw[kk] = d.classical_count();
    }
  };

  const PlanarDiagram start = from_gauss(code).canonical();
  std::deque<PlanarDiagram> queue{start};
  std::unordered_set<std::string> seen{serialize_diagram(start)};
  while (!queue.empty() && out.explored < budget) {
    const PlanarDiagram d = std::move(queue.front());
    queue.pop_front();
    ++out.explored;
    record(d);
    std::vector<Move> moves;
    for (int v : d.vertex_ids()) {
      const auto [a, b] = d.visits_of(v);
      const bool classical = d.is_classical_visit(a);
      if (d.next(a) == b || d.next(b) == a) {
        moves.push_back({classical ? MoveKind::R1 : MoveKind::VR1, MoveDirection::Apply, {v}});
      }
      for (std::size_t x : {a, b}) {
        for (std::size_t y : {d.next(x), d.prev(x)}) {
          const int w = d.visits()[y].vertex;
          if (w > v) {
            moves.push_back({classical ? MoveKind::R2 : MoveKind::VR2, MoveDirection::Apply, {v, w}});
          }
        }
      }
    }
    for (const Face& f : d.faces()) {
      if (f.darts.size() != 3) continue;
      std::vector<long> site;
      int classical = 0;
      for (Dart x : f.darts) {
        const std::size_t i = PlanarDiagram::visit_of(x);
        site.push_back(d.visits()[i].vertex);
        classical += d.is_classical_visit(i);
      }
      const MoveKind kind = classical == 3   ? MoveKind::R3
                            : classical == 0 ? MoveKind::VR3
                                             : MoveKind::SemiVirtual;
      moves.push_back({kind, MoveDirection::Apply, site});
    }
    for (const Move& m : moves) {
      PlanarDiagram next;
      try {
        next = apply_move(d, m);
      } catch (const MoveError&) {
        continue;
      }
      if (seen.insert(serialize_diagram(next)).second) queue.push_back(std::move(next));
    }
  }
  out.partial = !queue.empty();
  record(semimeanderize(start).diagram);

  std::optional<int> running;
  for (int k = 1; k <= kmax; ++k) {
    if (raw[k] && (!running || *raw[k] < *running)) running = raw[k];
    out.bounds.push_back({k, running, raw[k]});
  }
  return out;
}

}  // namespace vmeander
