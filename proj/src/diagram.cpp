#include "vmeander/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace vmeander {

PlanarDiagram::PlanarDiagram() { build(); }

PlanarDiagram PlanarDiagram::from_visits(std::vector<Visit> visits, OuterAnchor outer) {
  PlanarDiagram d;
  d.visits_ = std::move(visits);
  d.outer_ = d.visits_.empty() ? OuterAnchor{} : outer;
  d.build();
  return d;
}

void PlanarDiagram::build() {
  const std::size_t n = visits_.size();
  partner_.assign(n, 0);
  sigma_.assign(2 * n, 0);
  sigma_inv_.assign(2 * n, 0);
  faces_.clear();
  face_of_.assign(2 * n, -1);
  classical_ = 0;
  if (n == 0) {
    faces_.resize(2);
    return;
  }
  if (n % 2 != 0) throw DiagramError("odd number of visits");
  if (outer_.edge >= n) throw DiagramError("outer face anchor out of range");

  std::unordered_map<int, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < n; ++i) where[visits_[i].vertex].push_back(i);
  for (const auto& [v, pos] : where) {
    if (pos.size() != 2) {
      throw DiagramError("vertex " + std::to_string(v) + " is visited " +
                         std::to_string(pos.size()) + " time(s)");
    }
    const Visit& a = visits_[pos[0]];
    const Visit& b = visits_[pos[1]];
    const bool va = a.kind == VisitKind::Virtual;
    const bool vb = b.kind == VisitKind::Virtual;
    if (va != vb) throw DiagramError("vertex " + std::to_string(v) + " mixes virtual and classical");
    if (!va && a.kind == b.kind) {
      throw DiagramError("vertex " + std::to_string(v) + " needs one over and one under passage");
    }
    if (a.right_to_left == b.right_to_left) {
      throw DiagramError("vertex " + std::to_string(v) + " has inconsistent crossing directions");
    }
    if (!va) ++classical_;
    partner_[pos[0]] = pos[1];
    partner_[pos[1]] = pos[0];
    const std::size_t first = pos[0];
    const auto rot = rotation_at(first);
    for (int k = 0; k < 4; ++k) {
      sigma_[rot[k]] = rot[(k + 1) % 4];
      sigma_inv_[rot[(k + 1) % 4]] = rot[k];
    }
  }
  for (Dart d = 0; d < dart_count(); ++d) {
    if (face_of_[d] >= 0) continue;
    Face f;
    const int id = static_cast<int>(faces_.size());
    for (Dart e = d; face_of_[e] < 0; e = sigma_inv_[alpha(e)]) {
      face_of_[e] = id;
      f.darts.push_back(e);
    }
    faces_.push_back(std::move(f));
  }
  if (genus() != 0) {
    throw DiagramError("diagram is not planar (genus " + std::to_string(genus()) + ")");
  }
}

int PlanarDiagram::sign_at(std::size_t visit) const {
  const Visit& v = visits_[visit];
  if (v.kind == VisitKind::Virtual) return 0;
  const Visit& under = v.kind == VisitKind::Under ? v : visits_[partner_[visit]];
  return under.right_to_left ? 1 : -1;
}

std::pair<std::size_t, std::size_t> PlanarDiagram::visits_of(int vertex) const {
  for (std::size_t i = 0; i < visits_.size(); ++i) {
    if (visits_[i].vertex == vertex) return {i, partner_[i]};
  }
  throw DiagramError("unknown vertex " + std::to_string(vertex));
}

std::vector<int> PlanarDiagram::vertex_ids() const {
  std::vector<int> ids;
  for (std::size_t i = 0; i < visits_.size(); ++i) {
    if (partner_[i] > i) ids.push_back(visits_[i].vertex);
  }
  return ids;
}

Dart PlanarDiagram::alpha(Dart d) const {
  const std::size_t i = visit_of(d);
  return is_out(d) ? in_dart(next(i)) : out_dart(prev(i));
}

std::array<Dart, 4> PlanarDiagram::rotation_at(std::size_t visit) const {
  const std::size_t a = std::min(visit, partner_[visit]);
  const std::size_t b = std::max(visit, partner_[visit]);
  const bool b_rl = visits_[b].right_to_left;
  return {in_dart(a), b_rl ? in_dart(b) : out_dart(b), out_dart(a),
          b_rl ? out_dart(b) : in_dart(b)};
}

CrossingLabel PlanarDiagram::label_at(std::size_t visit) const {
  CrossingLabel l;
  const std::size_t a = std::min(visit, partner_[visit]);
  if (visits_[a].kind == VisitKind::Virtual) return l;
  l.classical = true;
  l.sign = sign_at(a);
  l.over_pair = visits_[a].kind == VisitKind::Over ? 0 : 1;
  return l;
}

std::size_t PlanarDiagram::edge_of(Dart d) const {
  const std::size_t i = visit_of(d);
  return is_out(d) ? i : prev(i);
}

int PlanarDiagram::left_face(std::size_t edge) const { return face_of_[out_dart(edge)]; }

int PlanarDiagram::right_face(std::size_t edge) const { return face_of_[in_dart(next(edge))]; }

int PlanarDiagram::outer_face() const {
  if (visits_.empty()) return 0;
  return outer_.left ? left_face(outer_.edge) : right_face(outer_.edge);
}

bool PlanarDiagram::edge_on_outer_face(std::size_t edge) const {
  if (visits_.empty()) return true;
  const int o = outer_face();
  return left_face(edge) == o || right_face(edge) == o;
}

int PlanarDiagram::genus() const {
  if (visits_.empty()) return 0;
  const long v = vertex_count();
  const long e = static_cast<long>(edge_count());
  const long f = static_cast<long>(faces_.size());
  return static_cast<int>((2 - v + e - f) / 2);
}

PlanarDiagram PlanarDiagram::with_outer_face(int face) const {
  if (visits_.empty()) return *this;
  if (face < 0 || face >= static_cast<int>(faces_.size())) {
    throw DiagramError("face " + std::to_string(face) + " does not exist");
  }
  const Dart d = faces_[face].darts.front();
  OuterAnchor a = is_out(d) ? OuterAnchor{visit_of(d), true} : OuterAnchor{prev(visit_of(d)), false};
  PlanarDiagram copy = *this;
  copy.outer_ = a;
  return copy;
}

PlanarDiagram PlanarDiagram::canonical() const {
  std::unordered_map<int, int> label;
  std::vector<Visit> out = visits_;
  for (auto& v : out) {
    auto [it, inserted] = label.try_emplace(v.vertex, static_cast<int>(label.size()));
    v.vertex = it->second;
  }
  // Normalise the anchor to the first dart of the outer face.
  PlanarDiagram c = from_visits(std::move(out), outer_);
  return c.with_outer_face(c.outer_face());
}

int PlanarDiagram::max_vertex_id() const {
  int m = -1;
  for (const auto& v : visits_) m = std::max(m, v.vertex);
  return m;
}

bool operator==(const PlanarDiagram& a, const PlanarDiagram& b) {
  if (a.visits_.size() != b.visits_.size()) return false;
  const PlanarDiagram ca = a.canonical();
  const PlanarDiagram cb = b.canonical();
  return ca.visits_ == cb.visits_ && ca.outer_face() == cb.outer_face();
}

int genus(const PlanarDiagram& d) { return d.genus(); }

const std::vector<Face>& faces(const PlanarDiagram& d) { return d.faces(); }

GaussCode to_gauss(const PlanarDiagram& d) {
  std::vector<EndpointRecord> records;
  std::unordered_map<int, int> label;
  for (std::size_t i = 0; i < d.visit_count(); ++i) {
    const Visit& v = d.visits()[i];
    if (v.kind == VisitKind::Virtual) continue;
    auto [it, inserted] = label.try_emplace(v.vertex, static_cast<int>(label.size()) + 1);
    records.push_back({it->second, v.kind == VisitKind::Over ? Passage::Over : Passage::Under,
                       d.sign_at(i)});
  }
  return GaussCode(std::move(records));
}

std::vector<long> gauss_positions(const PlanarDiagram& d) {
  std::vector<long> pos(d.visit_count(), -1);
  long k = 0;
  for (std::size_t i = 0; i < d.visit_count(); ++i) {
    if (d.is_classical_visit(i)) pos[i] = k++;
  }
  return pos;
}

std::vector<std::pair<int, std::size_t>> DiagramArc::passed_vertices(const PlanarDiagram& d) const {
  std::vector<std::pair<int, std::size_t>> out;
  for (std::size_t v : visits) out.emplace_back(d.visits()[v].vertex, v);
  return out;
}

int ArcDecomposition::classical_on(int arc) const {
  int total = 2 * per_arc_classical_self[arc];
  for (int j = 0; j < arc_count(); ++j) {
    if (j != arc) total += classical_between[arc][j];
  }
  return total;
}

ArcDecomposition decompose(const PlanarDiagram& d, const std::vector<Dart>& cut_darts) {
  std::vector<std::size_t> edges;
  for (Dart c : cut_darts) {
    if (d.empty()) {
      edges.push_back(static_cast<std::size_t>(std::max(c, 0)));
      continue;
    }
    if (c < 0 || c >= d.dart_count()) throw DiagramError("cut dart out of range");
    edges.push_back(d.edge_of(c));
  }
  return decompose_edges(d, std::move(edges));
}

ArcDecomposition decompose_edges(const PlanarDiagram& d, std::vector<std::size_t> cut_edges) {
  if (cut_edges.empty()) throw DiagramError("at least one cut is required");
  std::sort(cut_edges.begin(), cut_edges.end());
  if (std::adjacent_find(cut_edges.begin(), cut_edges.end()) != cut_edges.end()) {
    throw DiagramError("duplicate cut");
  }
  const std::size_t n = d.visit_count();
  for (std::size_t e : cut_edges) {
    if (n > 0 && e >= n) throw DiagramError("cut edge out of range");
  }
  ArcDecomposition dec;
  dec.cut_edges = cut_edges;
  const std::size_t k = cut_edges.size();
  dec.arcs.resize(k);
  dec.arc_of_visit.assign(n, -1);
  for (std::size_t j = 0; j < k; ++j) {
    DiagramArc& arc = dec.arcs[j];
    arc.start_edge = cut_edges[j];
    arc.end_edge = cut_edges[(j + 1) % k];
    if (n == 0) continue;
    std::size_t v = (arc.start_edge + 1) % n;
    const std::size_t stop = (arc.end_edge + 1) % n;
    do {
      arc.visits.push_back(v);
      dec.arc_of_visit[v] = static_cast<int>(j);
      v = (v + 1) % n;
    } while (v != stop);
  }
  dec.per_arc_classical_self.assign(k, 0);
  dec.per_arc_any_self.assign(k, 0);
  dec.classical_between.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = d.partner(i);
    if (p < i) continue;
    const int a = dec.arc_of_visit[i];
    const int b = dec.arc_of_visit[p];
    const bool classical = d.is_classical_visit(i);
    if (a == b) {
      ++dec.per_arc_any_self[a];
      if (classical) ++dec.per_arc_classical_self[a];
    } else if (classical) {
      ++dec.classical_between[a][b];
      ++dec.classical_between[b][a];
    }
  }
  return dec;
}

namespace {

enum class SelfRule { Classical, Any };

TwoArcWitness two_arc_search(const PlanarDiagram& d, SelfRule rule, bool on_outer) {
  const std::size_t n = d.visit_count();
  if (n == 0) return {true, 0, 0};
  const auto counted = [&](std::size_t v) {
    return rule == SelfRule::Any || d.is_classical_visit(v);
  };
  long total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d.partner(i) > i && counted(i)) ++total;
  }
  std::vector<char> inside(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (on_outer && !d.edge_on_outer_face(a)) continue;
    std::fill(inside.begin(), inside.end(), 0);
    long self1 = 0;
    long split = 0;
    for (std::size_t step = 1; step < n; ++step) {
      const std::size_t b = (a + step) % n;  // arc one is visits a+1..b
      inside[b] = 1;
      if (counted(b)) {
        if (inside[d.partner(b)]) {
          ++self1;
          --split;
        } else {
          ++split;
        }
      }
      if (self1 > 0) break;
      const long self2 = total - self1 - split;
      if (self2 == 0 && (!on_outer || d.edge_on_outer_face(b))) {
        return {true, std::min(a, b), std::max(a, b)};
      }
    }
  }
  return {};
}

}  // namespace

TwoArcWitness semimeander_witness(const PlanarDiagram& d) {
  return two_arc_search(d, SelfRule::Classical, false);
}
TwoArcWitness strong_semimeander_witness(const PlanarDiagram& d) {
  return two_arc_search(d, SelfRule::Any, false);
}
TwoArcWitness meander_witness(const PlanarDiagram& d) {
  return two_arc_search(d, SelfRule::Classical, true);
}
TwoArcWitness strong_meander_witness(const PlanarDiagram& d) {
  return two_arc_search(d, SelfRule::Any, true);
}

bool is_semimeander(const PlanarDiagram& d) { return semimeander_witness(d).holds; }
bool is_strong_semimeander(const PlanarDiagram& d) { return strong_semimeander_witness(d).holds; }
bool is_meander(const PlanarDiagram& d) { return meander_witness(d).holds; }
bool is_strong_meander(const PlanarDiagram& d) { return strong_meander_witness(d).holds; }

DiagramArc longest_simple_arc(const PlanarDiagram& d) {
  const std::size_t n = d.visit_count();
  DiagramArc best;
  if (n == 0) return best;
  std::unordered_map<int, int> seen;
  std::size_t end = 0;  // exclusive, in doubled index space
  int classical = 0;
  int best_classical = -1;
  std::size_t best_start = 0, best_end = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (end < start) end = start;
    while (end < start + n && seen[d.visits()[end % n].vertex] == 0) {
      const std::size_t v = end % n;
      ++seen[d.visits()[v].vertex];
      if (d.is_classical_visit(v)) ++classical;
      ++end;
    }
    if (classical > best_classical) {
      best_classical = classical;
      best_start = start;
      best_end = end;
    }
    if (end > start) {
      const std::size_t v = start % n;
      --seen[d.visits()[v].vertex];
      if (d.is_classical_visit(v)) --classical;
    }
  }
  best.start_edge = (best_start + n - 1) % n;
  best.end_edge = (best_end + n - 1) % n;
  for (std::size_t i = best_start; i < best_end; ++i) best.visits.push_back(i % n);
  return best;
}

}  // namespace vmeander
