#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vmeander/invariants.hpp"
#include "vmeander/moves.hpp"

using namespace vmeander;

namespace {

PlanarDiagram realize(const char* code) { return from_gauss(parse_gauss(code)); }

std::string fpoly(const PlanarDiagram& d) { return oracle::text(oracle::f_polynomial(to_gauss(d))); }

Move move(MoveKind k, MoveDirection dir, std::vector<long> site) { return Move{k, dir, std::move(site)}; }

}  // namespace

TEST_CASE("kinks: add and remove") {
  const PlanarDiagram d = realize("O1+U2+O3+U1+O2+U3+");
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    for (long left : {0, 1}) {
      for (long over : {0, 1}) {
        const PlanarDiagram k = apply_move(d, move(MoveKind::R1, MoveDirection::Inverse, {long(e), left, over}));
        CHECK(k.classical_count() == 4);
        CHECK(k.genus() == 0);
        // the kink changes the writhe by one and keeps the f-polynomial
        CHECK(std::abs(writhe(to_gauss(k)) - 3) == 1);
        CHECK(fpoly(k) == fpoly(d));
        const PlanarDiagram back = apply_move(k, move(MoveKind::R1, MoveDirection::Apply, {k.max_vertex_id()}));
        CHECK(to_gauss(back) == to_gauss(d));
      }
      const PlanarDiagram v = apply_move(d, move(MoveKind::VR1, MoveDirection::Inverse, {long(e), left}));
      CHECK(v.virtual_count() == 1);
      CHECK(to_gauss(v) == to_gauss(d));
    }
  }
  CHECK_THROWS_AS(apply_move(d, move(MoveKind::R1, MoveDirection::Apply, {0})), MoveError);
  CHECK_THROWS_AS(apply_move(d, move(MoveKind::R1, MoveDirection::Inverse, {99, 0, 0})), MoveError);
}

TEST_CASE("crossing slides keep genus, writhe and the f-polynomial") {
  std::mt19937_64 rng(4);
  int done = 0;
  for (int i = 0; i < 200; ++i) {
    const PlanarDiagram d = from_gauss(oracle::random_code(2 + static_cast<int>(rng() % 5), rng));
    const std::size_t v = rng() % d.visit_count();
    const int dir = rng() % 2 ? 1 : -1;
    const std::size_t z = dir > 0 ? d.next(v) : d.prev(v);
    if (d.visits()[v].vertex == d.visits()[z].vertex) continue;
    const XStepResult x = x_step(d, v, dir);
    const PlanarDiagram& out = x.rewrite.diagram;
    CAPTURE(serialize_diagram(d));
    CHECK(out.genus() == 0);
    CHECK(oracle::writhe(to_gauss(out)) == oracle::writhe(to_gauss(d)));
    CHECK(fpoly(out) == fpoly(d));
    const bool both = d.is_classical_visit(v) && d.is_classical_visit(z);
    CHECK(out.classical_count() - d.classical_count() == (both ? 2 : 0));
    CHECK(out.vertex_count() == d.vertex_count() + 2);
    // the recorded move replays to the same diagram, and its inverse undoes it
    CHECK(apply_move(d, x.move) == out);
    const Move inv = move(MoveKind::XStep, MoveDirection::Inverse, {x.new_vertices[0], x.new_vertices[1]});
    CHECK(to_gauss(apply_move(out, inv)) == to_gauss(d));
    ++done;
  }
  CHECK(done > 100);
}

TEST_CASE("traces serialize, parse and replay") {
  const PlanarDiagram d = realize("O1-U2-O3-U1-O2-U4+O4+U3-");
  MoveTrace t;
  t.initial = d;
  PlanarDiagram cur = t.push(d, move(MoveKind::R1, MoveDirection::Inverse, {0, 1, 1}));
  cur = t.push(cur, move(MoveKind::VR1, MoveDirection::Inverse, {3, 0}));
  cur = t.push(cur, x_step(cur, 2, 1).move);
  REQUIRE(t.steps.size() == 3);
  CHECK(t.steps[0].delta_classical == 1);
  CHECK(t.steps[1].delta_virtual == 1);

  const std::string text = serialize_trace(t, cur);
  const ParsedTrace p = parse_trace(text);
  REQUIRE(p.initial.has_value());
  CHECK(p.complete());
  CHECK(p.steps == t.steps);
  CHECK(serialize_diagram(replay(t)) == p.final_text);
  CHECK(serialize_trace(t, cur) == text);

  SUBCASE("a tampered delta is reported") {
    std::string bad = text;
    const auto at = bad.find("delta=1,0");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 9, "delta=2,0");
    const ParsedTrace q = parse_trace(bad);
    MoveTrace r;
    r.initial = *q.initial;
    r.steps = q.steps;
    CHECK_THROWS_WITH_AS(replay(r), doctest::Contains("step 1"), MoveError);
  }
  SUBCASE("a truncated trace is incomplete") {
    const std::string cut = text.substr(0, text.find("final"));
    const ParsedTrace q = parse_trace(cut);
    CHECK_FALSE(q.complete());
    CHECK_FALSE(q.final_diagram.has_value());
  }
  SUBCASE("malformed step lines are rejected") {
    std::string bad = text;
    bad.replace(bad.find("step R1"), 7, "step Q9");
    CHECK_THROWS_AS(parse_trace(bad), MoveError);
  }
}

namespace {

// Depth-first search for a route of at most `depth` edge crossings that
// leaves the segment's face and comes back to it.
bool find_route(const OpenMap& om, int face, std::vector<Dart>& route, int depth) {
  if (!route.empty() && face == om.tip_face) return true;
  if (static_cast<int>(route.size()) == depth) return false;
  for (Dart x : om.faces[face]) {
    if (om.is_tip_edge(x)) continue;
    bool used = false;
    for (Dart r : route) used = used || om.edge_of(r) == om.edge_of(x);
    if (used) continue;
    route.push_back(x);
    if (find_route(om, om.face_of[om.across(x)], route, depth)) return true;
    route.pop_back();
  }
  return false;
}

}  // namespace

TEST_CASE("detours add only virtual crossings") {
  const PlanarDiagram d = realize("O1-U2+O3-U4+O2+U1-O4+U3-");
  int rerouted = 0;
  for (std::size_t u = 0; u < d.visit_count(); ++u) {
    const std::size_t w = d.next(u);
    // an empty route redraws the edge in place
    const Rewrite same = detour(d, u, w, {});
    CHECK(normalize(to_gauss(same.diagram)).code == normalize(to_gauss(d)).code);
    CHECK(same.diagram.vertex_count() == d.vertex_count());

    const OpenMap om = open_segment(d, u, w);
    std::vector<Dart> route;
    if (!find_route(om, om.tip_face, route, 4)) continue;
    Rewrite r;
    try {
      r = detour(d, u, w, route);
    } catch (const MoveError&) {
      continue;  // the route revisits a face too often
    }
    CHECK(r.diagram.genus() == 0);
    CHECK(r.diagram.classical_count() == d.classical_count());
    CHECK(r.diagram.virtual_count() >= d.virtual_count() + static_cast<int>(route.size()));
    CHECK(fpoly(r.diagram) == fpoly(d));
    ++rerouted;
  }
  CHECK(rerouted > 0);

  CHECK_THROWS_AS(open_segment(d, 0, 2), MoveError);  // passes a classical crossing
  CHECK_THROWS_AS(open_segment(d, 1, 1), MoveError);
}
