#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vmeander/diagram.hpp"

using namespace vmeander;

namespace {
PlanarDiagram realize(const char* code) { return from_gauss(parse_gauss(code)); }
}  // namespace

TEST_CASE("the circle") {
  const PlanarDiagram d;
  CHECK(d.empty());
  CHECK(d.faces().size() == 2);
  CHECK(d.genus() == 0);
  CHECK(is_strong_meander(d));
  CHECK(to_gauss(d).empty());
}

TEST_CASE("classical realizations are planar and keep the code") {
  std::mt19937_64 rng(8);
  int planar = 0;
  for (int i = 0; i < 400 && planar < 60; ++i) {
    const GaussCode c = oracle::random_code(1 + static_cast<int>(rng() % 7), rng);
    if (carter_genus(c) != 0) continue;
    ++planar;
    const PlanarDiagram d = from_gauss(c);
    CAPTURE(serialize_gauss(c));
    CHECK(d.virtual_count() == 0);
    CHECK(d.genus() == 0);
    // Euler: V - E + F = 2 with E = 2V
    CHECK(static_cast<int>(d.faces().size()) == d.vertex_count() + 2);
    CHECK(to_gauss(d) == c.relabeled());
  }
  CHECK(planar > 10);
}

TEST_CASE("virtual realizations keep the classical code") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 7), rng);
    const PlanarDiagram d = from_gauss(c);
    CAPTURE(serialize_gauss(c));
    CHECK(d.genus() == 0);
    CHECK(d.classical_count() == c.chord_count());
    CHECK(to_gauss(d) == c.relabeled());
    if (carter_genus(c) > 0) CHECK(d.virtual_count() > 0);
  }
}

TEST_CASE("virtual trefoil realization") {
  const PlanarDiagram d = realize("O1-O2-U1-U2-");
  CHECK(d.classical_count() == 2);
  CHECK(d.virtual_count() >= 1);
  CHECK(is_semimeander(d));
}

TEST_CASE("structured format round-trips") {
  for (const char* c : {"O1+U2+O3+U1+O2+U3+", "O1-O2-U1-U2-", "O1-U2+O3-U4+O2+U1-O4+U3-"}) {
    const PlanarDiagram d = realize(c);
    const std::string text = serialize_diagram(d);
    CHECK(looks_like_diagram(text));
    const PlanarDiagram back = parse_diagram(text);
    CHECK(back == d);
    CHECK(serialize_diagram(back) == text);
  }
  CHECK_FALSE(looks_like_diagram("O1+U1+"));
  CHECK_THROWS_AS(parse_diagram("diagram vertices=1 basepoint=0 outer=0\n"), DiagramError);
}

TEST_CASE("a non-planar traversal is rejected") {
  // the virtual trefoil's crossings drawn without virtual crossings
  std::vector<Visit> v = {{0, VisitKind::Over, false}, {1, VisitKind::Over, false},
                          {0, VisitKind::Under, true}, {1, VisitKind::Under, true}};
  CHECK_THROWS_AS(PlanarDiagram::from_visits(v), DiagramError);
}

TEST_CASE("semimeander predicates agree with the brute-force oracle") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const PlanarDiagram d = from_gauss(oracle::random_code(static_cast<int>(rng() % 7), rng));
    CAPTURE(serialize_diagram(d));
    CHECK(is_semimeander(d) == oracle::two_arc(d, true, false));
    CHECK(is_strong_semimeander(d) == oracle::two_arc(d, false, false));
    CHECK(is_meander(d) == oracle::two_arc(d, true, true));
    CHECK(is_strong_meander(d) == oracle::two_arc(d, false, true));
    if (is_strong_meander(d)) CHECK(is_strong_semimeander(d));
    if (is_strong_semimeander(d)) CHECK(is_semimeander(d));
  }
}

TEST_CASE("trefoil standard map") {
  const PlanarDiagram d = realize("O1+U2+O3+U1+O2+U3+");
  CHECK(is_strong_semimeander(d));
  CHECK(is_strong_meander(d));
  const TwoArcWitness w = strong_meander_witness(d);
  REQUIRE(w.holds);
  CHECK(d.edge_on_outer_face(w.first_cut));
  CHECK(d.edge_on_outer_face(w.second_cut));
}

TEST_CASE("arc decompositions") {
  const PlanarDiagram d = realize("O1+U2+O3+U1+O2+U3+");
  const ArcDecomposition dec = decompose_edges(d, {2, 5});
  CHECK(dec.arc_count() == 2);
  CHECK(dec.per_arc_classical_self[0] == 0);
  CHECK(dec.per_arc_classical_self[1] == 0);
  CHECK(dec.classical_between[0][1] == 3);
  CHECK(dec.classical_on(0) + dec.classical_on(1) == 6);
  CHECK_THROWS_AS(decompose_edges(d, {9}), DiagramError);
}

TEST_CASE("longest simple arc") {
  const PlanarDiagram d = realize("O1+U2+O3+U1+O2+U3+");
  CHECK(longest_simple_arc(d).visits.size() == 3);
  const PlanarDiagram k = realize("O1+U1+");
  CHECK(longest_simple_arc(k).visits.size() == 1);
}

TEST_CASE("outer face changes keep the map") {
  const PlanarDiagram d = realize("O1-U2+O3-U4+O2+U1-O4+U3-");
  for (int f = 0; f < static_cast<int>(d.faces().size()); ++f) {
    const PlanarDiagram e = d.with_outer_face(f);
    CHECK(e.outer_face() == f);
    CHECK(e.visits() == d.visits());
  }
  CHECK(d.canonical().canonical() == d.canonical());
}
