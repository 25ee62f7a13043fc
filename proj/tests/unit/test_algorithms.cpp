#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vmeander/algorithms.hpp"

using namespace vmeander;

namespace {

PlanarDiagram realize(const char* code) { return from_gauss(parse_gauss(code)); }

std::string fpoly(const PlanarDiagram& d) { return oracle::text(oracle::f_polynomial(to_gauss(d))); }

bool replays(const SemimeanderResult& r) {
  const ParsedTrace p = parse_trace(serialize_trace(r.trace, r.diagram));
  if (!p.initial || !p.complete()) return false;
  MoveTrace t;
  t.initial = *p.initial;
  t.steps = p.steps;
  return serialize_diagram(replay(t)) == p.final_text;
}

// Cuts at the gaps of a minimal split, plus random extra cuts up to `arcs`.
std::vector<std::size_t> split_edges(const PlanarDiagram& d, std::size_t arcs, std::mt19937_64& rng) {
  const auto pos = gauss_positions(d);
  const KArcReport k = min_arc_number(to_gauss(d));
  std::vector<std::size_t> visit_of(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (pos[i] >= 0) visit_of[pos[i]] = i;
  std::vector<std::size_t> cuts;
  for (std::size_t g : k.witness.cuts) cuts.push_back(d.prev(visit_of[g]));
  while (cuts.size() < arcs) {
    const std::size_t e = rng() % d.visit_count();
    if (std::find(cuts.begin(), cuts.end(), e) == cuts.end()) cuts.push_back(e);
  }
  return cuts;
}

}  // namespace

TEST_CASE("exact square-root bound") {
  CHECK(within_sqrt3_power(5, 3));   // 25 <= 27
  CHECK_FALSE(within_sqrt3_power(6, 3));
  CHECK(within_sqrt3_power(9, 4));
  CHECK_FALSE(within_sqrt3_power(10, 4));
  CHECK(within_sqrt3_power(729, 12));
  CHECK_FALSE(within_sqrt3_power(730, 12));
  CHECK(within_sqrt3_power(0, 0));
}

TEST_CASE("semimeanderize fixes strong semimeanders") {
  const PlanarDiagram t = realize("O1+U2+O3+U1+O2+U3+");
  const SemimeanderResult r = semimeanderize(t);
  CHECK(r.identity);
  CHECK(r.trace.steps.empty());
  CHECK(r.diagram == t);
  CHECK(semimeanderize(PlanarDiagram()).identity);
}

TEST_CASE("semimeanderize on diagrams that are not semimeanders") {
  std::mt19937_64 rng(31);
  int hard = 0;
  for (int i = 0; i < 400 && hard < 25; ++i) {
    const PlanarDiagram d = from_gauss(oracle::random_code(5, rng));
    if (oracle::two_arc(d, true, false)) continue;
    ++hard;
    const SemimeanderResult r = semimeanderize(d);
    CAPTURE(serialize_diagram(d));
    CHECK_FALSE(r.identity);
    CHECK(oracle::two_arc(r.diagram, false, false));
    CHECK(r.diagram.genus() == 0);
    CHECK(fpoly(r.diagram) == fpoly(d));
    CHECK(oracle::writhe(to_gauss(r.diagram)) == oracle::writhe(to_gauss(d)));
    CHECK(oracle::odd_writhe(to_gauss(r.diagram)) == oracle::odd_writhe(to_gauss(d)));
    CHECK(replays(r));
    const ArcDecomposition& c = r.cuts;
    REQUIRE(c.arc_count() == 2);
    CHECK(c.per_arc_any_self[0] + c.per_arc_any_self[1] == 0);
  }
  CHECK(hard > 5);
}

TEST_CASE("bounded construction") {
  CHECK_THROWS_AS(semimeanderize_bounded(realize("O1+U1+")), AlgorithmError);
  const SemimeanderResult t = semimeanderize_bounded(realize("O1+U2+O3+U1+O2+U3+"));
  CHECK(t.identity);
  CHECK(t.within_bound);
  CHECK(*t.bound_value == doctest::Approx(std::pow(3.0, 1.5)));

  // (s1 s2^-1)^4 closes to a reduced 8-crossing diagram
  const GaussCode c = parse_gauss("O1+U2-O3-U4+O5+U6-O2-U7+O4+U8-O6-U1+O7+U3-O8-U5+");
  REQUIRE(carter_genus(c) == 0);
  REQUIRE(is_reduced(c));
  const PlanarDiagram d = from_gauss(c);
  const SemimeanderResult r = semimeanderize_bounded(d);
  CHECK(r.within_bound);
  CHECK(r.output_classical * r.output_classical <= 6561);  // 3^8
  CHECK(oracle::two_arc(r.diagram, false, false));
  CHECK(fpoly(r.diagram) == fpoly(d));
  CHECK(replays(r));
}

TEST_CASE("meanderize") {
  const PlanarDiagram t = realize("O1+U2+O3+U1+O2+U3+");
  CHECK(meanderize(t).identity);
  CHECK(meanderize(PlanarDiagram()).identity);

  std::mt19937_64 rng(41);
  int moved = 0;
  for (int i = 0; i < 150; ++i) {
    const PlanarDiagram d = from_gauss(oracle::random_code(static_cast<int>(rng() % 7), rng));
    const SemimeanderResult r = meanderize(d);
    CAPTURE(serialize_diagram(d));
    CHECK(oracle::two_arc(r.diagram, false, true));
    CHECK(r.output_classical == r.semimeander_classical);
    CHECK(fpoly(r.diagram) == fpoly(d));
    CHECK(replays(r));
    // strong semimeanders with an enclosed cut only gain virtual crossings
    if (oracle::two_arc(d, false, false) && !r.identity) {
      CHECK(r.output_classical == d.classical_count());
      ++moved;
    }
  }
  CHECK(moved > 0);
}

TEST_CASE("merging arcs") {
  std::mt19937_64 rng(51);
  int merged = 0;
  for (int i = 0; i < 300 && merged < 80; ++i) {
    const PlanarDiagram d = from_gauss(oracle::random_code(2 + static_cast<int>(rng() % 6), rng)).canonical();
    const ArcDecomposition dec = decompose_edges(d, split_edges(d, 3 + rng() % 2, rng));
    bool clean = true;
    for (int x : dec.per_arc_classical_self) clean = clean && x == 0;
    if (!clean) continue;
    const MergeResult m = merge_arcs(d, dec);
    CAPTURE(serialize_diagram(d));
    ++merged;
    CHECK(m.to_split.arc_count() == dec.arc_count() - 1);
    for (int x : m.to_split.per_arc_classical_self) CHECK(x == 0);
    CHECK(m.increase == m.diagram.classical_count() - d.classical_count());
    CHECK(m.increase <= m.pair_bound());
    CHECK(m.within_square_bound());
    CHECK(fpoly(m.diagram) == fpoly(d));
    if (m.m == 0) {
      CHECK(m.increase == 0);
    }
  }
  CHECK(merged > 40);
}

TEST_CASE("k-arc upper bounds") {
  const KArcBounds e = karc_upper_bounds(parse_gauss(""), 2, 100);
  REQUIRE(e.bounds.size() == 2);
  CHECK(e.bounds[0].best == 0);
  CHECK(e.bounds[1].best == 0);
  const KArcBounds t = karc_upper_bounds(parse_gauss("O1+U2+O3+U1+O2+U3+"), 3, 2000);
  CHECK_FALSE(t.bounds[0].best.has_value());
  CHECK(t.bounds[1].best == 3);
  CHECK(t.bounds[2].best <= 3);
  CHECK_THROWS(karc_upper_bounds(parse_gauss(""), 0, 10));
}
