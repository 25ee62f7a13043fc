#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vmeander/gauss.hpp"

using namespace vmeander;

namespace {
const char* kTrefoil = "O1+U2+O3+U1+O2+U3+";
const char* kVirtualTrefoil = "O1-O2-U1-U2-";
}  // namespace

TEST_CASE("gauss codes round-trip through text") {
  for (const char* t : {"", "O1+U1+", kTrefoil, kVirtualTrefoil, "U7-O3+U3+O7-"}) {
    CHECK(serialize_gauss(parse_gauss(t)) == t);
  }
  CHECK(parse_gauss("  O1+ U2+O3+U1+O2+U3+ \n") == parse_gauss(kTrefoil));
}

TEST_CASE("malformed codes are rejected") {
  CHECK_THROWS_AS(parse_gauss("O1+"), GaussError);
  CHECK_THROWS_AS(parse_gauss("O1+O1+"), GaussError);
  CHECK_THROWS_AS(parse_gauss("O1+U1-"), GaussError);
  CHECK_THROWS_AS(parse_gauss("X1+U1+"), GaussError);
  CHECK_THROWS_AS(parse_gauss("O+U1+"), GaussError);
  CHECK_THROWS_AS(parse_gauss("O1U1"), GaussError);
}

TEST_CASE("relabel, mirror and reverse") {
  const GaussCode c = parse_gauss("U7-O3+U3+O7-");
  CHECK(serialize_gauss(c.relabeled()) == "U1-O2+U2+O1-");
  CHECK(serialize_gauss(parse_gauss(kTrefoil).mirrored()) == "U1-O2-U3-O1-U2-O3-");
  CHECK(parse_gauss(kTrefoil).reversed().reversed() == parse_gauss(kTrefoil));
  CHECK(parse_gauss(kTrefoil).chord_count() == 3);
}

TEST_CASE("normalize is invariant under rotation") {
  const GaussCode c = parse_gauss(kTrefoil);
  const GaussCode n = normalize(c).code;
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(normalize(c.rotated(k)).code == n);
}

TEST_CASE("minimal arc numbers on small examples") {
  CHECK(min_arc_number(parse_gauss("")).min_arcs == 1);
  CHECK(min_arc_number(parse_gauss("O1+U1+")).min_arcs == 2);
  CHECK(min_arc_number(parse_gauss(kTrefoil)).min_arcs == 2);
  CHECK(brute_min_arc_number(parse_gauss(kTrefoil)) == 2);
  // two chords nested twice: O1 O2 U2 U1 needs a cut inside each pair
  CHECK(min_arc_number(parse_gauss("O1+O2+U2+U1+")).min_arcs == 2);
}

TEST_CASE("min_arc_number agrees with the brute-force oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 8), rng);
    const KArcReport k = min_arc_number(c);
    CAPTURE(serialize_gauss(c));
    CHECK(k.min_arcs == oracle::min_arcs(c));
    CHECK(oracle::valid_split(c, k.witness.cuts));
    CHECK(is_k_arc_split(c, k.witness));
    if (c.chord_count() <= 6) CHECK(brute_min_arc_number(c) == k.min_arcs);
  }
}

TEST_CASE("is_k_arc_split matches the oracle on all cut sets") {
  const GaussCode c = parse_gauss("O1-U2+O3-U4+O2+U1-O4+U3-");
  const std::size_t n = c.size();
  for (std::uint64_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) cuts.push_back(i);
    CHECK(is_k_arc_split(c, ArcSplit{cuts}) == oracle::valid_split(c, cuts));
  }
  CHECK_THROWS_AS(is_k_arc_split(c, ArcSplit{{3, 1}}), GaussError);
  CHECK_THROWS_AS(is_k_arc_split(c, ArcSplit{}), GaussError);
}

TEST_CASE("deleting a chord keeps every valid split valid") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 40; ++it) {
    const GaussCode c = oracle::random_code(1 + static_cast<int>(rng() % 5), rng);
    const std::size_t n = c.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<std::size_t> cuts;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) cuts.push_back(i);
      if (!oracle::valid_split(c, cuts)) continue;
      for (const Chord& ch : c.chords()) {
        const GaussCode smaller = delete_chord(c, ch.id);
        const ArcSplit s = adjust_split(ArcSplit{cuts}, {ch.pos_over, ch.pos_under}, n);
        CHECK(oracle::valid_split(smaller, s.cuts));
      }
    }
  }
  CHECK_THROWS_AS(delete_chord(parse_gauss(kTrefoil), 9), GaussError);
}

TEST_CASE("carter genus") {
  CHECK(carter_genus(parse_gauss("")) == 0);
  CHECK(carter_genus(parse_gauss(kTrefoil)) == 0);
  CHECK(carter_genus(parse_gauss(kVirtualTrefoil)) == 1);
  CHECK(carter_genus(parse_gauss(kTrefoil).mirrored()) == 0);
}

TEST_CASE("chord parity and the parity projection") {
  const GaussCode vt = parse_gauss(kVirtualTrefoil);
  CHECK(chord_parity(vt, 1) == Parity::Odd);
  CHECK(parity_projection(vt).empty());
  CHECK(parity_projection(parse_gauss(kTrefoil)) == parse_gauss(kTrefoil));
  CHECK(parity_projection(parse_gauss("")).empty());

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 8), rng);
    const GaussCode p = parity_projection(c);
    CHECK(p.chord_count() <= c.chord_count());
    CHECK(min_arc_number(p).min_arcs <= min_arc_number(c).min_arcs);
    for (const Chord& ch : p.chords()) CHECK(chord_parity(p, ch.id) == Parity::Even);
    if (carter_genus(c) == 0) CHECK(p == c);
  }
}

TEST_CASE("reduction removes R1 and R2 patterns") {
  CHECK_FALSE(is_reduced(parse_gauss("O1+U1+")));
  CHECK(reduce(parse_gauss("O1+U1+")).empty());
  CHECK_FALSE(is_reduced(parse_gauss("O1+O2-U1+U2-")));
  CHECK(is_reduced(parse_gauss(kTrefoil)));
  CHECK(is_reduced(reduce(parse_gauss("O1+U2+O3+U1+O2+O4-U4-U3+"))));
}
