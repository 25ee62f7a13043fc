#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "vmeander/invariants.hpp"
#include "vmeander/laurent.hpp"

using namespace vmeander;

TEST_CASE("laurent polynomial text and arithmetic") {
  const LaurentPoly p = LaurentPoly::parse("-4:1 0:-2 3:5");
  CHECK(p.to_string() == "-4:1 0:-2 3:5");
  CHECK(LaurentPoly().to_string() == "0");
  CHECK(LaurentPoly::parse("0").is_zero());
  CHECK((p - p).is_zero());
  CHECK((LaurentPoly::monomial(2) * LaurentPoly::monomial(-2)).to_string() == "0:1");
  CHECK(p.inverted().to_string() == "-3:5 0:-2 4:1");
  CHECK(LaurentPoly::parse("1:1 0:1").pow(2).to_string() == "0:1 1:2 2:1");
}

TEST_CASE("known values") {
  CHECK(f_polynomial(parse_gauss("")).to_string() == "0:1");
  CHECK(odd_writhe(parse_gauss("O1-O2-U1-U2-")) == -2);
  CHECK(odd_writhe(parse_gauss("O1+O2+U1+U2+")) == 2);
  CHECK(writhe(parse_gauss("O1+U2+O3+U1+O2+U3+")) == 3);
  // right-handed trefoil: Jones t + t^3 - t^4 at t = A^-4
  CHECK(f_polynomial(parse_gauss("O1+U2+O3+U1+O2+U3+")).to_string() == "-16:-1 -12:1 -4:1");
  CHECK(affine_index_polynomial(parse_gauss("O1+U2+O3+U1+O2+U3+")).is_zero());
  CHECK_FALSE(affine_index_polynomial(parse_gauss("O1-O2-U1-U2-")).is_zero());
}

TEST_CASE("invariants agree with the state-sum oracle") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 150; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 7), rng);
    CAPTURE(serialize_gauss(c));
    CHECK(writhe(c) == oracle::writhe(c));
    CHECK(odd_writhe(c) == oracle::odd_writhe(c));
    CHECK(kauffman_bracket(c).to_string() == oracle::text(oracle::bracket(c)));
    CHECK(f_polynomial(c).to_string() == oracle::text(oracle::f_polynomial(c)));
    CHECK(f_polynomial_frontier(c) == f_polynomial(c));
  }
}

TEST_CASE("f-polynomial is unchanged by Reidemeister I and II at the code level") {
  const GaussCode t = parse_gauss("O1+U2+O3+U1+O2+U3+");
  CHECK(f_polynomial(parse_gauss("O1+U2+O3+U1+O2+O4-U4-U3+")) == f_polynomial(t));
  CHECK(f_polynomial(parse_gauss("O1+U2+O3+U1+O4+O5-U4+U5-O2+U3+")) == f_polynomial(t));
}

TEST_CASE("cap handling") {
  std::mt19937_64 rng(2);
  const GaussCode big = oracle::random_code(9, rng);
  CHECK_THROWS_AS(f_polynomial(big, 8), CapExceeded);
  CHECK_FALSE(invariant_report(big, 8).f_poly.has_value());
  REQUIRE(invariant_report_full(big, 8).f_poly.has_value());
  CHECK(*invariant_report_full(big, 8).f_poly == f_polynomial(big, 14));
}
