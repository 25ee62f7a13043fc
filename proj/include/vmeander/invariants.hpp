#pragma once

// Virtual knot invariants computed from Gauss codes. They serve as the
// knot-type preservation oracle for every diagram transformation.

#include <optional>
#include <stdexcept>

#include "vmeander/gauss.hpp"
#include "vmeander/laurent.hpp"

namespace vmeander {

inline constexpr int kDefaultFPolyCap = 14;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvariantReport {
  int writhe = 0;
  int odd_writhe = 0;
  LaurentPoly affine_index;
  std::optional<LaurentPoly> f_poly;  // absent when the chord count exceeds the cap

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

int writhe(const GaussCode& code);
int odd_writhe(const GaussCode& code);

/// Index of a chord: signed count of the chords crossing it, each weighted
/// by the direction it crosses (under endpoint between over and under of
/// `chord` counts +sign, over endpoint counts -sign).
int chord_index(const GaussCode& code, const Chord& chord);

/// Sum over chords of sign * (t^index - 1); zero on classical knots.
LaurentPoly affine_index_polynomial(const GaussCode& code);

/// Writhe-normalised Kauffman bracket in A; virtual crossings are
/// transparent. Exponential in the chord count, hence the cap.
LaurentPoly f_polynomial(const GaussCode& code, int cap = kDefaultFPolyCap);

/// Bracket <D> before writhe normalisation.
LaurentPoly kauffman_bracket(const GaussCode& code, int cap = kDefaultFPolyCap);

InvariantReport invariant_report(const GaussCode& code, int cap = kDefaultFPolyCap);

/// Same bracket by a frontier dynamic program: crossings are absorbed one at
/// a time and states are the pairings of dangling arc ends. Exact, and
/// practical far beyond the state-sum cap when the frontier stays narrow.
/// Throws CapExceeded when the frontier grows past `max_frontier` ends.
LaurentPoly kauffman_bracket_frontier(const GaussCode& code, int max_frontier = 40);
LaurentPoly f_polynomial_frontier(const GaussCode& code, int max_frontier = 40);

/// invariant_report, falling back to the frontier method above the cap.
InvariantReport invariant_report_full(const GaussCode& code, int cap = kDefaultFPolyCap);

/// Cap used by the command line tool: VMEANDER_FPOLY_CAP when set.
int fpoly_cap_from_env();

}  // namespace vmeander
