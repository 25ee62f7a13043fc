#pragma once

// Constructive procedures: semimeander and meander diagrams, the bounded
// semimeander construction, and merging k+1 arcs into k.

#include <optional>
#include <stdexcept>
#include <vector>

#include "vmeander/diagram.hpp"
#include "vmeander/gauss.hpp"
#include "vmeander/moves.hpp"

namespace vmeander {

class AlgorithmError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One pulling round: off-arc crossings before and after, classical
/// crossings before and after, and the classical crossings on the arc.
struct PullRound {
  int off_before = 0;
  int off_after = 0;
  int classical_before = 0;
  int classical_after = 0;
  int classical_on_arc = 0;
  int pulls = 0;
};

struct SemimeanderResult {
  PlanarDiagram diagram;
  MoveTrace trace;
  ArcDecomposition cuts;
  int input_classical = 0;
  int output_classical = 0;
  int input_crossings = 0;
  int output_crossings = 0;
  /// sqrt(3)^n for the bounded construction, n the input crossing count.
  std::optional<double> bound_value;
  bool within_bound = true;
  bool identity = false;
  /// A small reduced input that was not already a strong semimeander.
  bool small_counterexample = false;
  /// Classical crossings after the semimeander stage (meanderize only).
  int semimeander_classical = 0;
  std::vector<PullRound> rounds;
};

/// True iff c <= sqrt(3)^n, decided in integers.
bool within_sqrt3_power(long long c, int n);

SemimeanderResult semimeanderize(const PlanarDiagram& d);

/// Requires a reduced input (throws AlgorithmError otherwise).
SemimeanderResult semimeanderize_bounded(const PlanarDiagram& d);

/// Strong meander diagram: the semimeander stage followed by detours that
/// move both cut points to the outer face.
SemimeanderResult meanderize(const PlanarDiagram& d);

struct MergeResult {
  PlanarDiagram diagram;
  MoveTrace trace;
  ArcDecomposition from_split;
  ArcDecomposition to_split;
  int chosen_arc = 0;    // J, index into from_split
  bool toward_previous = false;  // J merged into its predecessor
  int m = 0;
  int n_min = 0;
  int increase = 0;
  int input_classical = 0;

  /// 2 m (nMin - m)
  long long pair_bound() const { return 2LL * m * (n_min - m); }
  /// increase * (k+1)^2 <= 2 c^2
  bool within_square_bound() const;
};

/// Merges one arc of `dec` (k+1 >= 3 arcs, no classical self-crossings) into
/// a neighbour.
MergeResult merge_arcs(const PlanarDiagram& d, const ArcDecomposition& dec);

struct KArcBound {
  int k = 1;
  std::optional<int> best;  // lowest classical count found, if any
  std::optional<int> raw;   // before the monotone pass
};

struct KArcBounds {
  std::vector<KArcBound> bounds;  // k = 1..kmax
  bool partial = false;           // budget ran out
  long explored = 0;
};

/// Upper bounds on the classical crossing count of k-arc diagrams found by a
/// bounded breadth-first search over moves. Requires at most 10 chords.
KArcBounds karc_upper_bounds(const GaussCode& code, int kmax, long budget);

}  // namespace vmeander
