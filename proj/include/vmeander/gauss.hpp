#pragma once

// Gauss codes of virtual knots and the chord-level combinatorics built on
// them: arc splits, parity, chord deletion, Carter genus and R1/R2 reduction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vmeander {

enum class Passage : std::uint8_t { Over, Under };

enum class Parity : std::uint8_t { Even, Odd };

/// Raised for malformed Gauss code text or records. `position()` is the
/// character offset for syntax errors and the record index otherwise.
class GaussError : public std::invalid_argument {
 public:
  GaussError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct EndpointRecord {
  int crossing = 0;
  Passage passage = Passage::Over;
  int sign = 1;

  friend bool operator==(const EndpointRecord&, const EndpointRecord&) = default;
};

struct Chord {
  int id = 0;
  std::size_t pos_over = 0;
  std::size_t pos_under = 0;
  int sign = 1;

  std::size_t first() const { return pos_over < pos_under ? pos_over : pos_under; }
  std::size_t second() const { return pos_over < pos_under ? pos_under : pos_over; }
};

/// Cut positions on the cyclic record sequence. Gap g sits immediately
/// before record g; gap 0 is also the gap after the last record.
struct ArcSplit {
  std::vector<std::size_t> cuts;

  std::size_t arcs() const { return cuts.size(); }
  friend bool operator==(const ArcSplit&, const ArcSplit&) = default;
};

struct KArcReport {
  int min_arcs = 1;
  ArcSplit witness;
  int classical_crossings = 0;
};

/// A validated signed Gauss code. Every crossing id occurs exactly twice,
/// once over and once under, with equal signs.
class GaussCode {
 public:
  GaussCode() = default;
  explicit GaussCode(std::vector<EndpointRecord> records);

  const std::vector<EndpointRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  int chord_count() const { return static_cast<int>(records_.size() / 2); }
  bool empty() const { return records_.empty(); }

  /// Chords ordered by first occurrence.
  std::vector<Chord> chords() const;
  std::optional<Chord> chord(int id) const;
  /// Index of the record paired with `pos`.
  std::size_t partner(std::size_t pos) const;

  /// Relabels crossings 1..n by first occurrence.
  GaussCode relabeled() const;
  /// Rotation so that record `offset` comes first.
  GaussCode rotated(std::size_t offset) const;
  /// Same knot read backwards (orientation reversal keeps signs).
  GaussCode reversed() const;
  /// Mirror image: passages swapped and signs negated.
  GaussCode mirrored() const;

  friend bool operator==(const GaussCode&, const GaussCode&) = default;

 private:
  std::vector<EndpointRecord> records_;
  std::vector<std::size_t> partner_;
};

struct NormalizedCode {
  GaussCode code;
  std::size_t rotation = 0;  // records were rotated left by this amount
};

GaussCode parse_gauss(std::string_view text);
std::string serialize_gauss(const GaussCode& code);

/// Canonical representative up to rotation and relabelling: each rotation is
/// relabelled by first occurrence and the least serialization wins.
NormalizedCode normalize(const GaussCode& code);

/// Chords `a` and `b` interleave on the circle.
bool interleaved(const Chord& a, const Chord& b);

bool is_k_arc_split(const GaussCode& code, const ArcSplit& split);
KArcReport min_arc_number(const GaussCode& code);
/// Exhaustive search over cut subsets; limited to 10 chords.
int brute_min_arc_number(const GaussCode& code);

GaussCode delete_chord(const GaussCode& code, int id);
/// Reindexes the cuts of `split` after the records at `removed` are erased
/// from a code of `old_size` records. Collapsed cuts are merged.
ArcSplit adjust_split(const ArcSplit& split, std::vector<std::size_t> removed,
                      std::size_t old_size);

Parity chord_parity(const GaussCode& code, int id);
GaussCode parity_projection(const GaussCode& code);

/// Genus of the oriented surface carrying the signed code (rotation at each
/// crossing is read off from the sign and passages).
int carter_genus(const GaussCode& code);

/// Greedy removal of Gauss-level R1 and R2 patterns.
GaussCode reduce(const GaussCode& code);
/// True when no R1 or R2 pattern is present.
bool is_reduced(const GaussCode& code);

}  // namespace vmeander
