#include "vmeander/gauss.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace vmeander {

namespace {

// Cyclic gap interval: gaps start, start+1, ..., start+length-1 (mod size).
struct GapInterval {
  std::size_t start;
  std::size_t length;
};

bool contains(const GapInterval& iv, std::size_t gap, std::size_t size) {
  return (gap + size - iv.start) % size < iv.length;
}

// A chord is separated iff both circle arcs between its endpoints carry a cut.
std::vector<GapInterval> separation_intervals(const GaussCode& code) {
  const std::size_t size = code.size();
  std::vector<GapInterval> out;
  for (const Chord& c : code.chords()) {
    const std::size_t p = c.first();
    const std::size_t q = c.second();
    out.push_back({(p + 1) % size, q - p});
    out.push_back({(q + 1) % size, size - (q - p)});
  }
  return out;
}

}  // namespace

GaussCode::GaussCode(std::vector<EndpointRecord> records) : records_(std::move(records)) {
  if (records_.size() % 2 != 0) {
    throw GaussError("odd number of records", records_.size());
  }
  std::map<int, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.sign != 1 && r.sign != -1) {
      throw GaussError("sign must be +1 or -1", i);
    }
    where[r.crossing].push_back(i);
  }
  partner_.assign(records_.size(), 0);
  for (const auto& [id, pos] : where) {
    if (pos.size() != 2) {
      throw GaussError("crossing " + std::to_string(id) + " appears " +
                           std::to_string(pos.size()) + " time(s)",
                       pos.front());
    }
    const auto& a = records_[pos[0]];
    const auto& b = records_[pos[1]];
    if (a.passage == b.passage) {
      throw GaussError("crossing " + std::to_string(id) + " needs one over and one under passage",
                       pos[1]);
    }
    if (a.sign != b.sign) {
      throw GaussError("crossing " + std::to_string(id) + " has mismatched signs", pos[1]);
    }
    partner_[pos[0]] = pos[1];
    partner_[pos[1]] = pos[0];
  }
}

std::vector<Chord> GaussCode::chords() const {
  std::vector<Chord> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const std::size_t j = partner_[i];
    if (j < i) continue;
    const auto& r = records_[i];
    Chord c;
    c.id = r.crossing;
    c.sign = r.sign;
    c.pos_over = r.passage == Passage::Over ? i : j;
    c.pos_under = r.passage == Passage::Over ? j : i;
    out.push_back(c);
  }
  return out;
}

std::optional<Chord> GaussCode::chord(int id) const {
  for (const Chord& c : chords()) {
    if (c.id == id) return c;
  }
  return std::nullopt;
}

std::size_t GaussCode::partner(std::size_t pos) const { return partner_.at(pos); }

GaussCode GaussCode::relabeled() const {
  std::map<int, int> label;
  std::vector<EndpointRecord> out = records_;
  for (auto& r : out) {
    auto [it, inserted] = label.try_emplace(r.crossing, static_cast<int>(label.size()) + 1);
    r.crossing = it->second;
  }
  return GaussCode(std::move(out));
}

GaussCode GaussCode::rotated(std::size_t offset) const {
  if (records_.empty()) return *this;
  std::vector<EndpointRecord> out(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    out[i] = records_[(i + offset) % records_.size()];
  }
  return GaussCode(std::move(out));
}

GaussCode GaussCode::reversed() const {
  std::vector<EndpointRecord> out(records_.rbegin(), records_.rend());
  return GaussCode(std::move(out));
}

GaussCode GaussCode::mirrored() const {
  std::vector<EndpointRecord> out = records_;
  for (auto& r : out) {
    r.passage = r.passage == Passage::Over ? Passage::Under : Passage::Over;
    r.sign = -r.sign;
  }
  return GaussCode(std::move(out));
}

GaussCode parse_gauss(std::string_view text) {
  std::vector<EndpointRecord> records;
  std::vector<std::size_t> offsets;
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == '\r')) {
      ++i;
    }
  };
  skip();
  while (i < text.size()) {
    const std::size_t start = i;
    EndpointRecord r;
    const char p = text[i];
    if (p == 'O' || p == 'o') {
      r.passage = Passage::Over;
    } else if (p == 'U' || p == 'u') {
      r.passage = Passage::Under;
    } else {
      throw GaussError(std::string("expected O or U, found '") + p + "'", i);
    }
    ++i;
    if (i >= text.size() || text[i] < '0' || text[i] > '9') {
      throw GaussError("expected crossing number", i);
    }
    long id = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      id = id * 10 + (text[i] - '0');
      if (id > 1'000'000'000L) throw GaussError("crossing number too large", start);
      ++i;
    }
    r.crossing = static_cast<int>(id);
    if (i < text.size() && text[i] == '+') {
      r.sign = 1;
      ++i;
    } else if (i < text.size() && text[i] == '-') {
      r.sign = -1;
      ++i;
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      r.sign = -1;
      i += 3;
    } else {
      throw GaussError("expected sign '+' or '-'", i);
    }
    records.push_back(r);
    offsets.push_back(start);
    skip();
  }
  try {
    return GaussCode(std::move(records));
  } catch (const GaussError& e) {
    const std::size_t at = e.position() < offsets.size() ? offsets[e.position()] : text.size();
    throw GaussError(e.what(), at);
  }
}

std::string serialize_gauss(const GaussCode& code) {
  std::string out;
  for (const auto& r : code.records()) {
    out += r.passage == Passage::Over ? 'O' : 'U';
    out += std::to_string(r.crossing);
    out += r.sign > 0 ? '+' : '-';
  }
  return out;
}

NormalizedCode normalize(const GaussCode& code) {
  NormalizedCode best{code.relabeled(), 0};
  std::string best_text = serialize_gauss(best.code);
  for (std::size_t k = 1; k < code.size(); ++k) {
    GaussCode candidate = code.rotated(k).relabeled();
    std::string text = serialize_gauss(candidate);
    if (text < best_text) {
      best_text = std::move(text);
      best = {std::move(candidate), k};
    }
  }
  return best;
}

bool interleaved(const Chord& a, const Chord& b) {
  const auto inside = [&](std::size_t x) { return a.first() < x && x < a.second(); };
  return inside(b.first()) != inside(b.second());
}

bool is_k_arc_split(const GaussCode& code, const ArcSplit& split) {
  const std::size_t size = code.size();
  if (split.cuts.empty()) throw GaussError("an arc split needs at least one cut", 0);
  for (std::size_t i = 0; i < split.cuts.size(); ++i) {
    const std::size_t c = split.cuts[i];
    if ((size == 0 && c != 0) || (size > 0 && c >= size)) {
      throw GaussError("cut " + std::to_string(c) + " out of range", i);
    }
    if (i > 0 && c <= split.cuts[i - 1]) {
      throw GaussError("cuts must be strictly increasing", i);
    }
  }
  if (size == 0) return true;
  for (const GapInterval& iv : separation_intervals(code)) {
    const bool hit = std::any_of(split.cuts.begin(), split.cuts.end(),
                                 [&](std::size_t g) { return contains(iv, g, size); });
    if (!hit) return false;
  }
  return true;
}

KArcReport min_arc_number(const GaussCode& code) {
  KArcReport report;
  report.classical_crossings = code.chord_count();
  const std::size_t size = code.size();
  if (size == 0) {
    report.min_arcs = 1;
    report.witness.cuts = {0};
    return report;
  }
  const auto intervals = separation_intervals(code);
  std::vector<std::size_t> best;
  for (std::size_t g0 = 0; g0 < size; ++g0) {
    // Unroll the circle at g0; intervals avoiding g0 become linear ranges of
    // offsets and are stabbed greedily at their right ends.
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (const auto& iv : intervals) {
      if (contains(iv, g0, size)) continue;
      const std::size_t lo = (iv.start + size - g0) % size;
      ranges.emplace_back(lo + iv.length - 1, lo);
    }
    std::sort(ranges.begin(), ranges.end());
    std::vector<std::size_t> cuts{g0};
    std::size_t last = 0;  // offset 0 is g0 itself
    for (const auto& [hi, lo] : ranges) {
      if (lo <= last) continue;
      cuts.push_back((g0 + hi) % size);
      last = hi;
    }
    if (best.empty() || cuts.size() < best.size()) best = std::move(cuts);
  }
  std::sort(best.begin(), best.end());
  report.min_arcs = static_cast<int>(best.size());
  report.witness.cuts = std::move(best);
  return report;
}

int brute_min_arc_number(const GaussCode& code) {
  if (code.chord_count() > 10) {
    throw GaussError("brute force limited to 10 chords", 0);
  }
  const std::size_t size = code.size();
  if (size == 0) return 1;
  for (std::size_t k = 1; k <= size; ++k) {
    std::vector<bool> pick(size, false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
    do {
      ArcSplit split;
      for (std::size_t g = 0; g < size; ++g) {
        if (pick[g]) split.cuts.push_back(g);
      }
      if (is_k_arc_split(code, split)) return static_cast<int>(k);
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return static_cast<int>(size);
}

GaussCode delete_chord(const GaussCode& code, int id) {
  std::vector<EndpointRecord> out;
  bool found = false;
  for (const auto& r : code.records()) {
    if (r.crossing == id) {
      found = true;
      continue;
    }
    out.push_back(r);
  }
  if (!found) throw GaussError("unknown crossing " + std::to_string(id), 0);
  return GaussCode(std::move(out));
}

ArcSplit adjust_split(const ArcSplit& split, std::vector<std::size_t> removed,
                      std::size_t old_size) {
  std::sort(removed.begin(), removed.end());
  const std::size_t new_size = old_size - removed.size();
  ArcSplit out;
  for (std::size_t g : split.cuts) {
    const auto before = static_cast<std::size_t>(
        std::lower_bound(removed.begin(), removed.end(), g) - removed.begin());
    std::size_t mapped = g - before;
    if (new_size == 0 || mapped >= new_size) mapped = 0;
    out.cuts.push_back(mapped);
  }
  std::sort(out.cuts.begin(), out.cuts.end());
  out.cuts.erase(std::unique(out.cuts.begin(), out.cuts.end()), out.cuts.end());
  return out;
}

Parity chord_parity(const GaussCode& code, int id) {
  const auto target = code.chord(id);
  if (!target) throw GaussError("unknown crossing " + std::to_string(id), 0);
  int count = 0;
  for (const Chord& c : code.chords()) {
    if (c.id != id && interleaved(*target, c)) ++count;
  }
  return count % 2 == 0 ? Parity::Even : Parity::Odd;
}

GaussCode parity_projection(const GaussCode& code) {
  GaussCode current = code;
  for (;;) {
    std::vector<int> odd;
    for (const Chord& c : current.chords()) {
      if (chord_parity(current, c.id) == Parity::Odd) odd.push_back(c.id);
    }
    if (odd.empty()) return current;
    std::vector<EndpointRecord> kept;
    for (const auto& r : current.records()) {
      if (std::find(odd.begin(), odd.end(), r.crossing) == odd.end()) kept.push_back(r);
    }
    current = GaussCode(std::move(kept));
  }
}

int carter_genus(const GaussCode& code) {
  const std::size_t size = code.size();
  if (size == 0) return 0;
  // Darts: 2i enters record i, 2i+1 leaves it. The rotation at a crossing is
  // fixed by which strand crosses the other from right to left; for a
  // classical crossing that is the under strand iff the sign is positive.
  std::vector<std::size_t> alpha(2 * size), sigma_inv(2 * size);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t next = (i + 1) % size;
    alpha[2 * i + 1] = 2 * next;
    alpha[2 * next] = 2 * i + 1;
  }
  for (const Chord& c : code.chords()) {
    const std::size_t a = c.first();
    const std::size_t b = c.second();
    const bool b_is_under = b == c.pos_under;
    const bool b_right_to_left = b_is_under == (c.sign > 0);
    // Counter-clockwise order starting at the entering dart of a.
    const std::size_t in_a = 2 * a, out_a = 2 * a + 1, in_b = 2 * b, out_b = 2 * b + 1;
    const std::size_t rot[4] = {in_a, b_right_to_left ? in_b : out_b, out_a,
                                b_right_to_left ? out_b : in_b};
    for (int k = 0; k < 4; ++k) sigma_inv[rot[(k + 1) % 4]] = rot[k];
  }
  std::vector<bool> seen(2 * size, false);
  long faces = 0;
  for (std::size_t d = 0; d < 2 * size; ++d) {
    if (seen[d]) continue;
    ++faces;
    for (std::size_t e = d; !seen[e]; e = sigma_inv[alpha[e]]) seen[e] = true;
  }
  const long v = static_cast<long>(size / 2);
  const long e = static_cast<long>(size);
  return static_cast<int>((2 - v + e - faces) / 2);
}

namespace {

std::optional<std::vector<int>> find_reducible(const GaussCode& code) {
  const std::size_t size = code.size();
  if (size == 0) return std::nullopt;
  const auto& rec = code.records();
  for (std::size_t i = 0; i < size; ++i) {
    if (rec[i].crossing == rec[(i + 1) % size].crossing) return std::vector<int>{rec[i].crossing};
  }
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = (i + 1) % size;
    const auto& a = rec[i];
    const auto& b = rec[j];
    if (a.crossing == b.crossing || a.passage != b.passage || a.sign == b.sign) continue;
    const std::size_t pa = code.partner(i);
    const std::size_t pb = code.partner(j);
    if ((pa + 1) % size == pb || (pb + 1) % size == pa) {
      return std::vector<int>{a.crossing, b.crossing};
    }
  }
  return std::nullopt;
}

}  // namespace

GaussCode reduce(const GaussCode& code) {
  GaussCode current = code;
  while (auto ids = find_reducible(current)) {
    std::vector<EndpointRecord> kept;
    for (const auto& r : current.records()) {
      if (std::find(ids->begin(), ids->end(), r.crossing) == ids->end()) kept.push_back(r);
    }
    current = GaussCode(std::move(kept));
  }
  return current;
}

bool is_reduced(const GaussCode& code) { return !find_reducible(code).has_value(); }

}  // namespace vmeander
