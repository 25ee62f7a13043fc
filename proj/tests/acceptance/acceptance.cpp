// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance <corpus file>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "vmeander/algorithms.hpp"
#include "vmeander/cli.hpp"
#include "vmeander/invariants.hpp"

using namespace vmeander;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::string first_failure;
  void fail(const std::string& what) {
    if (pass) first_failure = what;
    pass = false;
  }
};

std::vector<MoveTrace> g_traces;
std::vector<PlanarDiagram> g_finals;

void keep_trace(const MoveTrace& t, const PlanarDiagram& final_diagram) {
  g_traces.push_back(t);
  g_finals.push_back(final_diagram);
}

// Writhe and odd writhe from the oracles, the affine index polynomial from
// the library. The f-polynomial comes from the oracle state sum on small
// codes and from the library's frontier computation on large ones.
bool same_invariants(const GaussCode& a, const GaussCode& b) {
  if (oracle::writhe(a) != oracle::writhe(b) || oracle::odd_writhe(a) != oracle::odd_writhe(b)) return false;
  if (!(affine_index_polynomial(a) == affine_index_polynomial(b))) return false;
  if (std::max(a.chord_count(), b.chord_count()) <= 12) return oracle::f_polynomial(a) == oracle::f_polynomial(b);
  return invariant_report_full(a).f_poly == invariant_report_full(b).f_poly;
}

// c <= sqrt(3)^n, i.e. c^2 <= 3^n, in exact integers
bool under_sqrt3(long long c, int n) {
  unsigned __int128 p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return static_cast<unsigned __int128>(c) * static_cast<unsigned __int128>(c) <= p;
}

std::string code_text(const PlanarDiagram& d) { return serialize_gauss(to_gauss(d)); }

std::vector<cli::CorpusEntry> g_corpus;

void criterion_semimeander(Outcome& o) {
  std::mt19937_64 rng(1001);
  int virtual_inputs = 0;
  for (int i = 0; i < 500; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 9), rng);
    const PlanarDiagram d = from_gauss(c);
    virtual_inputs += d.virtual_count() > 0;
    const SemimeanderResult r = semimeanderize(d);
    keep_trace(r.trace, r.diagram);
    if (!oracle::two_arc(r.diagram, false, false) || !is_strong_semimeander(r.diagram))
      o.fail("not a strong semimeander: " + serialize_gauss(c));
    if (!same_invariants(c, to_gauss(r.diagram))) o.fail("invariants differ: " + serialize_gauss(c));
  }
  o.note << "500 diagrams, " << virtual_inputs << " with virtual crossings";
}

void criterion_bound(Outcome& o) {
  int large = 0, small = 0;
  for (const auto& e : g_corpus) {
    const cli::Input in = cli::input_from_text(e.text, e.name);
    const GaussCode code = to_gauss(in.diagram);
    const int n = in.diagram.vertex_count();
    if (!is_reduced(code) || n > 12) continue;
    if (n <= 6) {
      const SemimeanderResult r = semimeanderize_bounded(in.diagram);
      keep_trace(r.trace, r.diagram);
      ++small;
      if (!r.identity || !(r.diagram == in.diagram)) o.fail(e.name + " changed at n=" + std::to_string(n));
      continue;
    }
    if (n < 7) continue;
    const SemimeanderResult r = semimeanderize_bounded(in.diagram);
    keep_trace(r.trace, r.diagram);
    ++large;
    if (!under_sqrt3(r.diagram.classical_count(), n))
      o.fail(e.name + ": " + std::to_string(r.diagram.classical_count()) + " > sqrt(3)^" + std::to_string(n));
    if (!oracle::two_arc(r.diagram, false, false)) o.fail(e.name + ": not a strong semimeander");
    if (!same_invariants(code, to_gauss(r.diagram))) o.fail(e.name + ": invariants differ");
  }
  if (large == 0) o.fail("no reduced corpus diagram with 7 <= n <= 12");
  o.note << large << " reduced diagrams with 7<=n<=12, " << small << " with n<=6";
}

void criterion_meander(Outcome& o) {
  int moved = 0;
  for (const auto& e : g_corpus) {
    const cli::Input in = cli::input_from_text(e.text, e.name);
    const SemimeanderResult r = meanderize(in.diagram);
    keep_trace(r.trace, r.diagram);
    moved += !r.identity;
    if (!oracle::two_arc(r.diagram, false, true)) o.fail(e.name + ": not a strong meander");
    if (r.diagram.classical_count() != r.semimeander_classical)
      o.fail(e.name + ": classical crossings added after the semimeander stage");
    if (!same_invariants(to_gauss(in.diagram), to_gauss(r.diagram))) o.fail(e.name + ": invariants differ");
  }
  o.note << g_corpus.size() << " corpus diagrams, " << moved << " rerouted";
}

void criterion_merge(Outcome& o) {
  std::mt19937_64 rng(2002);
  int instances = 0, tries = 0;
  long long max_increase = 0;
  while (instances < 200 && tries < 20000) {
    ++tries;
    const PlanarDiagram d = from_gauss(oracle::random_code(2 + static_cast<int>(rng() % 7), rng)).canonical();
    const std::size_t arcs = 3 + rng() % 3;
    if (d.visit_count() < arcs) continue;
    auto cuts = cli::split_to_edges(d, min_arc_number(to_gauss(d)).witness);
    while (cuts.size() < arcs) {
      const std::size_t e = rng() % d.visit_count();
      if (std::find(cuts.begin(), cuts.end(), e) == cuts.end()) cuts.push_back(e);
    }
    const ArcDecomposition dec = decompose_edges(d, cuts);
    bool clean = true;
    for (int x : dec.per_arc_classical_self) clean = clean && x == 0;
    if (!clean) continue;
    ++instances;
    const MergeResult m = merge_arcs(d, dec);
    keep_trace(m.trace, m.diagram);
    const long long c = d.classical_count();
    const long long k1 = dec.arc_count();
    const long long inc = m.diagram.classical_count() - c;
    max_increase = std::max(max_increase, inc);
    const std::string tag = serialize_diagram(d);
    if (inc != m.increase) o.fail("reported increase differs");
    if (inc > 2LL * m.m * (m.n_min - m.m)) o.fail("increase above 2m(nMin-m)");
    if (inc * k1 * k1 > 2 * c * c) o.fail("increase above 2c^2/(k+1)^2");
    // output split: k arcs, none passing a classical crossing twice
    const ArcDecomposition out = decompose_edges(m.diagram, m.to_split.cut_edges);
    if (out.arc_count() != k1 - 1) o.fail("output has the wrong number of arcs");
    for (const DiagramArc& a : out.arcs) {
      std::vector<int> seen;
      for (std::size_t v : a.visits) {
        if (!m.diagram.is_classical_visit(v)) continue;
        const int id = m.diagram.visits()[v].vertex;
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) o.fail("output arc passes a crossing twice");
        seen.push_back(id);
      }
    }
    if (!same_invariants(to_gauss(d), to_gauss(m.diagram))) o.fail("invariants differ");
  }
  if (instances < 200) o.fail("only " + std::to_string(instances) + " instances");
  o.note << instances << " instances, largest increase " << max_increase;
}

// All perfect matchings of 2n points, as chord label sequences.
void matchings(std::vector<int>& seq, int next_label, std::vector<std::vector<int>>& out) {
  auto it = std::find(seq.begin(), seq.end(), 0);
  if (it == seq.end()) {
    out.push_back(seq);
    return;
  }
  *it = next_label;
  for (auto jt = it + 1; jt != seq.end(); ++jt) {
    if (*jt != 0) continue;
    *jt = next_label;
    matchings(seq, next_label + 1, out);
    *jt = 0;
  }
  *it = 0;
}

void check_deletion(const GaussCode& c, Outcome& o, long& splits) {
  const std::size_t n = c.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) cuts.push_back(i);
    if (!oracle::valid_split(c, cuts)) continue;
    ++splits;
    for (const Chord& ch : c.chords()) {
      const GaussCode smaller = delete_chord(c, ch.id);
      const ArcSplit s = adjust_split(ArcSplit{cuts}, {ch.pos_over, ch.pos_under}, n);
      if (!oracle::valid_split(smaller, s.cuts) || !is_k_arc_split(smaller, s))
        o.fail("deletion breaks a split of " + serialize_gauss(c));
    }
  }
}

void criterion_projection(Outcome& o) {
  long splits = 0;
  int codes = 0;
  // every chord pattern up to five chords; validity does not depend on
  // passages or signs
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> seq(2 * n, 0);
    std::vector<std::vector<int>> all;
    matchings(seq, 1, all);
    for (const auto& m : all) {
      std::vector<int> seen(n + 1, 0);
      std::vector<EndpointRecord> rs;
      for (int id : m) rs.push_back({id, seen[id]++ ? Passage::Under : Passage::Over, 1});
      check_deletion(GaussCode(rs), o, splits);
      ++codes;
    }
  }
  // random patterns with six to eight chords
  std::mt19937_64 rng(3003);
  for (int i = 0; i < 60; ++i) {
    check_deletion(oracle::random_code(6 + static_cast<int>(rng() % 3), rng), o, splits);
    ++codes;
  }
  int fixed = 0;
  for (int i = 0; i < 1000; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 9), rng);
    const GaussCode p = parity_projection(c);
    if (p.chord_count() > c.chord_count()) o.fail("projection adds chords: " + serialize_gauss(c));
    if (oracle::min_arcs(p) > oracle::min_arcs(c)) o.fail("projection raises the arc number: " + serialize_gauss(c));
    if (carter_genus(c) == 0) {
      ++fixed;
      if (!(p == c)) o.fail("genus-0 code moved: " + serialize_gauss(c));
    }
  }
  o.note << codes << " codes, " << splits << " valid splits, " << fixed << " genus-0 fixed points";
}

void criterion_oracles(Outcome& o) {
  std::mt19937_64 rng(4004);
  for (int i = 0; i < 1000; ++i) {
    const GaussCode c = oracle::random_code(static_cast<int>(rng() % 9), rng);
    const int fast = min_arc_number(c).min_arcs;
    if (fast != oracle::min_arcs(c) || fast != brute_min_arc_number(c))
      o.fail("arc number disagrees: " + serialize_gauss(c));
  }
  if (carter_genus(parse_gauss("O1+U2+O3+U1+O2+U3+")) != 0) o.fail("carter_genus(trefoil)");
  if (carter_genus(parse_gauss("O1-O2-U1-U2-")) != 1) o.fail("carter_genus(virtual trefoil)");
  if (std::abs(odd_writhe(parse_gauss("O1-O2-U1-U2-"))) != 2 ||
      odd_writhe(parse_gauss("O1-O2-U1-U2-")) != oracle::odd_writhe(parse_gauss("O1-O2-U1-U2-")))
    o.fail("odd_writhe(virtual trefoil)");
  if (f_polynomial(parse_gauss("")).to_string() != "0:1") o.fail("f_polynomial(empty)");
  o.note << "1000 codes; genus, odd writhe and f(empty) goldens";
}

int writhe_delta_allowed(const Move& m) {
  // classical kinks change the writhe by one; every other move keeps it
  return m.kind == MoveKind::R1 ? 1 : 0;
}

void criterion_replay(Outcome& o) {
  long steps = 0;
  for (std::size_t i = 0; i < g_traces.size(); ++i) {
    const MoveTrace& t = g_traces[i];
    const std::string text = serialize_trace(t, g_finals[i]);
    ParsedTrace p;
    try {
      p = parse_trace(text);
    } catch (const std::exception& e) {
      o.fail(std::string("trace does not parse: ") + e.what());
      continue;
    }
    if (!p.initial || !p.complete()) {
      o.fail("trace incomplete");
      continue;
    }
    PlanarDiagram cur = *p.initial;
    try {
      for (const TraceStep& s : p.steps) {
        const PlanarDiagram next = apply_move(cur, s.move);
        ++steps;
        if (next.genus() != 0) o.fail("a move left genus 0");
        const int dw = std::abs(oracle::writhe(to_gauss(next)) - oracle::writhe(to_gauss(cur)));
        if (dw != writhe_delta_allowed(s.move) && !(s.move.kind == MoveKind::R1 && dw == 1))
          o.fail("writhe changed by " + std::to_string(dw) + " in " + to_string(s.move.kind));
        if (next.classical_count() - cur.classical_count() != s.delta_classical ||
            next.virtual_count() - cur.virtual_count() != s.delta_virtual)
          o.fail("recorded delta differs");
        cur = next;
      }
    } catch (const std::exception& e) {
      o.fail(std::string("replay failed: ") + e.what());
      continue;
    }
    if (serialize_diagram(cur) != p.final_text) o.fail("replayed diagram differs from the recorded one");
  }
  o.note << g_traces.size() << " traces, " << steps << " moves";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <corpus file>\n";
    return 2;
  }
  try {
    g_corpus = cli::parse_corpus(cli::read_file(argv[1]));
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  for (const auto& e : g_corpus) {
    if (!e.error.empty()) {
      std::cerr << "corpus entry " << e.name << ": " << e.error << '\n';
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"semimeander universality", criterion_semimeander},
      {"sqrt(3)^n bound", criterion_bound},
      {"meander universality", criterion_meander},
      {"k-arc inequality", criterion_merge},
      {"projection", criterion_projection},
      {"oracle agreement", criterion_oracles},
      {"replay integrity", criterion_replay},
  };
  bool all = true;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << ++index << " " << name << ": " << o.note.str() << " ["
              << timing << "]";
    if (!o.pass) std::cout << " first failure: " << o.first_failure;
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
