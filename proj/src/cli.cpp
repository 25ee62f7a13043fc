#include "vmeander/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "vmeander/moves.hpp"

namespace vmeander::cli {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string cell(const nlohmann::ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

GaussCode code_of(const Input& in) { return in.code ? *in.code : to_gauss(in.diagram); }

// Serializes the trace, parses it back and replays it; the replayed diagram
// must serialize to the recorded final text byte for byte.
bool trace_replays(const MoveTrace& trace, const PlanarDiagram& final_diagram, std::string* error) {
  try {
    const ParsedTrace p = parse_trace(serialize_trace(trace, final_diagram));
    if (!p.initial || !p.complete()) {
      if (error) *error = "trace did not round-trip";
      return false;
    }
    MoveTrace again;
    again.initial = *p.initial;
    again.steps = p.steps;
    return serialize_diagram(replay(again)) == p.final_text;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return false;
  }
}

void write_outputs(const TransformOptions& opt, const MoveTrace& trace, const PlanarDiagram& out) {
  if (!opt.trace_path.empty()) write_file(opt.trace_path, serialize_trace(trace, out));
  if (!opt.output_path.empty()) write_file(opt.output_path, serialize_diagram(out));
}

nlohmann::ordered_json edges_json(const std::vector<std::size_t>& e) {
  auto a = nlohmann::ordered_json::array();
  for (std::size_t x : e) a.push_back(x);
  return a;
}

nlohmann::ordered_json split_json(const ArcSplit& s) { return edges_json(s.cuts); }

Record base_record(const char* command, const Input& in) {
  Record r;
  r["command"] = command;
  r["input"] = in.label;
  return r;
}

Record error_record(const char* command, const std::string& label, const std::string& what) {
  Record r;
  r["command"] = command;
  r["input"] = label;
  r["error"] = what;
  r["verdict"] = verdict(false);
  return r;
}

void add_invariants(Record& rec, const GaussCode& before, const GaussCode& after, int cap) {
  const InvariantCheck c = compare_invariants(before, after, cap);
  rec["invariants_equal"] = c.equal;
  rec["fpoly_compared"] = c.fpoly_compared;
}

}  // namespace

// ---- reports ----------------------------------------------------------------

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

bool Report::ok() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) {
    return !r.contains("verdict") || r["verdict"] == "PASS";
  });
}

std::string Report::to_jsonl() const {
  std::string out;
  for (const Record& r : records) out += r.dump() + '\n';
  return out;
}

std::string Report::to_table() const {
  std::vector<std::string> cols;
  for (const Record& r : records) {
    for (const auto& [k, v] : r.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back(cols);
  for (const Record& r : records) {
    std::vector<std::string> row;
    for (const auto& c : cols) row.push_back(r.contains(c) ? cell(r[c]) : "");
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(cols.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i] + std::string(width[i] - row[i].size(), ' ');
    }
    os << trim(line) << '\n';
  }
  return os.str();
}

// ---- input --------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

Input input_from_text(const std::string& text, std::string label) {
  Input in;
  in.label = std::move(label);
  if (looks_like_diagram(text)) {
    in.is_diagram = true;
    in.diagram = parse_diagram(text);
  } else {
    const std::string t = trim(text);
    in.code = parse_gauss(t == "-" ? "" : t);
    in.diagram = from_gauss(*in.code);
  }
  return in;
}

Input load_input(const std::string& text_or_path) {
  std::error_code ec;
  if (!text_or_path.empty() && std::filesystem::is_regular_file(text_or_path, ec)) {
    return input_from_text(read_file(text_or_path), text_or_path);
  }
  return input_from_text(text_or_path, trim(text_or_path));
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  CorpusEntry* block = nullptr;
  const auto read_annotations = [](std::istringstream& ls, CorpusEntry& e) {
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        e.error = "bad annotation '" + tok + "'";
        continue;
      }
      e.annotations.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
  };
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (block) {
      if (trim(line) == "end") {
        block = nullptr;
      } else {
        block->text += line + '\n';
      }
      continue;
    }
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string first;
    ls >> first;
    CorpusEntry e;
    e.line = no;
    if (first == "entry") {
      ls >> e.name;
      read_annotations(ls, e);
      out.push_back(std::move(e));
      block = &out.back();
      continue;
    }
    e.name = first;
    if (!(ls >> e.text)) e.error = "missing code";
    if (e.text == "-") e.text.clear();
    read_annotations(ls, e);
    out.push_back(std::move(e));
  }
  if (block) block->error = "diagram block without 'end'";
  return out;
}

InvariantCheck compare_invariants(const GaussCode& a, const GaussCode& b, int cap) {
  InvariantCheck c;
  const InvariantReport x = invariant_report(a, cap);
  const InvariantReport y = invariant_report(b, cap);
  c.equal = x.writhe == y.writhe && x.odd_writhe == y.odd_writhe &&
            x.affine_index == y.affine_index;
  std::optional<LaurentPoly> fa = x.f_poly, fb = y.f_poly;
  try {
    if (!fa) fa = f_polynomial_frontier(a);
    if (!fb) fb = f_polynomial_frontier(b);
  } catch (const CapExceeded&) {
  }
  if (fa && fb) {
    c.fpoly_compared = true;
    c.equal = c.equal && *fa == *fb;
  }
  return c;
}

std::vector<std::size_t> split_to_edges(const PlanarDiagram& d, const ArcSplit& split) {
  const auto pos = gauss_positions(d);
  std::vector<std::size_t> visit_of_record;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] < 0) continue;
    if (static_cast<std::size_t>(pos[i]) >= visit_of_record.size()) {
      visit_of_record.resize(pos[i] + 1);
    }
    visit_of_record[pos[i]] = i;
  }
  std::vector<std::size_t> edges;
  if (visit_of_record.empty()) return edges;
  for (std::size_t g : split.cuts) {
    edges.push_back(d.prev(visit_of_record[g % visit_of_record.size()]));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Record diagram_summary(const PlanarDiagram& d) {
  Record r;
  r["classical"] = d.classical_count();
  r["virtual"] = d.virtual_count();
  r["faces"] = d.faces().size();
  r["genus"] = d.genus();
  return r;
}

// ---- commands -------------------------------------------------------------------

Report cmd_arcs(const Input& in) {
  Report rep;
  Record r = base_record("arcs", in);
  const GaussCode code = code_of(in);
  const KArcReport k = min_arc_number(code);
  const bool valid = is_k_arc_split(code, k.witness);
  r["chords"] = code.chord_count();
  r["min_arcs"] = k.min_arcs;
  r["witness"] = split_json(k.witness);
  r["classical"] = k.classical_crossings;
  r["witness_valid"] = valid;
  bool agree = true;
  if (code.chord_count() <= 10) {
    const int brute = brute_min_arc_number(code);
    r["brute_min_arcs"] = brute;
    agree = brute == k.min_arcs;
  }
  r["verdict"] = verdict(valid && agree);
  rep.add(std::move(r));
  return rep;
}

Report cmd_semimeander(const Input& in, bool bounded, bool strong, const TransformOptions& opt) {
  Report rep;
  Record r = base_record("semimeander", in);
  r["bounded"] = bounded;
  SemimeanderResult s;
  try {
    s = bounded ? semimeanderize_bounded(in.diagram) : semimeanderize(in.diagram);
  } catch (const AlgorithmError& e) {
    rep.add(error_record("semimeander", in.label, e.what()));
    return rep;
  }
  r["input_classical"] = s.input_classical;
  r["input_crossings"] = s.input_crossings;
  r["output_classical"] = s.output_classical;
  r["output_crossings"] = s.output_crossings;
  r["cuts"] = edges_json(s.cuts.cut_edges);
  r["identity"] = s.identity;
  r["trace_steps"] = s.trace.steps.size();
  const bool is_strong = is_strong_semimeander(s.diagram);
  const bool is_semi = is_semimeander(s.diagram);
  r["strong_semimeander"] = is_strong;
  r["semimeander"] = is_semi;
  add_invariants(r, code_of(in), to_gauss(s.diagram), opt.fpoly_cap);
  std::string err;
  const bool replays = trace_replays(s.trace, s.diagram, &err);
  r["replay"] = replays;
  if (!err.empty()) r["replay_error"] = err;
  bool pass = (strong ? is_strong : is_semi) && r["invariants_equal"].get<bool>() && replays;
  if (bounded) {
    r["bound"] = *s.bound_value;
    r["within_bound"] = s.within_bound;
    r["small_counterexample"] = s.small_counterexample;
    pass = pass && s.within_bound && !s.small_counterexample;
  }
  r["verdict"] = verdict(pass);
  write_outputs(opt, s.trace, s.diagram);
  rep.add(std::move(r));
  return rep;
}

Report cmd_meander(const Input& in, const TransformOptions& opt) {
  Report rep;
  Record r = base_record("meander", in);
  const SemimeanderResult s = meanderize(in.diagram);
  r["input_classical"] = s.input_classical;
  r["semimeander_classical"] = s.semimeander_classical;
  r["output_classical"] = s.output_classical;
  r["output_crossings"] = s.output_crossings;
  r["classical_added_after_semimeander"] = s.output_classical - s.semimeander_classical;
  r["cuts"] = edges_json(s.cuts.cut_edges);
  r["identity"] = s.identity;
  r["trace_steps"] = s.trace.steps.size();
  const bool strong = is_strong_meander(s.diagram);
  r["strong_meander"] = strong;
  add_invariants(r, code_of(in), to_gauss(s.diagram), opt.fpoly_cap);
  std::string err;
  const bool replays = trace_replays(s.trace, s.diagram, &err);
  r["replay"] = replays;
  if (!err.empty()) r["replay_error"] = err;
  r["verdict"] = verdict(strong && s.output_classical == s.semimeander_classical &&
                         r["invariants_equal"].get<bool>() && replays);
  write_outputs(opt, s.trace, s.diagram);
  rep.add(std::move(r));
  return rep;
}

Report cmd_merge(const Input& in, std::vector<std::size_t> cuts, int k, const TransformOptions& opt) {
  Report rep;
  if (k < 2) {
    rep.add(error_record("merge", in.label, "target arc count must be at least 2"));
    return rep;
  }
  PlanarDiagram d = in.diagram.canonical();
  if (cuts.empty()) cuts = split_to_edges(d, min_arc_number(to_gauss(d)).witness);
  ArcDecomposition dec;
  try {
    dec = decompose_edges(d, cuts);
  } catch (const DiagramError& e) {
    rep.add(error_record("merge", in.label, std::string("invalid cuts: ") + e.what()));
    return rep;
  }
  for (int x : dec.per_arc_classical_self) {
    if (x != 0) {
      rep.add(error_record("merge", in.label, "invalid cuts: an arc has a classical self-crossing"));
      return rep;
    }
  }
  MoveTrace trace;
  trace.initial = d;
  int step = 0;
  bool all = true;
  while (dec.arc_count() > k && dec.arc_count() >= 3) {
    const MergeResult m = merge_arcs(d, dec);
    Record r = base_record("merge", in);
    r["step"] = ++step;
    r["from_arcs"] = m.from_split.arc_count();
    r["to_arcs"] = m.to_split.arc_count();
    r["chosen_arc"] = m.chosen_arc;
    r["toward_previous"] = m.toward_previous;
    r["m"] = m.m;
    r["n_min"] = m.n_min;
    r["input_classical"] = m.input_classical;
    r["increase"] = m.increase;
    r["pair_bound"] = m.pair_bound();
    r["within_pair_bound"] = m.increase <= m.pair_bound();
    r["within_square_bound"] = m.within_square_bound();
    bool valid = m.to_split.arc_count() == m.from_split.arc_count() - 1;
    for (int x : m.to_split.per_arc_classical_self) valid = valid && x == 0;
    r["split_valid"] = valid;
    const bool pass = valid && m.increase <= m.pair_bound() && m.within_square_bound();
    all = all && pass;
    r["verdict"] = verdict(pass);
    rep.add(std::move(r));
    trace.append(m.trace);
    d = m.diagram;
    dec = m.to_split;
  }
  Record fin = base_record("merge", in);
  fin["step"] = "final";
  fin["arcs"] = dec.arc_count();
  fin["cuts"] = edges_json(dec.cut_edges);
  fin["output_classical"] = d.classical_count();
  add_invariants(fin, code_of(in), to_gauss(d), opt.fpoly_cap);
  std::string err;
  const bool replays = trace_replays(trace, d, &err);
  fin["replay"] = replays;
  if (!err.empty()) fin["replay_error"] = err;
  fin["verdict"] = verdict(all && replays && fin["invariants_equal"].get<bool>());
  write_outputs(opt, trace, d);
  rep.add(std::move(fin));
  return rep;
}

Report cmd_project(const Input& in) {
  Report rep;
  Record r = base_record("project", in);
  const GaussCode before = code_of(in);
  const GaussCode after = parity_projection(before);
  const int arcs_before = min_arc_number(before).min_arcs;
  const int arcs_after = min_arc_number(after).min_arcs;
  const bool fixed = after == before;
  const bool planar = carter_genus(before) == 0;
  r["before"] = serialize_gauss(before);
  r["after"] = serialize_gauss(after);
  r["chords_before"] = before.chord_count();
  r["chords_after"] = after.chord_count();
  r["min_arcs_before"] = arcs_before;
  r["min_arcs_after"] = arcs_after;
  r["fixed_point"] = fixed;
  r["genus_zero"] = planar;
  r["verdict"] = verdict(after.chord_count() <= before.chord_count() && arcs_after <= arcs_before &&
                         (!planar || fixed));
  rep.add(std::move(r));
  return rep;
}

GaussCode random_code(int n, std::mt19937_64& rng) {
  const auto below = [&rng](std::uint64_t m) {
    // rejection sampling keeps the draw uniform
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % m;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return x % m;
  };
  std::vector<int> slots(2 * n);
  for (int i = 0; i < 2 * n; ++i) slots[i] = i / 2 + 1;
  for (int i = 2 * n - 1; i > 0; --i) std::swap(slots[i], slots[below(i + 1)]);
  std::vector<int> sign(n + 1), first_over(n + 1), seen(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    sign[i] = below(2) ? 1 : -1;
    first_over[i] = static_cast<int>(below(2));
  }
  std::vector<EndpointRecord> records;
  for (int c : slots) {
    const bool over = (seen[c]++ == 0) == (first_over[c] == 1);
    records.push_back({c, over ? Passage::Over : Passage::Under, sign[c]});
  }
  return GaussCode(std::move(records)).relabeled();
}

Report cmd_gen(const GenOptions& opt) {
  Report rep;
  if (opt.n < 0 || opt.n > 14) {
    Record r;
    r["command"] = "gen";
    r["error"] = "n must lie in 0..14";
    r["verdict"] = verdict(false);
    rep.add(std::move(r));
    return rep;
  }
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.count; ++i) {
    const GaussCode c = random_code(opt.n, rng);
    Record r;
    r["command"] = "gen";
    r["index"] = i;
    r["code"] = serialize_gauss(c);
    r["chords"] = c.chord_count();
    r["genus"] = carter_genus(c);
    if (opt.diagrams) r["diagram"] = serialize_diagram(from_gauss(c));
    rep.add(std::move(r));
  }
  return rep;
}

Report cmd_replay(const std::string& diagram_path, const std::string& trace_path) {
  Report rep;
  Record r;
  r["command"] = "replay";
  r["trace"] = trace_path;
  const auto fail = [&](const std::string& what) {
    r["error"] = what;
    r["verdict"] = verdict(false);
    rep.add(r);
    return rep;
  };
  ParsedTrace p;
  PlanarDiagram initial;
  try {
    p = parse_trace(read_file(trace_path));
    if (!diagram_path.empty()) {
      initial = parse_diagram(read_file(diagram_path));
      if (p.initial && !(serialize_diagram(*p.initial) == serialize_diagram(initial))) {
        return fail("diagram file differs from the trace's initial diagram");
      }
    } else if (p.initial) {
      initial = *p.initial;
    } else {
      return fail("no initial diagram given");
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  r["steps"] = p.steps.size();
  r["declared_steps"] = p.declared_steps;
  MoveTrace t;
  t.initial = initial;
  t.steps = p.steps;
  PlanarDiagram out;
  try {
    out = replay(t);
  } catch (const MoveError& e) {
    return fail(e.what());
  }
  if (!p.final_diagram) {
    return fail("trace has no final diagram; replay stopped after step " +
                std::to_string(p.steps.size()));
  }
  if (p.declared_steps != static_cast<long>(p.steps.size())) {
    return fail("divergence at step " + std::to_string(p.steps.size() + 1) + ": trace declares " +
                std::to_string(p.declared_steps) + " steps but lists " +
                std::to_string(p.steps.size()));
  }
  const bool same = serialize_diagram(out) == p.final_text;
  if (!same) {
    return fail("divergence at step " + std::to_string(p.steps.size()) +
                ": replayed diagram differs from the recorded final diagram");
  }
  r["final_classical"] = out.classical_count();
  r["final_virtual"] = out.virtual_count();
  r["verdict"] = verdict(true);
  rep.add(std::move(r));
  return rep;
}

// ---- verify ---------------------------------------------------------------------

namespace {

struct Checks {
  Record fields;
  bool pass = true;
  void set(const std::string& key, bool ok) {
    fields[key] = ok;
    pass = pass && ok;
  }
};

void check_transforms(Checks& c, const PlanarDiagram& d, const GaussCode& code, int cap) {
  const SemimeanderResult s = semimeanderize(d);
  c.set("semimeander_strong", is_strong_semimeander(s.diagram));
  c.set("semimeander_invariants", compare_invariants(code, to_gauss(s.diagram), cap).equal);
  c.set("semimeander_replay", trace_replays(s.trace, s.diagram, nullptr));
  const SemimeanderResult m = meanderize(d);
  c.set("meander_strong", is_strong_meander(m.diagram));
  c.set("meander_classical_unchanged", m.output_classical == m.semimeander_classical);
  c.set("meander_invariants", compare_invariants(code, to_gauss(m.diagram), cap).equal);
  c.set("meander_replay", trace_replays(m.trace, m.diagram, nullptr));
}

void check_code_properties(Checks& c, const GaussCode& code) {
  const KArcReport k = min_arc_number(code);
  c.set("split_valid", is_k_arc_split(code, k.witness));
  if (code.chord_count() <= 10) c.set("arcs_oracle", brute_min_arc_number(code) == k.min_arcs);
  bool deletion = true;
  for (const Chord& ch : code.chords()) {
    const GaussCode smaller = delete_chord(code, ch.id);
    const ArcSplit s = adjust_split(k.witness, {ch.pos_over, ch.pos_under}, code.size());
    deletion = deletion && is_k_arc_split(smaller, s);
  }
  c.set("deletion_keeps_split", deletion);
  const GaussCode p = parity_projection(code);
  c.set("projection_chords", p.chord_count() <= code.chord_count());
  c.set("projection_arcs", min_arc_number(p).min_arcs <= k.min_arcs);
  if (carter_genus(code) == 0) {
    c.set("projection_fixed", p == code);
    c.set("odd_writhe_zero", odd_writhe(code) == 0);
  }
}

void check_merge(Checks& c, const PlanarDiagram& input, std::mt19937_64& rng) {
  const PlanarDiagram d = input.canonical();
  if (d.visit_count() < 3) return;
  auto cuts = split_to_edges(d, min_arc_number(to_gauss(d)).witness);
  while (cuts.size() < 3) {
    const std::size_t e = rng() % d.visit_count();
    if (std::find(cuts.begin(), cuts.end(), e) == cuts.end()) cuts.push_back(e);
  }
  const ArcDecomposition dec = decompose_edges(d, cuts);
  for (int x : dec.per_arc_classical_self) {
    if (x != 0) return;
  }
  const MergeResult m = merge_arcs(d, dec);
  c.fields["merge_m"] = m.m;
  c.fields["merge_increase"] = m.increase;
  c.set("merge_pair_bound", m.increase <= m.pair_bound());
  c.set("merge_square_bound", m.within_square_bound());
  bool valid = m.to_split.arc_count() == dec.arc_count() - 1;
  for (int x : m.to_split.per_arc_classical_self) valid = valid && x == 0;
  c.set("merge_split_valid", valid);
}

void check_moves(Checks& c, const PlanarDiagram& d, std::mt19937_64& rng) {
  if (d.empty()) return;
  bool genus = true, writhe_kept = true, deltas = true;
  for (int t = 0; t < 4; ++t) {
    const std::size_t v = rng() % d.visit_count();
    const int dir = rng() % 2 ? 1 : -1;
    const std::size_t z = dir > 0 ? d.next(v) : d.prev(v);
    if (d.visits()[v].vertex == d.visits()[z].vertex) continue;
    const XStepResult x = x_step(d, v, dir);
    const PlanarDiagram& out = x.rewrite.diagram;
    genus = genus && out.genus() == 0;
    writhe_kept = writhe_kept && writhe(to_gauss(out)) == writhe(to_gauss(d));
    const bool both = d.is_classical_visit(v) && d.is_classical_visit(z);
    deltas = deltas && out.classical_count() - d.classical_count() == (both ? 2 : 0);
  }
  c.set("xstep_genus", genus);
  c.set("xstep_writhe", writhe_kept);
  c.set("xstep_classical_delta", deltas);
}

bool annotation_matches(const std::string& key, const std::string& value, const GaussCode& code,
                        const PlanarDiagram& d, bool& known) {
  known = true;
  const auto as_int = [&](int x) { return value == std::to_string(x); };
  if (key == "writhe") return as_int(writhe(code));
  if (key == "odd_writhe") return as_int(odd_writhe(code));
  if (key == "min_arcs") return as_int(min_arc_number(code).min_arcs);
  if (key == "genus") return as_int(carter_genus(code));
  if (key == "chords") return as_int(code.chord_count());
  if (key == "classical") return as_int(d.classical_count());
  if (key == "reduced") return value == (is_reduced(code) ? "yes" : "no");
  if (key == "affine") return value == affine_index_polynomial(code).to_string();
  if (key == "fpoly") {
    // polynomial text uses commas for spaces inside annotations
    std::string v = value;
    std::replace(v.begin(), v.end(), ',', ' ');
    return v == f_polynomial_frontier(code).to_string();
  }
  known = false;
  return false;
}

}  // namespace

namespace {

Record verify_entry(const CorpusEntry& e, int cap) {
  Checks c;
  c.fields["command"] = "verify";
  c.fields["entry"] = e.name;
  if (!e.error.empty()) {
    c.fields["error"] = "line " + std::to_string(e.line) + ": " + e.error;
    c.fields["verdict"] = verdict(false);
    return c.fields;
  }
  try {
    const Input in = input_from_text(e.text, e.name);
    const GaussCode code = code_of(in);
    c.fields["classical"] = in.diagram.classical_count();
    for (const auto& [k, v] : e.annotations) {
      bool known = false;
      const bool ok = annotation_matches(k, v, code, in.diagram, known);
      if (!known) {
        c.fields["error"] = "unknown annotation '" + k + "'";
        c.pass = false;
      } else {
        c.set("annotation_" + k, ok);
      }
    }
    check_transforms(c, in.diagram, code, cap);
    const int n = in.diagram.vertex_count();
    if (is_reduced(code) && n <= 12) {
      const SemimeanderResult b = semimeanderize_bounded(in.diagram);
      c.fields["bounded_output"] = b.output_classical;
      c.fields["bound"] = *b.bound_value;
      if (n <= 6) {
        c.set("bounded_identity", b.identity);
      } else {
        c.set("bounded_within", b.within_bound);
      }
      c.set("bounded_invariants", compare_invariants(code, to_gauss(b.diagram), cap).equal);
      c.set("bounded_replay", trace_replays(b.trace, b.diagram, nullptr));
    }
    if (code.chord_count() <= 10) check_code_properties(c, code);
  } catch (const std::exception& ex) {
    c.fields["error"] = ex.what();
    c.pass = false;
  }
  c.fields["verdict"] = verdict(c.pass);
  return c.fields;
}

Record verify_random(int index, std::uint64_t seed, int cap) {
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(rng() % 9);
  const GaussCode code = random_code(n, rng);
  Checks c;
  c.fields["command"] = "verify";
  c.fields["case"] = index;
  c.fields["code"] = serialize_gauss(code);
  try {
    const PlanarDiagram d = from_gauss(code);
    check_code_properties(c, code);
    check_transforms(c, d, code, cap);
    check_merge(c, d, rng);
    check_moves(c, d, rng);
  } catch (const std::exception& ex) {
    c.fields["error"] = ex.what();
    c.pass = false;
  }
  c.fields["verdict"] = verdict(c.pass);
  return c.fields;
}

// Runs jobs on a small pool; results keep job order.
std::vector<Record> run_ordered(std::size_t count, const std::function<Record(std::size_t)>& job) {
  std::vector<Record> out(count);
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) out[i] = job(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

Report cmd_verify(const VerifyOptions& opt) {
  Report rep;
  std::vector<CorpusEntry> entries;
  if (!opt.corpus_path.empty()) {
    try {
      entries = parse_corpus(read_file(opt.corpus_path));
    } catch (const std::exception& e) {
      rep.add(error_record("verify", opt.corpus_path, e.what()));
      return rep;
    }
  }
  std::mt19937_64 master(opt.seed);
  std::vector<std::uint64_t> seeds(std::max(opt.count, 0));
  for (auto& s : seeds) s = master();

  const std::size_t total = entries.size() + seeds.size();
  std::vector<Record> records = run_ordered(total, [&](std::size_t i) {
    if (i < entries.size()) return verify_entry(entries[i], opt.fpoly_cap);
    const std::size_t j = i - entries.size();
    return verify_random(static_cast<int>(j), seeds[j], opt.fpoly_cap);
  });

  int failures = 0;
  for (auto& r : records) {
    failures += r["verdict"] != "PASS";
    rep.add(std::move(r));
  }
  Record s;
  s["command"] = "verify";
  s["summary"] = true;
  s["seed"] = opt.seed;
  s["corpus_entries"] = entries.size();
  s["random_cases"] = seeds.size();
  s["failures"] = failures;
  s["verdict"] = verdict(failures == 0);
  rep.add(std::move(s));
  return rep;
}

}  // namespace vmeander::cli
