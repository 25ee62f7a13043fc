#pragma once

// Command implementations behind the vmeander tool. Every command returns a
// Report; rendering and exit codes are decided by the caller.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "vmeander/algorithms.hpp"
#include "vmeander/diagram.hpp"
#include "vmeander/gauss.hpp"
#include "vmeander/invariants.hpp"

namespace vmeander::cli {

using Record = nlohmann::ordered_json;

struct Report {
  std::vector<Record> records;

  /// True iff no record carries a "verdict" other than "PASS".
  bool ok() const;
  std::string to_jsonl() const;
  std::string to_table() const;
  void add(Record r) { records.push_back(std::move(r)); }
};

std::string verdict(bool pass);

/// A command input: Gauss code text or a structured diagram.
struct Input {
  std::string label;
  bool is_diagram = false;
  std::optional<GaussCode> code;  // set for Gauss input
  PlanarDiagram diagram;
};

/// `text_or_path` names a readable file or is the input text itself.
Input load_input(const std::string& text_or_path);
Input input_from_text(const std::string& text, std::string label);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct CorpusEntry {
  std::string name;
  std::string text;  // Gauss code, or diagram text for block entries
  std::vector<std::pair<std::string, std::string>> annotations;
  std::string error;  // non-empty when the entry did not parse
  int line = 0;
};

/// One entry per line: `name code key=value ...` ("-" is the empty code);
/// diagrams go in blocks `entry name key=value ...` ... `end`.
std::vector<CorpusEntry> parse_corpus(const std::string& text);

/// Invariant bundle comparison record fields; "equal" decides.
struct InvariantCheck {
  bool equal = true;
  bool fpoly_compared = false;
};
InvariantCheck compare_invariants(const GaussCode& a, const GaussCode& b, int cap);

struct TransformOptions {
  std::string trace_path;   // write the trace file here when set
  std::string output_path;  // write the output diagram here when set
  int fpoly_cap = kDefaultFPolyCap;
};

Report cmd_arcs(const Input& in);
Report cmd_semimeander(const Input& in, bool bounded, bool strong, const TransformOptions& opt);
Report cmd_meander(const Input& in, const TransformOptions& opt);
/// `cuts` are edge indices of the diagram; empty picks a minimal split.
Report cmd_merge(const Input& in, std::vector<std::size_t> cuts, int k, const TransformOptions& opt);
Report cmd_project(const Input& in);

struct GenOptions {
  int n = 3;
  std::uint64_t seed = 1;
  int count = 1;
  bool diagrams = false;
};
/// Uniform random signed Gauss codes: chord order, signs and passages.
GaussCode random_code(int n, std::mt19937_64& rng);
Report cmd_gen(const GenOptions& opt);

/// `diagram_path` may be empty when the trace file carries the initial diagram.
Report cmd_replay(const std::string& diagram_path, const std::string& trace_path);

struct VerifyOptions {
  std::string corpus_path;  // empty: randomized checks only
  std::uint64_t seed = 42;
  int count = 100;
  int fpoly_cap = kDefaultFPolyCap;
};
Report cmd_verify(const VerifyOptions& opt);

/// Maps a Gauss-level split to edges of the realized diagram.
std::vector<std::size_t> split_to_edges(const PlanarDiagram& d, const ArcSplit& split);

Record diagram_summary(const PlanarDiagram& d);

}  // namespace vmeander::cli
