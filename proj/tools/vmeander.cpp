#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vmeander/cli.hpp"

using namespace vmeander;

int main(int argc, char** argv) {
  CLI::App app{"Virtual knot diagrams: arc numbers, semimeander and meander forms"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "jsonl";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"jsonl", "table"}))
      ->capture_default_str();

  std::string input;
  cli::TransformOptions topt;
  topt.fpoly_cap = fpoly_cap_from_env();

  const auto add_transform_opts = [&](CLI::App* sub) {
    sub->add_option("--trace", topt.trace_path, "Write the move trace to this file");
    sub->add_option("--out", topt.output_path, "Write the output diagram to this file");
  };

  auto* arcs = app.add_subcommand("arcs", "Minimal arc number with a witness split");
  arcs->add_option("input", input, "Gauss code, diagram text, or a file")->required();

  bool bounded = false, strong = true;
  auto* semi = app.add_subcommand("semimeander", "Transform to a strong semimeander diagram");
  semi->add_option("input", input, "Gauss code, diagram text, or a file")->required();
  semi->add_flag("--bounded", bounded, "Use the bounded construction (reduced input)");
  semi->add_flag("--strong,!--weak", strong, "Require the strong form (default)");
  add_transform_opts(semi);

  auto* mean = app.add_subcommand("meander", "Transform to a strong meander diagram");
  mean->add_option("input", input, "Gauss code, diagram text, or a file")->required();
  add_transform_opts(mean);

  std::vector<std::size_t> cuts;
  int k = 2;
  auto* merge = app.add_subcommand("merge", "Merge arcs down to k");
  merge->add_option("input", input, "Gauss code, diagram text, or a file")->required();
  merge->add_option("--cuts", cuts, "Cut edges of the starting split")->delimiter(',');
  merge->add_option("--k", k, "Target arc count")->capture_default_str();
  add_transform_opts(merge);

  auto* project = app.add_subcommand("project", "Parity projection");
  project->add_option("input", input, "Gauss code, diagram text, or a file")->required();

  cli::GenOptions gopt;
  auto* gen = app.add_subcommand("gen", "Random signed Gauss codes");
  gen->add_option("--n", gopt.n, "Chord count")->capture_default_str();
  gen->add_option("--seed", gopt.seed, "RNG seed")->capture_default_str();
  gen->add_option("--count", gopt.count, "Number of codes")->capture_default_str();
  gen->add_flag("--diagrams", gopt.diagrams, "Include realized diagrams");

  std::vector<std::string> replay_args;
  auto* rep = app.add_subcommand("replay", "Replay a trace file");
  rep->add_option("files", replay_args, "[diagram] trace")->required()->expected(1, 2);

  cli::VerifyOptions vopt;
  vopt.fpoly_cap = topt.fpoly_cap;
  auto* verify = app.add_subcommand("verify", "Property checks on a corpus and random codes");
  verify->add_option("--corpus", vopt.corpus_path, "Corpus file");
  verify->add_option("--seed", vopt.seed, "RNG seed")->capture_default_str();
  verify->add_option("--count", vopt.count, "Random cases")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  cli::Report report;
  try {
    if (*gen) {
      report = cli::cmd_gen(gopt);
    } else if (*rep) {
      const std::string diagram = replay_args.size() == 2 ? replay_args[0] : "";
      report = cli::cmd_replay(diagram, replay_args.back());
    } else if (*verify) {
      report = cli::cmd_verify(vopt);
    } else {
      const cli::Input in = cli::load_input(input);
      if (*arcs) report = cli::cmd_arcs(in);
      if (*semi) report = cli::cmd_semimeander(in, bounded, strong, topt);
      if (*mean) report = cli::cmd_meander(in, topt);
      if (*merge) report = cli::cmd_merge(in, cuts, k, topt);
      if (*project) report = cli::cmd_project(in);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cout << (format == "table" ? report.to_table() : report.to_jsonl());
  return report.ok() ? 0 : 1;
}
