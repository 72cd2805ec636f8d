// Command line front end: prune parsed sentences, translate, and flag
// translations that say more than their source allows.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtprune/errors.hpp"
#include "mtprune/pipeline.hpp"

namespace {

void add_run_options(CLI::App* cmd, mtprune::RunConfig* config) {
  cmd->add_option("-i,--input", config->input_path, "input file")->required();
  cmd->add_option("--input-kind", config->input_kind,
                  "conllu (parsed) or raw (one sentence per line)")
      ->check(CLI::IsMember({"conllu", "raw"}));
  cmd->add_option("--parser-url", config->parser_url,
                  "dependency parser endpoint for raw input");
  cmd->add_option("-t,--translator", config->translator,
                  "identity | dict:<path> | cache:<path> | http:<url> | fault:<spec>");
  cmd->add_option("--target-lang", config->target_lang, "target language code");
  cmd->add_option("--max-depth", config->max_depth, "pruning chain length cap");
  cmd->add_option("--max-sentences", config->max_sentences,
                  "generated sentences cap per input");
  cmd->add_option("--policy", config->policy_path,
                  "JSON file overriding relation actions");
  cmd->add_option("--cache-out", config->cache_out,
                  "append fetched translations to this JSONL file");
  cmd->add_option("--seed", config->seed, "seed for simulated faults");
  cmd->add_option("--rps", config->max_rps, "request rate cap for http backends");
  cmd->add_option("--workers", config->workers, "worker threads")
      ->check(CLI::PositiveNumber);
}

void print_summary(const mtprune::Report& report) {
  const mtprune::RunStats& s = report.stats;
  std::printf("sentences   %zu in, %zu skipped\n", s.sentences_in,
              s.sentences_skipped);
  std::printf("clauses     %zu simple\n", s.simple_clauses);
  std::printf("generated   %zu sentences, %zu pairs\n", s.generated, s.pairs);
  std::printf("issues      %zu (%zu unique errors) at t=%d\n", s.issues,
              s.unique_errors, report.config.threshold);
  std::printf("timing      parse %.3fs  generation %.3fs  translation %.3fs  "
              "detection %.3fs\n",
              s.timings.parse_s, s.timings.generation_s, s.timings.translation_s,
              s.timings.detection_s);
}

int cmd_stats(const std::string& report_path) {
  std::ifstream in(report_path);
  if (!in) {
    std::fprintf(stderr, "cannot open report %s\n", report_path.c_str());
    return 1;
  }
  std::string line;
  nlohmann::json header;
  std::size_t issue_lines = 0;
  std::map<int, std::size_t> by_distance;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded()) continue;
    const std::string kind = doc.value("kind", "");
    if (kind == "header") {
      header = doc;
    } else if (kind == "issue") {
      ++issue_lines;
      ++by_distance[doc.value("distance", 0)];
    }
  }
  nlohmann::json out = {
      {"header", header.is_null() ? nlohmann::json(nullptr) : header},
      {"issue_lines", issue_lines},
      {"issues_by_distance", nlohmann::json::object()},
  };
  for (const auto& [d, n] : by_distance) out["issues_by_distance"][std::to_string(d)] = n;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metamorphic translation checking via dependency tree pruning"};
  app.require_subcommand(1);

  mtprune::RunConfig run_config;
  CLI::App* run_cmd = app.add_subcommand("run", "check one corpus, write a report");
  add_run_options(run_cmd, &run_config);
  run_cmd->add_option("--threshold", run_config.threshold,
                      "flag pairs with distance above this")
      ->check(CLI::Range(mtprune::kMinThreshold, mtprune::kMaxThreshold));
  run_cmd->add_option("-o,--output", run_config.output_path,
                      "report file (JSONL)");

  mtprune::RunConfig sweep_config;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "issue counts across thresholds 0..12");
  add_run_options(sweep_cmd, &sweep_config);
  std::string sweep_output;
  sweep_cmd->add_option("-o,--output", sweep_output, "CSV file (default stdout)");

  std::string report_path;
  CLI::App* stats_cmd = app.add_subcommand("stats", "summarize an existing report");
  stats_cmd->add_option("-r,--report", report_path, "report JSONL file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (run_config.output_path.empty()) run_config.output_path = "report.jsonl";
      const mtprune::Report report = mtprune::run(run_config);
      print_summary(report);
      std::printf("report      %s\n", run_config.output_path.c_str());
      return 0;
    }
    if (sweep_cmd->parsed()) {
      const auto rows = mtprune::sweep(sweep_config);
      const std::string csv = mtprune::sweep_to_csv(rows);
      if (sweep_output.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(sweep_output, std::ios::trunc);
        if (!out) throw mtprune::IoError("cannot write " + sweep_output);
        out << csv;
      }
      return 0;
    }
    if (stats_cmd->parsed()) return cmd_stats(report_path);
  } catch (const mtprune::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
