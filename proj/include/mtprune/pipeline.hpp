#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtprune/detection.hpp"
#include "mtprune/pairs.hpp"
#include "mtprune/translator.hpp"

namespace mtprune {

struct RunConfig {
  std::string input_path;
  std::string input_kind = "conllu";  // "conllu" | "raw"
  std::string parser_url;             // required for raw input
  std::string translator = "identity";
  std::string target_lang = "zh";
  int threshold = kDefaultThreshold;
  int max_depth = 10;
  int max_sentences = 64;
  std::string policy_path;  // empty = built-in table
  std::string output_path;  // report JSONL; empty = keep in memory only
  std::string cache_out;    // append fetched translations here; empty = off
  std::uint64_t seed = 0;
  double max_rps = 0.0;
  int workers = 4;
};

struct StageTimings {
  double parse_s = 0.0;
  double generation_s = 0.0;
  double translation_s = 0.0;
  double detection_s = 0.0;
};

struct RunStats {
  std::size_t sentences_in = 0;       // ingested plus unreadable
  std::size_t sentences_skipped = 0;  // lost to parse/extraction/translation
  std::size_t simple_clauses = 0;     // pieces after splitting
  std::size_t generated = 0;
  std::size_t pairs = 0;
  std::size_t issues = 0;
  std::size_t unique_errors = 0;
  // Pairs exceeding each reference threshold, always non-increasing in t.
  std::map<int, std::size_t> per_threshold;
  StageTimings timings;  // shown on stdout, never written to the report
};

// Everything known about one checked pair, faults already applied.
struct PairOutcome {
  SentencePair pair;
  std::string parent_translation;
  std::string derived_translation;
  int distance = 0;
};

struct Report {
  RunConfig config;
  std::vector<SuspiciousIssue> issues;
  std::vector<PairOutcome> outcomes;
  RunStats stats;
};

// The whole pipeline: ingest -> split -> core -> prune -> pair -> translate
// -> compare. A sentence that fails along the way is dropped and counted,
// never fatal. With identical config, fixtures and seed, and any non-remote
// backend, the written report is byte-identical across runs.
Report run(const RunConfig& config);

// One line per issue whose derived sentence and its translation were not
// seen before (exact string match on both).
std::vector<SuspiciousIssue> dedup_errors(const std::vector<SuspiciousIssue>& issues);

// The report file body: one JSON header line (config echo and counts), then
// one JSON line per issue.
std::string report_to_jsonl(const Report& report);
void write_report(const Report& report, const std::string& path);

struct SweepRow {
  int threshold = 0;
  std::size_t issues = 0;
  std::size_t unique_errors = 0;
};

// Runs once, then evaluates thresholds 0, 2, ..., 12 on the same outcomes.
std::vector<SweepRow> sweep(const RunConfig& config);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace mtprune
