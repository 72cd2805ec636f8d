#include "mtprune/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mtprune/clause.hpp"
#include "mtprune/errors.hpp"
#include "mtprune/pruning.hpp"
#include "mtprune/simulator.hpp"

namespace mtprune {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Runs fn(0..n-1) on up to `workers` threads. Results must go to per-index
// slots; exceptions are the callee's problem.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Pairing work for one input sentence.
struct SentenceWork {
  std::vector<std::pair<SentenceRef, std::vector<GeneratedSentence>>> groups;
  bool failed = false;
};

}  // namespace

Report run(const RunConfig& config) {
  Report report;
  report.config = config;
  RunStats& stats = report.stats;

  const RelationPolicy policy =
      config.policy_path.empty() ? default_policy() : load_policy(config.policy_path);
  GenerationLimits limits;
  limits.max_depth = config.max_depth;
  limits.max_sentences = config.max_sentences;

  // Ingest.
  auto t_start = std::chrono::steady_clock::now();
  std::vector<DependencyTree> trees;
  if (config.input_kind == "conllu") {
    std::vector<std::string> errors;
    trees = parse_conllu_lenient(read_file(config.input_path), &errors);
    stats.sentences_in = trees.size() + errors.size();
    stats.sentences_skipped += errors.size();
  } else if (config.input_kind == "raw") {
    if (config.parser_url.empty())
      throw ArgumentError("raw input needs --parser-url");
    std::istringstream in(read_file(config.input_path));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++n;
      ++stats.sentences_in;
      try {
        DependencyTree parsed = parse_remote(config.parser_url, line);
        trees.emplace_back("r" + std::to_string(n), parsed.tokens());
      } catch (const Error&) {
        ++stats.sentences_skipped;
      }
    }
  } else {
    throw ArgumentError("unknown input kind '" + config.input_kind + "'");
  }
  stats.timings.parse_s = seconds_since(t_start);

  // Split, extract, prune.
  t_start = std::chrono::steady_clock::now();
  std::vector<SentenceWork> work(trees.size());
  parallel_for(trees.size(), config.workers, [&](std::size_t i) {
    SentenceWork& w = work[i];
    try {
      for (const DependencyTree& simple : to_simple(trees[i])) {
        CoreSemantics core;
        try {
          core = extract_core(simple);
        } catch (const ExtractionError&) {
          w.failed = true;
          continue;
        }
        auto generated = generate(simple, core, policy, limits);
        w.groups.emplace_back(SentenceRef{simple.sentence_id(), simple.text()},
                              std::move(generated));
      }
    } catch (const std::exception&) {
      w.groups.clear();
      w.failed = true;
    }
  });

  std::vector<SentencePair> pairs;
  for (const SentenceWork& w : work) {
    if (w.groups.empty()) {
      if (w.failed) ++stats.sentences_skipped;
      continue;
    }
    for (const auto& [original, generated] : w.groups) {
      ++stats.simple_clauses;
      stats.generated += generated.size();
      for (SentencePair& p : make_pairs(original, generated))
        pairs.push_back(std::move(p));
    }
  }
  stats.pairs = pairs.size();
  stats.timings.generation_s = seconds_since(t_start);

  // Translate every distinct text once.
  t_start = std::chrono::steady_clock::now();
  BackendConfig backend = make_translator(config.translator, config.max_rps);
  MemoTranslator translator(backend.translator, config.cache_out);

  std::vector<std::string> texts;
  {
    std::set<std::string> seen;
    for (const SentencePair& p : pairs) {
      if (seen.insert(p.parent.text).second) texts.push_back(p.parent.text);
      if (seen.insert(p.derived.text).second) texts.push_back(p.derived.text);
    }
  }
  std::vector<bool> text_failed(texts.size(), false);
  parallel_for(texts.size(), config.workers, [&](std::size_t i) {
    try {
      translator.translate(texts[i], config.target_lang);
    } catch (const std::exception&) {
      text_failed[i] = true;
    }
  });
  std::set<std::string> failed_texts;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (text_failed[i]) failed_texts.insert(texts[i]);
  }
  stats.timings.translation_s = seconds_since(t_start);

  // Compare.
  t_start = std::chrono::steady_clock::now();
  std::set<std::string> failed_sentences;
  report.outcomes.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const SentencePair& pair = pairs[k];
    if (failed_texts.count(pair.parent.text) > 0 ||
        failed_texts.count(pair.derived.text) > 0) {
      failed_sentences.insert(pair.original_id);
      continue;
    }
    PairOutcome outcome;
    outcome.pair = pair;
    outcome.parent_translation =
        translator.translate(pair.parent.text, config.target_lang).target_text;
    outcome.derived_translation =
        translator.translate(pair.derived.text, config.target_lang).target_text;

    if (backend.fault && fault_gate(*backend.fault, k)) {
      const FaultSpec& spec = *backend.fault;
      if (spec.scope != FaultScope::DerivedOnly) {
        InjectionContext ctx{PairRole::Parent, outcome.derived_translation,
                             pair_seed(spec.seed, k, PairRole::Parent)};
        outcome.parent_translation = inject(outcome.parent_translation, spec, ctx);
      }
      if (spec.scope != FaultScope::ParentOnly) {
        InjectionContext ctx{PairRole::Derived, outcome.parent_translation,
                             pair_seed(spec.seed, k, PairRole::Derived)};
        outcome.derived_translation = inject(outcome.derived_translation, spec, ctx);
      }
    }

    outcome.distance = distance(outcome.parent_translation, outcome.derived_translation);
    if (auto issue = detect(pair, outcome.parent_translation,
                            outcome.derived_translation, config.threshold)) {
      report.issues.push_back(std::move(*issue));
    }
    report.outcomes.push_back(std::move(outcome));
  }
  stats.sentences_skipped += failed_sentences.size();
  for (int t = kMinThreshold; t <= kMaxThreshold; t += 2) {
    std::size_t count = 0;
    for (const PairOutcome& o : report.outcomes) {
      if (o.distance > t) ++count;
    }
    stats.per_threshold[t] = count;
  }
  stats.issues = report.issues.size();
  stats.unique_errors = dedup_errors(report.issues).size();
  stats.timings.detection_s = seconds_since(t_start);

  if (!config.output_path.empty()) write_report(report, config.output_path);
  return report;
}

std::vector<SuspiciousIssue> dedup_errors(const std::vector<SuspiciousIssue>& issues) {
  std::set<std::pair<std::string, std::string>> seen;
  std::vector<SuspiciousIssue> unique;
  for (const SuspiciousIssue& issue : issues) {
    if (seen.insert({issue.derived_text, issue.derived_translation}).second)
      unique.push_back(issue);
  }
  return unique;
}

namespace {

nlohmann::json issue_to_json(const SuspiciousIssue& issue) {
  nlohmann::json doc = {
      {"kind", "issue"},
      {"pair_id", issue.pair_id},
      {"original_id", issue.original_id},
      {"parent_id", issue.parent_id},
      {"derived_id", issue.derived_id},
      {"parent_text", issue.parent_text},
      {"derived_text", issue.derived_text},
      {"parent_translation", issue.parent_translation},
      {"derived_translation", issue.derived_translation},
      {"distance", issue.distance},
      {"threshold", issue.threshold},
  };
  if (issue.label) {
    doc["label"] = *issue.label;
  } else {
    doc["label"] = nullptr;
  }
  return doc;
}

}  // namespace

std::string report_to_jsonl(const Report& report) {
  const RunStats& stats = report.stats;
  nlohmann::json per_threshold = nlohmann::json::object();
  for (const auto& [t, count] : stats.per_threshold)
    per_threshold[std::to_string(t)] = count;

  // No timings here on purpose: the report must not change between identical
  // runs.
  nlohmann::json header = {
      {"kind", "header"},
      {"tool", "mtprune"},
      {"version", "0.1.0"},
      {"config",
       {
           {"input", report.config.input_path},
           {"input_kind", report.config.input_kind},
           {"translator", report.config.translator},
           {"target_lang", report.config.target_lang},
           {"threshold", report.config.threshold},
           {"max_depth", report.config.max_depth},
           {"max_sentences", report.config.max_sentences},
           {"policy", report.config.policy_path.empty() ? "builtin"
                                                        : report.config.policy_path},
           {"seed", report.config.seed},
       }},
      {"counts",
       {
           {"sentences_in", stats.sentences_in},
           {"sentences_skipped", stats.sentences_skipped},
           {"simple_clauses", stats.simple_clauses},
           {"generated", stats.generated},
           {"pairs", stats.pairs},
           {"issues", stats.issues},
           {"unique_errors", stats.unique_errors},
           {"per_threshold", per_threshold},
       }},
  };

  std::string out = header.dump();
  out.push_back('\n');
  for (const SuspiciousIssue& issue : report.issues) {
    out += issue_to_json(issue).dump();
    out.push_back('\n');
  }
  return out;
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write report file " + path);
  out << report_to_jsonl(report);
}

std::vector<SweepRow> sweep(const RunConfig& config) {
  RunConfig base = config;
  base.threshold = kMinThreshold;
  base.output_path.clear();
  const Report report = run(base);

  std::vector<SweepRow> rows;
  for (int t = kMinThreshold; t <= kMaxThreshold; t += 2) {
    SweepRow row;
    row.threshold = t;
    std::vector<SuspiciousIssue> issues;
    for (const PairOutcome& o : report.outcomes) {
      if (o.distance > t) {
        SuspiciousIssue issue;
        issue.derived_text = o.pair.derived.text;
        issue.derived_translation = o.derived_translation;
        issues.push_back(std::move(issue));
        ++row.issues;
      }
    }
    row.unique_errors = dedup_errors(issues).size();
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "t,issues,unique_errors\n";
  for (const SweepRow& row : rows) {
    out += std::to_string(row.threshold) + "," + std::to_string(row.issues) + "," +
           std::to_string(row.unique_errors) + "\n";
  }
  return out;
}

}  // namespace mtprune
