#pragma once

#include <chrono>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mtprune/simulator.hpp"

namespace mtprune {

struct TranslationRecord {
  std::string source_text;
  std::string target_text;
  std::string translator_id;
  std::string target_lang;
  std::string fetched_at;  // ISO 8601 UTC
};

// A machine translation backend. Implementations must tolerate concurrent
// translate() calls.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string id() const = 0;
  virtual TranslationRecord translate(const std::string& source_text,
                                      const std::string& target_lang) = 0;
};

// Echoes the source. The baseline backend: its output always satisfies the
// pruning relation, so any issue it raises is a bug here, not in a system
// under test.
class IdentityTranslator : public Translator {
 public:
  std::string id() const override { return "identity"; }
  TranslationRecord translate(const std::string& source_text,
                              const std::string& target_lang) override;
};

// Word-for-word translation from a JSON token table.
class DictTranslator : public Translator {
 public:
  explicit DictTranslator(DictMapping mapping) : mapping_(std::move(mapping)) {}
  static DictTranslator from_file(const std::string& path);
  std::string id() const override { return "dict"; }
  TranslationRecord translate(const std::string& source_text,
                              const std::string& target_lang) override;

 private:
  DictMapping mapping_;
};

// Replays previously fetched translations from a JSONL cache file; never
// goes to the network. Unknown text throws CacheMissError.
class ReplayTranslator : public Translator {
 public:
  explicit ReplayTranslator(const std::string& path);
  std::string id() const override { return "cache"; }
  TranslationRecord translate(const std::string& source_text,
                              const std::string& target_lang) override;
  std::size_t malformed_lines() const { return malformed_; }

 private:
  std::map<std::pair<std::string, std::string>, TranslationRecord> records_;
  std::size_t malformed_ = 0;
};

struct HttpOptions {
  double max_rps = 0.0;          // 0 = unlimited
  int attempts = 3;              // total tries per request
  int backoff_ms = 500;          // doubles after every failed try
  std::string api_key_env = "MTPRUNE_API_KEY";
};

// Generic JSON-over-HTTP backend: POST {"q": text, "target": lang} to a
// configured URL, expect {"translation": "..."}. Honors a token-bucket
// request rate cap and retries transient failures with exponential backoff.
// When the configured environment variable is set, its value is sent as a
// bearer token.
class HttpTranslator : public Translator {
 public:
  HttpTranslator(std::string url, HttpOptions options = {});
  ~HttpTranslator() override;
  std::string id() const override { return "http:" + url_; }
  TranslationRecord translate(const std::string& source_text,
                              const std::string& target_lang) override;

 private:
  std::string url_;
  HttpOptions options_;
  struct Bucket;
  std::unique_ptr<Bucket> bucket_;
};

// Decorator giving any backend an in-memory per-run cache: one underlying
// call per distinct (source_text, target_lang), even under concurrency.
// Optionally appends every fresh record to a JSONL file.
class MemoTranslator : public Translator {
 public:
  explicit MemoTranslator(std::shared_ptr<Translator> inner,
                          std::string persist_path = {});
  std::string id() const override { return inner_->id(); }
  TranslationRecord translate(const std::string& source_text,
                              const std::string& target_lang) override;
  std::size_t backend_calls() const;

 private:
  std::shared_ptr<Translator> inner_;
  std::string persist_path_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>,
           std::shared_future<TranslationRecord>> memo_;
  std::size_t backend_calls_ = 0;
};

// JSONL cache file access. Lines that fail to parse are counted and skipped;
// on duplicate keys the later line wins.
struct CacheData {
  std::map<std::pair<std::string, std::string>, TranslationRecord> records;
  std::size_t malformed = 0;
};
CacheData load_cache(const std::string& path);
void persist(const std::string& path, const TranslationRecord& record);

// A configured backend plus, for simulated runs, the faults to apply.
struct BackendConfig {
  std::shared_ptr<Translator> translator;
  std::optional<FaultSpec> fault;
};

// Builds a backend from a selector string:
//   "identity"
//   "dict:<path>"          word table JSON
//   "cache:<path>"         JSONL replay
//   "http:<url>"           e.g. http:http://localhost:8080/translate
//   "fault:<spec>"         e.g. fault:kind=over,rate=1.0,seed=7,scope=both
//                          (optional base=identity|dict:<path>, default identity)
// Throws ArgumentError for anything else.
BackendConfig make_translator(const std::string& selector, double max_rps = 0.0);

std::string now_utc_iso8601();

}  // namespace mtprune
