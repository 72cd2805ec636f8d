#include "mtprune/translator.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mtprune/errors.hpp"

namespace mtprune {

namespace {

TranslationRecord make_record(std::string source, std::string target,
                              std::string id, std::string lang) {
  TranslationRecord r;
  r.source_text = std::move(source);
  r.target_text = std::move(target);
  r.translator_id = std::move(id);
  r.target_lang = std::move(lang);
  r.fetched_at = now_utc_iso8601();
  return r;
}

}  // namespace

std::string now_utc_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TranslationRecord IdentityTranslator::translate(const std::string& source_text,
                                                const std::string& target_lang) {
  return make_record(source_text, source_text, id(), target_lang);
}

DictTranslator DictTranslator::from_file(const std::string& path) {
  return DictTranslator(load_dict_mapping(path));
}

TranslationRecord DictTranslator::translate(const std::string& source_text,
                                            const std::string& target_lang) {
  return make_record(source_text, dict_translate(source_text, mapping_), id(),
                     target_lang);
}

ReplayTranslator::ReplayTranslator(const std::string& path) {
  CacheData data = load_cache(path);
  records_ = std::move(data.records);
  malformed_ = data.malformed;
}

TranslationRecord ReplayTranslator::translate(const std::string& source_text,
                                              const std::string& target_lang) {
  const auto it = records_.find({source_text, target_lang});
  if (it == records_.end())
    throw CacheMissError("no cached translation for \"" + source_text + "\" -> " +
                         target_lang);
  return it->second;
}

// ---- HTTP backend ----------------------------------------------------------

// Token bucket with capacity one: a request may pass every 1/rps seconds.
struct HttpTranslator::Bucket {
  explicit Bucket(double rps) : interval(rps > 0 ? 1.0 / rps : 0.0) {}

  void acquire() {
    if (interval <= 0.0) return;
    std::unique_lock<std::mutex> lock(mu);
    const auto now = std::chrono::steady_clock::now();
    auto at = std::max(now, next);
    next = at + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(interval));
    lock.unlock();
    std::this_thread::sleep_until(at);
  }

  double interval;
  std::mutex mu;
  std::chrono::steady_clock::time_point next = std::chrono::steady_clock::now();
};

HttpTranslator::HttpTranslator(std::string url, HttpOptions options)
    : url_(std::move(url)),
      options_(options),
      bucket_(std::make_unique<Bucket>(options.max_rps)) {
  if (url_.find("://") == std::string::npos)
    throw ArgumentError("translator url must start with http:// or https://");
}

HttpTranslator::~HttpTranslator() = default;

TranslationRecord HttpTranslator::translate(const std::string& source_text,
                                            const std::string& target_lang) {
  const auto scheme = url_.find("://");
  const auto path_pos = url_.find('/', scheme + 3);
  const std::string base =
      path_pos == std::string::npos ? url_ : url_.substr(0, path_pos);
  const std::string path = path_pos == std::string::npos ? "/" : url_.substr(path_pos);

  nlohmann::json req = {{"q", source_text}, {"target", target_lang}};
  const std::string body = req.dump();

  std::string api_key;
  if (const char* env = std::getenv(options_.api_key_env.c_str()); env != nullptr)
    api_key = env;

  std::string last_error = "no attempt made";
  int backoff = options_.backoff_ms;
  for (int attempt = 1; attempt <= options_.attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    bucket_->acquire();

    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "connection failed";
      continue;
    }
    if (res->status != 200) {
      last_error = "status " + std::to_string(res->status);
      continue;
    }
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw ProtocolError(std::string("translator response is not JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("translation") ||
        !doc["translation"].is_string())
      throw ProtocolError("translator response lacks a 'translation' string");
    return make_record(source_text, doc["translation"].get<std::string>(), id(),
                       target_lang);
  }
  throw TranslationError("translation failed after " +
                         std::to_string(options_.attempts) + " attempts (" +
                         last_error + ") for url " + url_);
}

// ---- Memoization -----------------------------------------------------------

MemoTranslator::MemoTranslator(std::shared_ptr<Translator> inner,
                               std::string persist_path)
    : inner_(std::move(inner)), persist_path_(std::move(persist_path)) {}

TranslationRecord MemoTranslator::translate(const std::string& source_text,
                                            const std::string& target_lang) {
  const std::pair<std::string, std::string> key{source_text, target_lang};
  std::promise<TranslationRecord> promise;
  std::shared_future<TranslationRecord> future;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      future = promise.get_future().share();
      memo_.emplace(key, future);
      owner = true;
      ++backend_calls_;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    try {
      TranslationRecord record = inner_->translate(source_text, target_lang);
      if (!persist_path_.empty()) {
        std::lock_guard<std::mutex> lock(mu_);
        persist(persist_path_, record);
      }
      promise.set_value(std::move(record));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::size_t MemoTranslator::backend_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return backend_calls_;
}

// ---- JSONL cache ------------------------------------------------------------

CacheData load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open cache file " + path);
  CacheData data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      ++data.malformed;
      continue;
    }
    if (!doc.is_object() || !doc.contains("source_text") ||
        !doc.contains("target_text") || !doc["source_text"].is_string() ||
        !doc["target_text"].is_string()) {
      ++data.malformed;
      continue;
    }
    TranslationRecord r;
    r.source_text = doc["source_text"].get<std::string>();
    r.target_text = doc["target_text"].get<std::string>();
    r.translator_id = doc.value("translator_id", std::string());
    r.target_lang = doc.value("target_lang", std::string());
    r.fetched_at = doc.value("fetched_at", std::string());
    data.records[{r.source_text, r.target_lang}] = std::move(r);  // last wins
  }
  return data;
}

void persist(const std::string& path, const TranslationRecord& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot append to cache file " + path);
  nlohmann::json doc = {
      {"source_text", record.source_text},   {"target_text", record.target_text},
      {"translator_id", record.translator_id}, {"target_lang", record.target_lang},
      {"fetched_at", record.fetched_at},
  };
  out << doc.dump() << '\n';
}

// ---- Backend selection -------------------------------------------------------

BackendConfig make_translator(const std::string& selector, double max_rps) {
  BackendConfig config;
  if (selector == "identity") {
    config.translator = std::make_shared<IdentityTranslator>();
    return config;
  }
  if (selector.rfind("dict:", 0) == 0) {
    config.translator =
        std::make_shared<DictTranslator>(load_dict_mapping(selector.substr(5)));
    return config;
  }
  if (selector.rfind("cache:", 0) == 0) {
    config.translator = std::make_shared<ReplayTranslator>(selector.substr(6));
    return config;
  }
  if (selector.rfind("http:", 0) == 0) {
    HttpOptions options;
    options.max_rps = max_rps;
    config.translator =
        std::make_shared<HttpTranslator>(selector.substr(5), options);
    return config;
  }
  if (selector.rfind("fault:", 0) == 0) {
    // Pull out an optional base=... item; the rest is the fault spec.
    std::string base = "identity";
    std::string rest;
    std::stringstream in(selector.substr(6));
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.rfind("base=", 0) == 0) {
        base = item.substr(5);
      } else {
        if (!rest.empty()) rest.push_back(',');
        rest += item;
      }
    }
    config = make_translator(base, max_rps);
    config.fault = parse_fault_spec(rest);
    return config;
  }
  throw ArgumentError("unknown translator '" + selector +
                      "' (want identity, dict:<path>, cache:<path>, http:<url> "
                      "or fault:<spec>)");
}

}  // namespace mtprune
