#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include "helpers.hpp"
#include "mtprune/errors.hpp"
#include "mtprune/translator.hpp"

#include <json.hpp>

using namespace mtprune;

namespace {

std::string temp_jsonl() {
  static std::atomic<int> counter{0};
  return (std::filesystem::temp_directory_path() /
          ("mtprune_cache_" + std::to_string(++counter) + "_" +
           std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()) +
           ".jsonl"))
      .string();
}

// An in-process translation endpoint the HTTP backend can talk to.
struct StubServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  std::mutex mu;
  std::vector<std::string> bodies;
  std::vector<std::string> auth_headers;
  std::vector<std::chrono::steady_clock::time_point> arrivals;
  int fail_first = 0;  // respond 500 to this many requests
  std::string reply_body;  // empty = echo {"translation": "<q> in <target>"}

  StubServer() {
    server.Post("/translate", [this](const httplib::Request& req,
                                     httplib::Response& res) {
      bool fail;
      {
        std::lock_guard<std::mutex> lock(mu);
        arrivals.push_back(std::chrono::steady_clock::now());
        bodies.push_back(req.body);
        auth_headers.push_back(req.get_header_value("Authorization"));
        fail = fail_first > 0;
        if (fail) --fail_first;
      }
      if (fail) {
        res.status = 500;
        return;
      }
      if (!reply_body.empty()) {
        res.set_content(reply_body, "application/json");
        return;
      }
      const auto doc = nlohmann::json::parse(req.body);
      const nlohmann::json reply = {
          {"translation",
           doc["q"].get<std::string>() + " in " + doc["target"].get<std::string>()}};
      res.set_content(reply.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this]() { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  ~StubServer() {
    server.stop();
    thread.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port) + "/translate";
  }
};

}  // namespace

TEST_CASE("identity backend echoes") {
  IdentityTranslator identity;
  const TranslationRecord r = identity.translate("A scene comes.", "zh");
  CHECK(r.source_text == "A scene comes.");
  CHECK(r.target_text == "A scene comes.");
  CHECK(r.translator_id == "identity");
  CHECK(r.target_lang == "zh");
  CHECK_FALSE(r.fetched_at.empty());
}

TEST_CASE("dict backend maps word cores") {
  DictTranslator dict(DictMapping{{"scene", "场景"}, {"comes", "出现"}});
  CHECK(dict.translate("A scene comes.", "zh").target_text == "A 场景 出现.");
  CHECK(dict.id() == "dict");
}

TEST_CASE("replay backend serves the frozen fixture and misses loudly") {
  ReplayTranslator replay(testutil::fixture_path("motivating_cache.jsonl"));
  CHECK(replay.malformed_lines() == 0);
  CHECK(replay.translate("Scene comes.", "zh").target_text == "场景出现了。");
  CHECK_THROWS_AS(replay.translate("Scene comes.", "fr"), CacheMissError);
  CHECK_THROWS_AS(replay.translate("never cached", "zh"), CacheMissError);
  CHECK_THROWS_AS(ReplayTranslator("/nonexistent/cache.jsonl"), IoError);
}

TEST_CASE("cache load counts malformed lines and keeps the last duplicate") {
  const CacheData data = load_cache(testutil::fixture_path("malformed_cache.jsonl"));
  CHECK(data.malformed == 2);
  CHECK(data.records.size() == 2);
  CHECK(data.records.at({"A scene comes.", "zh"}).target_text == "second");
}

TEST_CASE("persist then load round-trips a record") {
  const std::string path = temp_jsonl();
  TranslationRecord r;
  r.source_text = "Scene comes.";
  r.target_text = "场景出现了。";
  r.translator_id = "frozen";
  r.target_lang = "zh";
  r.fetched_at = "2024-03-01T00:00:00Z";
  persist(path, r);
  persist(path, r);  // append twice; load keeps one

  const CacheData data = load_cache(path);
  CHECK(data.malformed == 0);
  REQUIRE(data.records.size() == 1);
  const TranslationRecord& back = data.records.at({r.source_text, r.target_lang});
  CHECK(back.target_text == r.target_text);
  CHECK(back.translator_id == r.translator_id);
  CHECK(back.fetched_at == r.fetched_at);
  std::remove(path.c_str());
}

TEST_CASE("memo calls the backend once per distinct text") {
  auto inner = std::make_shared<IdentityTranslator>();
  MemoTranslator memo(inner, "");

  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&memo]() {
      for (int i = 0; i < 50; ++i) {
        memo.translate("text " + std::to_string(i % 5), "zh");
      }
    });
  }
  for (std::thread& t : threads) t.join();
  CHECK(memo.backend_calls() == 5);
  CHECK(memo.translate("text 0", "de").target_text == "text 0");
  CHECK(memo.backend_calls() == 6);  // new language, new key
}

TEST_CASE("memo persists fresh records as a loadable cache") {
  const std::string path = temp_jsonl();
  {
    MemoTranslator memo(std::make_shared<IdentityTranslator>(), path);
    memo.translate("one", "zh");
    memo.translate("two", "zh");
    memo.translate("one", "zh");
  }
  const CacheData data = load_cache(path);
  CHECK(data.records.size() == 2);
  CHECK(data.records.at({"one", "zh"}).target_text == "one");
  std::remove(path.c_str());
}

TEST_CASE("http backend round-trips against a stub endpoint") {
  StubServer stub;
  HttpTranslator http(stub.url());
  const TranslationRecord r = http.translate("A scene comes.", "zh");
  CHECK(r.target_text == "A scene comes. in zh");
  CHECK(r.translator_id == "http:" + stub.url());

  const auto body = nlohmann::json::parse(stub.bodies.at(0));
  CHECK(body.at("q") == "A scene comes.");
  CHECK(body.at("target") == "zh");
  CHECK(stub.auth_headers.at(0).empty());
}

TEST_CASE("http backend sends the api key as a bearer token") {
  StubServer stub;
  setenv("MTPRUNE_API_KEY", "sekrit", 1);
  HttpTranslator http(stub.url());
  http.translate("text", "zh");
  unsetenv("MTPRUNE_API_KEY");
  CHECK(stub.auth_headers.at(0) == "Bearer sekrit");
}

TEST_CASE("http backend retries transient failures") {
  StubServer stub;
  stub.fail_first = 2;
  HttpOptions options;
  options.backoff_ms = 5;
  HttpTranslator http(stub.url(), options);
  CHECK(http.translate("text", "zh").target_text == "text in zh");
  CHECK(stub.bodies.size() == 3);
}

TEST_CASE("http backend gives up after its attempts run out") {
  StubServer stub;
  stub.fail_first = 99;
  HttpOptions options;
  options.backoff_ms = 1;
  HttpTranslator http(stub.url(), options);
  CHECK_THROWS_AS(http.translate("text", "zh"), TranslationError);
  CHECK(stub.bodies.size() == 3);
}

TEST_CASE("a malformed endpoint reply is a protocol error, not a retry") {
  StubServer stub;
  stub.reply_body = "this is not json";
  HttpTranslator http(stub.url());
  CHECK_THROWS_AS(http.translate("text", "zh"), ProtocolError);
  CHECK(stub.bodies.size() == 1);

  stub.reply_body = R"({"wrong": "shape"})";
  CHECK_THROWS_AS(http.translate("text", "zh"), ProtocolError);
}

TEST_CASE("the rate limiter spaces requests out") {
  StubServer stub;
  HttpOptions options;
  options.max_rps = 100.0;  // one slot every 10 ms
  HttpTranslator http(stub.url(), options);

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> threads;
  for (int t = 0; t < 3; ++t) {
    threads.emplace_back([&http]() {
      for (int i = 0; i < 2; ++i) http.translate("text", "zh");
    });
  }
  for (std::thread& t : threads) t.join();
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  // Six requests, first one free: at least five full slots.
  CHECK(stub.bodies.size() == 6);
  CHECK(elapsed_ms >= 45.0);
}

TEST_CASE("http backend rejects urls without a scheme") {
  CHECK_THROWS_AS(HttpTranslator("localhost:8080/translate"), ArgumentError);
}

TEST_CASE("make_translator understands every selector") {
  CHECK(make_translator("identity").translator->id() == "identity");

  const std::string cache = testutil::fixture_path("motivating_cache.jsonl");
  CHECK(make_translator("cache:" + cache).translator->id() == "cache");

  const std::string dict = testutil::fixture_path("corpus_dict.json");
  const BackendConfig dict_backend = make_translator("dict:" + dict);
  CHECK(dict_backend.translator->id() == "dict");
  CHECK_FALSE(dict_backend.fault.has_value());

  const BackendConfig http = make_translator("http:http://localhost:1/t");
  CHECK(http.translator->id() == "http:http://localhost:1/t");

  const BackendConfig faulty =
      make_translator("fault:kind=over,rate=0.5,seed=7,scope=both");
  CHECK(faulty.translator->id() == "identity");
  REQUIRE(faulty.fault.has_value());
  CHECK(faulty.fault->kind == FaultKind::OverTranslation);
  CHECK(faulty.fault->rate == 0.5);
  CHECK(faulty.fault->seed == 7);
  CHECK(faulty.fault->scope == FaultScope::Both);

  const BackendConfig faulty_dict =
      make_translator("fault:base=dict:" + dict + ",kind=under,rate=1.0");
  CHECK(faulty_dict.translator->id() == "dict");
  CHECK(faulty_dict.fault->kind == FaultKind::UnderTranslation);

  CHECK_THROWS_AS(make_translator("telepathy"), ArgumentError);
  CHECK_THROWS_AS(make_translator("fault:rate=1.0"), ArgumentError);
}
