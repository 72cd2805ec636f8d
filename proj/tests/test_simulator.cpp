#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mtprune/detection.hpp"
#include "mtprune/errors.hpp"
#include "mtprune/simulator.hpp"
#include "mtprune/text.hpp"

using namespace mtprune;

TEST_CASE("parse_fault_spec reads a full spec") {
  const FaultSpec spec = parse_fault_spec("kind=over,rate=1.0,seed=7,scope=both");
  CHECK(spec.kind == FaultKind::OverTranslation);
  CHECK(spec.rate == 1.0);
  CHECK(spec.seed == 7);
  CHECK(spec.scope == FaultScope::Both);
}

TEST_CASE("parse_fault_spec fills in defaults") {
  const FaultSpec spec = parse_fault_spec("kind=under");
  CHECK(spec.kind == FaultKind::UnderTranslation);
  CHECK(spec.rate == 0.0);
  CHECK(spec.seed == 0);
  CHECK(spec.scope == FaultScope::ParentOnly);
}

TEST_CASE("parse_fault_spec knows every kind and scope") {
  CHECK(parse_fault_spec("kind=under").kind == FaultKind::UnderTranslation);
  CHECK(parse_fault_spec("kind=over").kind == FaultKind::OverTranslation);
  CHECK(parse_fault_spec("kind=mis").kind == FaultKind::Mistranslation);
  CHECK(parse_fault_spec("kind=incorrect").kind == FaultKind::IncorrectModification);
  CHECK(parse_fault_spec("kind=unclear").kind == FaultKind::UnclearLogic);

  CHECK(parse_fault_spec("kind=mis,scope=parent_only").scope ==
        FaultScope::ParentOnly);
  CHECK(parse_fault_spec("kind=mis,scope=derived_only").scope ==
        FaultScope::DerivedOnly);
  CHECK(parse_fault_spec("kind=mis,scope=both").scope == FaultScope::Both);

  for (FaultKind k : {FaultKind::UnderTranslation, FaultKind::OverTranslation,
                      FaultKind::Mistranslation, FaultKind::IncorrectModification,
                      FaultKind::UnclearLogic}) {
    CHECK(parse_fault_spec(std::string("kind=") + to_string(k)).kind == k);
  }
}

TEST_CASE("parse_fault_spec rejects nonsense") {
  CHECK_THROWS_AS(parse_fault_spec(""), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("rate=1.0"), ArgumentError);  // kind missing
  CHECK_THROWS_AS(parse_fault_spec("kind=sideways"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,rate=1.5"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,rate=-0.1"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,rate=lots"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,rate=0.5x"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,seed=soon"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,scope=everywhere"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind=under,color=red"), ArgumentError);
  CHECK_THROWS_AS(parse_fault_spec("kind"), ArgumentError);  // no '='
}

TEST_CASE("load_dict_mapping reads the corpus table") {
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  CHECK(mapping.size() == 174);
  CHECK(mapping.at("Maria") == "xMaria");

  CHECK_THROWS_AS(load_dict_mapping("/nonexistent/dict.json"), IoError);
}

TEST_CASE("dict_translate substitutes token cores") {
  const DictMapping mapping{{"a", "α"}, {"movie", "电影"}, {"scene", "场景"}};
  CHECK(dict_translate("a b a.", mapping) == "α b α.");
  CHECK(dict_translate("the movie.", mapping) == "the 电影.");
  CHECK(dict_translate("(movie)!", mapping) == "(电影)!");
  CHECK(dict_translate("scene", mapping) == "场景");
  CHECK(dict_translate("unmapped words stay", mapping) == "unmapped words stay");
  CHECK(dict_translate("", mapping) == "");
}

TEST_CASE("pair seeds differ by ordinal and by side") {
  const std::uint64_t s = 42;
  CHECK(pair_seed(s, 0, PairRole::Parent) != pair_seed(s, 0, PairRole::Derived));
  CHECK(pair_seed(s, 0, PairRole::Parent) != pair_seed(s, 1, PairRole::Parent));
  CHECK(pair_seed(s, 3, PairRole::Derived) != pair_seed(s, 4, PairRole::Derived));
  CHECK(pair_seed(s, 5, PairRole::Parent) == pair_seed(s, 5, PairRole::Parent));
  CHECK(pair_seed(7, 5, PairRole::Parent) != pair_seed(8, 5, PairRole::Parent));
}

TEST_CASE("the fault gate obeys its rate at the extremes") {
  FaultSpec never = parse_fault_spec("kind=under,rate=0.0,seed=9");
  FaultSpec always = parse_fault_spec("kind=under,rate=1.0,seed=9");
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK_FALSE(fault_gate(never, k));
    CHECK(fault_gate(always, k));
  }
  FaultSpec half = parse_fault_spec("kind=under,rate=0.5,seed=9");
  std::size_t fired = 0;
  for (std::size_t k = 0; k < 400; ++k) {
    const bool hit = fault_gate(half, k);
    CHECK(hit == fault_gate(half, k));  // deterministic
    if (hit) ++fired;
  }
  CHECK(fired > 100);
  CHECK(fired < 300);
}

TEST_CASE("under-translation drops one token the counterpart also has") {
  const FaultSpec spec = parse_fault_spec("kind=under,rate=1.0");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    InjectionContext ctx{PairRole::Parent, std::string("beta gamma"), seed};
    const std::string out = inject("alpha beta gamma", spec, ctx);
    const auto tokens = text::split_ws(out);
    REQUIRE(tokens.size() == 2);
    // Only beta and gamma occur equally often on both sides, so alpha stays.
    CHECK(std::find(tokens.begin(), tokens.end(), "alpha") != tokens.end());
    CHECK(out == inject("alpha beta gamma", spec, ctx));
  }
}

TEST_CASE("under-translation falls back to any token without a counterpart") {
  const FaultSpec spec = parse_fault_spec("kind=under,rate=1.0");
  InjectionContext ctx{PairRole::Parent, std::nullopt, 3};
  const std::string out = inject("alpha beta", spec, ctx);
  CHECK((out == "alpha" || out == "beta"));
}

TEST_CASE("over-translation doubles a shared token") {
  const FaultSpec spec = parse_fault_spec("kind=over,rate=1.0");
  InjectionContext ctx{PairRole::Derived, std::string("alpha beta gamma"), 11};
  const std::string out = inject("alpha beta", spec, ctx);
  const auto tokens = text::split_ws(out);
  REQUIRE(tokens.size() == 3);
  CHECK((out == "alpha alpha beta" || out == "alpha beta beta"));
}

TEST_CASE("mistranslation plants the sentinel token") {
  const FaultSpec spec = parse_fault_spec("kind=mis,rate=1.0");
  InjectionContext ctx{PairRole::Parent, std::string("alpha beta"), 5};
  const std::string out = inject("alpha beta", spec, ctx);
  const auto tokens = text::split_ws(out);
  REQUIRE(tokens.size() == 2);
  CHECK(std::count(tokens.begin(), tokens.end(), "zzmistranslatedzz") == 1);
}

TEST_CASE("word-order faults keep the bag of words intact") {
  for (const char* kind : {"incorrect", "unclear"}) {
    const FaultSpec spec = parse_fault_spec(std::string("kind=") + kind + ",rate=1.0");
    InjectionContext ctx{PairRole::Parent, std::nullopt, 17};
    const std::string out = inject("alpha beta gamma delta", spec, ctx);
    CHECK(out != "alpha beta gamma delta");
    CHECK(bow(out) == bow("alpha beta gamma delta"));
    CHECK(inject("solo", spec, ctx) == "solo");
  }
}

TEST_CASE("injection leaves empty input alone") {
  const FaultSpec spec = parse_fault_spec("kind=under,rate=1.0");
  InjectionContext ctx{PairRole::Parent, std::nullopt, 0};
  CHECK(inject("", spec, ctx) == "");
}

TEST_CASE("measure over a clean corpus raises nothing") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  const FaultSpec spec = parse_fault_spec("kind=under,rate=0.0");

  const MeasureResult r = measure(corpus, spec, 0, mapping);
  CHECK(r.pairs_total == 540);
  CHECK(r.injected == 0);
  CHECK(r.detected == 0);
  CHECK(r.false_positives == 0);
  CHECK(r.recall == 0.0);
}

TEST_CASE("measure catches every parent-side under-translation") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  const FaultSpec spec =
      parse_fault_spec("kind=under,rate=1.0,seed=1,scope=parent_only");

  const MeasureResult r = measure(corpus, spec, 0, mapping);
  CHECK(r.pairs_total >= 500);
  CHECK(r.injected == r.pairs_total);
  CHECK(r.detected == r.injected);
  CHECK(r.recall == 1.0);
  CHECK(r.false_positives == 0);

  // A dropped token creates an excess of exactly one, below this bar.
  const MeasureResult strict = measure(corpus, spec, 1, mapping);
  CHECK(strict.recall == 0.0);
  CHECK(strict.detected == 0);
}

TEST_CASE("measure catches every derived-side over-translation") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  const FaultSpec spec =
      parse_fault_spec("kind=over,rate=1.0,seed=2,scope=derived_only");

  const MeasureResult r = measure(corpus, spec, 0, mapping);
  CHECK(r.injected == r.pairs_total);
  CHECK(r.recall == 1.0);
}

TEST_CASE("measure catches mistranslation on either side") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  for (const char* scope : {"parent_only", "derived_only"}) {
    const FaultSpec spec = parse_fault_spec(
        std::string("kind=mis,rate=1.0,seed=3,scope=") + scope);
    const MeasureResult r = measure(corpus, spec, 0, mapping);
    CHECK(r.recall == 1.0);
  }
}

TEST_CASE("measure scores order scrambles as invisible") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  for (const char* kind : {"incorrect", "unclear"}) {
    const FaultSpec spec =
        parse_fault_spec(std::string("kind=") + kind + ",rate=1.0,seed=4");
    const MeasureResult r = measure(corpus, spec, 0, mapping);
    CHECK(r.injected == r.pairs_total);
    CHECK(r.recall == 0.0);
    CHECK(r.detected == 0);
    CHECK(r.false_positives == 0);
  }
}

TEST_CASE("faults planted on both sides do not count toward recall") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  const FaultSpec spec = parse_fault_spec("kind=under,rate=1.0,seed=5,scope=both");
  const MeasureResult r = measure(corpus, spec, 0, mapping);
  CHECK(r.injected == r.pairs_total);
  CHECK(r.recall == 0.0);
}

TEST_CASE("measure at a partial rate splits the corpus and stays deterministic") {
  const auto corpus = testutil::load_trees("corpus.conllu");
  const DictMapping mapping =
      load_dict_mapping(testutil::fixture_path("corpus_dict.json"));
  const FaultSpec spec =
      parse_fault_spec("kind=under,rate=0.5,seed=6,scope=parent_only");

  const MeasureResult a = measure(corpus, spec, 0, mapping);
  const MeasureResult b = measure(corpus, spec, 0, mapping);
  CHECK(a.pairs_total == b.pairs_total);
  CHECK(a.injected == b.injected);
  CHECK(a.detected == b.detected);
  CHECK(a.recall == b.recall);
  CHECK(a.false_positives == b.false_positives);

  CHECK(a.injected > 0);
  CHECK(a.injected < a.pairs_total);
  CHECK(a.recall == 1.0);
  CHECK(a.false_positives == 0);
}
