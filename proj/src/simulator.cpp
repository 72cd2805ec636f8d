#include "mtprune/simulator.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mtprune/clause.hpp"
#include "mtprune/detection.hpp"
#include "mtprune/errors.hpp"
#include "mtprune/pairs.hpp"
#include "mtprune/text.hpp"

namespace mtprune {

namespace {

// Replacement token for simulated mistranslations; letters only so bag
// tokenization keeps it, and weird enough to stay out of any vocabulary.
const char* const kMistranslationToken = "zzmistranslatedzz";

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

const char* to_string(FaultKind k) {
  switch (k) {
    case FaultKind::UnderTranslation: return "under";
    case FaultKind::OverTranslation: return "over";
    case FaultKind::Mistranslation: return "mis";
    case FaultKind::IncorrectModification: return "incorrect";
    case FaultKind::UnclearLogic: return "unclear";
  }
  return "?";
}

const char* to_string(FaultScope s) {
  switch (s) {
    case FaultScope::ParentOnly: return "parent_only";
    case FaultScope::DerivedOnly: return "derived_only";
    case FaultScope::Both: return "both";
  }
  return "?";
}

FaultSpec parse_fault_spec(const std::string& spec) {
  FaultSpec out;
  bool saw_kind = false;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("fault spec item '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "kind") {
      saw_kind = true;
      if (value == "under") out.kind = FaultKind::UnderTranslation;
      else if (value == "over") out.kind = FaultKind::OverTranslation;
      else if (value == "mis") out.kind = FaultKind::Mistranslation;
      else if (value == "incorrect") out.kind = FaultKind::IncorrectModification;
      else if (value == "unclear") out.kind = FaultKind::UnclearLogic;
      else throw ArgumentError("unknown fault kind '" + value + "'");
    } else if (key == "rate") {
      try {
        std::size_t used = 0;
        out.rate = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ArgumentError("fault rate '" + value + "' is not a number");
      }
      if (out.rate < 0.0 || out.rate > 1.0)
        throw ArgumentError("fault rate must lie in [0, 1]");
    } else if (key == "seed") {
      try {
        out.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw ArgumentError("fault seed '" + value + "' is not an integer");
      }
    } else if (key == "scope") {
      if (value == "parent_only") out.scope = FaultScope::ParentOnly;
      else if (value == "derived_only") out.scope = FaultScope::DerivedOnly;
      else if (value == "both") out.scope = FaultScope::Both;
      else throw ArgumentError("unknown fault scope '" + value + "'");
    } else {
      throw ArgumentError("unknown fault spec key '" + key + "'");
    }
  }
  if (!saw_kind) throw ArgumentError("fault spec needs kind=...");
  return out;
}

DictMapping load_dict_mapping(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dictionary file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("dictionary file " + path + " is not JSON: " + e.what());
  }
  if (!doc.is_object())
    throw ParseError("dictionary file " + path + " must hold a JSON object");
  DictMapping mapping;
  for (const auto& [word, value] : doc.items()) {
    if (!value.is_string())
      throw ParseError("dictionary value for '" + word + "' must be a string");
    mapping[word] = value.get<std::string>();
  }
  return mapping;
}

std::string dict_translate(const std::string& text_in, const DictMapping& mapping) {
  std::string out;
  for (const std::string& token : text::split_ws(text_in)) {
    if (!out.empty()) out.push_back(' ');
    const text::Affixes parts = text::split_affixes(token);
    const auto it = mapping.find(parts.core);
    if (it == mapping.end()) {
      out += token;
    } else {
      out += parts.prefix + it->second + parts.suffix;
    }
  }
  return out;
}

std::uint64_t pair_seed(std::uint64_t run_seed, std::size_t pair_ordinal,
                        PairRole role) {
  const std::uint64_t salt = role == PairRole::Parent ? 0x50u : 0x44u;
  return run_seed ^ splitmix64(static_cast<std::uint64_t>(pair_ordinal) * 2 + salt);
}

namespace {

// Tokens of `translation` whose removal (or replacement) the comparison with
// `counterpart` can notice: some word of the token occurs equally often on
// both sides, so losing one occurrence creates excess on the other side.
std::vector<std::size_t> visible_token_indices(
    const std::vector<std::string>& tokens, const BagOfWords& own,
    const BagOfWords& other) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (const auto& [word, count] : bow(tokens[i])) {
      (void)count;
      const auto mine = own.find(word);
      const auto theirs = other.find(word);
      if (mine != own.end() && theirs != other.end() &&
          mine->second == theirs->second) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::string inject(const std::string& translation, const FaultSpec& spec,
                   const InjectionContext& ctx) {
  std::vector<std::string> tokens = text::split_ws(translation);
  if (tokens.empty()) return translation;
  std::mt19937_64 rng(ctx.pair_seed);

  auto pick_visible = [&]() -> std::size_t {
    if (ctx.counterpart) {
      const auto candidates = visible_token_indices(tokens, bow(translation),
                                                    bow(*ctx.counterpart));
      if (!candidates.empty()) return candidates[pick_index(rng, candidates.size())];
    }
    return pick_index(rng, tokens.size());
  };

  switch (spec.kind) {
    case FaultKind::UnderTranslation: {
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(pick_visible()));
      break;
    }
    case FaultKind::OverTranslation: {
      const std::size_t at = pick_visible();
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), tokens[at]);
      break;
    }
    case FaultKind::Mistranslation: {
      tokens[pick_visible()] = kMistranslationToken;
      break;
    }
    case FaultKind::IncorrectModification:
    case FaultKind::UnclearLogic: {
      if (tokens.size() < 2) break;
      const std::size_t a = pick_index(rng, tokens.size());
      std::size_t b = pick_index(rng, tokens.size() - 1);
      if (b >= a) ++b;
      std::swap(tokens[a], tokens[b]);
      break;
    }
  }

  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

bool fault_gate(const FaultSpec& spec, std::size_t pair_ordinal) {
  std::mt19937_64 gate(splitmix64(spec.seed ^ splitmix64(pair_ordinal)));
  return uniform01(gate) < spec.rate;
}

namespace {

bool fault_visible_in_principle(const FaultSpec& spec, PairRole role) {
  if (spec.scope == FaultScope::Both) return false;
  switch (spec.kind) {
    case FaultKind::UnderTranslation:
      return role == PairRole::Parent;
    case FaultKind::OverTranslation:
      return role == PairRole::Derived;
    case FaultKind::Mistranslation:
      return true;
    case FaultKind::IncorrectModification:
    case FaultKind::UnclearLogic:
      return false;
  }
  return false;
}

}  // namespace

MeasureResult measure(const std::vector<DependencyTree>& corpus,
                      const FaultSpec& spec, int threshold,
                      const DictMapping& mapping, const RelationPolicy& policy,
                      const GenerationLimits& limits) {
  MeasureResult result;
  std::size_t visible_injected = 0;
  std::size_t visible_detected = 0;
  std::size_t ordinal = 0;

  for (const DependencyTree& sentence : corpus) {
    for (const DependencyTree& simple : to_simple(sentence)) {
      CoreSemantics core;
      try {
        core = extract_core(simple);
      } catch (const ExtractionError&) {
        continue;
      }
      const auto generated = generate(simple, core, policy, limits);
      const SentenceRef original{simple.sentence_id(), simple.text()};
      for (const SentencePair& pair : make_pairs(original, generated)) {
        ++result.pairs_total;
        const std::size_t k = ordinal++;

        std::string parent_t = dict_translate(pair.parent.text, mapping);
        std::string derived_t = dict_translate(pair.derived.text, mapping);

        const bool injected = fault_gate(spec, k);
        bool visible = false;
        if (injected) {
          ++result.injected;
          if (spec.scope != FaultScope::DerivedOnly) {
            InjectionContext ctx{PairRole::Parent, derived_t,
                                 pair_seed(spec.seed, k, PairRole::Parent)};
            parent_t = inject(parent_t, spec, ctx);
            visible = visible || fault_visible_in_principle(spec, PairRole::Parent);
          }
          if (spec.scope != FaultScope::ParentOnly) {
            InjectionContext ctx{PairRole::Derived, parent_t,
                                 pair_seed(spec.seed, k, PairRole::Derived)};
            derived_t = inject(derived_t, spec, ctx);
            visible = visible || fault_visible_in_principle(spec, PairRole::Derived);
          }
          if (visible) ++visible_injected;
        }

        const auto issue = detect(pair, parent_t, derived_t, threshold);
        if (issue && injected) {
          ++result.detected;
          if (visible) ++visible_detected;
        }
        if (issue && !injected) ++result.false_positives;
      }
    }
  }
  result.recall = visible_injected == 0
                      ? 0.0
                      : static_cast<double>(visible_detected) /
                            static_cast<double>(visible_injected);
  return result;
}

}  // namespace mtprune
