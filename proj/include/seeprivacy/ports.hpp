#pragma once

// Classifier ports used by segment extraction and text-type classification,
// with the built-in heuristic implementations and a fallback combinator.

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "seeprivacy/diagnostics.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/taxonomy.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

// Runs `primary`; if it throws PortUnavailable, records the fallback and
// returns `fallback()` instead.
template <class Primary, class Fallback>
auto with_fallback(std::string_view port, Diagnostics* diag, Primary&& primary,
                   Fallback&& fallback) {
  try {
    return primary();
  } catch (const PortUnavailable& e) {
    if (diag) diag->fallback(std::string(port), e.what());
    return fallback();
  }
}

namespace detail {

// Lowercased runs of ASCII letters (apostrophes and hyphens kept inside).
inline std::vector<std::string> lower_words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (text::is_ascii_alpha(c) || ((c == '\'' || c == '-') && !cur.empty())) {
      cur.push_back(text::ascii_lower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline bool inflects(std::string_view word, std::string_view verb) {
  if (word == verb) return true;
  if (!word.starts_with(verb)) {
    // using, sharing, storing: drop the final 'e' before -ing.
    if (verb.ends_with('e')) {
      const auto stem = verb.substr(0, verb.size() - 1);
      return word.size() == stem.size() + 3 && word.starts_with(stem) && word.ends_with("ing");
    }
    return false;
  }
  const auto rest = word.substr(verb.size());
  static constexpr std::array<std::string_view, 7> suffixes = {"s", "es", "ed", "d", "ing",
                                                                "red", "ring"};
  return std::find(suffixes.begin(), suffixes.end(), rest) != suffixes.end();
}

inline std::size_t count_cues(const std::vector<std::string>& words,
                              std::initializer_list<std::string_view> stems) {
  std::size_t n = 0;
  for (const auto& w : words)
    for (auto s : stems)
      if (w.starts_with(s)) {
        ++n;
        break;
      }
  return n;
}

}  // namespace detail

// ---- heading route -------------------------------------------------------

enum class HeadingLabel : std::uint8_t { types, other };

struct HeadingPrediction {
  HeadingLabel label = HeadingLabel::other;
  double probability = 0.0;
};

class HeadingClassifierPort {
 public:
  virtual ~HeadingClassifierPort() = default;
  virtual HeadingPrediction classify(std::string_view heading) const = 0;
};

class CueHeadingClassifier final : public HeadingClassifierPort {
 public:
  HeadingPrediction classify(std::string_view heading) const override {
    const auto lower = text::collapse_whitespace(text::to_lower(heading));
    static constexpr std::array<std::string_view, 12> cues = {
        "information we collect", "types of",         "personal information",
        "personal data",          "data we collect",  "information collected",
        "data collected",         "what we collect",  "collection of",
        "information you provide", "data you provide", "categories of",
    };
    for (auto cue : cues)
      if (lower.find(cue) != std::string::npos) return {HeadingLabel::types, 1.0};
    return {HeadingLabel::other, 0.0};
  }
};

// ---- flat route ----------------------------------------------------------

struct ParagraphScores {
  double first_party = 0.0;  // First-Party Collection/Use
  double third_party = 0.0;  // Third-Party Sharing/Collection
};

class ParagraphClassifierPort {
 public:
  virtual ~ParagraphClassifierPort() = default;
  virtual ParagraphScores classify(std::string_view paragraph) const = 0;
};

// Pseudo-probability c / (c + 0.5) from the count c of collection (or
// sharing) cue words.
class CueParagraphClassifier final : public ParagraphClassifierPort {
 public:
  ParagraphScores classify(std::string_view paragraph) const override {
    const auto words = detail::lower_words(paragraph);
    const auto first = detail::count_cues(
        words, {"collect", "gather", "obtain", "receiv", "use", "usi", "process", "stor",
                "record", "access", "request", "retain", "log"});
    const auto third = detail::count_cues(
        words, {"shar", "disclos", "sell", "sold", "transfer", "partner", "advertiser",
                "affiliat", "third-part"});
    const auto prob = [](std::size_t c) {
      return static_cast<double>(c) / (static_cast<double>(c) + 0.5);
    };
    return {prob(first), prob(third)};
  }
};

// ---- sentence gate -------------------------------------------------------

class SentenceRelevancePort {
 public:
  virtual ~SentenceRelevancePort() = default;
  virtual bool is_relevant(std::string_view sentence) const = 0;
};

// Accepts sentences containing an inflection of a data-practice verb.
class VerbSentenceGate final : public SentenceRelevancePort {
 public:
  bool is_relevant(std::string_view sentence) const override {
    static constexpr std::array<std::string_view, 10> verbs = {
        "collect", "share",   "use",    "access",  "store",
        "process", "disclose", "obtain", "receive", "transfer",
    };
    for (const auto& w : detail::lower_words(sentence))
      for (auto v : verbs)
        if (detail::inflects(w, v)) return true;
    return false;
  }
};

// ---- text type -----------------------------------------------------------

class TextTypeClassifierPort {
 public:
  virtual ~TextTypeClassifierPort() = default;
  virtual std::optional<DataType> classify(std::string_view text,
                                           const Taxonomy& taxonomy) const = 0;
};

// Keyword fallback: among all keyword hits, the longest keyword wins; ties go
// to the earliest span, then the lower data-type ordinal.
class KeywordTextTypeClassifier final : public TextTypeClassifierPort {
 public:
  std::optional<DataType> classify(std::string_view text,
                                   const Taxonomy& taxonomy) const override {
    const auto hits = keyword_scan(text, taxonomy);
    if (hits.empty()) return std::nullopt;
    const auto best = std::min_element(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
      return std::make_tuple(b.keyword.size(), a.span.begin, a.data_type) <
             std::make_tuple(a.keyword.size(), b.span.begin, b.data_type);
    });
    return best->data_type;
  }
};

// ---- fallback wrappers ---------------------------------------------------

class FallbackHeadingClassifier final : public HeadingClassifierPort {
 public:
  FallbackHeadingClassifier(std::shared_ptr<const HeadingClassifierPort> primary,
                            std::shared_ptr<const HeadingClassifierPort> fallback,
                            Diagnostics* diag)
      : primary_(std::move(primary)), fallback_(std::move(fallback)), diag_(diag) {}

  HeadingPrediction classify(std::string_view heading) const override {
    return with_fallback(
        "heading-classifier", diag_, [&] { return primary_->classify(heading); },
        [&] { return fallback_->classify(heading); });
  }

 private:
  std::shared_ptr<const HeadingClassifierPort> primary_, fallback_;
  Diagnostics* diag_;
};

class FallbackParagraphClassifier final : public ParagraphClassifierPort {
 public:
  FallbackParagraphClassifier(std::shared_ptr<const ParagraphClassifierPort> primary,
                              std::shared_ptr<const ParagraphClassifierPort> fallback,
                              Diagnostics* diag)
      : primary_(std::move(primary)), fallback_(std::move(fallback)), diag_(diag) {}

  ParagraphScores classify(std::string_view paragraph) const override {
    return with_fallback(
        "paragraph-classifier", diag_, [&] { return primary_->classify(paragraph); },
        [&] { return fallback_->classify(paragraph); });
  }

 private:
  std::shared_ptr<const ParagraphClassifierPort> primary_, fallback_;
  Diagnostics* diag_;
};

class FallbackSentenceGate final : public SentenceRelevancePort {
 public:
  FallbackSentenceGate(std::shared_ptr<const SentenceRelevancePort> primary,
                       std::shared_ptr<const SentenceRelevancePort> fallback, Diagnostics* diag)
      : primary_(std::move(primary)), fallback_(std::move(fallback)), diag_(diag) {}

  bool is_relevant(std::string_view sentence) const override {
    return with_fallback(
        "sentence-gate", diag_, [&] { return primary_->is_relevant(sentence); },
        [&] { return fallback_->is_relevant(sentence); });
  }

 private:
  std::shared_ptr<const SentenceRelevancePort> primary_, fallback_;
  Diagnostics* diag_;
};

class FallbackTextTypeClassifier final : public TextTypeClassifierPort {
 public:
  FallbackTextTypeClassifier(std::shared_ptr<const TextTypeClassifierPort> primary,
                             Diagnostics* diag)
      : primary_(std::move(primary)), diag_(diag) {}

  std::optional<DataType> classify(std::string_view text,
                                   const Taxonomy& taxonomy) const override {
    return with_fallback(
        "text-classifier", diag_, [&] { return primary_->classify(text, taxonomy); },
        [&] { return fallback_.classify(text, taxonomy); });
  }

 private:
  std::shared_ptr<const TextTypeClassifierPort> primary_;
  KeywordTextTypeClassifier fallback_;
  Diagnostics* diag_;
};

}  // namespace seeprivacy
