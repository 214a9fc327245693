#pragma once

// Segment extraction: paragraph selection (heading route for structured
// documents, multi-label paragraph route for flat ones), sentence splitting,
// and the two-stage per-data-type sentence matcher.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeprivacy/chunker.hpp"
#include "seeprivacy/config.hpp"
#include "seeprivacy/lexical.hpp"
#include "seeprivacy/policy.hpp"
#include "seeprivacy/ports.hpp"
#include "seeprivacy/sentences.hpp"
#include "seeprivacy/taxonomy.hpp"

namespace seeprivacy {

inline constexpr std::string_view kNoSegmentText =
    "No relative information is found in the privacy policy.";

enum class RelevanceKind : std::uint8_t { types, first_party, third_party, other };

constexpr std::string_view to_string(RelevanceKind k) noexcept {
  switch (k) {
    case RelevanceKind::types: return "types";
    case RelevanceKind::first_party: return "first_party";
    case RelevanceKind::third_party: return "third_party";
    case RelevanceKind::other: return "other";
  }
  return "other";
}

struct RelevanceLabel {
  std::size_t paragraph_index = 0;
  RelevanceKind label = RelevanceKind::other;
  double probability = 0.0;
  bool selected = false;
};

struct SegmentSentence {
  Sentence sentence;
  std::vector<Span> bold_spans;  // within sentence.text, sorted and disjoint

  friend bool operator==(const SegmentSentence&, const SegmentSentence&) = default;
};

struct PolicySegment {
  DataType data_type{};
  std::vector<SegmentSentence> sentences;
  bool found = false;

  // Sentences joined by one space, or the fallback notice.
  std::string text() const {
    if (!found) return std::string(kNoSegmentText);
    std::string out;
    for (const auto& s : sentences) {
      if (!out.empty()) out.push_back(' ');
      out += s.sentence.text;
    }
    return out;
  }

  friend bool operator==(const PolicySegment&, const PolicySegment&) = default;
};

using SegmentMap = std::map<DataType, PolicySegment>;

// Labels every paragraph (list items included). Structured documents inherit
// the label of the governing heading; flat documents use the paragraph
// classifier's two data-practice scores against `threshold` (strict >).
inline std::vector<RelevanceLabel> classify_paragraphs(const PolicyDocument& doc,
                                                       const HeadingClassifierPort& heading_cls,
                                                       const ParagraphClassifierPort& paragraph_cls,
                                                       double threshold) {
  require_text(doc);
  std::vector<RelevanceLabel> out;
  if (doc.structure == Structure::structured) {
    HeadingPrediction current;
    for (const auto& b : doc.blocks) {
      if (b.is_heading()) {
        current = heading_cls.classify(b.text);
        continue;
      }
      const bool types = current.label == HeadingLabel::types;
      out.push_back({b.index, types ? RelevanceKind::types : RelevanceKind::other,
                     current.probability, types});
    }
    return out;
  }
  for (const auto& b : doc.blocks) {
    if (b.is_heading()) continue;
    const auto scores = paragraph_cls.classify(b.text);
    RelevanceLabel label{b.index, RelevanceKind::other, std::max(scores.first_party, scores.third_party),
                         false};
    if (scores.first_party > threshold || scores.third_party > threshold) {
      label.selected = true;
      label.label = scores.first_party >= scores.third_party ? RelevanceKind::first_party
                                                             : RelevanceKind::third_party;
    }
    out.push_back(label);
  }
  return out;
}

inline std::vector<std::size_t> select_relevant_paragraphs(
    const PolicyDocument& doc, const HeadingClassifierPort& heading_cls,
    const ParagraphClassifierPort& paragraph_cls, double threshold) {
  std::vector<std::size_t> out;
  for (const auto& l : classify_paragraphs(doc, heading_cls, paragraph_cls, threshold))
    if (l.selected) out.push_back(l.paragraph_index);
  return out;
}

struct SegmentPorts {
  const SentenceRelevancePort& gate;
  const NounChunkerPort& chunker;
  const LexicalSimilarityProvider& lex;
};

// Per-sentence outcome of the two-stage matcher, exposed for inspection.
struct SentenceMatch {
  Sentence sentence;
  bool stage_one = false;        // at least one keyword hit
  bool stage_two_checked = false;
  std::map<DataType, std::vector<Span>> spans;
};

inline SentenceMatch match_sentence(const Sentence& sentence, const Taxonomy& taxonomy,
                                    const SegmentPorts& ports, double phrase_threshold) {
  SentenceMatch m{sentence, false, false, {}};
  const auto hits = keyword_scan(sentence.text, taxonomy);
  if (!hits.empty()) {
    m.stage_one = true;
    for (const auto& h : hits) m.spans[h.data_type].push_back(h.span);
  } else if (ports.gate.is_relevant(sentence.text)) {
    m.stage_two_checked = true;
    for (const auto& chunk : ports.chunker.chunks(sentence.text))
      for (const auto& kw : taxonomy.keywords())
        if (phrase_similarity(chunk.text, kw.text, ports.lex) > phrase_threshold)
          m.spans[kw.data_type].push_back(chunk.span);
  }
  for (auto& [_, spans] : m.spans) spans = text::merge_spans(std::move(spans));
  return m;
}

// Runs both stages over every sentence of the selected paragraphs. The result
// holds all twelve data types; types without sentences have found = false.
inline SegmentMap extract_segments(const PolicyDocument& doc,
                                   const std::vector<std::size_t>& selected,
                                   const Taxonomy& taxonomy, const SegmentPorts& ports,
                                   double phrase_threshold) {
  require_text(doc);
  SegmentMap out;
  for (auto t : kAllDataTypes) out[t] = PolicySegment{t, {}, false};
  for (auto index : selected) {
    if (index >= doc.blocks.size()) continue;
    const auto& block = doc.blocks[index];
    for (const auto& sentence : tokenize_sentences(block.text, block.index)) {
      auto m = match_sentence(sentence, taxonomy, ports, phrase_threshold);
      for (auto& [type, spans] : m.spans) {
        auto& seg = out[type];
        seg.found = true;
        seg.sentences.push_back({sentence, std::move(spans)});
      }
    }
  }
  return out;
}

inline nlohmann::json segment_to_json(const PolicySegment& seg) {
  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : seg.sentences) {
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& sp : s.bold_spans) spans.push_back({sp.begin, sp.end});
    sentences.push_back({{"text", s.sentence.text},
                         {"block_index", s.sentence.block_index},
                         {"bold_spans", spans}});
  }
  nlohmann::json j = {{"found", seg.found}, {"sentences", sentences}};
  if (!seg.found) j["text"] = kNoSegmentText;
  return j;
}

inline PolicySegment segment_from_json(DataType type, const nlohmann::json& j) {
  PolicySegment seg{type, {}, j.at("found").get<bool>()};
  for (const auto& s : j.at("sentences")) {
    SegmentSentence ss;
    ss.sentence.text = s.at("text").get<std::string>();
    ss.sentence.block_index = s.value("block_index", std::size_t{0});
    ss.sentence.span = {0, ss.sentence.text.size()};
    for (const auto& sp : s.at("bold_spans"))
      ss.bold_spans.push_back({sp.at(0).get<std::size_t>(), sp.at(1).get<std::size_t>()});
    seg.sentences.push_back(std::move(ss));
  }
  return seg;
}

inline nlohmann::json segments_to_json(const SegmentMap& segments) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [type, seg] : segments) j[std::string(to_string(type))] = segment_to_json(seg);
  return j;
}

inline SegmentMap segments_from_json(const nlohmann::json& j) {
  SegmentMap out;
  for (const auto& [name, value] : j.items()) {
    const auto type = parse_data_type(name);
    if (!type) throw Error("unknown data type in segments: " + name);
    out[*type] = segment_from_json(*type, value);
  }
  return out;
}

}  // namespace seeprivacy
