#pragma once

// Privacy-related context detection on screenshots: OCR text boxes typed by
// the text classifier, and icon candidates typed by the icon classifier.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "seeprivacy/config.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/geometry.hpp"
#include "seeprivacy/icons.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/ocr.hpp"
#include "seeprivacy/ports.hpp"
#include "seeprivacy/taxonomy.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

enum class ContextKind : std::uint8_t { textual, iconic };

constexpr std::string_view to_string(ContextKind k) noexcept {
  return k == ContextKind::textual ? "textual" : "iconic";
}

inline std::optional<ContextKind> parse_context_kind(std::string_view s) {
  if (s == "textual") return ContextKind::textual;
  if (s == "iconic") return ContextKind::iconic;
  return std::nullopt;
}

struct Context {
  BBox bbox;
  DataType data_type{};
  ContextKind kind = ContextKind::textual;
  std::string evidence;  // OCR text or icon class name
  double score = 1.0;

  friend bool operator==(const Context&, const Context&) = default;
};

inline nlohmann::json context_to_json(const Context& c) {
  return {{"bbox", c.bbox},
          {"data_type", to_string(c.data_type)},
          {"kind", to_string(c.kind)},
          {"evidence", c.evidence},
          {"score", c.score}};
}

inline Context context_from_json(const nlohmann::json& j) {
  Context c;
  c.bbox = j.at("bbox").get<BBox>();
  const auto type = parse_data_type(j.at("data_type").get<std::string>());
  if (!type) throw Error("unknown data type " + j.at("data_type").dump());
  c.data_type = *type;
  const auto kind = parse_context_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error("unknown context kind " + j.at("kind").dump());
  c.kind = *kind;
  c.evidence = j.value("evidence", std::string{});
  c.score = j.value("score", 1.0);
  return c;
}

// ---- text-type prompt ----------------------------------------------------

inline std::string build_text_type_prompt(std::string_view detected, const Taxonomy& taxonomy) {
  std::string p = "Privacy information data types:\n";
  for (const auto& e : taxonomy.entries()) {
    p += "- ";
    p += display_name(e.data_type);
    p += ": ";
    p += e.description;
    p += '\n';
  }
  p += "Question: Is this piece of text \"";
  p += detected;
  p +=
      "\" related to any following privacy information data types? Or not relevant to any of "
      "them? ONLY answer the data type or \"not relevant\". ONLY use the provided data type list. "
      "Answer:";
  return p;
}

// Earliest data-type name (canonical or display form, whole word, any case)
// in the answer; none when the answer says "not relevant" or names nothing.
inline std::optional<DataType> parse_text_type_answer(std::string_view answer) {
  const auto lower = text::to_lower(answer);
  if (lower.find("not relevant") != std::string::npos) return std::nullopt;
  const auto boundary = [&](std::size_t i) {
    return i >= lower.size() || !(text::is_ascii_alpha(lower[i]) || text::is_ascii_digit(lower[i]));
  };
  std::optional<std::tuple<std::size_t, std::size_t, DataType>> best;  // pos, -len, type
  for (auto t : kAllDataTypes) {
    for (auto name : {text::to_lower(to_string(t)), text::to_lower(display_name(t))}) {
      for (auto pos = lower.find(name); pos != std::string::npos; pos = lower.find(name, pos + 1)) {
        if ((pos > 0 && !boundary(pos - 1)) || !boundary(pos + name.size())) continue;
        const auto key = std::tuple{pos, std::string::npos - name.size(), t};
        if (!best || key < *best) best = key;
        break;
      }
    }
  }
  if (!best) return std::nullopt;
  return std::get<2>(*best);
}

inline std::optional<DataType> classify_text_type(std::string_view detected,
                                                  const TextTypeClassifierPort& cls,
                                                  const Taxonomy& taxonomy) {
  if (text::trim(detected).empty()) throw std::invalid_argument("empty text");
  return cls.classify(detected, taxonomy);
}

// ---- context detection ---------------------------------------------------

struct DetectPorts {
  const TextTypeClassifierPort& text;
  const IconClassifierPort& icon;
};

inline std::optional<BBox> clamp_to_image(const BBox& b, int width, int height) {
  const int x0 = std::max(0, b.x), y0 = std::max(0, b.y);
  const int x1 = std::min(width, b.right()), y1 = std::min(height, b.bottom());
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  return BBox{x0, y0, x1 - x0, y1 - y0};
}

// Textual contexts from the OCR boxes plus iconic contexts from surviving
// icon candidates, deduplicated by (bbox, data type), in raster order.
inline std::vector<Context> detect_contexts(const Image& img, const std::vector<TextBox>& ocr,
                                            const Taxonomy& taxonomy, const DetectPorts& ports,
                                            const Thresholds& thresholds,
                                            const DetectionOptions& detection) {
  if (img.empty()) throw ImageDecodeError("empty image");
  std::vector<Context> out;
  const auto add = [&](Context c) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Context& o) {
      return o.bbox == c.bbox && o.data_type == c.data_type;
    });
    if (!dup) out.push_back(std::move(c));
  };

  std::vector<TextBox> inside;
  for (const auto& tb : ocr) {
    const auto box = clamp_to_image(tb.bbox, img.width(), img.height());
    if (!box) continue;
    inside.push_back({*box, tb.text, tb.confidence});
    if (text::trim(tb.text).empty()) continue;
    if (const auto type = classify_text_type(tb.text, ports.text, taxonomy))
      add({*box, *type, ContextKind::textual, tb.text, std::clamp(tb.confidence, 0.0, 1.0)});
  }

  const auto candidates = localize_icon_candidates(img, inside, thresholds, detection);
  std::vector<Image> crops;
  crops.reserve(candidates.size());
  for (const auto& c : candidates) crops.push_back(img.crop(c.bbox));
  const auto labels = ports.icon.classify_batch(crops);
  if (labels.size() != crops.size()) throw PortUnavailable("icon-classifier", "label count mismatch");
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (const auto m = map_icon_label(labels[i], taxonomy))
      add({candidates[i].bbox, m->data_type, ContextKind::iconic, m->icon_class.name, m->score});

  std::stable_sort(out.begin(), out.end(), [](const Context& a, const Context& b) {
    if (a.bbox != b.bbox) return raster_less(a.bbox, b.bbox);
    return ordinal(a.data_type) < ordinal(b.data_type);
  });
  return out;
}

inline std::vector<Context> detect_contexts(const Image& img, const OcrPort& ocr,
                                            const Taxonomy& taxonomy, const DetectPorts& ports,
                                            const Thresholds& thresholds,
                                            const DetectionOptions& detection) {
  return detect_contexts(img, ocr.recognize(img), taxonomy, ports, thresholds, detection);
}

inline nlohmann::json contexts_to_json(const std::vector<Context>& contexts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : contexts) arr.push_back(context_to_json(c));
  return {{"contexts", arr}};
}

}  // namespace seeprivacy
