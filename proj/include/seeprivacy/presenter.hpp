#pragma once

// Contextual privacy policy assembly: contexts grouped per data type with
// their policy segment, rendered as records (JSON), markup (HTML) and an
// annotated overlay image.

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeprivacy/detect.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/segment.hpp"
#include "seeprivacy/taxonomy.hpp"

namespace seeprivacy {

// One colour per data type, indexed by ordinal.
inline constexpr std::array<Rgb, 12> kPalette = {{
    {230, 25, 75},   // Name
    {245, 130, 48},  // Birthday
    {128, 128, 0},   // Address
    {60, 180, 75},   // Phone
    {0, 130, 200},   // Email
    {145, 30, 180},  // Profile
    {70, 153, 144},  // Contacts
    {220, 20, 60},   // Location
    {240, 50, 230},  // Photos
    {154, 99, 36},   // Voices
    {0, 0, 117},     // FinancialInfo
    {67, 99, 216},   // SocialMedia
}};

inline Rgb palette_color(std::size_t index) { return kPalette.at(index); }

inline std::string hex_color(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

struct CppAnnotation {
  DataType data_type{};
  std::vector<Context> contexts;
  PolicySegment segment;
  std::size_t color_index = 0;
};

struct CppBundle {
  std::string screenshot_id;
  std::vector<CppAnnotation> annotations;
  std::string generated_at;  // excluded from comparisons
};

// One annotation per distinct data type among the contexts, ordered by the
// raster position of each annotation's first context.
inline CppBundle build_cpp(std::string screenshot_id, const std::vector<Context>& contexts,
                           const SegmentMap& segments, std::string generated_at = {}) {
  std::vector<Context> sorted = contexts;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Context& a, const Context& b) { return raster_less(a.bbox, b.bbox); });
  std::map<DataType, CppAnnotation> groups;
  std::vector<DataType> order;
  for (const auto& c : sorted) {
    auto it = groups.find(c.data_type);
    if (it == groups.end()) {
      const auto seg = segments.find(c.data_type);
      if (seg == segments.end())
        throw MissingSegment("no segment for data type " + std::string(to_string(c.data_type)));
      it = groups.emplace(c.data_type, CppAnnotation{c.data_type, {}, seg->second, ordinal(c.data_type)})
               .first;
      order.push_back(c.data_type);
    }
    it->second.contexts.push_back(c);
  }
  CppBundle bundle{std::move(screenshot_id), {}, std::move(generated_at)};
  for (auto t : order) bundle.annotations.push_back(std::move(groups.at(t)));
  return bundle;
}

// ---- records -------------------------------------------------------------

inline nlohmann::json bundle_to_json(const CppBundle& b, bool include_timestamp = true) {
  nlohmann::json anns = nlohmann::json::array();
  for (const auto& a : b.annotations) {
    nlohmann::json ctx = nlohmann::json::array();
    for (const auto& c : a.contexts) ctx.push_back(context_to_json(c));
    auto seg = segment_to_json(a.segment);
    seg["text"] = a.segment.text();
    anns.push_back({{"data_type", to_string(a.data_type)},
                    {"color_index", a.color_index},
                    {"color", hex_color(palette_color(a.color_index))},
                    {"contexts", ctx},
                    {"segment", seg}});
  }
  nlohmann::json j = {{"screenshot", b.screenshot_id}, {"annotations", anns}};
  if (include_timestamp) j["generated_at"] = b.generated_at;
  return j;
}

// ---- markup --------------------------------------------------------------

inline std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Segment text with <b>..</b> exactly around the bold spans.
inline std::string segment_markup(const PolicySegment& seg) {
  if (!seg.found) return html_escape(seg.text());
  std::string out;
  for (std::size_t i = 0; i < seg.sentences.size(); ++i) {
    if (i) out.push_back(' ');
    const auto& text = seg.sentences[i].sentence.text;
    std::size_t pos = 0;
    for (const auto& sp : seg.sentences[i].bold_spans) {
      const auto b = std::min(sp.begin, text.size()), e = std::min(sp.end, text.size());
      if (b < pos || e <= b) continue;
      out += html_escape(std::string_view(text).substr(pos, b - pos));
      out += "<b>";
      out += html_escape(std::string_view(text).substr(b, e - b));
      out += "</b>";
      pos = e;
    }
    out += html_escape(std::string_view(text).substr(pos));
  }
  return out;
}

inline std::string render_markup(const CppBundle& b) {
  std::string out =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Contextual privacy "
      "policy: " +
      html_escape(b.screenshot_id) + "</title>\n</head>\n<body>\n<h1>Contextual privacy policy</h1>\n";
  out += "<p class=\"screenshot\">" + html_escape(b.screenshot_id) + "</p>\n";
  if (b.annotations.empty()) out += "<p class=\"empty\">No privacy-related contexts detected.</p>\n";
  for (const auto& a : b.annotations) {
    const auto color = hex_color(palette_color(a.color_index));
    out += "<section class=\"annotation\" data-type=\"" + std::string(to_string(a.data_type)) + "\">\n";
    out += "<h2 class=\"label\" style=\"color:" + color + "\">" +
           html_escape(display_name(a.data_type)) + "</h2>\n<ul class=\"contexts\">\n";
    for (const auto& c : a.contexts) {
      out += "<li style=\"color:" + color + "\">" + std::string(to_string(c.kind)) + " \"" +
             html_escape(c.evidence) + "\" at (" + std::to_string(c.bbox.x) + ", " +
             std::to_string(c.bbox.y) + ", " + std::to_string(c.bbox.w) + ", " +
             std::to_string(c.bbox.h) + ")</li>\n";
    }
    out += "</ul>\n<p class=\"segment\">" + segment_markup(a.segment) + "</p>\n</section>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

enum class ReportFormat : std::uint8_t { records, markup };

inline std::string render_report(const CppBundle& b, ReportFormat format) {
  if (format == ReportFormat::records) return bundle_to_json(b).dump(2) + "\n";
  return render_markup(b);
}

// ---- overlay -------------------------------------------------------------

inline Image render_overlay(const Image& img, const CppBundle& b, int thickness = 3) {
  Image out = img;
  for (const auto& a : b.annotations)
    for (const auto& c : a.contexts) out.stroke_rect(c.bbox, palette_color(a.color_index), thickness);
  return out;
}

}  // namespace seeprivacy
