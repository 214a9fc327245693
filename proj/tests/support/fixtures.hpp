#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "seeprivacy/config.hpp"
#include "seeprivacy/geometry.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/ocr.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return SEEPRIVACY_FIXTURE_DIR; }
inline std::filesystem::path data_dir() { return SEEPRIVACY_DATA_DIR; }
inline std::filesystem::path cli() { return SEEPRIVACY_CLI_PATH; }

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

// "a/b" -> a / b; plain numbers pass through.
inline double fraction(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  const auto s = v.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return static_cast<double>(std::stoll(s.substr(0, slash))) /
         static_cast<double>(std::stoll(s.substr(slash + 1)));
}

inline seeprivacy::PipelineConfig test_config() {
  seeprivacy::PipelineConfig c;
  c.workers = 2;
  return c;
}

// A synthetic screenshot of separated filled rectangles plus OCR boxes, with
// the geometry needed to evaluate the icon rules directly.
struct Scene {
  seeprivacy::Image image;
  std::vector<seeprivacy::BBox> rects;
  std::vector<seeprivacy::TextBox> ocr;
};

// Rectangles are kept at least `gap` pixels apart (and off the border) so
// each is exactly one connected component.
inline Scene random_scene(std::mt19937& rng, int width = 360, int height = 640) {
  Scene s{seeprivacy::Image(width, height), {}, {}};
  const double area = static_cast<double>(width) * height;
  std::uniform_int_distribution<int> count(1, 7);
  std::uniform_real_distribution<double> frac(0.005, 0.16);
  std::uniform_real_distribution<double> aspect(0.3, 2.2);
  std::uniform_int_distribution<int> color(0, 150);
  const int gap = 3;
  const int n = count(rng);
  for (int k = 0, tries = 0; k < n && tries < 400; ++tries) {
    const double f = frac(rng), a = aspect(rng);
    const int w = std::max(1, static_cast<int>(std::lround(std::sqrt(f * area * a))));
    const int h = std::max(1, static_cast<int>(std::lround(std::sqrt(f * area / a))));
    if (w > width - 2 * gap || h > height - 2 * gap) continue;
    std::uniform_int_distribution<int> px(gap, width - gap - w), py(gap, height - gap - h);
    const seeprivacy::BBox b{px(rng), py(rng), w, h};
    const seeprivacy::BBox grown{b.x - gap, b.y - gap, b.w + 2 * gap, b.h + 2 * gap};
    bool clear = true;
    for (const auto& r : s.rects)
      if (seeprivacy::intersection_area(grown, r) > 0) clear = false;
    if (!clear) continue;
    s.rects.push_back(b);
    s.image.fill_rect(b, {static_cast<std::uint8_t>(color(rng)), static_cast<std::uint8_t>(color(rng)),
                          static_cast<std::uint8_t>(color(rng))});
    ++k;
  }
  std::uniform_int_distribution<int> ocr_count(0, 3);
  const int m = ocr_count(rng);
  for (int k = 0; k < m; ++k) {
    std::uniform_int_distribution<int> ow(10, 160), oh(10, 40);
    const int w = ow(rng), h = oh(rng);
    std::uniform_int_distribution<int> px(0, width - w), py(0, height - h);
    s.ocr.push_back({{px(rng), py(rng), w, h}, "text", 0.9});
  }
  return s;
}

// Survivors of the four icon rules, computed straight from the drawn
// rectangles in raster order.
inline std::vector<seeprivacy::BBox> expected_icons(const Scene& s, double max_area = 0.10,
                                                    double min_area = 0.05, double min_aspect = 0.6) {
  const double total = static_cast<double>(s.image.width()) * s.image.height();
  std::vector<seeprivacy::BBox> out;
  for (const auto& r : s.rects) {
    const double frac = static_cast<double>(r.w) * r.h / total;
    const double aspect = static_cast<double>(r.w) / r.h;
    bool text = false;
    for (const auto& t : s.ocr) {
      const bool apart = r.x + r.w <= t.bbox.x || t.bbox.x + t.bbox.w <= r.x ||
                         r.y + r.h <= t.bbox.y || t.bbox.y + t.bbox.h <= r.y;
      text = text || !apart;
    }
    if (frac > max_area || frac < min_area || aspect < min_aspect || text) continue;
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.y != b.y ? a.y < b.y : a.x != b.x ? a.x < b.x : a.h != b.h ? a.h < b.h : a.w < b.w;
  });
  return out;
}

}  // namespace fixtures
