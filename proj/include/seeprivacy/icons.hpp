#pragma once

// Icon candidates: connected-component proposals filtered by the four
// area/aspect/text rules, plus the icon classifier port and the exemplar
// nearest-neighbour fallback.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seeprivacy/config.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/geometry.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/ocr.hpp"
#include "seeprivacy/ports.hpp"
#include "seeprivacy/taxonomy.hpp"

namespace seeprivacy {

struct IconCandidate {
  BBox bbox;
  double area_fraction = 0.0;
  double aspect_ratio = 0.0;

  friend bool operator==(const IconCandidate&, const IconCandidate&) = default;
};

// Most frequent colour along the image border.
inline Rgb border_background(const Image& img) {
  std::map<Rgb, std::size_t> counts;
  const auto add = [&](int x, int y) { ++counts[img.at(x, y)]; };
  for (int x = 0; x < img.width(); ++x) {
    add(x, 0);
    if (img.height() > 1) add(x, img.height() - 1);
  }
  for (int y = 1; y + 1 < img.height(); ++y) {
    add(0, y);
    if (img.width() > 1) add(img.width() - 1, y);
  }
  return std::max_element(counts.begin(), counts.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

// Foreground mask: max channel distance from the background above threshold.
inline std::vector<std::uint8_t> binarize(const Image& img, int threshold) {
  const auto bg = border_background(img);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(img.area()), 0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const auto c = img.at(x, y);
      int d = 0;
      for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(int(c[k]) - int(bg[k])));
      mask[static_cast<std::size_t>(y) * img.width() + x] = d > threshold ? 1 : 0;
    }
  return mask;
}

// Bounding boxes of 8-connected foreground components; boxes that intersect
// (or lie within merge_gap pixels of each other) are merged. Raster order.
inline std::vector<BBox> propose_regions(const Image& img, const DetectionOptions& opt) {
  if (img.empty()) throw ImageDecodeError("empty image");
  const int w = img.width(), h = img.height();
  auto mask = binarize(img, opt.binarize_threshold);
  std::vector<BBox> boxes;
  std::vector<std::pair<int, int>> stack;
  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      if (!mask[static_cast<std::size_t>(y0) * w + x0]) continue;
      int minx = x0, maxx = x0, miny = y0, maxy = y0;
      mask[static_cast<std::size_t>(y0) * w + x0] = 0;
      stack.assign(1, {x0, y0});
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            auto& m = mask[static_cast<std::size_t>(ny) * w + nx];
            if (m) {
              m = 0;
              stack.emplace_back(nx, ny);
            }
          }
      }
      boxes.push_back({minx, miny, maxx - minx + 1, maxy - miny + 1});
    }

  const int gap = std::max(0, opt.merge_gap);
  const auto touches = [gap](const BBox& a, const BBox& b) {
    const BBox grown{a.x - gap, a.y - gap, a.w + 2 * gap, a.h + 2 * gap};
    return intersection_area(grown, b) > 0;
  };
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < boxes.size(); ++i)
      for (std::size_t j = i + 1; j < boxes.size();) {
        if (touches(boxes[i], boxes[j])) {
          boxes[i] = bbox_union(boxes[i], boxes[j]);
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        } else {
          ++j;
        }
      }
  }
  std::sort(boxes.begin(), boxes.end(), raster_less);
  return boxes;
}

enum class IconRule : std::uint8_t { too_large, too_small, too_narrow, overlaps_text };

constexpr std::string_view to_string(IconRule r) noexcept {
  switch (r) {
    case IconRule::too_large: return "a";
    case IconRule::too_small: return "b";
    case IconRule::too_narrow: return "c";
    case IconRule::overlaps_text: return "d";
  }
  return "?";
}

inline IconCandidate make_candidate(const BBox& b, int image_w, int image_h) {
  return {b, static_cast<double>(b.area()) / (static_cast<double>(image_w) * image_h),
          static_cast<double>(b.w) / b.h};
}

// First rule, in order (a)..(d), that rejects the candidate.
inline std::optional<IconRule> rejecting_rule(const IconCandidate& c,
                                              const std::vector<TextBox>& ocr_boxes,
                                              const Thresholds& t) {
  if (c.area_fraction > t.max_area_fraction) return IconRule::too_large;
  if (c.area_fraction < t.min_area_fraction) return IconRule::too_small;
  if (c.aspect_ratio < t.min_aspect) return IconRule::too_narrow;
  for (const auto& tb : ocr_boxes)
    if (intersection_area(c.bbox, tb.bbox) > 0) return IconRule::overlaps_text;
  return std::nullopt;
}

inline std::vector<IconCandidate> filter_icon_candidates(const std::vector<BBox>& regions,
                                                         int image_w, int image_h,
                                                         const std::vector<TextBox>& ocr_boxes,
                                                         const Thresholds& t) {
  std::vector<IconCandidate> out;
  for (const auto& b : regions) {
    auto c = make_candidate(b, image_w, image_h);
    if (!rejecting_rule(c, ocr_boxes, t)) out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return raster_less(a.bbox, b.bbox); });
  return out;
}

inline std::vector<IconCandidate> localize_icon_candidates(const Image& img,
                                                           const std::vector<TextBox>& ocr_boxes,
                                                           const Thresholds& t,
                                                           const DetectionOptions& opt) {
  return filter_icon_candidates(propose_regions(img, opt), img.width(), img.height(), ocr_boxes,
                                t);
}

// ---- classification ------------------------------------------------------

struct IconLabel {
  std::string icon_class;
  double score = 0.0;
};

class IconClassifierPort {
 public:
  virtual ~IconClassifierPort() = default;
  virtual std::optional<IconLabel> classify(const Image& crop) const = 0;
  virtual std::vector<std::optional<IconLabel>> classify_batch(const std::vector<Image>& crops) const {
    std::vector<std::optional<IconLabel>> out;
    out.reserve(crops.size());
    for (const auto& c : crops) out.push_back(classify(c));
    return out;
  }
};

// 32x32 grayscale feature, contrast-stretched to [0,1] and flipped so the
// border (background) side is dark.
inline std::vector<double> icon_feature(const Image& img) {
  constexpr int N = 32;
  std::vector<double> f(N * N, 0.0);
  for (int v = 0; v < N; ++v)
    for (int u = 0; u < N; ++u) {
      const int x0 = u * img.width() / N, y0 = v * img.height() / N;
      const int x1 = std::max(x0 + 1, (u + 1) * img.width() / N);
      const int y1 = std::max(y0 + 1, (v + 1) * img.height() / N);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) sum += luma(img.at(x, y));
      f[v * N + u] = sum / ((x1 - x0) * (y1 - y0));
    }
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  const double min = *lo, range = *hi - *lo;
  for (auto& p : f) p = range > 0 ? (p - min) / range : 0.0;
  double border = 0.0;
  for (int k = 0; k < N; ++k) border += f[k] + f[(N - 1) * N + k] + f[k * N] + f[k * N + N - 1];
  if (border / (4 * N) > 0.5)
    for (auto& p : f) p = 1.0 - p;
  return f;
}

inline double feature_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d / static_cast<double>(a.size());
}

class ExemplarIconClassifier final : public IconClassifierPort {
 public:
  explicit ExemplarIconClassifier(double max_distance = 0.2) : max_distance_(max_distance) {}

  // One subdirectory per icon class; spaces in class names are written as
  // underscores ("Location_crosshair").
  static ExemplarIconClassifier load(const std::filesystem::path& dir, double max_distance) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ConfigError("icon exemplar directory not found: " + dir.string());
    ExemplarIconClassifier cls(max_distance);
    std::vector<fs::path> classes;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_directory()) classes.push_back(e.path());
    std::sort(classes.begin(), classes.end());
    for (const auto& cdir : classes) {
      auto name = cdir.filename().string();
      std::replace(name.begin(), name.end(), '_', ' ');
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(cdir))
        if (e.is_regular_file() && (e.path().extension() == ".png" || e.path().extension() == ".jpg"))
          files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) cls.add_exemplar(name, load_image(f));
    }
    return cls;
  }

  void add_exemplar(std::string icon_class, const Image& img) {
    exemplars_.push_back({std::move(icon_class), icon_feature(img)});
  }

  std::size_t size() const noexcept { return exemplars_.size(); }

  std::size_t count(std::string_view icon_class) const {
    return static_cast<std::size_t>(std::count_if(
        exemplars_.begin(), exemplars_.end(), [&](const auto& e) { return e.icon_class == icon_class; }));
  }

  std::optional<IconLabel> classify(const Image& crop) const override {
    if (exemplars_.empty()) return std::nullopt;
    const auto f = icon_feature(crop);
    const Exemplar* best = nullptr;
    double best_d = 0.0;
    for (const auto& e : exemplars_) {
      const double d = feature_distance(f, e.feature);
      if (!best || d < best_d) {
        best = &e;
        best_d = d;
      }
    }
    if (best_d > max_distance_) return std::nullopt;
    return IconLabel{best->icon_class, 1.0 - best_d};
  }

 private:
  struct Exemplar {
    std::string icon_class;
    std::vector<double> feature;
  };
  double max_distance_;
  std::vector<Exemplar> exemplars_;
};

class FallbackIconClassifier final : public IconClassifierPort {
 public:
  FallbackIconClassifier(std::shared_ptr<const IconClassifierPort> primary,
                         std::shared_ptr<const IconClassifierPort> fallback, Diagnostics* diag)
      : primary_(std::move(primary)), fallback_(std::move(fallback)), diag_(diag) {}

  std::optional<IconLabel> classify(const Image& crop) const override {
    return with_fallback(
        "icon-classifier", diag_, [&] { return primary_->classify(crop); },
        [&] { return fallback_->classify(crop); });
  }

  std::vector<std::optional<IconLabel>> classify_batch(const std::vector<Image>& crops) const override {
    return with_fallback(
        "icon-classifier", diag_, [&] { return primary_->classify_batch(crops); },
        [&] { return fallback_->classify_batch(crops); });
  }

 private:
  std::shared_ptr<const IconClassifierPort> primary_, fallback_;
  Diagnostics* diag_;
};

struct IconMatch {
  IconClass icon_class;
  DataType data_type{};
  double score = 0.0;
};

// Classes outside the taxonomy mapping yield none.
inline std::optional<IconMatch> map_icon_label(const std::optional<IconLabel>& label,
                                               const Taxonomy& taxonomy) {
  if (!label) return std::nullopt;
  const auto ic = taxonomy.icon_class(label->icon_class);
  if (!ic) return std::nullopt;
  return IconMatch{ic->first, ic->second, std::clamp(label->score, 0.0, 1.0)};
}

inline std::optional<IconMatch> classify_icon(const Image& crop, const IconClassifierPort& cls,
                                              const Taxonomy& taxonomy) {
  return map_icon_label(cls.classify(crop), taxonomy);
}

}  // namespace seeprivacy
