#pragma once

#include <algorithm>
#include <cstdint>

#include <json.hpp>

namespace seeprivacy {

// Axis-aligned pixel box, top-left origin.
struct BBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  std::int64_t area() const noexcept { return static_cast<std::int64_t>(w) * h; }
  int right() const noexcept { return x + w; }
  int bottom() const noexcept { return y + h; }
  bool valid() const noexcept { return w > 0 && h > 0; }
  bool within(int width, int height) const noexcept {
    return x >= 0 && y >= 0 && right() <= width && bottom() <= height;
  }

  friend bool operator==(const BBox&, const BBox&) = default;
  friend auto operator<=>(const BBox&, const BBox&) = default;
};

inline std::int64_t intersection_area(const BBox& a, const BBox& b) noexcept {
  const auto w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const auto h = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  return (w > 0 && h > 0) ? static_cast<std::int64_t>(w) * h : 0;
}

inline BBox bbox_union(const BBox& a, const BBox& b) noexcept {
  const int x0 = std::min(a.x, b.x), y0 = std::min(a.y, b.y);
  return {x0, y0, std::max(a.right(), b.right()) - x0, std::max(a.bottom(), b.bottom()) - y0};
}

inline double iou(const BBox& a, const BBox& b) noexcept {
  const auto inter = intersection_area(a, b);
  if (inter == 0) return 0.0;
  const auto uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Raster order: top to bottom, then left to right.
inline bool raster_less(const BBox& a, const BBox& b) noexcept {
  if (a.y != b.y) return a.y < b.y;
  if (a.x != b.x) return a.x < b.x;
  if (a.h != b.h) return a.h < b.h;
  return a.w < b.w;
}

inline void to_json(nlohmann::json& j, const BBox& b) {
  j = {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

inline void from_json(const nlohmann::json& j, BBox& b) {
  b.x = j.at("x").get<int>();
  b.y = j.at("y").get<int>();
  b.w = j.at("w").get<int>();
  b.h = j.at("h").get<int>();
}

}  // namespace seeprivacy
