#pragma once

// 8-bit RGB raster with PNG/JPEG codecs (OpenCV imgcodecs).

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/geometry.hpp"

namespace seeprivacy {

using Rgb = std::array<std::uint8_t, 3>;

class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255})
      : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height * 3) {
    if (width <= 0 || height <= 0) throw ImageDecodeError("image dimensions must be positive");
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
      pixels_[i] = fill[0];
      pixels_[i + 1] = fill[1];
      pixels_[i + 2] = fill[2];
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }
  std::int64_t area() const noexcept { return static_cast<std::int64_t>(width_) * height_; }

  Rgb at(int x, int y) const noexcept {
    const auto i = offset(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }

  void set(int x, int y, Rgb c) noexcept {
    const auto i = offset(x, y);
    pixels_[i] = c[0];
    pixels_[i + 1] = c[1];
    pixels_[i + 2] = c[2];
  }

  void fill_rect(const BBox& b, Rgb c) {
    for (int y = std::max(0, b.y); y < std::min(height_, b.bottom()); ++y)
      for (int x = std::max(0, b.x); x < std::min(width_, b.right()); ++x) set(x, y, c);
  }

  // Rectangle outline of the given thickness, drawn inside the box.
  void stroke_rect(const BBox& b, Rgb c, int thickness) {
    const int t = std::max(1, std::min({thickness, b.w, b.h}));
    fill_rect({b.x, b.y, b.w, t}, c);
    fill_rect({b.x, b.bottom() - t, b.w, t}, c);
    fill_rect({b.x, b.y, t, b.h}, c);
    fill_rect({b.right() - t, b.y, t, b.h}, c);
  }

  // Crop clipped to the image bounds.
  Image crop(const BBox& b) const {
    const int x0 = std::max(0, b.x), y0 = std::max(0, b.y);
    const int x1 = std::min(width_, b.right()), y1 = std::min(height_, b.bottom());
    if (x1 <= x0 || y1 <= y0) throw ImageDecodeError("crop outside image");
    Image out(x1 - x0, y1 - y0);
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) out.set(x - x0, y - y0, at(x, y));
    return out;
  }

  std::span<const std::uint8_t> data() const noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

inline std::uint8_t luma(Rgb c) noexcept {
  return static_cast<std::uint8_t>((299 * c[0] + 587 * c[1] + 114 * c[2] + 500) / 1000);
}

inline Image decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw ImageDecodeError("empty image data");
  cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8UC1,
              const_cast<std::uint8_t*>(bytes.data()));
  cv::Mat bgr;
  try {
    bgr = cv::imdecode(buf, cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw ImageDecodeError(std::string("image decode failed: ") + e.what());
  }
  if (bgr.empty() || bgr.type() != CV_8UC3) throw ImageDecodeError("unreadable image data");
  Image img(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) img.set(x, y, {row[x][2], row[x][1], row[x][0]});
  }
  return img;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageDecodeError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Image load_image(const std::filesystem::path& path) {
  try {
    return decode_image(read_file_bytes(path));
  } catch (const ImageDecodeError& e) {
    throw ImageDecodeError(path.string() + ": " + e.what());
  }
}

inline std::vector<std::uint8_t> encode_png(const Image& img) {
  if (img.empty()) throw ImageEncodeError("cannot encode an empty image");
  cv::Mat bgr(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width(); ++x) {
      const auto c = img.at(x, y);
      row[x] = {c[2], c[1], c[0]};
    }
  }
  std::vector<std::uint8_t> out;
  try {
    if (!cv::imencode(".png", bgr, out)) throw ImageEncodeError("PNG encoding failed");
  } catch (const cv::Exception& e) {
    throw ImageEncodeError(std::string("PNG encoding failed: ") + e.what());
  }
  return out;
}

inline void save_png(const Image& img, const std::filesystem::path& path) {
  const auto bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ImageEncodeError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageEncodeError("short write to " + path.string());
}

}  // namespace seeprivacy
