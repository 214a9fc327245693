#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/geometry.hpp"
#include "seeprivacy/image.hpp"

namespace seeprivacy {

struct TextBox {
  BBox bbox;
  std::string text;
  double confidence = 1.0;

  friend bool operator==(const TextBox&, const TextBox&) = default;
};

class OcrPort {
 public:
  virtual ~OcrPort() = default;
  virtual std::vector<TextBox> recognize(const Image& image) const = 0;
};

// OCR fixture: {"boxes":[{"bbox":{x,y,w,h},"text":...,"confidence":...}]}.
// Wire-style flat boxes ({x,y,w,h,text,confidence}) are accepted as well.
inline std::vector<TextBox> text_boxes_from_json(const nlohmann::json& j) {
  std::vector<TextBox> out;
  for (const auto& rec : j.at("boxes")) {
    TextBox tb;
    tb.bbox = rec.contains("bbox") ? rec.at("bbox").get<BBox>() : rec.get<BBox>();
    tb.text = rec.at("text").get<std::string>();
    tb.confidence = rec.value("confidence", 1.0);
    if (!tb.bbox.valid()) throw Error("OCR box with non-positive size");
    if (tb.confidence < 0.0 || tb.confidence > 1.0) throw Error("OCR confidence outside [0,1]");
    if (!tb.text.empty()) out.push_back(std::move(tb));
  }
  return out;
}

inline nlohmann::json text_boxes_to_json(const std::vector<TextBox>& boxes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : boxes)
    arr.push_back({{"bbox", b.bbox}, {"text", b.text}, {"confidence", b.confidence}});
  return {{"boxes", arr}};
}

inline std::vector<TextBox> load_ocr_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open OCR fixture " + path.string());
  try {
    return text_boxes_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

// Serves boxes loaded from a fixture regardless of the image.
class FixtureOcr final : public OcrPort {
 public:
  explicit FixtureOcr(std::vector<TextBox> boxes) : boxes_(std::move(boxes)) {}
  std::vector<TextBox> recognize(const Image&) const override { return boxes_; }

 private:
  std::vector<TextBox> boxes_;
};

}  // namespace seeprivacy
