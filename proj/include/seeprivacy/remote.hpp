#pragma once

// HTTP clients for the model service: /v1/ocr, /v1/classify-text,
// /v1/classify-icon, /v1/health. Any transport, status or schema failure is
// reported as PortUnavailable so callers can fall back.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "seeprivacy/detect.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/icons.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/ocr.hpp"
#include "seeprivacy/ports.hpp"
#include "seeprivacy/taxonomy.hpp"

namespace seeprivacy {

inline std::string base64_encode(std::span<const std::uint8_t> bytes) {
  return httplib::detail::base64_encode(
      std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

class HttpJsonClient {
 public:
  HttpJsonClient(std::string port, std::string base_url, int timeout_ms)
      : port_(std::move(port)), base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {}

  const std::string& base_url() const noexcept { return base_url_; }

  nlohmann::json post(const std::string& path, const nlohmann::json& body) const {
    auto cli = make_client();
    auto res = cli.Post(path, body.dump(), "application/json");
    return parse(path, res);
  }

  nlohmann::json get(const std::string& path) const {
    auto cli = make_client();
    auto res = cli.Get(path);
    return parse(path, res);
  }

  [[noreturn]] void fail(const std::string& reason) const { throw PortUnavailable(port_, reason); }

 private:
  httplib::Client make_client() const {
    httplib::Client cli(base_url_);
    if (!cli.is_valid()) fail("invalid endpoint " + base_url_);
    const auto sec = timeout_ms_ / 1000, usec = (timeout_ms_ % 1000) * 1000;
    cli.set_connection_timeout(sec, usec);
    cli.set_read_timeout(sec, usec);
    cli.set_write_timeout(sec, usec);
    return cli;
  }

  nlohmann::json parse(const std::string& path, const httplib::Result& res) const {
    if (!res) fail(path + ": " + httplib::to_string(res.error()));
    if (res->status != 200) fail(path + ": HTTP " + std::to_string(res->status));
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      fail(path + ": malformed response: " + e.what());
    }
  }

  std::string port_;
  std::string base_url_;
  int timeout_ms_;
};

inline bool service_healthy(const std::string& base_url, int timeout_ms = 2000) {
  try {
    const auto j = HttpJsonClient("health", base_url, timeout_ms).get("/v1/health");
    return j.is_object() && j.value("status", std::string{}) == "ok";
  } catch (const PortUnavailable&) {
    return false;
  }
}

class RemoteOcr final : public OcrPort {
 public:
  RemoteOcr(std::string base_url, int timeout_ms) : http_("ocr", std::move(base_url), timeout_ms) {}

  std::vector<TextBox> recognize(const Image& img) const override {
    const auto png = encode_png(img);
    const auto j = http_.post("/v1/ocr", {{"image", base64_encode(png)}});
    try {
      auto boxes = text_boxes_from_json(j);
      for (const auto& b : boxes)
        if (!b.bbox.within(img.width(), img.height())) http_.fail("OCR box outside the image");
      return boxes;
    } catch (const nlohmann::json::exception& e) {
      http_.fail(std::string("OCR response schema: ") + e.what());
    } catch (const PortUnavailable&) {
      throw;
    } catch (const Error& e) {
      http_.fail(std::string("OCR response schema: ") + e.what());
    }
  }

 private:
  HttpJsonClient http_;
};

inline nlohmann::json classify_text_request(std::string_view detected, const Taxonomy& taxonomy) {
  nlohmann::json types = nlohmann::json::array();
  for (const auto& e : taxonomy.entries())
    types.push_back({{"name", to_string(e.data_type)}, {"description", e.description}});
  return {{"text", detected}, {"data_types", types}};
}

class RemoteTextTypeClassifier final : public TextTypeClassifierPort {
 public:
  RemoteTextTypeClassifier(std::string base_url, int timeout_ms)
      : http_("text-classifier", std::move(base_url), timeout_ms) {}

  std::optional<DataType> classify(std::string_view detected,
                                   const Taxonomy& taxonomy) const override {
    const auto j = http_.post("/v1/classify-text", classify_text_request(detected, taxonomy));
    if (!j.is_object() || !j.contains("label") || !j.at("label").is_string())
      http_.fail("classify-text response lacks a string label");
    return parse_text_type_answer(j.at("label").get<std::string>());
  }

 private:
  HttpJsonClient http_;
};

class RemoteIconClassifier final : public IconClassifierPort {
 public:
  RemoteIconClassifier(std::string base_url, int timeout_ms)
      : http_("icon-classifier", std::move(base_url), timeout_ms) {}

  std::optional<IconLabel> classify(const Image& crop) const override {
    return classify_batch({crop}).front();
  }

  std::vector<std::optional<IconLabel>> classify_batch(const std::vector<Image>& crops) const override {
    if (crops.empty()) return {};
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : crops) arr.push_back(base64_encode(encode_png(c)));
    const auto j = http_.post("/v1/classify-icon", {{"crops", arr}});
    if (!j.is_object() || !j.contains("labels") || !j.at("labels").is_array() ||
        j.at("labels").size() != crops.size())
      http_.fail("classify-icon response must hold one label per crop");
    std::vector<std::optional<IconLabel>> out;
    for (const auto& l : j.at("labels")) {
      if (l.is_null() || (l.contains("icon_class") && l.at("icon_class").is_null())) {
        out.push_back(std::nullopt);
        continue;
      }
      if (!l.is_object() || !l.contains("icon_class") || !l.at("icon_class").is_string() ||
          !l.contains("score") || !l.at("score").is_number())
        http_.fail("classify-icon label needs icon_class and score");
      const double score = l.at("score").get<double>();
      if (score < 0.0 || score > 1.0) http_.fail("classify-icon score outside [0,1]");
      out.push_back(IconLabel{l.at("icon_class").get<std::string>(), score});
    }
    return out;
  }

 private:
  HttpJsonClient http_;
};

}  // namespace seeprivacy
