#pragma once

// Pipeline configuration. Every tunable constant of the pipeline lives here;
// modules receive the relevant struct instead of hard-coding values.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "seeprivacy/errors.hpp"

#ifndef SEEPRIVACY_DATA_DIR
#define SEEPRIVACY_DATA_DIR "data"
#endif

namespace seeprivacy {

struct Thresholds {
  double paragraph_prob = 0.5;      // flat-route paragraph selection, strict >
  double phrase_sim = 0.8;          // stage-2 chunk/keyword assignment, strict >
  double iou_beta = 0.5;            // context match, strict >
  double segment_sim = 0.8;         // retrieval success, strict >
  double min_area_fraction = 0.05;  // icon rule (b)
  double max_area_fraction = 0.10;  // icon rule (a)
  double min_aspect = 0.6;          // icon rule (c), width / height

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct DetectionOptions {
  int binarize_threshold = 40;     // max channel distance from background
  int merge_gap = 0;               // px; component boxes closer than this merge
  double icon_max_distance = 0.2;  // exemplar NN acceptance, mean abs pixel distance

  friend bool operator==(const DetectionOptions&, const DetectionOptions&) = default;
};

struct Endpoints {
  std::optional<std::string> ocr;
  std::optional<std::string> text_classifier;
  std::optional<std::string> icon_classifier;
  int timeout_ms = 5000;

  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

struct PipelineConfig {
  std::optional<std::string> taxonomy_path;
  std::string lexicon_dir = SEEPRIVACY_DATA_DIR "/wordnet";
  std::string icon_exemplar_dir = SEEPRIVACY_DATA_DIR "/icons";
  std::optional<std::string> pos_lexicon_path;
  std::optional<std::string> language_profile_path;
  Endpoints endpoints;
  Thresholds thresholds;
  DetectionOptions detection;
  std::string output_dir = "out";
  unsigned workers = 0;  // 0 = logical CPUs

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

namespace detail {
inline void check_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi))
    throw ConfigError(std::string(name) + " = " + std::to_string(v) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

template <class T>
void opt_to_json(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
void opt_from_json(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j.at(key).is_null())
    v.reset();
  else
    v = j.at(key).get<T>();
}

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> keys,
                           const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ConfigError("unknown config key " + where + "." + k);
  }
}
}  // namespace detail

inline void validate(const PipelineConfig& c) {
  const auto& t = c.thresholds;
  detail::check_range(t.paragraph_prob, 0, 1, "thresholds.paragraph_prob");
  detail::check_range(t.phrase_sim, 0, 1, "thresholds.phrase_sim");
  detail::check_range(t.iou_beta, 0, 1, "thresholds.iou_beta");
  detail::check_range(t.segment_sim, 0, 1e9, "thresholds.segment_sim");
  detail::check_range(t.min_area_fraction, 0, 1, "thresholds.min_area_fraction");
  detail::check_range(t.max_area_fraction, t.min_area_fraction, 1,
                      "thresholds.max_area_fraction");
  detail::check_range(t.min_aspect, 0, 1e9, "thresholds.min_aspect");
  detail::check_range(c.detection.binarize_threshold, 0, 255, "detection.binarize_threshold");
  detail::check_range(c.detection.merge_gap, 0, 1e6, "detection.merge_gap");
  detail::check_range(c.detection.icon_max_distance, 0, 1, "detection.icon_max_distance");
  detail::check_range(c.endpoints.timeout_ms, 1, 600000, "endpoints.timeout_ms");
}

inline nlohmann::json config_to_json(const PipelineConfig& c) {
  nlohmann::json j;
  detail::opt_to_json(j, "taxonomy_path", c.taxonomy_path);
  j["lexicon_dir"] = c.lexicon_dir;
  j["icon_exemplar_dir"] = c.icon_exemplar_dir;
  detail::opt_to_json(j, "pos_lexicon_path", c.pos_lexicon_path);
  detail::opt_to_json(j, "language_profile_path", c.language_profile_path);
  nlohmann::json ep;
  detail::opt_to_json(ep, "ocr", c.endpoints.ocr);
  detail::opt_to_json(ep, "text_classifier", c.endpoints.text_classifier);
  detail::opt_to_json(ep, "icon_classifier", c.endpoints.icon_classifier);
  ep["timeout_ms"] = c.endpoints.timeout_ms;
  j["endpoints"] = ep;
  const auto& t = c.thresholds;
  j["thresholds"] = {{"paragraph_prob", t.paragraph_prob},
                     {"phrase_sim", t.phrase_sim},
                     {"iou_beta", t.iou_beta},
                     {"segment_sim", t.segment_sim},
                     {"min_area_fraction", t.min_area_fraction},
                     {"max_area_fraction", t.max_area_fraction},
                     {"min_aspect", t.min_aspect}};
  j["detection"] = {{"binarize_threshold", c.detection.binarize_threshold},
                    {"merge_gap", c.detection.merge_gap},
                    {"icon_max_distance", c.detection.icon_max_distance}};
  j["output_dir"] = c.output_dir;
  j["workers"] = c.workers;
  return j;
}

// Missing keys keep their defaults; unknown keys are rejected.
inline PipelineConfig config_from_json(const nlohmann::json& j) {
  PipelineConfig c;
  try {
    detail::reject_unknown(j,
                           {"taxonomy_path", "lexicon_dir", "icon_exemplar_dir", "pos_lexicon_path",
                            "language_profile_path", "endpoints", "thresholds", "detection",
                            "output_dir", "workers"},
                           "config");
    detail::opt_from_json(j, "taxonomy_path", c.taxonomy_path);
    c.lexicon_dir = j.value("lexicon_dir", c.lexicon_dir);
    c.icon_exemplar_dir = j.value("icon_exemplar_dir", c.icon_exemplar_dir);
    detail::opt_from_json(j, "pos_lexicon_path", c.pos_lexicon_path);
    detail::opt_from_json(j, "language_profile_path", c.language_profile_path);
    if (j.contains("endpoints")) {
      const auto& ep = j.at("endpoints");
      detail::reject_unknown(ep, {"ocr", "text_classifier", "icon_classifier", "timeout_ms"},
                             "endpoints");
      detail::opt_from_json(ep, "ocr", c.endpoints.ocr);
      detail::opt_from_json(ep, "text_classifier", c.endpoints.text_classifier);
      detail::opt_from_json(ep, "icon_classifier", c.endpoints.icon_classifier);
      c.endpoints.timeout_ms = ep.value("timeout_ms", c.endpoints.timeout_ms);
    }
    if (j.contains("thresholds")) {
      const auto& t = j.at("thresholds");
      detail::reject_unknown(t,
                             {"paragraph_prob", "phrase_sim", "iou_beta", "segment_sim",
                              "min_area_fraction", "max_area_fraction", "min_aspect"},
                             "thresholds");
      auto& o = c.thresholds;
      o.paragraph_prob = t.value("paragraph_prob", o.paragraph_prob);
      o.phrase_sim = t.value("phrase_sim", o.phrase_sim);
      o.iou_beta = t.value("iou_beta", o.iou_beta);
      o.segment_sim = t.value("segment_sim", o.segment_sim);
      o.min_area_fraction = t.value("min_area_fraction", o.min_area_fraction);
      o.max_area_fraction = t.value("max_area_fraction", o.max_area_fraction);
      o.min_aspect = t.value("min_aspect", o.min_aspect);
    }
    if (j.contains("detection")) {
      const auto& d = j.at("detection");
      detail::reject_unknown(d, {"binarize_threshold", "merge_gap", "icon_max_distance"},
                             "detection");
      auto& o = c.detection;
      o.binarize_threshold = d.value("binarize_threshold", o.binarize_threshold);
      o.merge_gap = d.value("merge_gap", o.merge_gap);
      o.icon_max_distance = d.value("icon_max_distance", o.icon_max_distance);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

inline PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// `key` is a dotted path such as "thresholds.phrase_sim"; `value` is parsed as
// JSON when possible and taken as a plain string otherwise.
inline void apply_override(PipelineConfig& c, const std::string& key, const std::string& value) {
  auto j = config_to_json(c);
  std::string pointer = "/" + key;
  for (auto& ch : pointer)
    if (ch == '.') ch = '/';
  nlohmann::json::json_pointer ptr(pointer);
  if (!j.contains(ptr)) throw ConfigError("unknown config key " + key);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
  } catch (const nlohmann::json::parse_error&) {
    parsed = value;
  }
  j[ptr] = parsed;
  c = config_from_json(j);
}

// Endpoint URLs from SEEPRIVACY_OCR_URL, SEEPRIVACY_TEXT_CLASSIFIER_URL and
// SEEPRIVACY_ICON_CLASSIFIER_URL, when set and non-empty.
inline void apply_environment(PipelineConfig& c) {
  const auto read = [](const char* name, std::optional<std::string>& slot) {
    if (const char* v = std::getenv(name); v && *v) slot = v;
  };
  read("SEEPRIVACY_OCR_URL", c.endpoints.ocr);
  read("SEEPRIVACY_TEXT_CLASSIFIER_URL", c.endpoints.text_classifier);
  read("SEEPRIVACY_ICON_CLASSIFIER_URL", c.endpoints.icon_classifier);
}

}  // namespace seeprivacy
