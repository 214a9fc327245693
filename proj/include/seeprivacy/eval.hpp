#pragma once

// Evaluation: dataset loading and validation, IoU-matched context metrics,
// segment retrieval metrics with segment similarity, and coverage rate.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeprivacy/detect.hpp"
#include "seeprivacy/errors.hpp"
#include "seeprivacy/geometry.hpp"
#include "seeprivacy/image.hpp"
#include "seeprivacy/segment.hpp"
#include "seeprivacy/taxonomy.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

// ---- dataset -------------------------------------------------------------

struct GroundTruthContext {
  BBox bbox;
  DataType data_type{};
  ContextKind kind = ContextKind::textual;

  friend bool operator==(const GroundTruthContext&, const GroundTruthContext&) = default;
};

struct GroundTruthSegment {
  DataType data_type{};
  std::string text;
  bool found = false;
};

struct ScreenshotRecord {
  std::string key;  // file stem
  std::filesystem::path image;
  std::filesystem::path annotation;
  std::optional<std::filesystem::path> ocr;
  std::vector<GroundTruthContext> contexts;
};

struct AppRecord {
  std::string app_id;
  std::filesystem::path policy;
  std::map<DataType, GroundTruthSegment> segments;
  std::vector<ScreenshotRecord> screenshots;
};

struct Dataset {
  std::filesystem::path root;
  std::vector<AppRecord> apps;

  std::size_t screenshot_count() const {
    std::size_t n = 0;
    for (const auto& a : apps) n += a.screenshots.size();
    return n;
  }
};

namespace detail {

inline nlohmann::json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw DatasetSchemaError(p.string(), "", "cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DatasetSchemaError(p.string(), "", std::string("invalid JSON: ") + e.what());
  }
}

// Numeric stems sort numerically, others lexicographically after them.
inline bool natural_less(const std::string& a, const std::string& b) {
  const auto numeric = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return text::is_ascii_digit(c); });
  };
  const bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;
  if (na && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline bool is_image_file(const std::filesystem::path& p) {
  const auto ext = text::to_lower(p.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace detail

inline std::vector<GroundTruthContext> parse_annotations(const nlohmann::json& j,
                                                         const std::string& file) {
  if (!j.is_object() || !j.contains("contexts"))
    throw DatasetSchemaError(file, "contexts", "missing");
  if (!j.at("contexts").is_array()) throw DatasetSchemaError(file, "contexts", "must be an array");
  std::vector<GroundTruthContext> out;
  std::size_t i = 0;
  for (const auto& rec : j.at("contexts")) {
    const auto field = [&](const char* name) {
      return "contexts[" + std::to_string(i) + "]." + name;
    };
    if (!rec.is_object()) throw DatasetSchemaError(file, field(""), "must be an object");
    GroundTruthContext c;
    if (!rec.contains("bbox") || !rec.at("bbox").is_object())
      throw DatasetSchemaError(file, field("bbox"), "missing");
    for (const char* k : {"x", "y", "w", "h"})
      if (!rec.at("bbox").contains(k) || !rec.at("bbox").at(k).is_number_integer())
        throw DatasetSchemaError(file, field("bbox.") + k, "must be an integer");
    c.bbox = rec.at("bbox").get<BBox>();
    if (!c.bbox.valid()) throw DatasetSchemaError(file, field("bbox"), "w and h must be positive");
    if (!rec.contains("data_type") || !rec.at("data_type").is_string())
      throw DatasetSchemaError(file, field("data_type"), "missing");
    const auto type = parse_data_type(rec.at("data_type").get<std::string>());
    if (!type)
      throw DatasetSchemaError(file, field("data_type"),
                               "unknown data type " + rec.at("data_type").get<std::string>());
    c.data_type = *type;
    if (!rec.contains("kind") || !rec.at("kind").is_string())
      throw DatasetSchemaError(file, field("kind"), "missing");
    const auto kind = parse_context_kind(rec.at("kind").get<std::string>());
    if (!kind) throw DatasetSchemaError(file, field("kind"), "must be textual or iconic");
    c.kind = *kind;
    out.push_back(c);
    ++i;
  }
  return out;
}

inline std::map<DataType, GroundTruthSegment> parse_gt_segments(const nlohmann::json& j,
                                                                const std::string& file) {
  if (!j.is_object()) throw DatasetSchemaError(file, "", "must be an object keyed by data type");
  std::map<DataType, GroundTruthSegment> out;
  for (const auto& [name, rec] : j.items()) {
    const auto type = parse_data_type(name);
    if (!type) throw DatasetSchemaError(file, name, "unknown data type");
    if (!rec.is_object()) throw DatasetSchemaError(file, name, "must be an object");
    if (!rec.contains("found") || !rec.at("found").is_boolean())
      throw DatasetSchemaError(file, name + ".found", "must be a boolean");
    if (!rec.contains("text") || !rec.at("text").is_string())
      throw DatasetSchemaError(file, name + ".text", "must be a string");
    GroundTruthSegment s{*type, rec.at("text").get<std::string>(), rec.at("found").get<bool>()};
    if (!s.found && s.text != kNoSegmentText)
      throw DatasetSchemaError(file, name + ".text", "must be the fallback notice when found is false");
    if (s.found && text::trim(s.text).empty())
      throw DatasetSchemaError(file, name + ".text", "empty segment text");
    out[*type] = std::move(s);
  }
  return out;
}

// Loads and validates the schema. With check_images, every screenshot is
// decoded and every annotation box checked against its bounds.
inline Dataset load_dataset(const std::filesystem::path& root, bool check_images = false) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw DatasetSchemaError(root.string(), "", "not a directory");
  const auto apps_dir = root / "apps";
  if (!fs::is_directory(apps_dir)) throw DatasetSchemaError(apps_dir.string(), "", "missing apps directory");
  Dataset ds{root, {}};
  std::vector<fs::path> app_dirs;
  for (const auto& e : fs::directory_iterator(apps_dir))
    if (e.is_directory()) app_dirs.push_back(e.path());
  std::sort(app_dirs.begin(), app_dirs.end());
  if (app_dirs.empty()) throw DatasetSchemaError(apps_dir.string(), "", "dataset has no apps");

  for (const auto& dir : app_dirs) {
    AppRecord app;
    app.app_id = dir.filename().string();
    app.policy = dir / "policy.html";
    if (!fs::is_regular_file(app.policy)) throw DatasetSchemaError(app.policy.string(), "", "missing policy");
    const auto seg_file = dir / "segments.json";
    if (!fs::is_regular_file(seg_file)) throw DatasetSchemaError(seg_file.string(), "", "missing segments");
    app.segments = parse_gt_segments(detail::read_json_file(seg_file), seg_file.string());

    const auto shots_dir = dir / "screenshots";
    if (!fs::is_directory(shots_dir)) throw DatasetSchemaError(shots_dir.string(), "", "missing screenshots");
    std::vector<fs::path> images;
    for (const auto& e : fs::directory_iterator(shots_dir))
      if (e.is_regular_file() && detail::is_image_file(e.path())) images.push_back(e.path());
    if (images.empty()) throw DatasetSchemaError(shots_dir.string(), "", "no screenshots");
    std::sort(images.begin(), images.end(), [](const fs::path& a, const fs::path& b) {
      return detail::natural_less(a.stem().string(), b.stem().string());
    });
    for (const auto& img : images) {
      ScreenshotRecord shot;
      shot.key = img.stem().string();
      shot.image = img;
      shot.annotation = dir / "annotations" / (shot.key + ".json");
      if (!fs::is_regular_file(shot.annotation))
        throw DatasetSchemaError(shot.annotation.string(), "", "missing annotation for screenshot " + shot.key);
      shot.contexts = parse_annotations(detail::read_json_file(shot.annotation), shot.annotation.string());
      if (const auto ocr = dir / "ocr" / (shot.key + ".json"); fs::is_regular_file(ocr)) shot.ocr = ocr;
      if (check_images) {
        Image decoded;
        try {
          decoded = load_image(img);
        } catch (const ImageDecodeError& e) {
          throw DatasetSchemaError(img.string(), "", e.what());
        }
        for (std::size_t i = 0; i < shot.contexts.size(); ++i)
          if (!shot.contexts[i].bbox.within(decoded.width(), decoded.height()))
            throw DatasetSchemaError(shot.annotation.string(), "contexts[" + std::to_string(i) + "].bbox",
                                     "outside the screenshot bounds");
      }
      app.screenshots.push_back(std::move(shot));
    }
    ds.apps.push_back(std::move(app));
  }
  return ds;
}

// ---- metrics -------------------------------------------------------------

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

using CategoryCounts = std::map<DataType, Counts>;

inline void merge_counts(CategoryCounts& into, const CategoryCounts& from) {
  for (const auto& [t, c] : from) into[t] += c;
}

// Greedy one-to-one matching in descending IoU order; a pair is eligible iff
// the data types agree and IoU > beta.
template <class Pred, class Gt>
CategoryCounts match_contexts(const std::vector<Pred>& pred, const std::vector<Gt>& gt, double beta) {
  struct Pair {
    double iou;
    std::size_t p, g;
  };
  std::vector<Pair> pairs;
  for (std::size_t p = 0; p < pred.size(); ++p)
    for (std::size_t g = 0; g < gt.size(); ++g)
      if (pred[p].data_type == gt[g].data_type) {
        const double v = iou(pred[p].bbox, gt[g].bbox);
        if (v > beta) pairs.push_back({v, p, g});
      }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.iou > b.iou; });
  std::vector<bool> used_p(pred.size()), used_g(gt.size());
  CategoryCounts out;
  for (const auto& pr : pairs) {
    if (used_p[pr.p] || used_g[pr.g]) continue;
    used_p[pr.p] = used_g[pr.g] = true;
    ++out[pred[pr.p].data_type].tp;
  }
  for (std::size_t p = 0; p < pred.size(); ++p)
    if (!used_p[p]) ++out[pred[p].data_type].fp;
  for (std::size_t g = 0; g < gt.size(); ++g)
    if (!used_g[g]) ++out[gt[g].data_type].fn;
  return out;
}

// Fraction of distinct ground-truth data types with at least one prediction of
// that type overlapping (IoU > beta) one of its boxes; none without gt types.
template <class Pred, class Gt>
std::optional<double> coverage_rate(const std::vector<Pred>& pred, const std::vector<Gt>& gt, double beta) {
  std::set<DataType> types, covered;
  for (const auto& g : gt) types.insert(g.data_type);
  if (types.empty()) return std::nullopt;
  for (const auto& g : gt)
    for (const auto& p : pred)
      if (p.data_type == g.data_type && iou(p.bbox, g.bbox) > beta) covered.insert(g.data_type);
  return static_cast<double>(covered.size()) / static_cast<double>(types.size());
}

struct MetricRow {
  DataType category{};
  std::size_t tp = 0, fp = 0, fn = 0;
  double accuracy = 0.0, precision = 0.0, recall = 0.0;
};

inline MetricRow make_row(DataType category, const Counts& c) {
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  return {category, c.tp, c.fp, c.fn, ratio(c.tp, c.tp + c.fp + c.fn), ratio(c.tp, c.tp + c.fp),
          ratio(c.tp, c.tp + c.fn)};
}

// Rows for all twelve data types; averages are unweighted means over the
// categories with at least one ground-truth instance.
struct MetricTable {
  std::vector<MetricRow> rows;
  double accuracy = 0.0, precision = 0.0, recall = 0.0;
  std::size_t averaged_categories = 0;
};

inline MetricTable make_table(const CategoryCounts& counts) {
  MetricTable t;
  for (auto type : kAllDataTypes) {
    const auto it = counts.find(type);
    const auto row = make_row(type, it == counts.end() ? Counts{} : it->second);
    t.rows.push_back(row);
    if (row.tp + row.fn > 0) {
      t.accuracy += row.accuracy;
      t.precision += row.precision;
      t.recall += row.recall;
      ++t.averaged_categories;
    }
  }
  if (t.averaged_categories) {
    const auto n = static_cast<double>(t.averaged_categories);
    t.accuracy /= n;
    t.precision /= n;
    t.recall /= n;
  }
  return t;
}

// ---- segment similarity ----------------------------------------------------

// Phrases split on . , ; : ! ? and line breaks, trimmed, lowercased, as code
// points; empty phrases dropped.
inline std::vector<std::u32string> split_phrases(std::string_view s) {
  std::vector<std::u32string> out;
  std::u32string cur;
  const auto flush = [&] {
    std::size_t b = 0, e = cur.size();
    const auto space = [](char32_t c) { return c == U' ' || c == U'\t' || c == U'\f' || c == U'\v' || c == 0xA0; };
    while (b < e && space(cur[b])) ++b;
    while (e > b && space(cur[e - 1])) --e;
    if (e > b) out.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (std::size_t i = 0; i < s.size();) {
    const auto d = text::decode_utf8(s, i);
    i += d.len;
    const char32_t c = d.cp;
    if (c == U'.' || c == U',' || c == U';' || c == U':' || c == U'!' || c == U'?' || c == U'\n' ||
        c == U'\r') {
      flush();
      continue;
    }
    cur.push_back(c < 0x80 ? static_cast<char32_t>(text::ascii_lower(static_cast<char>(c))) : c);
  }
  flush();
  return out;
}

inline std::size_t longest_common_substring(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

// (1/min(n,m)) * sum_i sum_j lcs(p_i, q_j) / min(|p_i|, |q_j|); unclamped.
inline double segment_similarity(std::string_view retrieved, std::string_view ground_truth) {
  const auto p = split_phrases(retrieved), q = split_phrases(ground_truth);
  if (p.empty() || q.empty()) throw DegenerateSegment("segment has no non-empty phrase");
  double sum = 0.0;
  for (const auto& a : p)
    for (const auto& b : q)
      sum += static_cast<double>(longest_common_substring(a, b)) /
             static_cast<double>(std::min(a.size(), b.size()));
  return sum / static_cast<double>(std::min(p.size(), q.size()));
}

// ---- report ----------------------------------------------------------------

struct AppPrediction {
  SegmentMap segments;
  std::vector<std::vector<Context>> screenshots;  // parallel to AppRecord::screenshots
};

struct EvalReport {
  MetricTable contexts, textual, iconic, segments;
  double coverage_rate = 0.0;
  std::size_t coverage_screenshots = 0;
  double success_rate = 0.0;
  std::size_t segments_retrieved = 0, segments_successful = 0;
  std::size_t apps = 0, screenshots = 0;
};

template <class T>
std::vector<T> of_kind(const std::vector<T>& v, ContextKind k) {
  std::vector<T> out;
  for (const auto& x : v)
    if (x.kind == k) out.push_back(x);
  return out;
}

// Single-threaded reduction over per-app predictions, in dataset order.
inline EvalReport aggregate_eval(const Dataset& ds, const std::vector<AppPrediction>& preds,
                                 const Thresholds& t) {
  if (preds.size() != ds.apps.size()) throw Error("prediction count does not match the dataset");
  CategoryCounts all, textual, iconic, segs;
  double coverage_sum = 0.0;
  EvalReport r;
  r.apps = ds.apps.size();
  for (std::size_t a = 0; a < ds.apps.size(); ++a) {
    const auto& app = ds.apps[a];
    const auto& pred = preds[a];
    if (pred.screenshots.size() != app.screenshots.size())
      throw Error("prediction count does not match screenshots of " + app.app_id);
    for (std::size_t s = 0; s < app.screenshots.size(); ++s) {
      const auto& gt = app.screenshots[s].contexts;
      const auto& pc = pred.screenshots[s];
      merge_counts(all, match_contexts(pc, gt, t.iou_beta));
      merge_counts(textual, match_contexts(of_kind(pc, ContextKind::textual),
                                           of_kind(gt, ContextKind::textual), t.iou_beta));
      merge_counts(iconic, match_contexts(of_kind(pc, ContextKind::iconic),
                                          of_kind(gt, ContextKind::iconic), t.iou_beta));
      if (const auto cov = coverage_rate(pc, gt, t.iou_beta)) {
        coverage_sum += *cov;
        ++r.coverage_screenshots;
      }
      ++r.screenshots;
    }
    for (const auto& [type, gt_seg] : app.segments) {
      const auto it = pred.segments.find(type);
      const bool found = it != pred.segments.end() && it->second.found;
      auto& c = segs[type];
      if (found && gt_seg.found) ++c.tp;
      else if (found) ++c.fp;
      else if (gt_seg.found) ++c.fn;
      if (found) {
        ++r.segments_retrieved;
        if (segment_similarity(it->second.text(), gt_seg.text) > t.segment_sim) ++r.segments_successful;
      }
    }
  }
  r.contexts = make_table(all);
  r.textual = make_table(textual);
  r.iconic = make_table(iconic);
  r.segments = make_table(segs);
  r.coverage_rate = r.coverage_screenshots ? coverage_sum / static_cast<double>(r.coverage_screenshots) : 0.0;
  r.success_rate = r.segments_retrieved ? static_cast<double>(r.segments_successful) /
                                              static_cast<double>(r.segments_retrieved)
                                        : 0.0;
  return r;
}

inline nlohmann::json table_to_json(const MetricTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"category", to_string(r.category)},
                    {"tp", r.tp},
                    {"fp", r.fp},
                    {"fn", r.fn},
                    {"accuracy", r.accuracy},
                    {"precision", r.precision},
                    {"recall", r.recall}});
  return {{"rows", rows},
          {"average", {{"accuracy", t.accuracy}, {"precision", t.precision}, {"recall", t.recall}}},
          {"averaged_categories", t.averaged_categories}};
}

inline nlohmann::json report_to_json(const EvalReport& r) {
  return {{"apps", r.apps},
          {"screenshots", r.screenshots},
          {"contexts", table_to_json(r.contexts)},
          {"textual", table_to_json(r.textual)},
          {"iconic", table_to_json(r.iconic)},
          {"segments", table_to_json(r.segments)},
          {"coverage_rate", r.coverage_rate},
          {"coverage_screenshots", r.coverage_screenshots},
          {"success_rate", r.success_rate},
          {"segments_retrieved", r.segments_retrieved},
          {"segments_successful", r.segments_successful}};
}

inline std::string render_table(const EvalReport& r) {
  std::ostringstream out;
  char buf[160];
  const auto section = [&](const char* title, const MetricTable& t) {
    out << title << '\n';
    std::snprintf(buf, sizeof buf, "  %-14s %5s %5s %5s %9s %9s %9s\n", "category", "tp", "fp", "fn",
                  "accuracy", "precision", "recall");
    out << buf;
    for (const auto& row : t.rows) {
      if (row.tp + row.fp + row.fn == 0) continue;
      std::snprintf(buf, sizeof buf, "  %-14s %5zu %5zu %5zu %9.4f %9.4f %9.4f\n",
                    std::string(display_name(row.category)).c_str(), row.tp, row.fp, row.fn,
                    row.accuracy, row.precision, row.recall);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "  %-14s %5s %5s %5s %9.4f %9.4f %9.4f\n", "average", "", "", "",
                  t.accuracy, t.precision, t.recall);
    out << buf;
  };
  section("Contexts (all)", r.contexts);
  section("Contexts (textual)", r.textual);
  section("Contexts (iconic)", r.iconic);
  section("Segments", r.segments);
  std::snprintf(buf, sizeof buf, "Coverage rate: %.4f over %zu screenshots\n", r.coverage_rate,
                r.coverage_screenshots);
  out << buf;
  std::snprintf(buf, sizeof buf, "Success rate: %.4f (%zu of %zu retrieved segments)\n", r.success_rate,
                r.segments_successful, r.segments_retrieved);
  out << buf;
  return out.str();
}

}  // namespace seeprivacy
