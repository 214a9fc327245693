#pragma once

// Wires configuration into ports and runs the end-to-end stages: policy
// ingestion, segment extraction, context detection, CPP generation and
// dataset evaluation.

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "seeprivacy/chunker.hpp"
#include "seeprivacy/config.hpp"
#include "seeprivacy/detect.hpp"
#include "seeprivacy/diagnostics.hpp"
#include "seeprivacy/eval.hpp"
#include "seeprivacy/icons.hpp"
#include "seeprivacy/language.hpp"
#include "seeprivacy/lexical.hpp"
#include "seeprivacy/ocr.hpp"
#include "seeprivacy/policy.hpp"
#include "seeprivacy/ports.hpp"
#include "seeprivacy/presenter.hpp"
#include "seeprivacy/remote.hpp"
#include "seeprivacy/segment.hpp"
#include "seeprivacy/taxonomy.hpp"

namespace seeprivacy {

// Runs fn(0..n-1) on up to `workers` threads (0 = logical CPUs). The first
// failing index, in index order, is rethrown after all tasks finish.
inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config, Diagnostics* diag = nullptr)
      : config_(std::move(config)), diag_(diag), taxonomy_(load_taxonomy()) {
    validate(config_);
    if (config_.language_profile_path)
      owned_language_ = std::make_unique<TrigramLanguageDetector>(
          TrigramLanguageDetector::from_file(*config_.language_profile_path));
    if (!std::filesystem::is_directory(config_.lexicon_dir))
      throw ConfigError("lexical database directory not found: " + config_.lexicon_dir);
    lexicon_ = std::make_unique<WordNetNouns>(WordNetNouns::load(config_.lexicon_dir));
    auto pos = PosLexicon::builtin();
    if (config_.pos_lexicon_path) pos.merge_file(*config_.pos_lexicon_path);
    chunker_ = std::make_unique<RuleNounChunker>(std::move(pos));

    const auto& ep = config_.endpoints;
    if (ep.text_classifier)
      text_ = std::make_shared<FallbackTextTypeClassifier>(
          std::make_shared<RemoteTextTypeClassifier>(*ep.text_classifier, ep.timeout_ms), diag_);
    else
      text_ = std::make_shared<KeywordTextTypeClassifier>();

    auto exemplars = std::make_shared<ExemplarIconClassifier>(ExemplarIconClassifier::load(
        config_.icon_exemplar_dir, config_.detection.icon_max_distance));
    if (ep.icon_classifier)
      icon_ = std::make_shared<FallbackIconClassifier>(
          std::make_shared<RemoteIconClassifier>(*ep.icon_classifier, ep.timeout_ms), exemplars, diag_);
    else
      icon_ = exemplars;

    if (ep.ocr) ocr_ = std::make_shared<RemoteOcr>(*ep.ocr, ep.timeout_ms);
  }

  const PipelineConfig& config() const noexcept { return config_; }
  const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
  bool has_ocr() const noexcept { return ocr_ != nullptr; }

  const LanguageDetector& language() const {
    return owned_language_ ? static_cast<const LanguageDetector&>(*owned_language_)
                           : TrigramLanguageDetector::builtin();
  }

  // Parsed, English-only document; MalformedDocument when no text remains.
  PolicyDocument ingest(const RawPolicy& raw) const {
    auto doc = filter_non_english(parse_html(raw), language());
    require_text(doc);
    return doc;
  }

  PolicyDocument ingest_file(const std::filesystem::path& path) const {
    return ingest(RawPolicy{read_text_file(path), path.string(), std::nullopt});
  }

  std::vector<std::size_t> select(const PolicyDocument& doc) const {
    return select_relevant_paragraphs(doc, heading_, paragraph_, config_.thresholds.paragraph_prob);
  }

  SegmentMap extract(const PolicyDocument& doc) const {
    const SegmentPorts ports{gate_, *chunker_, *lexicon_};
    return extract_segments(doc, select(doc), taxonomy_, ports, config_.thresholds.phrase_sim);
  }

  // Fixture boxes when given, else the OCR service.
  std::vector<TextBox> recognize(const Image& img, const std::optional<std::vector<TextBox>>& fixture) const {
    if (fixture) return *fixture;
    if (!ocr_) throw PortUnavailable("ocr", "no OCR endpoint configured and no fixture supplied");
    return ocr_->recognize(img);
  }

  std::vector<Context> detect(const Image& img, const std::optional<std::vector<TextBox>>& fixture) const {
    const DetectPorts ports{*text_, *icon_};
    return detect_contexts(img, recognize(img, fixture), taxonomy_, ports, config_.thresholds,
                           config_.detection);
  }

  CppBundle generate(std::string screenshot_id, const Image& img,
                     const std::optional<std::vector<TextBox>>& fixture, const SegmentMap& segments,
                     std::string generated_at = {}) const {
    return build_cpp(std::move(screenshot_id), detect(img, fixture), segments, std::move(generated_at));
  }

 private:
  Taxonomy load_taxonomy() const {
    return config_.taxonomy_path ? load_taxonomy_file(*config_.taxonomy_path) : load_default_taxonomy();
  }

  PipelineConfig config_;
  Diagnostics* diag_;
  Taxonomy taxonomy_;
  std::unique_ptr<TrigramLanguageDetector> owned_language_;
  std::unique_ptr<WordNetNouns> lexicon_;
  std::unique_ptr<RuleNounChunker> chunker_;
  CueHeadingClassifier heading_;
  CueParagraphClassifier paragraph_;
  VerbSentenceGate gate_;
  std::shared_ptr<const TextTypeClassifierPort> text_;
  std::shared_ptr<const IconClassifierPort> icon_;
  std::shared_ptr<const OcrPort> ocr_;
};

// Runs the pipeline over every app policy and screenshot of the dataset
// (in parallel) and reduces the results in dataset order.
inline EvalReport run_eval(const Dataset& ds, const Pipeline& pipeline) {
  std::vector<AppPrediction> preds(ds.apps.size());
  struct Task {
    std::size_t app;
    std::optional<std::size_t> shot;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < ds.apps.size(); ++a) {
    preds[a].screenshots.resize(ds.apps[a].screenshots.size());
    tasks.push_back({a, std::nullopt});
    for (std::size_t s = 0; s < ds.apps[a].screenshots.size(); ++s) tasks.push_back({a, s});
  }
  parallel_for(tasks.size(), pipeline.config().workers, [&](std::size_t i) {
    const auto& task = tasks[i];
    const auto& app = ds.apps[task.app];
    if (!task.shot) {
      preds[task.app].segments = pipeline.extract(pipeline.ingest_file(app.policy));
      return;
    }
    const auto& shot = app.screenshots[*task.shot];
    const auto img = load_image(shot.image);
    for (std::size_t k = 0; k < shot.contexts.size(); ++k)
      if (!shot.contexts[k].bbox.within(img.width(), img.height()))
        throw DatasetSchemaError(shot.annotation.string(), "contexts[" + std::to_string(k) + "].bbox",
                                 "outside the screenshot bounds");
    std::optional<std::vector<TextBox>> fixture;
    if (shot.ocr) {
      try {
        fixture = load_ocr_fixture(*shot.ocr);
      } catch (const Error& e) {
        throw DatasetSchemaError(shot.ocr->string(), "boxes", e.what());
      }
    }
    preds[task.app].screenshots[*task.shot] = pipeline.detect(img, fixture);
  });
  return aggregate_eval(ds, preds, pipeline.config().thresholds);
}

inline EvalReport run_eval(const std::filesystem::path& dataset_dir, const Pipeline& pipeline) {
  return run_eval(load_dataset(dataset_dir), pipeline);
}

}  // namespace seeprivacy
