// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs with fixtures and built-in fallbacks only; no model service.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "seeprivacy/pipeline.hpp"
#include "support/expected.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace seeprivacy;

namespace {

// Empty result means the criterion holds; otherwise the first problems found.
using Problems = std::vector<std::string>;

struct Outcome {
  Problems problems;
  std::string note;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.problems.push_back(std::string("exception: ") + e.what());
  }
  if (out.problems.empty()) {
    std::cout << "PASS " << name << (out.note.empty() ? "" : " (" + out.note + ")") << '\n';
    return;
  }
  ++failures;
  std::cout << "FAIL " << name << '\n';
  for (std::size_t i = 0; i < out.problems.size() && i < 10; ++i) std::cout << "  " << out.problems[i] << '\n';
  if (out.problems.size() > 10) std::cout << "  ... " << out.problems.size() - 10 << " more\n";
}

template <class T>
std::string str(const T& v) {
  std::ostringstream o;
  o.precision(17);
  o << v;
  return o.str();
}

std::string seconds_text(double s) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(3);
  o << s << " s";
  return o.str();
}

PolicyDocument parse(const std::string& html) { return parse_html(RawPolicy{html, {}, {}}); }

// ---- 1 ----------------------------------------------------------------------

Outcome metric_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const Pipeline pipeline(fixtures::test_config());
  const auto report = run_eval(fixtures::dir() / "micro", pipeline);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome out;
  out.problems = fixtures::compare_report(report, fixtures::read_json(fixtures::dir() / "micro" / "expected.json"));
  if (report.apps != 3 || report.screenshots != 10) out.problems.push_back("micro dataset is not 3 apps / 10 screenshots");
  if (seconds >= 10.0) out.problems.push_back("runtime " + seconds_text(seconds));
  out.note = "3 apps, 10 screenshots, " + seconds_text(seconds);
  return out;
}

// ---- 2 ----------------------------------------------------------------------

Outcome formula_fidelity() {
  Outcome out;
  std::mt19937 rng(20240611);

  const auto wordnet = WordNetNouns::load(fixtures::data_dir() / "wordnet");
  const oracle::WordNetOracle wn_oracle(fixtures::data_dir() / "wordnet");
  std::vector<std::string> heads;
  for (const auto& l : wn_oracle.lemmas())
    if (l.find('_') == std::string::npos) heads.push_back(l);
  const std::vector<std::string> modifiers = {"your", "the", "precise", "device", "personal", "our", "any", "user"};
  std::uniform_int_distribution<std::size_t> pick_head(0, heads.size() - 1), pick_mod(0, modifiers.size() - 1);
  std::uniform_int_distribution<int> n_words(1, 6);
  const auto phrase = [&] {
    std::string p;
    for (int k = n_words(rng) - 1; k > 0; --k) p += modifiers[pick_mod(rng)] + " ";
    return p + heads[pick_head(rng)];
  };
  std::size_t phrase_cases = 0, nonzero = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = phrase(), b = phrase();
    const double got = phrase_similarity(a, b, wordnet), want = wn_oracle.phrase_sim(a, b);
    if (!(std::abs(got - want) <= 1e-12))
      out.problems.push_back("phrase_similarity(\"" + a + "\", \"" + b + "\") = " + str(got) + ", oracle " + str(want));
    nonzero += want > 0;
    ++phrase_cases;
  }
  if (nonzero < 30) out.problems.push_back("too few related phrase pairs: " + str(nonzero));

  const std::vector<std::string> letters = {"a", "b", "c", "d", "A", "B", " ", "é", "ü"};
  const std::vector<std::string> delimiters = {".", ",", ";", ":", "!", "?", "\n", "\r\n", ". "};
  std::uniform_int_distribution<std::size_t> pick_letter(0, letters.size() - 1), pick_delim(0, delimiters.size() - 1);
  std::uniform_int_distribution<int> n_phrases(1, 8), n_chars(1, 12);
  const auto segment = [&] {
    std::string s;
    for (int p = n_phrases(rng); p > 0; --p) {
      std::string ph = "a";  // keeps every phrase non-empty
      for (int k = n_chars(rng); k > 0; --k) ph += letters[pick_letter(rng)];
      s += ph + delimiters[pick_delim(rng)];
    }
    return s;
  };
  std::size_t segment_cases = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = segment(), b = segment();
    const double got = segment_similarity(a, b), want = oracle::segment_sim(a, b);
    if (!(std::abs(got - want) <= 1e-12))
      out.problems.push_back("segment_similarity mismatch: " + str(got) + " vs " + str(want));
    ++segment_cases;
  }
  out.note = str(phrase_cases) + " phrase pairs, " + str(segment_cases) + " segment pairs";
  return out;
}

// ---- 3 ----------------------------------------------------------------------

Outcome icon_rule_suite() {
  Outcome out;
  std::mt19937 rng(77);
  std::size_t scenes = 0, rects = 0, survivors = 0;
  for (int i = 0; i < 80; ++i) {
    const auto scene = fixtures::random_scene(rng);
    std::vector<BBox> got;
    for (const auto& c : localize_icon_candidates(scene.image, scene.ocr, Thresholds{}, DetectionOptions{}))
      got.push_back(c.bbox);
    const auto want = fixtures::expected_icons(scene);
    if (got != want)
      out.problems.push_back("scene " + str(i) + ": " + str(got.size()) + " survivors, predicted " + str(want.size()));
    ++scenes;
    rects += scene.rects.size();
    survivors += want.size();
  }
  if (survivors == 0 || survivors == rects) out.problems.push_back("degenerate scene set");
  out.note = str(scenes) + " scenes, " + str(rects) + " rectangles, " + str(survivors) + " survivors";
  return out;
}

// ---- 4 ----------------------------------------------------------------------

Outcome keyword_pipeline_determinism() {
  Outcome out;
  const auto tax = load_default_taxonomy();
  std::vector<std::string> all;
  for (const auto& e : tax.entries()) all.insert(all.end(), e.keywords.begin(), e.keywords.end());
  const auto contained = [&](const std::string& k) {
    for (const auto& other : all)
      if (other != k && other.find(k) != std::string::npos) return true;
    return false;
  };

  // One sentence per keyword; keywords inside longer ones are mentioned
  // through them. "location" and "share" come from the joined-word sentence.
  const std::string joined = "We collect your locationWe share it.";
  std::vector<std::string> sentences = {joined};
  std::vector<std::string> maximal;
  for (const auto& k : all) {
    if (contained(k)) continue;
    maximal.push_back(k);
    if (k == "location" || k == "share") continue;
    sentences.push_back("We collect your " + k + ".");
  }
  std::string html = "<html><body>";
  for (std::size_t i = 0; i < sentences.size(); i += 4) {
    html += "<p>";
    for (std::size_t j = i; j < i + 4 && j < sentences.size(); ++j) html += sentences[j] + " ";
    html += "</p>";
  }
  html += "</body></html>";

  const Pipeline pipeline(fixtures::test_config());
  const auto doc = pipeline.ingest(RawPolicy{html, {}, {}});
  std::string whole;
  for (const auto& b : doc.blocks) whole += b.text + "\n";
  for (const auto& k : all) {
    const auto n = oracle::keyword_hits(whole, {k}).size();
    if (n == 0) out.problems.push_back("keyword not mentioned: " + k);
    if (std::find(maximal.begin(), maximal.end(), k) != maximal.end() && n != 1)
      out.problems.push_back("keyword mentioned " + str(n) + " times: " + k);
  }

  const auto segs = pipeline.extract(doc);
  std::size_t spans_checked = 0;
  bool joined_ok = false;
  for (const auto& e : tax.entries()) {
    const auto name = std::string(to_string(e.data_type));
    const auto& seg = segs.at(e.data_type);
    if (!seg.found) {
      out.problems.push_back(name + " not found");
      continue;
    }
    // Expected sentences: every sentence of the document with a keyword of
    // this type, with merged byte spans of all occurrences.
    std::vector<std::pair<std::string, std::vector<Span>>> want;
    for (const auto& b : doc.blocks)
      for (const auto& s : tokenize_sentences(b.text, b.index)) {
        if (b.text.substr(s.span.begin, s.span.size()) != s.text)
          out.problems.push_back("sentence offsets do not address the block text");
        std::vector<Span> spans;
        for (const auto& h : oracle::keyword_hits(s.text, e.keywords)) {
          if (!spans.empty() && h.begin < spans.back().end)
            spans.back().end = std::max(spans.back().end, h.end);
          else
            spans.push_back({h.begin, h.end});
        }
        if (!spans.empty()) want.emplace_back(s.text, spans);
      }
    std::vector<std::pair<std::string, std::vector<Span>>> got;
    for (const auto& s : seg.sentences) got.emplace_back(s.sentence.text, s.bold_spans);
    if (got != want) out.problems.push_back(name + ": sentences or bold spans differ from the oracle");
    for (const auto& [text, spans] : got) {
      for (const auto& sp : spans) {
        ++spans_checked;
        const auto bold = oracle::lower_ascii(text.substr(sp.begin, sp.size()));
        bool is_keyword = false;
        for (const auto& k : e.keywords) is_keyword = is_keyword || bold.find(k) != std::string::npos;
        if (!is_keyword) out.problems.push_back(name + ": bold text \"" + bold + "\" holds no keyword");
        if (e.data_type == DataType::Location && text == joined && sp == Span{16, 24}) joined_ok = true;
      }
    }
  }
  if (!joined_ok) out.problems.push_back("\"locationWe\" not matched at bytes [16, 24)");
  out.note = str(maximal.size()) + " keyword mentions, 12/12 types found, " + str(spans_checked) + " bold spans";
  return out;
}

// ---- 5 ----------------------------------------------------------------------

Outcome fallback_string_exactness() {
  Outcome out;
  const std::string expected = "No relative information is found in the privacy policy.";
  const Pipeline pipeline(fixtures::test_config());
  const auto segs = pipeline.extract(parse("<p>We collect your email address.</p>"));
  std::size_t missing = 0;
  for (const auto& [type, seg] : segs) {
    if (seg.found) continue;
    ++missing;
    const auto name = std::string(to_string(type));
    if (seg.text() != expected) out.problems.push_back(name + ": text() is \"" + seg.text() + "\"");
    if (segment_markup(seg) != expected) out.problems.push_back(name + ": markup differs");
    if (segment_to_json(seg).value("text", "") != expected) out.problems.push_back(name + ": JSON text differs");
  }
  if (missing != 11) out.problems.push_back(str(missing) + " unmatched types, expected 11");

  const Context bday{{10, 10, 80, 20}, DataType::Birthday, ContextKind::textual, "birthday", 1.0};
  const auto bundle = build_cpp("s", {bday}, segs);
  if (bundle_to_json(bundle).at("annotations")[0].at("segment").at("text") != expected)
    out.problems.push_back("bundle segment text differs");
  if (render_report(bundle, ReportFormat::markup).find(expected) == std::string::npos)
    out.problems.push_back("rendered report lacks the notice");
  out.note = "11 unmatched types";
  return out;
}

// ---- 6 ----------------------------------------------------------------------

struct FixedParagraph final : ParagraphClassifierPort {
  explicit FixedParagraph(double p) : p_(p) {}
  ParagraphScores classify(std::string_view) const override { return {p_, 0.0}; }
  double p_;
};

struct AlwaysRelevant final : SentenceRelevancePort {
  bool is_relevant(std::string_view) const override { return true; }
};

struct GizmoChunk final : NounChunkerPort {
  std::vector<NounChunk> chunks(std::string_view s) const override {
    const auto pos = s.find("gizmo");
    if (pos == std::string_view::npos) return {};
    return {{"gizmo", "gizmo", {pos, pos + 5}}};
  }
};

// Phrase similarity of "gizmo" to "location" equals `value`.
struct LocationLexicon final : LexicalSimilarityProvider {
  double value = 0;
  std::optional<double> path_similarity(std::string_view a, std::string_view b) const override {
    if (a == "location" || b == "location") return value;
    return std::nullopt;
  }
};

Outcome threshold_strictness() {
  Outcome out;
  const auto check = [&](bool ok, const std::string& what) {
    if (!ok) out.problems.push_back(what);
  };
  const auto above = [](double x) { return std::nextafter(x, 2.0); };
  const Thresholds t;

  // Paragraph probability.
  const auto doc = parse("<p>First.</p><p>Second.</p>");
  const CueHeadingClassifier heading;
  check(select_relevant_paragraphs(doc, heading, FixedParagraph(t.paragraph_prob), t.paragraph_prob).empty(),
        "paragraph at 0.5 selected");
  check(select_relevant_paragraphs(doc, heading, FixedParagraph(above(t.paragraph_prob)), t.paragraph_prob).size() == 2,
        "paragraph just above 0.5 not selected");

  // Phrase similarity: a one-word phrase against a one-word keyword is the
  // path similarity itself.
  const auto tax = load_default_taxonomy();
  const auto gizmo = parse("<p>We keep the gizmo.</p>");
  const AlwaysRelevant gate;
  const GizmoChunk chunker;
  LocationLexicon lex;
  const auto location_found = [&](double v) {
    lex.value = v;
    return extract_segments(gizmo, {0}, tax, {gate, chunker, lex}, t.phrase_sim).at(DataType::Location).found;
  };
  check(!location_found(t.phrase_sim), "phrase similarity 0.8 assigned");
  check(location_found(above(t.phrase_sim)), "phrase similarity just above 0.8 not assigned");

  // IoU at beta: {0,0,10,10} vs {0,0,5,10} is exactly 0.5.
  const std::vector<GroundTruthContext> gt = {{{0, 0, 10, 10}, DataType::Location, ContextKind::textual}};
  const auto matched = [&](BBox b) {
    const std::vector<Context> p = {{b, DataType::Location, ContextKind::textual, "", 1.0}};
    return match_contexts(p, gt, t.iou_beta).at(DataType::Location).tp == 1;
  };
  check(iou({0, 0, 10, 10}, {0, 0, 5, 10}) == t.iou_beta, "IoU fixture is not exactly beta");
  check(!matched({0, 0, 5, 10}), "IoU exactly 0.5 matched");
  check(matched({0, 0, 6, 10}), "IoU 0.6 not matched");
  {
    Thresholds tb = t;
    const double at = iou({0, 0, 10, 10}, {0, 0, 6, 10});
    tb.iou_beta = at;
    const std::vector<Context> p = {{{0, 0, 6, 10}, DataType::Location, ContextKind::textual, "", 1.0}};
    check(match_contexts(p, gt, tb.iou_beta).at(DataType::Location).tp == 0, "IoU equal to beta matched");
    check(match_contexts(p, gt, std::nextafter(at, 0.0)).at(DataType::Location).tp == 1,
          "IoU just above beta not matched");
  }

  // Segment similarity at the success threshold.
  Dataset ds;
  AppRecord app;
  app.app_id = "x";
  app.segments[DataType::Email] = {DataType::Email, "aaaa bbbb, xyz", true};
  app.screenshots.push_back({});
  ds.apps.push_back(app);
  AppPrediction pred;
  pred.screenshots.push_back({});
  pred.segments[DataType::Email] =
      PolicySegment{DataType::Email, {{Sentence{"aaaa bbbx, xyz", 0, {0, 14}}, {}}}, true};
  const double sim = segment_similarity(pred.segments[DataType::Email].text(), "aaaa bbbb, xyz");
  Thresholds ts = t;
  ts.segment_sim = sim;
  check(aggregate_eval(ds, {pred}, ts).segments_successful == 0, "segment similarity equal to threshold counted");
  ts.segment_sim = std::nextafter(sim, 0.0);
  check(aggregate_eval(ds, {pred}, ts).segments_successful == 1, "segment similarity just above threshold missed");
  check(t.segment_sim == 0.8 && t.paragraph_prob == 0.5 && t.phrase_sim == 0.8 && t.iou_beta == 0.5,
        "default thresholds changed");
  out.note = "paragraph 0.5, phrase 0.8, IoU 0.5, segment 0.8";
  return out;
}

// ---- 7 ----------------------------------------------------------------------

Outcome figure_1c() {
  Outcome out;
  const auto fig = fixtures::dir() / "fig1c";
  const Pipeline pipeline(fixtures::test_config());
  if (pipeline.has_ocr()) out.problems.push_back("an OCR service is configured");
  const auto segs = pipeline.extract(pipeline.ingest_file(fig / "policy.html"));
  const auto img = load_image(fig / "screenshot.png");
  const auto ocr = load_ocr_fixture(fig / "ocr.json");
  const auto contexts = pipeline.detect(img, ocr);
  std::size_t loc = 0, bday = 0;
  for (const auto& c : contexts) {
    loc += c.data_type == DataType::Location;
    bday += c.data_type == DataType::Birthday;
  }
  if (contexts.size() != 3 || loc != 2 || bday != 1)
    out.problems.push_back(str(contexts.size()) + " contexts (" + str(loc) + " Location, " + str(bday) + " Birthday)");
  std::set<ContextKind> location_kinds;
  for (const auto& c : contexts)
    if (c.data_type == DataType::Location) location_kinds.insert(c.kind);
  if (location_kinds.size() != 2) out.problems.push_back("Location contexts are not one textual and one iconic");
  const auto icon = fixtures::read_json(fig / "icon_bbox.json").get<BBox>();
  bool icon_ok = false;
  for (const auto& c : contexts) icon_ok = icon_ok || (c.kind == ContextKind::iconic && c.bbox == icon);
  if (!icon_ok) out.problems.push_back("location icon not localized at the staged box");

  const auto bundle = build_cpp("fig1c", contexts, segs);
  if (bundle.annotations.size() != 2) out.problems.push_back(str(bundle.annotations.size()) + " annotations");
  for (const auto& a : bundle.annotations) {
    if (a.data_type == DataType::Location && a.contexts.size() != 2)
      out.problems.push_back("Location annotation carries " + str(a.contexts.size()) + " contexts");
    if (!a.segment.found) out.problems.push_back(std::string(to_string(a.data_type)) + " segment not found");
  }
  out.note = "3 contexts, 2 annotations";
  return out;
}

}  // namespace

int main() {
  criterion("metric-oracle equivalence", metric_oracle_equivalence);
  criterion("formula fidelity", formula_fidelity);
  criterion("icon-rule suite", icon_rule_suite);
  criterion("keyword-pipeline determinism", keyword_pipeline_determinism);
  criterion("fallback-string exactness", fallback_string_exactness);
  criterion("threshold strictness", threshold_strictness);
  criterion("figure 1c end-to-end", figure_1c);
  return failures == 0 ? 0 : 1;
}
