// seeprivacy: command-line front end.
//
// Exit codes: 0 ok, 1 usage/config/other error, 2 malformed policy document,
// 3 unreadable screenshot, 4 OCR unavailable, 5 dataset schema error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seeprivacy/seeprivacy.hpp"

namespace fs = std::filesystem;
using namespace seeprivacy;

namespace {

struct GlobalOptions {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string ocr_url, text_url, icon_url;
  int workers = -1;
  bool quiet = false;
};

PipelineConfig make_config(const GlobalOptions& g) {
  PipelineConfig c = g.config_file.empty() ? PipelineConfig{} : load_config_file(g.config_file);
  apply_environment(c);
  if (!g.ocr_url.empty()) c.endpoints.ocr = g.ocr_url;
  if (!g.text_url.empty()) c.endpoints.text_classifier = g.text_url;
  if (!g.icon_url.empty()) c.endpoints.icon_classifier = g.icon_url;
  if (g.workers >= 0) c.workers = static_cast<unsigned>(g.workers);
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got " + kv);
    apply_override(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  validate(c);
  return c;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("short write to " + path);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::vector<TextBox>> ocr_fixture(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return load_ocr_fixture(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contextual privacy policies for mobile app screenshots"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("-c,--config", g.config_file, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", g.overrides, "Override a config value, e.g. thresholds.phrase_sim=0.8")
      ->take_all();
  app.add_option("--ocr-url", g.ocr_url, "OCR service base URL");
  app.add_option("--text-classifier-url", g.text_url, "Text-type classifier service base URL");
  app.add_option("--icon-classifier-url", g.icon_url, "Icon classifier service base URL");
  app.add_option("-j,--workers", g.workers, "Worker threads (0 = logical CPUs)");
  app.add_flag("-q,--quiet", g.quiet, "Do not mirror diagnostics to stderr");

  std::string policy, out, screenshot, fixture, segments_file, dataset, shot_id;
  bool no_timestamp = false;

  auto* ingest = app.add_subcommand("ingest", "Parse a policy into line-delimited block records");
  ingest->add_option("policy", policy, "Policy HTML file")->required();
  ingest->add_option("-o,--output", out, "Output file (default stdout)");

  auto* extract = app.add_subcommand("extract", "Extract per-data-type policy segments");
  extract->add_option("policy", policy, "Policy HTML file")->required();
  extract->add_option("-o,--output", out, "Output file (default stdout)");

  auto* detect = app.add_subcommand("detect", "Detect privacy-related contexts on a screenshot");
  detect->add_option("screenshot", screenshot, "Screenshot image (PNG/JPEG)")->required();
  detect->add_option("--ocr-fixture", fixture, "OCR boxes JSON used instead of the OCR service");
  detect->add_option("-o,--output", out, "Output file (default stdout)");

  auto* generate = app.add_subcommand("generate", "Generate the contextual privacy policy for a screenshot");
  generate->add_option("screenshot", screenshot, "Screenshot image (PNG/JPEG)")->required();
  auto* policy_opt = generate->add_option("--policy", policy, "Policy HTML file");
  auto* segments_opt = generate->add_option("--segments", segments_file, "Segments JSON from extract");
  policy_opt->excludes(segments_opt);
  generate->add_option("--ocr-fixture", fixture, "OCR boxes JSON used instead of the OCR service");
  generate->add_option("--id", shot_id, "Screenshot id (default: file stem)");
  generate->add_option("-o,--output-dir", out, "Output directory (default: config output_dir)");
  generate->add_flag("--no-timestamp", no_timestamp, "Leave generated_at empty");

  auto* eval = app.add_subcommand("eval", "Evaluate the pipeline on an annotated dataset");
  eval->add_option("dataset", dataset, "Dataset root directory")->required();
  eval->add_option("-o,--output-dir", out, "Output directory (default: config output_dir)");

  auto* validate_ds = app.add_subcommand("validate-dataset", "Check a dataset against the schema");
  validate_ds->add_option("dataset", dataset, "Dataset root directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Diagnostics diag(g.quiet ? nullptr : &std::cerr);

    if (*validate_ds) {
      const auto ds = load_dataset(dataset, true);
      std::cout << "ok: " << ds.apps.size() << " apps, " << ds.screenshot_count() << " screenshots\n";
      return 0;
    }

    const auto config = make_config(g);
    const Pipeline pipeline(config, &diag);

    if (*ingest) {
      write_output(out, document_to_jsonl(pipeline.ingest_file(policy)));
    } else if (*extract) {
      const auto segs = pipeline.extract(pipeline.ingest_file(policy));
      write_output(out, segments_to_json(segs).dump(2) + "\n");
    } else if (*detect) {
      const auto img = load_image(screenshot);
      write_output(out, contexts_to_json(pipeline.detect(img, ocr_fixture(fixture))).dump(2) + "\n");
    } else if (*generate) {
      if (policy.empty() && segments_file.empty()) throw ConfigError("generate needs --policy or --segments");
      const auto img = load_image(screenshot);
      const auto segs = policy.empty()
                            ? segments_from_json(nlohmann::json::parse(read_text_file(segments_file)))
                            : pipeline.extract(pipeline.ingest_file(policy));
      const auto id = shot_id.empty() ? fs::path(screenshot).stem().string() : shot_id;
      const auto bundle =
          pipeline.generate(id, img, ocr_fixture(fixture), segs, no_timestamp ? "" : utc_timestamp());
      const fs::path dir = out.empty() ? fs::path(config.output_dir) : fs::path(out);
      fs::create_directories(dir);
      write_output((dir / (id + ".cpp.json")).string(), render_report(bundle, ReportFormat::records));
      write_output((dir / (id + ".html")).string(), render_report(bundle, ReportFormat::markup));
      save_png(render_overlay(img, bundle), dir / (id + ".overlay.png"));
      std::cout << id << ": " << bundle.annotations.size() << " annotations\n";
    } else if (*eval) {
      const auto report = run_eval(fs::path(dataset), pipeline);
      const fs::path dir = out.empty() ? fs::path(config.output_dir) : fs::path(out);
      const auto table = render_table(report);
      write_output((dir / "eval_report.json").string(), report_to_json(report).dump(2) + "\n");
      write_output((dir / "eval_report.txt").string(), table);
      std::cout << table;
    }
    return 0;
  } catch (const MalformedDocument& e) {
    std::cerr << "error: malformed document: " << e.what() << '\n';
    return 2;
  } catch (const ImageDecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const PortUnavailable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.port() == "ocr" ? 4 : 1;
  } catch (const DatasetSchemaError& e) {
    std::cerr << "error: dataset schema: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
