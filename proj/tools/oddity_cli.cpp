// Command-line front end: solve, explain, report, generate, list-features.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oddity/batch.hpp"
#include "oddity/error.hpp"
#include "oddity/features.hpp"
#include "oddity/generator.hpp"
#include "oddity/report.hpp"
#include "oddity/solver.hpp"

namespace fs = std::filesystem;
using namespace oddity;

namespace {

constexpr int kExitAnswered = 0;
constexpr int kExitError = 1;
constexpr int kExitSkipped = 2;

struct GlobalOptions {
  RunConfig config;
  std::string center = "mean";
  std::string polarity = "ink";
  std::string format = "text";
  std::vector<std::string> complexity;
  std::string out;
  std::uint64_t seed = 1000;
};

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig c = g.config;
  c.center = g.center == "median" ? Centering::Median : Centering::Mean;
  c.polarity = g.polarity == "bright" ? Polarity::Bright : Polarity::Ink;
  for (const auto& item : g.complexity) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "expected id=rank, got " + item);
    c.complexity_overrides[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
  }
  c.validate();
  return c;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

std::array<GrayRaster, kPanels> load_problem(const std::vector<std::string>& paths, const RunConfig& config) {
  if (paths.size() == 1) return split_sheet(load_grayscale(paths[0]), config);
  if (paths.size() != kPanels) {
    throw Error(ErrorKind::InvalidArgument, "expected one sheet image or six panel images");
  }
  std::array<GrayRaster, kPanels> panels;
  for (std::size_t k = 0; k < kPanels; ++k) panels[k] = load_grayscale(paths[k]);
  if (config.crop_caption) {
    panels[0] = crop_caption(panels[0], default_caption_region(panels[0].width(), panels[0].height()),
                             background_intensity(config.polarity));
  }
  return panels;
}

void print_verdict(const Verdict& v, const std::string& id, const std::string& format) {
  if (format == "json") {
    std::cout << verdict_json(v, id).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << verdict_tsv(v, id) << '\n';
  } else {
    if (v.answer) std::cout << "answer: panel " << *v.answer + 1 << '\n';
    std::cout << verdict_text(v);
  }
}

int run_solve(const GlobalOptions& g, const std::vector<std::string>& paths, const std::string& id,
              const std::string& dump_dir) {
  const RunConfig config = resolve_config(g);
  const auto panels = load_problem(paths, config);
  const SolveTrace trace = solve_traced(std::span<const GrayRaster, kPanels>(panels), config);
  if (!dump_dir.empty()) dump_clouds(trace, dump_dir);
  print_verdict(trace.verdict, id, g.format);
  return trace.verdict.skipped() ? kExitSkipped : kExitAnswered;
}

int run_explain(const GlobalOptions& g, const std::vector<std::string>& paths, const std::string& id) {
  const RunConfig config = resolve_config(g);
  const auto panels = load_problem(paths, config);
  const SolveTrace trace = solve_traced(std::span<const GrayRaster, kPanels>(panels), config);

  std::cout << "feature values\n" << matrix_csv(trace.matrix) << "\nz-scores\n" << matrix_csv(trace.matrix, true)
            << '\n';
  if (!trace.matrix.warnings.empty()) {
    std::cout << "warnings\n";
    for (const auto& w : trace.matrix.warnings) std::cout << "  " << w << '\n';
    std::cout << '\n';
  }
  print_verdict(trace.verdict, id, g.format);

  if (!g.out.empty()) {
    const fs::path dir(g.out);
    fs::create_directories(dir);
    write_file(dir / "features.csv", matrix_csv(trace.matrix));
    write_file(dir / "zscores.csv", matrix_csv(trace.matrix, true));
    write_file(dir / "verdict.json", verdict_json(trace.verdict, id).dump(2) + "\n");
    dump_clouds(trace, dir / "clouds");
  }
  return trace.verdict.skipped() ? kExitSkipped : kExitAnswered;
}

void emit_report(const GlobalOptions& g, const BatchReport& report) {
  if (g.format == "json") {
    std::cout << report_json(report).dump(2) << '\n';
  } else if (g.format == "csv") {
    std::cout << report_csv(report);
  } else {
    std::cout << report_text(report);
  }
  if (!g.out.empty()) {
    fs::create_directories(g.out);
    write_file(fs::path(g.out) / "report.txt", report_text(report));
    write_file(fs::path(g.out) / "report.csv", report_csv(report));
    write_file(fs::path(g.out) / "report.json", report_json(report).dump(2) + "\n");
  }
}

int run_report(const GlobalOptions& g, const std::string& manifest_path) {
  const RunConfig config = resolve_config(g);
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::FileNotFound, manifest_path);
  const fs::path base = fs::path(manifest_path).parent_path();

  std::vector<LabeledProblem> problems;
  std::vector<std::string> errors;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const ManifestEntry e = parse_manifest_line(line, base);
      LabeledProblem p;
      p.id = e.id.empty() ? "line" + std::to_string(number) : e.id;
      p.concept_tag = e.concept_tag;
      p.expected = e.answer;
      if (!e.image.empty()) {
        p.panels = split_sheet(load_grayscale(e.image), config);
      } else {
        std::vector<std::string> paths;
        for (const auto& path : e.panels) paths.push_back(path.string());
        p.panels = load_problem(paths, config);
      }
      problems.push_back(std::move(p));
    } catch (const Error& err) {
      errors.push_back("line " + std::to_string(number) + ": " + err.what());
    }
  }

  BatchReport report = summarize(solve_batch(problems, config));
  errors.insert(errors.end(), report.errors.begin(), report.errors.end());
  report.errors = std::move(errors);
  emit_report(g, report);
  return kExitAnswered;
}

int run_synthetic_report(const GlobalOptions& g, const std::vector<std::string>& concepts, std::size_t count) {
  const RunConfig config = resolve_config(g);
  std::vector<Concept> kinds;
  if (concepts.empty()) {
    kinds.assign(all_concepts().begin(), all_concepts().end());
  } else {
    for (const auto& c : concepts) kinds.push_back(parse_concept(c));
  }
  std::vector<LabeledProblem> problems;
  for (Concept kind : kinds) {
    for (auto& gp : generate_suite(kind, count, g.seed)) {
      problems.push_back({std::string(concept_name(kind)) + "-" + std::to_string(gp.seed),
                          std::string(concept_name(kind)), std::move(gp.panels), gp.odd_index});
    }
  }
  emit_report(g, summarize(solve_batch(problems, config)));
  return kExitAnswered;
}

int run_generate(const GlobalOptions& g, const std::string& concept_arg, std::size_t count, bool sheet) {
  if (g.out.empty()) throw Error(ErrorKind::InvalidArgument, "generate requires --out");
  const Concept kind = parse_concept(concept_arg);
  const fs::path root(g.out);
  fs::create_directories(root);
  std::ostringstream lines;
  for (const auto& problem : generate_suite(kind, count, g.seed)) {
    const std::string name = std::string(concept_name(kind)) + "_" + std::to_string(problem.seed);
    const fs::path dir = count == 1 ? root : root / name;
    fs::create_directories(dir);
    nlohmann::json entry = {{"id", name}, {"concept", concept_name(kind)}, {"answer", problem.odd_index}};
    nlohmann::json panel_paths = nlohmann::json::array();
    for (std::size_t k = 0; k < kPanels; ++k) {
      const std::string file = "panel_" + std::to_string(k + 1) + ".pgm";
      save_pgm(problem.panels[k], dir / file);
      panel_paths.push_back(fs::relative(dir / file, root).generic_string());
    }
    entry["panels"] = panel_paths;
    if (sheet) {
      save_pgm(compose_sheet(std::span<const GrayRaster, kPanels>(problem.panels)), dir / "sheet.pgm");
    }
    write_file(dir / "manifest.json", manifest(problem).dump(2) + "\n");
    lines << entry.dump() << '\n';
  }
  write_file(root / "manifest.jsonl", lines.str());
  std::cout << "wrote " << count << (count == 1 ? " problem" : " problems") << " to " << root.string() << '\n';
  return kExitAnswered;
}

int run_list_features(const GlobalOptions& g) {
  const RunConfig config = resolve_config(g);
  const auto registry = feature_registry(config);
  if (g.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : registry) {
      out.push_back({{"id", f.id}, {"complexity_rank", f.complexity_rank}, {"stage", to_string(f.stage)}});
    }
    std::cout << out.dump(2) << '\n';
    return kExitAnswered;
  }
  const char sep = g.format == "csv" ? ',' : '\t';
  std::cout << "id" << sep << "complexity_rank" << sep << "stage\n";
  for (const auto& f : registry) std::cout << f.id << sep << f.complexity_rank << sep << to_string(f.stage) << '\n';
  return kExitAnswered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd-one-out solver for six-panel geometry problems"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--binarize-threshold", g.config.binarize_threshold, "Foreground threshold (0..255)")
      ->check(CLI::Range(0, 255));
  app.add_option("--polarity", g.polarity, "ink: dark strokes on light paper; bright: the reverse")
      ->check(CLI::IsMember({"ink", "bright"}));
  app.add_flag("--crop-caption", g.config.crop_caption, "Blank the caption corner of the first panel");
  app.add_flag("--no-gutter-fallback{false}", g.config.gutter_fallback,
               "Fail instead of splitting into equal thirds/halves when gutters are not found");
  app.add_option("--z-threshold", g.config.z_threshold, "Minimum |z| for a feature to vote");
  app.add_option("--center", g.center, "Location used by the z-score")->check(CLI::IsMember({"mean", "median"}));
  app.add_option("--rounding", g.config.cloud_decimals, "Decimal places of normalized coordinates")
      ->check(CLI::Range(0, 4));
  app.add_option("--feature-rounding", g.config.feature_decimals, "Decimal places of feature values")
      ->check(CLI::Range(0, 4));
  app.add_flag("--enable-chirality-feature", g.config.enable_chirality_feature, "Register the handedness feature");
  app.add_option("--complexity", g.complexity, "Override a tie-break rank, e.g. sym_x=2");
  app.add_option("--parallelism", g.config.parallelism, "Problems solved concurrently (0 = all cores)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--seed", g.seed, "Base seed for generated problems");

  std::vector<std::string> solve_paths;
  std::string problem_id = "problem";
  std::string dump_dir;
  auto* solve = app.add_subcommand("solve", "Solve one problem (a 3x2 sheet or six panel images)");
  solve->add_option("images", solve_paths, "Sheet image or six panel images")->required();
  solve->add_option("--id", problem_id, "Problem id used in JSON/TSV output");
  solve->add_option("--dump-clouds", dump_dir, "Write normalized clouds (SVG + CSV) per panel");

  std::vector<std::string> explain_paths;
  auto* explain = app.add_subcommand("explain", "Solve and dump the feature matrix and normalized clouds");
  explain->add_option("images", explain_paths, "Sheet image or six panel images")->required();
  explain->add_option("--id", problem_id, "Problem id used in JSON output");

  std::string manifest_path;
  bool synthetic = false;
  std::vector<std::string> report_concepts;
  std::size_t report_count = 200;
  auto* report = app.add_subcommand("report", "Per-concept accuracy table over a labeled manifest");
  report->add_option("manifest", manifest_path, "JSON-lines manifest");
  report->add_flag("--synthetic", synthetic, "Use generated suites instead of a manifest");
  report->add_option("--concept", report_concepts, "Concepts for --synthetic (default: all)");
  report->add_option("--count", report_count, "Problems per concept for --synthetic")->check(CLI::PositiveNumber);

  std::string gen_concept;
  std::size_t gen_count = 1;
  bool gen_sheet = false;
  auto* gen = app.add_subcommand("generate", "Write synthetic problems as PGM panels plus manifests");
  gen->add_option("--concept", gen_concept, "Concept tag")->required();
  gen->add_option("--count", gen_count, "Number of problems (seeds seed..seed+count-1)")->check(CLI::PositiveNumber);
  gen->add_flag("--sheet", gen_sheet, "Also write the composite 3x2 sheet");

  auto* list = app.add_subcommand("list-features", "Show the feature registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) return run_solve(g, solve_paths, problem_id, dump_dir);
    if (*explain) return run_explain(g, explain_paths, problem_id);
    if (*report) {
      if (synthetic) return run_synthetic_report(g, report_concepts, report_count);
      if (manifest_path.empty()) throw Error(ErrorKind::InvalidArgument, "report needs a manifest or --synthetic");
      return run_report(g, manifest_path);
    }
    if (*gen) return run_generate(g, gen_concept, gen_count, gen_sheet);
    if (*list) return run_list_features(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
