#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddity/batch.hpp"
#include "oddity/features.hpp"
#include "oddity/solver.hpp"

namespace oddity {

/// {problem_id, outcome, panel, votes, features, skipped, warnings}; panel is 0-based.
nlohmann::json verdict_json(const Verdict& verdict, const std::string& problem_id);

/// problem_id, outcome, panel (0-based or -), votes, selected ids.
std::string verdict_tsv(const Verdict& verdict, const std::string& problem_id);

/// Human-facing text with 1-based panel numbers.
std::string verdict_text(const Verdict& verdict);

nlohmann::json report_json(const BatchReport& report);
/// Table with columns concept_tag, true, total, ratio, skipped and an overall line.
std::string report_text(const BatchReport& report);
std::string report_csv(const BatchReport& report);

/// Feature id followed by six values per line.
std::string matrix_csv(const FeatureMatrix& matrix, bool zscores = false);

std::string cloud_csv(const PointCloud& cloud);
std::string cloud_svg(const PointCloud& cloud, const std::string& title);

/// Writes panel_<k>.svg / panel_<k>.csv (k = 1..6) into `dir`.
void dump_clouds(const SolveTrace& trace, const std::filesystem::path& dir);

/// Parses one manifest line: {"id", "concept", "answer", and "image" or "panels"}.
/// Relative paths resolve against `base`.
struct ManifestEntry {
  std::string id;
  std::string concept_tag;
  int answer = -1;
  std::filesystem::path image;
  std::vector<std::filesystem::path> panels;
};

ManifestEntry parse_manifest_line(const std::string& line, const std::filesystem::path& base);

}  // namespace oddity
