#include "oddity/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "oddity/error.hpp"

namespace oddity {

nlohmann::json verdict_json(const Verdict& verdict, const std::string& problem_id) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& s : verdict.selected) {
    features.push_back({{"id", s.feature_id}, {"panel", s.panel}, {"z", s.abs_z}, {"rank", s.complexity_rank}});
  }
  return {
      {"problem_id", problem_id},
      {"outcome", verdict.skipped() ? "skipped" : "answer"},
      {"panel", verdict.answer ? nlohmann::json(*verdict.answer) : nlohmann::json(nullptr)},
      {"votes", verdict.votes},
      {"features", features},
      {"skipped", verdict.skipped()},
      {"tie_break", verdict.tie_break_used},
      {"warnings", verdict.warnings},
  };
}

std::string verdict_tsv(const Verdict& verdict, const std::string& problem_id) {
  std::ostringstream os;
  os << problem_id << '\t' << (verdict.skipped() ? "skipped" : "answer") << '\t';
  if (verdict.answer) {
    os << *verdict.answer;
  } else {
    os << '-';
  }
  os << '\t';
  for (std::size_t i = 0; i < kPanels; ++i) os << (i ? "," : "") << verdict.votes[i];
  os << '\t';
  for (std::size_t i = 0; i < verdict.selected.size(); ++i) os << (i ? "," : "") << verdict.selected[i].feature_id;
  return os.str();
}

std::string verdict_text(const Verdict& verdict) {
  std::ostringstream os;
  os << verdict.explanation;
  if (!verdict.explanation.empty() && verdict.explanation.back() != '\n') os << '\n';
  for (const auto& w : verdict.warnings) os << "warning: " << w << '\n';
  return os.str();
}

namespace {

nlohmann::json ratio_json(const ConceptReport& c) {
  const double r = c.ratio();
  return std::isnan(r) ? nlohmann::json(nullptr) : nlohmann::json(r);
}

nlohmann::json concept_json(const ConceptReport& c) {
  return {{"concept", c.concept_tag}, {"correct", c.correct}, {"total", c.total},
          {"ratio", ratio_json(c)}, {"skipped", c.skipped}};
}

std::string ratio_text(const ConceptReport& c) {
  const double r = c.ratio();
  if (std::isnan(r)) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << r;
  return os.str();
}

}  // namespace

nlohmann::json report_json(const BatchReport& report) {
  nlohmann::json concepts = nlohmann::json::array();
  for (const auto& c : report.concepts) concepts.push_back(concept_json(c));
  nlohmann::json problems = nlohmann::json::array();
  for (const auto& r : report.problems) {
    auto j = verdict_json(r.verdict, r.id);
    j["concept"] = r.concept_tag;
    j["expected"] = r.expected;
    j["correct"] = r.correct();
    if (!r.error.empty()) j["error"] = r.error;
    problems.push_back(std::move(j));
  }
  return {{"concepts", concepts}, {"overall", concept_json(report.overall)}, {"problems", problems},
          {"errors", report.errors}};
}

std::string report_text(const BatchReport& report) {
  std::size_t width = 7;
  for (const auto& c : report.concepts) width = std::max(width, c.concept_tag.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "concept" << std::right << std::setw(7) << "true"
     << std::setw(7) << "total" << std::setw(7) << "ratio" << std::setw(9) << "skipped" << '\n';
  for (const auto& c : report.concepts) {
    os << std::left << std::setw(static_cast<int>(width)) << c.concept_tag << std::right << std::setw(7) << c.correct
       << std::setw(7) << c.total << std::setw(7) << ratio_text(c) << std::setw(9) << c.skipped << '\n';
  }
  const auto& o = report.overall;
  os << "overall " << o.correct << '/' << o.total << " = " << ratio_text(o) << '\n';
  for (const auto& e : report.errors) os << "error: " << e << '\n';
  return os.str();
}

std::string report_csv(const BatchReport& report) {
  std::ostringstream os;
  os << "concept,true,total,ratio,skipped\n";
  auto line = [&](const ConceptReport& c) {
    os << c.concept_tag << ',' << c.correct << ',' << c.total << ',' << ratio_text(c) << ',' << c.skipped << '\n';
  };
  for (const auto& c : report.concepts) line(c);
  line(report.overall);
  return os.str();
}

std::string matrix_csv(const FeatureMatrix& matrix, bool zscores) {
  std::ostringstream os;
  os << "feature,rank,panel1,panel2,panel3,panel4,panel5,panel6\n";
  const auto& rows = zscores ? matrix.zscores : matrix.values;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    os << matrix.feature_ids[k] << ',' << matrix.complexity[k];
    for (double v : rows[k]) {
      if (zscores) {
        os << ',' << std::fixed << std::setprecision(4) << v << std::defaultfloat;
      } else {
        os << ',' << v;
      }
    }
    os << '\n';
  }
  return os.str();
}

std::string cloud_csv(const PointCloud& cloud) {
  std::ostringstream os;
  os << "x,y\n";
  for (const auto& p : cloud) os << p.x << ',' << p.y << '\n';
  return os.str();
}

std::string cloud_svg(const PointCloud& cloud, const std::string& title) {
  double extent = 1.0;
  for (const auto& p : cloud) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  constexpr double half = 200.0;
  const double scale = (half - 10.0) / extent;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
     << "<title>" << title << "</title>\n"
     << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n"
     << "<line x1=\"0\" y1=\"200\" x2=\"400\" y2=\"200\" stroke=\"#bbb\"/>\n"
     << "<line x1=\"200\" y1=\"0\" x2=\"200\" y2=\"400\" stroke=\"#bbb\"/>\n";
  for (const auto& p : cloud) {
    os << "<circle cx=\"" << half + p.x * scale << "\" cy=\"" << half - p.y * scale << "\" r=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

}  // namespace

void dump_clouds(const SolveTrace& trace, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < kPanels; ++k) {
    const std::string stem = "panel_" + std::to_string(k + 1);
    write_text(dir / (stem + ".svg"), cloud_svg(trace.panels[k].normalized, stem));
    write_text(dir / (stem + ".csv"), cloud_csv(trace.panels[k].normalized));
  }
}

ManifestEntry parse_manifest_line(const std::string& line, const std::filesystem::path& base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ManifestParse, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ManifestParse, "manifest line is not an object");

  ManifestEntry entry;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  try {
    entry.id = j.value("id", std::string{});
    entry.concept_tag = j.at("concept").get<std::string>();
    if (j.contains("answer")) {
      entry.answer = j.at("answer").get<int>();
    } else {
      entry.answer = j.at("odd_index").get<int>();
    }
    if (j.contains("image")) {
      entry.image = resolve(j.at("image").get<std::string>());
    } else {
      for (const auto& p : j.at("panels")) entry.panels.push_back(resolve(p.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ManifestParse, e.what());
  }
  if (entry.answer < 0 || entry.answer >= static_cast<int>(kPanels)) {
    throw Error(ErrorKind::ManifestParse, "answer must lie in 0..5");
  }
  if (entry.image.empty() && entry.panels.size() != kPanels) {
    throw Error(ErrorKind::ManifestParse, "expected \"image\" or six \"panels\"");
  }
  return entry;
}

}  // namespace oddity
