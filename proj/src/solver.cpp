#include "oddity/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oddity/error.hpp"

namespace oddity {

void RunConfig::validate() const {
  if (binarize_threshold < 0 || binarize_threshold > 255) {
    throw Error(ErrorKind::InvalidArgument, "binarize threshold must lie in [0,255]");
  }
  if (!(z_threshold > 0.0) || !std::isfinite(z_threshold)) {
    throw Error(ErrorKind::InvalidArgument, "z threshold must be positive");
  }
  if (cloud_decimals < 0 || cloud_decimals > 4 || feature_decimals < 0 || feature_decimals > 4) {
    throw Error(ErrorKind::InvalidArgument, "rounding places must lie in [0,4]");
  }
  for (const auto& [id, rank] : complexity_overrides) {
    if (rank < 1) throw Error(ErrorKind::InvalidArgument, "complexity rank of " + id + " must be positive");
  }
  if (parallelism < 0) throw Error(ErrorKind::InvalidArgument, "parallelism must be non-negative");
}

PanelRow zscore_row(const PanelRow& values, Centering center) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteInput, "feature value is not finite");
  }
  const double n = static_cast<double>(kPanels);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / n);

  PanelRow z{};
  if (sigma < 1e-12) return z;

  double location = mean;
  if (center == Centering::Median) {
    PanelRow sorted = values;
    std::sort(sorted.begin(), sorted.end());
    location = 0.5 * (sorted[kPanels / 2 - 1] + sorted[kPanels / 2]);
  }
  for (std::size_t i = 0; i < kPanels; ++i) z[i] = (values[i] - location) / sigma;
  return z;
}

void apply_zscores(FeatureMatrix& matrix, Centering center) {
  matrix.zscores.clear();
  matrix.zscores.reserve(matrix.values.size());
  for (const auto& row : matrix.values) matrix.zscores.push_back(zscore_row(row, center));
}

std::vector<Selection> select_features(const FeatureMatrix& matrix, double z_threshold) {
  std::vector<Selection> out;
  for (std::size_t k = 0; k < matrix.zscores.size(); ++k) {
    const auto& z = matrix.zscores[k];
    std::size_t best = 0;
    for (std::size_t i = 1; i < kPanels; ++i) {
      if (std::abs(z[i]) > std::abs(z[best])) best = i;
    }
    const double score = std::abs(z[best]);
    if (score >= z_threshold) {
      out.push_back({matrix.feature_ids[k], static_cast<int>(best), score, matrix.complexity[k]});
    }
  }
  return out;
}

namespace {

std::string format_z(double z) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << z;
  return os.str();
}

std::string format_threshold(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

}  // namespace

Verdict vote(std::span<const Selection> selections, double z_threshold) {
  Verdict v;
  v.selected.assign(selections.begin(), selections.end());
  if (selections.empty()) {
    v.explanation = "skipped: no feature exceeded delta_z=" + format_threshold(z_threshold);
    return v;
  }

  for (const auto& s : selections) ++v.votes[s.panel];
  const int top = *std::max_element(v.votes.begin(), v.votes.end());
  std::vector<int> tied;
  for (std::size_t i = 0; i < kPanels; ++i) {
    if (v.votes[i] == top) tied.push_back(static_cast<int>(i));
  }

  int winner = tied.front();
  if (tied.size() > 1) {
    v.tie_break_used = true;
    std::array<double, kPanels> weight{};
    for (const auto& s : selections) {
      if (std::find(tied.begin(), tied.end(), s.panel) != tied.end()) weight[s.panel] += 1.0 / s.complexity_rank;
    }
    double best = -1.0;
    std::vector<int> still_tied;
    for (int p : tied) {
      if (weight[p] > best + 1e-12) {
        best = weight[p];
        still_tied = {p};
      } else if (std::abs(weight[p] - best) <= 1e-12) {
        still_tied.push_back(p);
      }
    }
    winner = still_tied.front();
    if (still_tied.size() > 1) {
      int simplest = -1;
      for (const auto& s : selections) {
        if (std::find(still_tied.begin(), still_tied.end(), s.panel) == still_tied.end()) continue;
        if (simplest < 0 || s.complexity_rank < simplest) {
          simplest = s.complexity_rank;
          winner = s.panel;
        }
      }
    }
  }
  v.answer = winner;

  std::ostringstream os;
  os << "panel " << winner + 1 << " is the odd one out (" << v.votes[winner] << " of " << selections.size()
     << (selections.size() == 1 ? " vote" : " votes") << ")";
  if (v.tie_break_used) os << "; tie broken in favour of simpler features";
  os << '\n';
  for (const auto& s : selections) {
    os << "  " << s.feature_id << " (rank " << s.complexity_rank << ") flags panel " << s.panel + 1
       << " with |z|=" << format_z(s.abs_z) << '\n';
  }
  v.explanation = os.str();
  return v;
}

SolveTrace solve_traced(std::span<const GrayRaster, kPanels> panels, const RunConfig& config) {
  config.validate();
  SolveTrace trace;
  for (std::size_t p = 0; p < kPanels; ++p) trace.panels[p] = prepare_panel(panels[p], config);
  trace.matrix = compute_feature_matrix(std::span<const PanelData, kPanels>(trace.panels), config);
  apply_zscores(trace.matrix, config.center);
  const auto selections = select_features(trace.matrix, config.z_threshold);
  trace.verdict = vote(selections, config.z_threshold);
  trace.verdict.warnings = trace.matrix.warnings;
  return trace;
}

Verdict solve_problem(std::span<const GrayRaster, kPanels> panels, const RunConfig& config) {
  return solve_traced(panels, config).verdict;
}

std::array<GrayRaster, kPanels> split_sheet(const GrayRaster& sheet, const RunConfig& config) {
  SegmentOptions opts;
  opts.threshold = config.binarize_threshold;
  opts.polarity = config.polarity;
  opts.fallback = config.gutter_fallback;
  auto parts = segment_grid(sheet, opts);
  std::array<GrayRaster, kPanels> panels;
  std::move(parts.begin(), parts.end(), panels.begin());
  if (config.crop_caption) {
    const Rect region = default_caption_region(panels[0].width(), panels[0].height());
    panels[0] = crop_caption(panels[0], region, background_intensity(config.polarity));
  }
  return panels;
}

Verdict solve_sheet(const GrayRaster& sheet, const RunConfig& config) {
  const auto panels = split_sheet(sheet, config);
  return solve_problem(std::span<const GrayRaster, kPanels>(panels), config);
}

}  // namespace oddity
