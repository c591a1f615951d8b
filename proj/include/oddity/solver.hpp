#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oddity/config.hpp"
#include "oddity/feature_matrix.hpp"
#include "oddity/features.hpp"
#include "oddity/raster.hpp"

namespace oddity {

/// Standard score of each panel. Population sigma; a row with sigma < 1e-12
/// scores all zeros. Throws NonFiniteInput.
PanelRow zscore_row(const PanelRow& values, Centering center = Centering::Mean);

void apply_zscores(FeatureMatrix& matrix, Centering center = Centering::Mean);

struct Selection {
  std::string feature_id;
  int panel = 0;
  double abs_z = 0.0;
  int complexity_rank = 1;
};

/// One entry per row whose max |z| reaches the threshold, voting for the
/// argmax panel (lowest index on exact ties).
std::vector<Selection> select_features(const FeatureMatrix& matrix, double z_threshold = 2.0);

struct Verdict {
  std::optional<int> answer;  // 0-based, row-major
  std::vector<Selection> selected;
  std::array<int, kPanels> votes{};
  bool tie_break_used = false;
  std::string explanation;
  std::vector<std::string> warnings;

  bool skipped() const noexcept { return !answer.has_value(); }
};

/// Majority vote; ties are re-tallied with weight 1/complexity_rank, then
/// resolved in favour of the panel backed by the simplest feature.
Verdict vote(std::span<const Selection> selections, double z_threshold = 2.0);

/// Intermediate products of one solve, kept for explanations and dumps.
struct SolveTrace {
  std::array<PanelData, kPanels> panels;
  FeatureMatrix matrix;
  Verdict verdict;
};

SolveTrace solve_traced(std::span<const GrayRaster, kPanels> panels, const RunConfig& config);

/// binarize -> points -> normalize -> features -> z-scores -> selection -> vote.
Verdict solve_problem(std::span<const GrayRaster, kPanels> panels, const RunConfig& config);

/// Segments a whole sheet (optionally blanking the caption) and splits it into panels.
std::array<GrayRaster, kPanels> split_sheet(const GrayRaster& sheet, const RunConfig& config);

Verdict solve_sheet(const GrayRaster& sheet, const RunConfig& config);

}  // namespace oddity
