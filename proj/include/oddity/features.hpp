#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "oddity/config.hpp"
#include "oddity/feature_matrix.hpp"
#include "oddity/pointset.hpp"
#include "oddity/raster.hpp"

namespace oddity {

enum class Stage { Raw, Normalized, Raster };

const char* to_string(Stage stage) noexcept;

enum class FeatureKind {
  Density,
  Extent,
  ContourCount,
  NestingDepth,
  MinorVariance,
  Orientation,
  SymY,
  SymX,
  MirrorGap,
  Chirality,
};

struct FeatureDescriptor {
  FeatureKind kind;
  std::string id;
  int complexity_rank;  // 1 = simplest
  Stage stage;
};

/// Registered features sorted by complexity rank (ties broken by id).
/// The chirality feature is only present when enabled.
std::vector<FeatureDescriptor> feature_registry(const RunConfig& config = {});

/// Mean of y per rounded-x bucket and mean of x per rounded-y bucket.
struct SymmetryProfile {
  std::map<double, double> y_means;
  std::map<double, double> x_means;
  std::map<double, std::size_t> bucket_counts;    // per x bucket
  std::map<double, std::size_t> y_bucket_counts;  // per y bucket
};

double feat_density(const PointCloud& cloud);

/// Signed Pearson r of the raw coordinates. Throws TooFewPoints below 2 points.
double feat_orientation(const PointCloud& cloud);

/// Foreground components (8-connected) plus enclosed background holes (4-connected).
double feat_contour_count(const BinaryRaster& binary);

/// Depth of the region containment tree; the outer background is depth 0.
double feat_nesting_depth(const BinaryRaster& binary);

SymmetryProfile symmetry_profile(const PointCloud& cloud, int decimals = 0);
double feat_sym_y(const PointCloud& cloud, int decimals = 0);
double feat_sym_x(const PointCloud& cloud, int decimals = 0);

/// Fraction of points with y > 0 lacking a y < 0 partner within one grid
/// cell of (x, -y).
double feat_mirror_gap(const PointCloud& cloud, int decimals = 0);

double feat_minor_variance(const PointCloud& cloud);
double feat_extent(const PointCloud& cloud);

/// Skewness of the minor-axis projections in the right-handed principal frame.
/// Flips sign under reflection, so it separates mirror images.
double feat_chirality(const PointCloud& cloud);

/// Region labelling shared by the topology features.
struct Topology {
  int components = 0;  // foreground, 8-connected
  int holes = 0;       // background, 4-connected, not touching the border
  int max_depth = 0;
};

Topology analyze_topology(const BinaryRaster& binary);

/// The three encodings of one panel.
struct PanelData {
  BinaryRaster binary;
  PointCloud raw;
  PointCloud normalized;
};

PanelData prepare_panel(const GrayRaster& panel, const RunConfig& config);

/// Evaluates one feature. Degenerate inputs throw (EmptyCloud, TooFewPoints).
double evaluate_feature(const FeatureDescriptor& feature, const PanelData& panel, int cloud_decimals);

/// Values rounded to `feature_decimals`. Empty or degenerate panels yield 0
/// and a warning. Panels and features are evaluated in parallel.
FeatureMatrix compute_feature_matrix(std::span<const PanelData, kPanels> panels, const RunConfig& config);

/// Single-threaded reference for compute_feature_matrix.
FeatureMatrix compute_feature_matrix_serial(std::span<const PanelData, kPanels> panels,
                                            const RunConfig& config);

}  // namespace oddity
