#include "oddity/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "oddity/error.hpp"

namespace oddity {

const char* to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Raw: return "raw";
    case Stage::Normalized: return "normalized";
    case Stage::Raster: return "raster";
  }
  return "unknown";
}

std::vector<FeatureDescriptor> feature_registry(const RunConfig& config) {
  std::vector<FeatureDescriptor> reg = {
      {FeatureKind::Density, "density", 1, Stage::Raw},
      {FeatureKind::Extent, "extent", 2, Stage::Raw},
      {FeatureKind::ContourCount, "contour_count", 3, Stage::Raster},
      {FeatureKind::NestingDepth, "nesting_depth", 4, Stage::Raster},
      {FeatureKind::MinorVariance, "minor_variance", 5, Stage::Normalized},
      {FeatureKind::Orientation, "orientation", 6, Stage::Raw},
      {FeatureKind::SymY, "sym_y", 7, Stage::Normalized},
      {FeatureKind::SymX, "sym_x", 8, Stage::Normalized},
      {FeatureKind::MirrorGap, "mirror_gap", 9, Stage::Normalized},
  };
  if (config.enable_chirality_feature) {
    reg.push_back({FeatureKind::Chirality, "chirality", 10, Stage::Raw});
  }
  for (auto& f : reg) {
    if (auto it = config.complexity_overrides.find(f.id); it != config.complexity_overrides.end()) {
      f.complexity_rank = it->second;
    }
  }
  std::stable_sort(reg.begin(), reg.end(), [](const auto& a, const auto& b) {
    return a.complexity_rank != b.complexity_rank ? a.complexity_rank < b.complexity_rank : a.id < b.id;
  });
  return reg;
}

double feat_density(const PointCloud& cloud) { return static_cast<double>(cloud.size()); }

double feat_orientation(const PointCloud& cloud) {
  if (cloud.size() < 2) throw Error(ErrorKind::TooFewPoints, "Pearson needs at least two points");
  const double n = static_cast<double>(cloud.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : cloud) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : cloud) {
    sxx += (p.x - mx) * (p.x - mx);
    syy += (p.y - my) * (p.y - my);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (sxx / n < 1e-12 || syy / n < 1e-12) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// --- topology -------------------------------------------------------------

namespace {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Topology analyze_topology(const BinaryRaster& binary) {
  // One-pixel background frame so every border-touching background region
  // merges into a single outer region.
  const int w = binary.width() + 2;
  const int h = binary.height() + 2;
  auto fg = [&](int x, int y) { return binary.get_or_background(x - 1, y - 1); };

  std::vector<int> label(static_cast<std::size_t>(w) * h, -1);
  auto at = [&](int x, int y) -> int& { return label[static_cast<std::size_t>(y) * w + x]; };
  DisjointSet sets;

  // First pass: foreground uses 8-neighbours, background 4-neighbours.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool f = fg(x, y);
      int& l = at(x, y);
      auto join = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w) return;
        if (fg(nx, ny) != f) return;
        const int nl = at(nx, ny);
        if (l < 0) {
          l = nl;
        } else {
          sets.unite(l, nl);
        }
      };
      join(x - 1, y);
      join(x, y - 1);
      if (f) {
        join(x - 1, y - 1);
        join(x + 1, y - 1);
      }
      if (l < 0) l = sets.make();
    }
  }

  // Second pass: compact roots into region ids.
  std::vector<int> region_of_root;
  std::vector<bool> region_is_fg;
  std::vector<int> compact;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int root = sets.find(at(x, y));
      if (static_cast<std::size_t>(root) >= compact.size()) compact.resize(root + 1, -1);
      if (compact[root] < 0) {
        compact[root] = static_cast<int>(region_is_fg.size());
        region_is_fg.push_back(fg(x, y));
      }
      at(x, y) = compact[root];
    }
  }

  const std::size_t regions = region_is_fg.size();
  std::vector<std::vector<int>> adjacent(regions);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int a = at(x, y);
      if (x + 1 < w && at(x + 1, y) != a) {
        adjacent[a].push_back(at(x + 1, y));
        adjacent[at(x + 1, y)].push_back(a);
      }
      if (y + 1 < h && at(x, y + 1) != a) {
        adjacent[a].push_back(at(x, y + 1));
        adjacent[at(x, y + 1)].push_back(a);
      }
    }
  }

  Topology topo;
  const int outer = at(0, 0);
  for (std::size_t r = 0; r < regions; ++r) {
    if (region_is_fg[r]) {
      ++topo.components;
    } else if (static_cast<int>(r) != outer) {
      ++topo.holes;
    }
  }

  std::vector<int> depth(regions, -1);
  std::queue<int> frontier;
  depth[outer] = 0;
  frontier.push(outer);
  while (!frontier.empty()) {
    const int r = frontier.front();
    frontier.pop();
    topo.max_depth = std::max(topo.max_depth, depth[r]);
    for (int n : adjacent[r]) {
      if (depth[n] < 0) {
        depth[n] = depth[r] + 1;
        frontier.push(n);
      }
    }
  }
  return topo;
}

double feat_contour_count(const BinaryRaster& binary) {
  const Topology t = analyze_topology(binary);
  return static_cast<double>(t.components + t.holes);
}

double feat_nesting_depth(const BinaryRaster& binary) {
  return static_cast<double>(analyze_topology(binary).max_depth);
}

// --- symmetry -------------------------------------------------------------

SymmetryProfile symmetry_profile(const PointCloud& cloud, int decimals) {
  if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "symmetry profile of an empty cloud");
  SymmetryProfile prof;
  std::map<double, double> y_sums;
  std::map<double, double> x_sums;
  for (const auto& p : cloud) {
    const double kx = round_to(p.x, decimals);
    const double ky = round_to(p.y, decimals);
    y_sums[kx] += p.y;
    ++prof.bucket_counts[kx];
    x_sums[ky] += p.x;
    ++prof.y_bucket_counts[ky];
  }
  for (const auto& [k, s] : y_sums) prof.y_means[k] = s / static_cast<double>(prof.bucket_counts[k]);
  for (const auto& [k, s] : x_sums) prof.x_means[k] = s / static_cast<double>(prof.y_bucket_counts[k]);
  return prof;
}

namespace {

double population_variance(const std::map<double, double>& values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (const auto& [k, v] : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (const auto& [k, v] : values) var += (v - mean) * (v - mean);
  return var / n;
}

}  // namespace

double feat_sym_y(const PointCloud& cloud, int decimals) {
  return population_variance(symmetry_profile(cloud, decimals).y_means);
}

double feat_sym_x(const PointCloud& cloud, int decimals) {
  return population_variance(symmetry_profile(cloud, decimals).x_means);
}

double feat_mirror_gap(const PointCloud& cloud, int decimals) {
  if (cloud.empty()) throw Error(ErrorKind::EmptyCloud, "mirror gap of an empty cloud");
  const double scale = std::pow(10.0, decimals);
  auto key = [](long long kx, long long ky) {
    return (static_cast<unsigned long long>(kx) << 32) ^ static_cast<unsigned long long>(ky & 0xffffffffLL);
  };

  std::unordered_set<unsigned long long> lower;
  for (const auto& p : cloud) {
    if (p.y < 0.0) lower.insert(key(std::llround(p.x * scale), std::llround(p.y * scale)));
  }

  std::size_t upper = 0;
  std::size_t unpaired = 0;
  for (const auto& p : cloud) {
    if (p.y <= 0.0) continue;
    ++upper;
    const long long kx = std::llround(p.x * scale);
    const long long ky = std::llround(-p.y * scale);
    bool paired = false;
    for (long long dx = -1; dx <= 1 && !paired; ++dx) {
      for (long long dy = -1; dy <= 1 && !paired; ++dy) {
        paired = lower.count(key(kx + dx, ky + dy)) > 0;
      }
    }
    if (!paired) ++unpaired;
  }
  return upper == 0 ? 0.0 : static_cast<double>(unpaired) / static_cast<double>(upper);
}

// --- principal-frame features ---------------------------------------------

double feat_minor_variance(const PointCloud& cloud) { return principal_frame(cloud).var_minor; }

double feat_extent(const PointCloud& cloud) {
  const PrincipalFrame f = principal_frame(cloud);
  return f.var_major + f.var_minor;
}

double feat_chirality(const PointCloud& cloud) {
  const PrincipalFrame f = principal_frame(cloud);
  if (f.var_minor < 1e-12) return 0.0;
  double m3 = 0.0;
  for (const auto& p : cloud) {
    const double t = project(f, p).y;
    m3 += t * t * t;
  }
  m3 /= static_cast<double>(cloud.size());
  return m3 / std::pow(f.var_minor, 1.5);
}

// --- matrix ---------------------------------------------------------------

PanelData prepare_panel(const GrayRaster& panel, const RunConfig& config) {
  PanelData data;
  data.binary = binarize(panel, config.binarize_threshold, config.polarity);
  data.raw = to_points(data.binary);
  if (!data.raw.empty()) data.normalized = normalize(data.raw, config.cloud_decimals);
  return data;
}

double evaluate_feature(const FeatureDescriptor& feature, const PanelData& panel, int cloud_decimals) {
  switch (feature.kind) {
    case FeatureKind::Density: return feat_density(panel.raw);
    case FeatureKind::Extent: return feat_extent(panel.raw);
    case FeatureKind::ContourCount: return feat_contour_count(panel.binary);
    case FeatureKind::NestingDepth: return feat_nesting_depth(panel.binary);
    case FeatureKind::MinorVariance: return feat_minor_variance(panel.normalized);
    case FeatureKind::Orientation: return feat_orientation(panel.raw);
    case FeatureKind::SymY: return feat_sym_y(panel.normalized, cloud_decimals);
    case FeatureKind::SymX: return feat_sym_x(panel.normalized, cloud_decimals);
    case FeatureKind::MirrorGap: return feat_mirror_gap(panel.normalized, cloud_decimals);
    case FeatureKind::Chirality: return feat_chirality(panel.raw);
  }
  return 0.0;
}

namespace {

struct Cell {
  double value = 0.0;
  std::string warning;
};

Cell evaluate_cell(const FeatureDescriptor& feature, const PanelData& panel, std::size_t panel_index,
                   const RunConfig& config) {
  Cell cell;
  if (panel.raw.empty()) return cell;  // reported once per panel
  try {
    cell.value = round_to(evaluate_feature(feature, panel, config.cloud_decimals), config.feature_decimals);
  } catch (const Error& e) {
    cell.warning = "panel " + std::to_string(panel_index + 1) + ": " + feature.id + " degraded to 0 (" + e.what() + ")";
  }
  return cell;
}

FeatureMatrix assemble(const std::vector<FeatureDescriptor>& registry, std::span<const PanelData, kPanels> panels,
                       std::vector<Cell>& cells) {
  FeatureMatrix m;
  for (std::size_t p = 0; p < kPanels; ++p) {
    if (panels[p].raw.empty()) m.warnings.push_back("panel " + std::to_string(p + 1) + " is empty");
  }
  for (std::size_t f = 0; f < registry.size(); ++f) {
    m.feature_ids.push_back(registry[f].id);
    m.complexity.push_back(registry[f].complexity_rank);
    PanelRow row{};
    for (std::size_t p = 0; p < kPanels; ++p) {
      Cell& c = cells[f * kPanels + p];
      row[p] = c.value;
      if (!c.warning.empty()) m.warnings.push_back(std::move(c.warning));
    }
    m.values.push_back(row);
  }
  return m;
}

}  // namespace

FeatureMatrix compute_feature_matrix(std::span<const PanelData, kPanels> panels, const RunConfig& config) {
  const auto registry = feature_registry(config);
  const long long total = static_cast<long long>(registry.size() * kPanels);
  std::vector<Cell> cells(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    const auto f = static_cast<std::size_t>(i) / kPanels;
    const auto p = static_cast<std::size_t>(i) % kPanels;
    cells[static_cast<std::size_t>(i)] = evaluate_cell(registry[f], panels[p], p, config);
  }
  return assemble(registry, panels, cells);
}

FeatureMatrix compute_feature_matrix_serial(std::span<const PanelData, kPanels> panels, const RunConfig& config) {
  const auto registry = feature_registry(config);
  std::vector<Cell> cells(registry.size() * kPanels);
  for (std::size_t f = 0; f < registry.size(); ++f) {
    for (std::size_t p = 0; p < kPanels; ++p) cells[f * kPanels + p] = evaluate_cell(registry[f], panels[p], p, config);
  }
  return assemble(registry, panels, cells);
}

}  // namespace oddity
