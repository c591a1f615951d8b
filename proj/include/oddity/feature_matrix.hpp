#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace oddity {

inline constexpr std::size_t kPanels = 6;
using PanelRow = std::array<double, kPanels>;

/// K features x 6 panels. Rows follow the registry order.
struct FeatureMatrix {
  std::vector<std::string> feature_ids;
  std::vector<int> complexity;
  std::vector<PanelRow> values;
  std::vector<PanelRow> zscores;  // filled by apply_zscores
  std::vector<std::string> warnings;

  std::size_t rows() const noexcept { return feature_ids.size(); }
};

}  // namespace oddity
