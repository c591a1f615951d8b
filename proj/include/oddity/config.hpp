#pragma once

#include <map>
#include <string>

#include "oddity/raster.hpp"

namespace oddity {

enum class Centering { Mean, Median };

/// Everything that tunes one solver run. Defaults reproduce the reference setup.
struct RunConfig {
  int binarize_threshold = 128;
  Polarity polarity = Polarity::Ink;
  bool crop_caption = false;
  bool gutter_fallback = true;

  double z_threshold = 2.0;
  Centering center = Centering::Mean;

  int cloud_decimals = 0;    // grid of normalized coordinates
  int feature_decimals = 2;  // feature scalars before z-scoring

  bool enable_chirality_feature = false;
  std::map<std::string, int> complexity_overrides;

  int parallelism = 0;  // max concurrent problems; 0 = OpenMP default

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

}  // namespace oddity
