#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace oddity {

/// Row-major 8-bit intensity grid.
class GrayRaster {
 public:
  GrayRaster() = default;
  GrayRaster(int width, int height, std::uint8_t fill = 0);
  GrayRaster(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

  const std::vector<std::uint8_t>& data() const noexcept { return data_; }

  /// Copy of the sub-rectangle [x0, x0+w) x [y0, y0+h).
  GrayRaster crop(int x0, int y0, int w, int h) const;

  friend bool operator==(const GrayRaster&, const GrayRaster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Row-major foreground mask. Foreground is true.
class BinaryRaster {
 public:
  BinaryRaster() = default;
  BinaryRaster(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { bits_[index(x, y)] = v ? 1 : 0; }

  /// Out-of-range coordinates read as background.
  bool get_or_background(int x, int y) const {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
    return at(x, y);
  }

  std::size_t count() const noexcept;

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class Polarity {
  Ink,     // dark strokes on light paper: intensities are inverted before thresholding
  Bright,  // bright strokes on dark background
};

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};


/// Loads PGM (P2/P5) or PPM (P3/P6). RGB is reduced to the channel mean.
GrayRaster load_grayscale(const std::filesystem::path& path);

/// Writes a binary PGM (P5).
void save_pgm(const GrayRaster& raster, const std::filesystem::path& path);

/// Blanks the region to the background intensity (0 for bright polarity,
/// 255 for ink). An empty region is a no-op. Throws RegionOutOfBounds.
GrayRaster crop_caption(const GrayRaster& raster, const Rect& region, std::uint8_t background = 0);

constexpr std::uint8_t background_intensity(Polarity polarity) noexcept {
  return polarity == Polarity::Ink ? 255 : 0;
}

/// Top-left 15% x 10% of the given panel.
Rect default_caption_region(int panel_width, int panel_height);

/// bit = intensity > threshold, after inversion when polarity is Ink.
BinaryRaster binarize(const GrayRaster& raster, int threshold, Polarity polarity);

struct SegmentOptions {
  int threshold = 128;
  Polarity polarity = Polarity::Ink;
  bool fallback = true;
  int min_gutter = 3;
};

/// Splits a 3x2 problem sheet into six panels in row-major order.
/// Gutters are interior runs of at least `min_gutter` background columns/rows.
std::vector<GrayRaster> segment_grid(const GrayRaster& sheet, const SegmentOptions& options = {});

/// Column/row bands actually used by segment_grid, exposed for diagnostics.
struct GridBands {
  std::vector<std::pair<int, int>> columns;  // [begin, end)
  std::vector<std::pair<int, int>> rows;
  bool used_fallback = false;
};

GridBands detect_grid(const GrayRaster& sheet, const SegmentOptions& options = {});

}  // namespace oddity
