#include "oddity/raster.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "oddity/error.hpp"

namespace oddity {

GrayRaster::GrayRaster(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidArgument, "raster dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayRaster::GrayRaster(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidArgument, "raster dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::InvalidArgument, "pixel count does not match dimensions");
  }
}

GrayRaster GrayRaster::crop(int x0, int y0, int w, int h) const {
  if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > width_ || y0 + h > height_) {
    throw Error(ErrorKind::RegionOutOfBounds, "crop rectangle outside raster");
  }
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = y0; y < y0 + h; ++y) {
    auto row = data_.begin() + static_cast<std::ptrdiff_t>(index(x0, y));
    out.insert(out.end(), row, row + w);
  }
  return GrayRaster(w, h, std::move(out));
}

BinaryRaster::BinaryRaster(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorKind::InvalidArgument, "raster dimensions must be non-negative");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

std::size_t BinaryRaster::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

namespace {

// Netpbm header tokenizer: whitespace separated, '#' comments to end of line.
class PnmReader {
 public:
  explicit PnmReader(std::vector<char> bytes) : bytes_(std::move(bytes)) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#') {
      out.push_back(bytes_[pos_++]);
    }
    if (out.empty()) throw Error(ErrorKind::CorruptImage, "unexpected end of header");
    return out;
  }

  int integer() {
    const std::string t = token();
    if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorKind::CorruptImage, "expected integer, got '" + t + "'");
    }
    try {
      return std::stoi(t);
    } catch (const std::exception&) {
      throw Error(ErrorKind::CorruptImage, "integer out of range: " + t);
    }
  }

  // Exactly one whitespace byte separates the header from a binary payload.
  void end_of_header() {
    if (pos_ >= bytes_.size()) throw Error(ErrorKind::CorruptImage, "missing pixel payload");
    ++pos_;
  }

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
  unsigned char byte() { return static_cast<unsigned char>(bytes_[pos_++]); }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::vector<char> bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(int v, int maxval) {
  if (v > maxval) throw Error(ErrorKind::CorruptImage, "sample exceeds maxval");
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

}  // namespace

GrayRaster load_grayscale(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(ErrorKind::UnsupportedFormat, path.string() + " is not a PGM/PPM file");
  }
  const char kind = bytes[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw Error(ErrorKind::UnsupportedFormat, std::string("netpbm variant P") + kind + " not supported");
  }

  PnmReader reader(std::move(bytes));
  reader.token();  // magic
  const int width = reader.integer();
  const int height = reader.integer();
  const int maxval = reader.integer();
  if (width < 1 || height < 1) throw Error(ErrorKind::CorruptImage, "non-positive dimensions");
  if (maxval < 1 || maxval > 65535) throw Error(ErrorKind::CorruptImage, "invalid maxval");

  const int channels = (kind == '3' || kind == '6') ? 3 : 1;
  const bool ascii = (kind == '2' || kind == '3');
  const std::size_t samples = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;

  std::vector<int> raw(samples);
  if (ascii) {
    for (auto& v : raw) {
      try {
        v = reader.integer();
      } catch (const Error&) {
        throw Error(ErrorKind::CorruptImage, "truncated ASCII payload");
      }
    }
  } else {
    reader.end_of_header();
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    if (reader.remaining() < samples * bytes_per) {
      throw Error(ErrorKind::CorruptImage, "truncated binary payload");
    }
    for (auto& v : raw) {
      v = reader.byte();
      if (bytes_per == 2) v = (v << 8) | reader.byte();
    }
  }

  std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (std::size_t i = 0; i < gray.size(); ++i) {
    if (channels == 1) {
      gray[i] = rescale(raw[i], maxval);
    } else {
      const int sum = rescale(raw[3 * i], maxval) + rescale(raw[3 * i + 1], maxval) + rescale(raw[3 * i + 2], maxval);
      gray[i] = static_cast<std::uint8_t>((sum + 1) / 3);
    }
  }
  return GrayRaster(width, height, std::move(gray));
}

void save_pgm(const GrayRaster& raster, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << "P5\n" << raster.width() << ' ' << raster.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.data().data()), static_cast<std::streamsize>(raster.data().size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

GrayRaster crop_caption(const GrayRaster& raster, const Rect& region, std::uint8_t background) {
  if (region.w == 0 || region.h == 0) return raster;
  if (region.x < 0 || region.y < 0 || region.w < 0 || region.h < 0 || region.x + region.w > raster.width() ||
      region.y + region.h > raster.height()) {
    throw Error(ErrorKind::RegionOutOfBounds, "caption region outside raster");
  }
  GrayRaster out = raster;
  for (int y = region.y; y < region.y + region.h; ++y) {
    for (int x = region.x; x < region.x + region.w; ++x) out.at(x, y) = background;
  }
  return out;
}

Rect default_caption_region(int panel_width, int panel_height) {
  return Rect{0, 0, (panel_width * 15) / 100, (panel_height * 10) / 100};
}

BinaryRaster binarize(const GrayRaster& raster, int threshold, Polarity polarity) {
  BinaryRaster out(raster.width(), raster.height());
  for (int y = 0; y < raster.height(); ++y) {
    for (int x = 0; x < raster.width(); ++x) {
      int v = raster.at(x, y);
      if (polarity == Polarity::Ink) v = 255 - v;
      out.set(x, y, v > threshold);
    }
  }
  return out;
}

namespace {

using Band = std::pair<int, int>;

// Maximal runs of background lines that do not touch either border.
std::vector<Band> interior_gaps(const std::vector<bool>& has_ink, int min_len) {
  std::vector<Band> gaps;
  const int n = static_cast<int>(has_ink.size());
  int i = 0;
  while (i < n) {
    if (has_ink[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && !has_ink[j]) ++j;
    if (i > 0 && j < n && j - i >= min_len) gaps.emplace_back(i, j);
    i = j;
  }
  return gaps;
}

std::vector<Band> bands_between(const std::vector<Band>& gaps, int n) {
  std::vector<Band> bands;
  int start = 0;
  for (const auto& [b, e] : gaps) {
    bands.emplace_back(start, b);
    start = e;
  }
  bands.emplace_back(start, n);
  return bands;
}

std::vector<Band> equal_bands(int n, int parts) {
  std::vector<Band> bands;
  for (int k = 0; k < parts; ++k) bands.emplace_back(k * n / parts, (k + 1) * n / parts);
  return bands;
}

}  // namespace

GridBands detect_grid(const GrayRaster& sheet, const SegmentOptions& options) {
  const BinaryRaster ink = binarize(sheet, options.threshold, options.polarity);
  std::vector<bool> col_ink(static_cast<std::size_t>(sheet.width()), false);
  std::vector<bool> row_ink(static_cast<std::size_t>(sheet.height()), false);
  for (int y = 0; y < sheet.height(); ++y) {
    for (int x = 0; x < sheet.width(); ++x) {
      if (ink.at(x, y)) {
        col_ink[x] = true;
        row_ink[y] = true;
      }
    }
  }

  const auto col_gaps = interior_gaps(col_ink, options.min_gutter);
  const auto row_gaps = interior_gaps(row_ink, options.min_gutter);

  GridBands grid;
  if (col_gaps.size() == 2 && row_gaps.size() == 1) {
    grid.columns = bands_between(col_gaps, sheet.width());
    grid.rows = bands_between(row_gaps, sheet.height());
    return grid;
  }
  if (!options.fallback) {
    throw Error(ErrorKind::GridNotDetected, "found " + std::to_string(col_gaps.size()) + " column and " +
                                                std::to_string(row_gaps.size()) + " row gutters");
  }
  if (sheet.width() < 3 || sheet.height() < 2) {
    throw Error(ErrorKind::GridNotDetected, "sheet too small for a 3x2 grid");
  }
  grid.columns = equal_bands(sheet.width(), 3);
  grid.rows = equal_bands(sheet.height(), 2);
  grid.used_fallback = true;
  return grid;
}

std::vector<GrayRaster> segment_grid(const GrayRaster& sheet, const SegmentOptions& options) {
  const GridBands grid = detect_grid(sheet, options);
  std::vector<GrayRaster> panels;
  panels.reserve(6);
  for (const auto& [y0, y1] : grid.rows) {
    for (const auto& [x0, x1] : grid.columns) {
      panels.push_back(sheet.crop(x0, y0, x1 - x0, y1 - y0));
    }
  }
  return panels;
}

}  // namespace oddity
