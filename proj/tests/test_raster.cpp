#include <gtest/gtest.h>

#include "oddity/raster.hpp"
#include "test_util.hpp"

using namespace oddity;
using testutil::TempDir;
using testutil::write_bytes;

TEST(LoadGrayscale, AllZeroBinaryPgm) {
  TempDir dir;
  write_bytes(dir / "z.pgm", std::string("P5\n4 4\n255\n") + std::string(16, '\0'));
  const GrayRaster r = load_grayscale(dir / "z.pgm");
  EXPECT_EQ(r, GrayRaster(4, 4, 0));
}

TEST(LoadGrayscale, MinimalAsciiPgm) {
  TempDir dir;
  write_bytes(dir / "a.pgm", "P2 2 1 255\n0 255\n");
  const GrayRaster r = load_grayscale(dir / "a.pgm");
  EXPECT_EQ(r, GrayRaster(2, 1, std::vector<std::uint8_t>{0, 255}));
}

TEST(LoadGrayscale, RgbUsesChannelMean) {
  TempDir dir;
  write_bytes(dir / "c.ppm", "P3\n# colour fixture\n2 2\n255\n10 20 30  0 0 0\n255 255 255  1 2 4\n");
  const GrayRaster r = load_grayscale(dir / "c.ppm");
  ASSERT_EQ(r.width(), 2);
  ASSERT_EQ(r.height(), 2);
  EXPECT_EQ(r.at(0, 0), 20);
  EXPECT_EQ(r.at(1, 0), 0);
  EXPECT_EQ(r.at(0, 1), 255);
}

TEST(LoadGrayscale, BinaryRgbAndMaxvalRescale) {
  TempDir dir;
  write_bytes(dir / "c.ppm", std::string("P6 1 1 255\n") + std::string("\x0a\x14\x1e", 3));
  EXPECT_EQ(load_grayscale(dir / "c.ppm").at(0, 0), 20);
  write_bytes(dir / "m.pgm", "P2 3 1 15\n0 15 5\n");
  const GrayRaster m = load_grayscale(dir / "m.pgm");
  EXPECT_EQ(m.at(0, 0), 0);
  EXPECT_EQ(m.at(1, 0), 255);
  EXPECT_EQ(m.at(2, 0), 85);
}

TEST(LoadGrayscale, Errors) {
  TempDir dir;
  EXPECT_ODDITY_ERROR(load_grayscale(dir / "missing.pgm"), ErrorKind::FileNotFound);
  write_bytes(dir / "x.png", "\x89PNG\r\n");
  EXPECT_ODDITY_ERROR(load_grayscale(dir / "x.png"), ErrorKind::UnsupportedFormat);
  write_bytes(dir / "t.pgm", "P5\n4 4\n255\n" + std::string(10, '\0'));
  EXPECT_ODDITY_ERROR(load_grayscale(dir / "t.pgm"), ErrorKind::CorruptImage);
  write_bytes(dir / "t2.pgm", "P2 2 2 255\n1 2 3\n");
  EXPECT_ODDITY_ERROR(load_grayscale(dir / "t2.pgm"), ErrorKind::CorruptImage);
}

TEST(SavePgm, RoundTrip) {
  TempDir dir;
  GrayRaster r(3, 2);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 3; ++x) r.at(x, y) = static_cast<std::uint8_t>(40 * x + 100 * y);
  save_pgm(r, dir / "r.pgm");
  EXPECT_EQ(load_grayscale(dir / "r.pgm"), r);
}

TEST(CropCaption, EmptyRegionIsIdentity) {
  GrayRaster r(5, 5, 200);
  r.at(1, 1) = 3;
  EXPECT_EQ(crop_caption(r, Rect{0, 0, 0, 5}), r);
}

TEST(CropCaption, BlanksExactlyTheRegion) {
  const GrayRaster r(10, 10, 255);
  const GrayRaster c = crop_caption(r, Rect{0, 0, 3, 3});
  int zeros = 0;
  for (auto v : c.data()) zeros += v == 0;
  EXPECT_EQ(zeros, 9);
  EXPECT_EQ(c.at(2, 2), 0);
  EXPECT_EQ(c.at(3, 0), 255);
  EXPECT_EQ(c.width(), 10);
}

TEST(CropCaption, DefaultRegionOn600x400) {
  const Rect region = default_caption_region(600, 400);
  EXPECT_EQ(region.x, 0);
  EXPECT_EQ(region.y, 0);
  EXPECT_EQ(region.w, 90);
  EXPECT_EQ(region.h, 40);
  const GrayRaster c = crop_caption(GrayRaster(600, 400, 255), region);
  int zeros = 0;
  for (auto v : c.data()) zeros += v == 0;
  EXPECT_EQ(zeros, 90 * 40);
  EXPECT_EQ(c.at(89, 39), 0);
  EXPECT_EQ(c.at(90, 39), 255);
  EXPECT_EQ(c.at(89, 40), 255);
}

TEST(CropCaption, OutOfBounds) {
  EXPECT_ODDITY_ERROR(crop_caption(GrayRaster(10, 10), Rect{8, 0, 3, 3}), ErrorKind::RegionOutOfBounds);
  EXPECT_ODDITY_ERROR(crop_caption(GrayRaster(10, 10), Rect{-1, 0, 3, 3}), ErrorKind::RegionOutOfBounds);
}

TEST(CropCaption, CommutesWithBinarize) {
  std::mt19937_64 rng(5);
  GrayRaster r(20, 16);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 20; ++x) r.at(x, y) = static_cast<std::uint8_t>(rng() % 256);
  const Rect region{2, 3, 7, 5};
  const BinaryRaster a = binarize(crop_caption(r, region), 128, Polarity::Bright);
  BinaryRaster b = binarize(r, 128, Polarity::Bright);
  for (int y = region.y; y < region.y + region.h; ++y)
    for (int x = region.x; x < region.x + region.w; ++x) b.set(x, y, false);
  EXPECT_EQ(a, b);
}

TEST(Binarize, ZeroRasterBright) {
  EXPECT_EQ(binarize(GrayRaster(4, 3, 0), 128, Polarity::Bright).count(), 0u);
}

TEST(Binarize, CheckerBright) {
  const BinaryRaster b = binarize(GrayRaster(2, 2, std::vector<std::uint8_t>{0, 255, 255, 0}), 128, Polarity::Bright);
  EXPECT_FALSE(b.at(0, 0));
  EXPECT_TRUE(b.at(1, 0));
  EXPECT_TRUE(b.at(0, 1));
  EXPECT_FALSE(b.at(1, 1));
}

TEST(Binarize, StrictComparison) {
  const BinaryRaster b = binarize(GrayRaster(3, 1, std::vector<std::uint8_t>{100, 128, 200}), 128, Polarity::Bright);
  EXPECT_FALSE(b.at(0, 0));
  EXPECT_FALSE(b.at(1, 0));
  EXPECT_TRUE(b.at(2, 0));
}

TEST(Binarize, InkPolarityInverts) {
  const BinaryRaster b = binarize(GrayRaster(3, 1, std::vector<std::uint8_t>{0, 127, 255}), 128, Polarity::Ink);
  EXPECT_TRUE(b.at(0, 0));
  EXPECT_FALSE(b.at(1, 0));  // 255-127 = 128 is not above 128
  EXPECT_FALSE(b.at(2, 0));
}

TEST(Binarize, MonotoneInThreshold) {
  std::mt19937_64 rng(11);
  GrayRaster r(32, 32);
  for (auto y = 0; y < 32; ++y)
    for (auto x = 0; x < 32; ++x) r.at(x, y) = static_cast<std::uint8_t>(rng() % 256);
  std::size_t prev = binarize(r, 0, Polarity::Ink).count();
  for (int t = 1; t <= 255; ++t) {
    const std::size_t c = binarize(r, t, Polarity::Ink).count();
    EXPECT_LE(c, prev);
    prev = c;
  }
}

namespace {

// Six w*h panels laid out with `gutter`-wide white strips, each holding a dot pattern.
GrayRaster sheet_with_gutters(int panel, int gutter, int margin) {
  const int w = 3 * panel + 2 * gutter + 2 * margin;
  const int h = 2 * panel + gutter + 2 * margin;
  GrayRaster s(w, h, 255);
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 3; ++col) {
      const int x0 = margin + col * (panel + gutter), y0 = margin + row * (panel + gutter);
      // Ink touches every panel edge so the gutters are the only blank runs.
      for (int i = 0; i < panel; ++i) {
        s.at(x0 + i, y0) = 0;
        s.at(x0 + i, y0 + panel - 1) = 0;
        s.at(x0, y0 + i) = 0;
        s.at(x0 + panel - 1, y0 + i) = 0;
      }
      for (int k = 0; k <= row * 3 + col; ++k) s.at(x0 + 10 + 3 * k, y0 + 20) = 0;
    }
  }
  return s;
}

std::size_t ink(const GrayRaster& r) { return binarize(r, 128, Polarity::Ink).count(); }

}  // namespace

TEST(SegmentGrid, GuttersAreDiscarded) {
  const GrayRaster s = sheet_with_gutters(90, 10, 0);
  const auto panels = segment_grid(s);
  ASSERT_EQ(panels.size(), 6u);
  std::size_t total = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(panels[k].width(), 90);
    EXPECT_EQ(panels[k].height(), 90);
    // Row-major order: panel k carries k+1 marker dots inside the frame.
    EXPECT_EQ(ink(panels[k]), 4u * 89 + k + 1);
    total += ink(panels[k]);
  }
  EXPECT_EQ(total, ink(s));
  EXPECT_FALSE(detect_grid(s).used_fallback);
}

TEST(SegmentGrid, MarginsAreNotGutters) {
  const auto panels = segment_grid(sheet_with_gutters(40, 5, 7));
  ASSERT_EQ(panels.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(ink(panels[k]), 4u * 39 + k + 1);
}

TEST(SegmentGrid, FallsBackToThirdsAndHalves) {
  const GrayRaster s = testutil::ink_panel(300, 200, [](int x, int y) { return (x + y) % 7 == 0; });
  const auto bands = detect_grid(s);
  EXPECT_TRUE(bands.used_fallback);
  const auto panels = segment_grid(s);
  ASSERT_EQ(panels.size(), 6u);
  std::size_t total = 0;
  for (const auto& p : panels) {
    EXPECT_EQ(p.width(), 100);
    EXPECT_EQ(p.height(), 100);
    total += ink(p);
  }
  EXPECT_EQ(total, ink(s));
}

TEST(SegmentGrid, BlankSheetWithoutFallback) {
  SegmentOptions opts;
  opts.fallback = false;
  EXPECT_ODDITY_ERROR(segment_grid(GrayRaster(300, 200, 255), opts), ErrorKind::GridNotDetected);
}

TEST(SegmentGrid, NarrowGapIsNotAGutter) {
  // Two-pixel gaps are below the gutter width, so detection fails over to thirds.
  SegmentOptions opts;
  opts.fallback = false;
  EXPECT_ODDITY_ERROR(segment_grid(sheet_with_gutters(30, 2, 0), opts), ErrorKind::GridNotDetected);
}

TEST(Raster, InvalidDimensions) {
  EXPECT_ODDITY_ERROR(GrayRaster(0, 3), ErrorKind::InvalidArgument);
  EXPECT_ODDITY_ERROR(GrayRaster(2, 2, std::vector<std::uint8_t>{1, 2, 3}), ErrorKind::InvalidArgument);
}
