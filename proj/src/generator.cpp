#include "oddity/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oddity/error.hpp"
#include "rng.hpp"

namespace oddity {

namespace {

using detail::Rng;
using std::numbers::pi;

constexpr std::array<Concept, 10> kConcepts = {
    Concept::Closure,       Concept::Alignment, Concept::VerticalSymmetry,  Concept::CircleCenter,
    Concept::Connectedness, Concept::Holes,     Concept::Parallelism,       Concept::ChiralityVertical,
    Concept::ChiralityOblique, Concept::Homothecy,
};

constexpr std::array<std::string_view, 10> kNames = {
    "closure",       "alignment", "vertical_symmetry",  "circle_center",     "connectedness",
    "holes",         "parallelism", "chirality_vertical", "chirality_oblique", "homothecy",
};

double deg2rad(double d) { return d * pi / 180.0; }

}  // namespace

std::string_view concept_name(Concept kind) noexcept { return kNames[static_cast<std::size_t>(kind)]; }

Concept parse_concept(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kConcepts[i];
  }
  throw Error(ErrorKind::UnknownConcept, std::string(name));
}

std::span<const Concept> all_concepts() noexcept { return kConcepts; }

// --- rasterization ----------------------------------------------------------

namespace {

double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

bool inside_polygon(const Point2& p, const std::vector<Point2>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

struct Canvas {
  GrayRaster raster;

  template <class Pred>
  void paint(double x0, double y0, double x1, double y1, std::uint8_t value, Pred inside) {
    const int c0 = std::max(0, static_cast<int>(std::floor(x0)));
    const int r0 = std::max(0, static_cast<int>(std::floor(y0)));
    const int c1 = std::min(raster.width() - 1, static_cast<int>(std::ceil(x1)));
    const int r1 = std::min(raster.height() - 1, static_cast<int>(std::ceil(y1)));
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (inside(Point2{static_cast<double>(c), static_cast<double>(r)})) raster.at(c, r) = value;
      }
    }
  }
};

}  // namespace

GrayRaster rasterize(const Figure& figure, int size, double stroke_width) {
  Canvas canvas{GrayRaster(size, size, 255)};
  const double hw = stroke_width / 2.0;
  for (const auto& prim : figure.primitives) {
    if (const auto* s = std::get_if<Stroke>(&prim)) {
      const std::size_t n = s->vertices.size();
      const std::size_t segments = s->closed ? n : n - 1;
      for (std::size_t i = 0; i < segments && n > 1; ++i) {
        const Point2 a = s->vertices[i];
        const Point2 b = s->vertices[(i + 1) % n];
        canvas.paint(std::min(a.x, b.x) - hw, std::min(a.y, b.y) - hw, std::max(a.x, b.x) + hw,
                     std::max(a.y, b.y) + hw, 0, [&](const Point2& p) { return segment_distance(p, a, b) <= hw; });
      }
    } else if (const auto* d = std::get_if<Disc>(&prim)) {
      const Point2 c = d->center;
      const double r = d->radius;
      canvas.paint(c.x - r, c.y - r, c.x + r, c.y + r, d->ink ? 0 : 255,
                   [&](const Point2& p) { return std::hypot(p.x - c.x, p.y - c.y) <= r; });
    } else if (const auto* ring = std::get_if<Ring>(&prim)) {
      const Point2 c = ring->center;
      const double r = ring->radius;
      canvas.paint(c.x - r - hw, c.y - r - hw, c.x + r + hw, c.y + r + hw, 0,
                   [&](const Point2& p) { return std::abs(std::hypot(p.x - c.x, p.y - c.y) - r) <= hw; });
    } else if (const auto* poly = std::get_if<FilledPolygon>(&prim)) {
      if (poly->vertices.size() < 3) continue;
      double x0 = poly->vertices[0].x, x1 = x0, y0 = poly->vertices[0].y, y1 = y0;
      for (const auto& v : poly->vertices) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
      }
      canvas.paint(x0, y0, x1, y1, poly->ink ? 0 : 255,
                   [&](const Point2& p) { return inside_polygon(p, poly->vertices); });
    }
  }
  return canvas.raster;
}

GrayRaster compose_sheet(std::span<const GrayRaster, kPanels> panels, int gutter) {
  const int w = panels[0].width();
  const int h = panels[0].height();
  for (const auto& p : panels) {
    if (p.width() != w || p.height() != h) throw Error(ErrorKind::InvalidArgument, "panels must share one size");
  }
  GrayRaster sheet(3 * w + 2 * gutter, 2 * h + gutter, 255);
  for (std::size_t k = 0; k < kPanels; ++k) {
    const int ox = static_cast<int>(k % 3) * (w + gutter);
    const int oy = static_cast<int>(k / 3) * (h + gutter);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) sheet.at(ox + x, oy + y) = panels[k].at(x, y);
    }
  }
  return sheet;
}

// --- figure construction ----------------------------------------------------

namespace {

// Local figures live in a y-up frame centred on the origin.
struct Placement {
  Nuisance nuisance;
  double center = 60.0;

  Point2 apply(const Point2& p) const {
    const double a = deg2rad(nuisance.angle_deg);
    const double x = nuisance.scale * (p.x * std::cos(a) - p.y * std::sin(a));
    const double y = nuisance.scale * (p.x * std::sin(a) + p.y * std::cos(a));
    return {center + nuisance.offset.x + x, center + nuisance.offset.y - y};
  }

  std::vector<Point2> apply(const std::vector<Point2>& pts) const {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(apply(p));
    return out;
  }
};

Point2 rounded(const Point2& p) { return {std::round(p.x), std::round(p.y)}; }

// Rotations, scales and offsets are each a shuffled ladder so no single panel
// stands out by nuisance alone.
std::array<Nuisance, kPanels> draw_nuisance(Rng& rng, bool rotate) {
  std::array<Nuisance, kPanels> out;
  std::vector<double> angles(kPanels), scales(kPanels);
  std::vector<Point2> offsets(kPanels);
  const double a0 = rng.uniform(0.0, 360.0);
  const double o0 = rng.uniform(0.0, 360.0);
  for (std::size_t k = 0; k < kPanels; ++k) {
    angles[k] = rotate ? std::fmod(a0 + 60.0 * static_cast<double>(k) + rng.uniform(-5.0, 5.0), 360.0) : 0.0;
    scales[k] = 0.85 + 0.06 * static_cast<double>(k) + rng.uniform(-0.01, 0.01);
    const double t = deg2rad(o0 + 60.0 * static_cast<double>(k));
    offsets[k] = rounded({7.0 * std::cos(t), 7.0 * std::sin(t)});
  }
  rng.shuffle(angles);
  rng.shuffle(scales);
  rng.shuffle(offsets);
  for (std::size_t k = 0; k < kPanels; ++k) out[k] = {angles[k], scales[k], offsets[k]};
  return out;
}

struct Blob {
  double radius = 25.0;
  double a2 = 0.0, p2 = 0.0, a3 = 0.0, p3 = 0.0;

  static Blob random(Rng& rng, double r_lo, double r_hi) {
    Blob b;
    b.radius = rng.uniform(r_lo, r_hi);
    b.a2 = rng.uniform(0.08, 0.18);
    b.p2 = rng.uniform(0.0, 2.0 * pi);
    b.a3 = rng.uniform(0.04, 0.10);
    b.p3 = rng.uniform(0.0, 2.0 * pi);
    return b;
  }

  Point2 at(double phi) const {
    const double r = radius * (1.0 + a2 * std::cos(2.0 * phi + p2) + a3 * std::cos(3.0 * phi + p3));
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  nlohmann::json json() const { return {{"radius", radius}, {"a2", a2}, {"p2", p2}, {"a3", a3}, {"p3", p3}}; }
};

constexpr int kBlobSamples = 96;

std::vector<Point2> blob_outline(const Blob& blob) {
  std::vector<Point2> pts;
  for (int i = 0; i < kBlobSamples; ++i) pts.push_back(blob.at(2.0 * pi * i / kBlobSamples));
  return pts;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * pi);
  return d > pi ? 2.0 * pi - d : d;
}

// Builds the six figures; `make(k, odd, placement)` returns the figure of one panel.
struct Builder {
  Concept kind;
  std::uint64_t seed;
  const GeneratorOptions& opt;
  Rng rng;
  int odd = 0;
  nlohmann::json params = nlohmann::json::object();
};

GeneratedProblem finish(Builder& b, const std::array<Nuisance, kPanels>& nuisance, std::array<Figure, kPanels> figures) {
  GeneratedProblem g;
  g.kind = b.kind;
  g.seed = b.seed;
  g.odd_index = b.odd;
  g.figures = std::move(figures);
  g.nuisance = nuisance;
  for (std::size_t k = 0; k < kPanels; ++k) g.panels[k] = rasterize(g.figures[k], b.opt.size, b.opt.stroke_width);
  nlohmann::json panels = nlohmann::json::array();
  for (const auto& n : nuisance) {
    panels.push_back({{"angle_deg", n.angle_deg}, {"scale", n.scale}, {"offset", {n.offset.x, n.offset.y}}});
  }
  b.params["panels"] = panels;
  b.params["size"] = b.opt.size;
  b.params["stroke_width"] = b.opt.stroke_width;
  g.params = b.params;
  return g;
}

template <class Make>
GeneratedProblem build(Builder& b, bool rotate, Make make) {
  const auto nuisance = draw_nuisance(b.rng, rotate);
  std::array<Figure, kPanels> figures;
  for (std::size_t k = 0; k < kPanels; ++k) {
    const Placement place{nuisance[k], b.opt.size / 2.0};
    figures[k] = make(static_cast<int>(k) == b.odd, place);
  }
  return finish(b, nuisance, std::move(figures));
}

GeneratedProblem make_closure(Builder& b) {
  const Blob blob = Blob::random(b.rng, 22.0, 28.0);
  const double gap_at = b.rng.uniform(0.0, 2.0 * pi);
  b.params["blob"] = blob.json();
  b.params["gap_angle"] = gap_at;
  b.params["gap"] = b.opt.closure_gap;
  return build(b, true, [&](bool odd, const Placement& place) {
    const auto outline = blob_outline(blob);
    if (!odd) return Figure{{Stroke{place.apply(outline), true}}};
    // Widen the removed arc until the endpoints are far enough apart.
    const int nearest = static_cast<int>(std::lround(gap_at / (2.0 * pi) * kBlobSamples)) % kBlobSamples;
    for (double half = 0.05;; half += 0.02) {
      // Walk once around from the sample nearest the gap; the kept arc is contiguous.
      std::vector<Point2> arc;
      for (int i = 1; i < kBlobSamples; ++i) {
        const int idx = (nearest + i) % kBlobSamples;
        if (angular_distance(2.0 * pi * idx / kBlobSamples, gap_at) >= half) arc.push_back(outline[idx]);
      }
      auto pts = place.apply(arc);
      if (std::hypot(pts.front().x - pts.back().x, pts.front().y - pts.back().y) >= b.opt.closure_gap) {
        return Figure{{Stroke{std::move(pts), false}}};
      }
    }
  });
}

GeneratedProblem make_alignment(Builder& b) {
  const int dots = b.rng.uniform_int(4, 5);
  const double spacing = b.rng.uniform(13.0, 16.0);
  const int moved = b.rng.uniform_int(1, dots - 2);
  const double side = b.rng.coin() ? 1.0 : -1.0;
  constexpr double radius = 3.0;
  b.params["dots"] = dots;
  b.params["spacing"] = spacing;
  b.params["moved_dot"] = moved;
  b.params["offset"] = b.opt.alignment_offset;
  return build(b, true, [&](bool odd, const Placement& place) {
    Figure fig;
    for (int i = 0; i < dots; ++i) {
      Point2 p{(i - (dots - 1) / 2.0) * spacing, 0.0};
      // Offset measured in pixels after scaling.
      if (odd && i == moved) p.y = side * b.opt.alignment_offset / place.nuisance.scale;
      fig.primitives.push_back(Disc{rounded(place.apply(p)), radius, true});
    }
    return fig;
  });
}

GeneratedProblem make_symmetry(Builder& b) {
  // Right half-profile, mirrored to the left; tall so the mirror axis is the major axis.
  std::vector<Point2> half;
  for (int i = 0; i < 4; ++i) {
    half.push_back({b.rng.uniform(7.0, 17.0), -30.0 + 20.0 * i + b.rng.uniform(-3.0, 3.0)});
  }
  const int moved = b.rng.uniform_int(1, 2);
  const double push = b.opt.symmetry_perturbation;
  nlohmann::json profile = nlohmann::json::array();
  for (const auto& p : half) profile.push_back({p.x, p.y});
  b.params["half_profile"] = profile;
  b.params["moved_vertex"] = moved;
  b.params["perturbation"] = push;
  return build(b, true, [&](bool odd, const Placement& place) {
    std::vector<Point2> poly{{0.0, -34.0}};
    for (std::size_t i = 0; i < half.size(); ++i) {
      Point2 p = half[i];
      if (odd && static_cast<int>(i) == moved) p.x += push / place.nuisance.scale;
      poly.push_back(p);
    }
    poly.push_back({0.0, 36.0});
    for (auto it = half.rbegin(); it != half.rend(); ++it) poly.push_back({-it->x, it->y});
    return Figure{{Stroke{place.apply(poly), true}}};
  });
}

GeneratedProblem make_circle_center(Builder& b) {
  const double radius = b.rng.uniform(20.0, 26.0);
  const double dir = b.rng.uniform(0.0, 2.0 * pi);
  const double off = b.opt.center_offset * radius;
  b.params["radius"] = radius;
  b.params["center_offset"] = b.opt.center_offset;
  return build(b, true, [&](bool odd, const Placement& place) {
    const Point2 c = place.apply(Point2{0.0, 0.0});
    const Point2 dot = odd ? place.apply(Point2{off * std::cos(dir), off * std::sin(dir)}) : c;
    return Figure{{Ring{c, radius * place.nuisance.scale}, Disc{rounded(dot), 2.5, true}}};
  });
}

GeneratedProblem make_connectedness(Builder& b) {
  const double r = b.rng.uniform(8.0, 10.0);
  const double sep = b.rng.uniform(36.0, 44.0);
  const double cut = b.rng.uniform(0.35, 0.65);
  b.params["ring_radius"] = r;
  b.params["separation"] = sep;
  b.params["gap"] = b.opt.connect_gap;
  return build(b, true, [&](bool odd, const Placement& place) {
    const double s = place.nuisance.scale;
    // Unequal rings: equal ones make the symmetry profile hinge on sub-pixel ring placement.
    const double r_small = 0.65 * r;
    const Point2 left{-sep / 2.0, 0.0}, right{sep / 2.0, 0.0};
    Figure fig{{Ring{place.apply(left), r * s}, Ring{place.apply(right), r_small * s}}};
    const double x0 = left.x + r, x1 = right.x - r_small;
    if (!odd) {
      fig.primitives.push_back(Stroke{place.apply(std::vector<Point2>{{x0, 0.0}, {x1, 0.0}}), false});
    } else {
      // Gap measured between stroke centres, in pixels after scaling.
      const double mid = x0 + cut * (x1 - x0);
      const double half = (b.opt.connect_gap + b.opt.stroke_width) / (2.0 * s);
      fig.primitives.push_back(Stroke{place.apply(std::vector<Point2>{{x0, 0.0}, {mid - half, 0.0}}), false});
      fig.primitives.push_back(Stroke{place.apply(std::vector<Point2>{{mid + half, 0.0}, {x1, 0.0}}), false});
    }
    return fig;
  });
}

GeneratedProblem make_holes(Builder& b) {
  const Blob blob = Blob::random(b.rng, 20.0, 25.0);
  const double hole_r = b.rng.uniform(6.0, 8.0);
  const Point2 hole_at{b.rng.uniform(-4.0, 4.0), b.rng.uniform(-4.0, 4.0)};
  b.params["blob"] = blob.json();
  b.params["hole_radius"] = hole_r;
  return build(b, true, [&](bool odd, const Placement& place) {
    Figure fig{{FilledPolygon{place.apply(blob_outline(blob)), true}}};
    if (!odd) fig.primitives.push_back(Disc{place.apply(hole_at), hole_r * place.nuisance.scale, false});
    return fig;
  });
}

GeneratedProblem make_parallelism(Builder& b) {
  const double len = b.rng.uniform(44.0, 54.0);
  const double gap = b.rng.uniform(8.0, 11.0);
  const double tilt = (b.rng.coin() ? 1.0 : -1.0) * b.opt.parallel_tilt_deg;
  b.params["length"] = len;
  b.params["half_spacing"] = gap;
  b.params["tilt_deg"] = tilt;
  return build(b, true, [&](bool odd, const Placement& place) {
    Figure fig{{Stroke{place.apply(std::vector<Point2>{{-len / 2, gap}, {len / 2, gap}}), false}}};
    const double t = odd ? deg2rad(tilt) : 0.0;
    const double dx = std::cos(t) * len / 2, dy = std::sin(t) * len / 2;
    fig.primitives.push_back(Stroke{place.apply(std::vector<Point2>{{-dx, -gap - dy}, {dx, -gap + dy}}), false});
    return fig;
  });
}

GeneratedProblem make_chirality(Builder& b, bool oblique) {
  const double stem = b.rng.uniform(40.0, 48.0);
  const double foot = b.rng.uniform(20.0, 26.0);
  b.params["stem"] = stem;
  b.params["foot"] = foot;
  b.params["oblique"] = oblique;
  return build(b, oblique, [&](bool odd, const Placement& place) {
    std::vector<Point2> l{{foot, 0.0}, {0.0, 0.0}, {0.0, stem}};
    // Roughly centre the L on its own bounding box before placing it.
    for (auto& p : l) p = {p.x - foot / 2.0, p.y - stem / 2.0};
    if (odd) {
      for (auto& p : l) p.x = -p.x;
    }
    return Figure{{Stroke{place.apply(l), false}}};
  });
}

GeneratedProblem make_homothecy(Builder& b) {
  const Blob blob = Blob::random(b.rng, 16.0, 20.0);
  const double stretch = b.opt.homothecy_stretch;
  b.params["blob"] = blob.json();
  b.params["stretch"] = stretch;
  return build(b, true, [&](bool odd, const Placement& place) {
    auto outline = blob_outline(blob);
    if (odd) {
      for (auto& p : outline) p.x *= stretch;
    }
    return Figure{{Stroke{place.apply(outline), true}}};
  });
}

}  // namespace

namespace {

void check_options(const GeneratorOptions& options) {
  if (options.size < 100) throw Error(ErrorKind::InvalidArgument, "panel size must be at least 100 pixels");
  if (!(options.stroke_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "stroke width must be positive");
}

}  // namespace

GeneratedProblem generate(Concept kind, std::uint64_t seed, const GeneratorOptions& options) {
  check_options(options);
  const auto salt = static_cast<std::uint64_t>(kind) + 1;
  Builder b{kind, seed, options, Rng(detail::splitmix64(seed ^ (salt * 0xD1B54A32D192ED03ULL)))};
  b.odd = b.rng.uniform_int(0, static_cast<int>(kPanels) - 1);
  switch (kind) {
    case Concept::Closure: return make_closure(b);
    case Concept::Alignment: return make_alignment(b);
    case Concept::VerticalSymmetry: return make_symmetry(b);
    case Concept::CircleCenter: return make_circle_center(b);
    case Concept::Connectedness: return make_connectedness(b);
    case Concept::Holes: return make_holes(b);
    case Concept::Parallelism: return make_parallelism(b);
    case Concept::ChiralityVertical: return make_chirality(b, false);
    case Concept::ChiralityOblique: return make_chirality(b, true);
    case Concept::Homothecy: return make_homothecy(b);
  }
  throw Error(ErrorKind::UnknownConcept, "unhandled concept");
}

std::vector<GeneratedProblem> generate_suite(Concept kind, std::size_t n, std::uint64_t base_seed,
                                             const GeneratorOptions& options) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "suite size must be at least 1");
  check_options(options);
  std::vector<GeneratedProblem> out(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    out[static_cast<std::size_t>(i)] = generate(kind, base_seed + static_cast<std::uint64_t>(i), options);
  }
  return out;
}

nlohmann::json manifest(const GeneratedProblem& problem) {
  return {{"concept", concept_name(problem.kind)},
          {"seed", problem.seed},
          {"odd_index", problem.odd_index},
          {"params", problem.params}};
}

}  // namespace oddity
