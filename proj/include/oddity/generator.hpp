#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oddity/feature_matrix.hpp"
#include "oddity/pointset.hpp"
#include "oddity/raster.hpp"

namespace oddity {

enum class Concept {
  Closure,
  Alignment,
  VerticalSymmetry,
  CircleCenter,
  Connectedness,
  Holes,
  Parallelism,
  ChiralityVertical,
  ChiralityOblique,
  Homothecy,
};

std::string_view concept_name(Concept kind) noexcept;
/// Throws UnknownConcept.
Concept parse_concept(std::string_view name);
std::span<const Concept> all_concepts() noexcept;

/// Drawing primitives in image coordinates (x right, y down, pixel centres at integers).
struct Stroke {
  std::vector<Point2> vertices;
  bool closed = false;
};
struct Disc {
  Point2 center;
  double radius = 0.0;
  bool ink = true;  // false erases
};
struct Ring {
  Point2 center;
  double radius = 0.0;
};
struct FilledPolygon {
  std::vector<Point2> vertices;
  bool ink = true;
};

using Primitive = std::variant<Stroke, Disc, Ring, FilledPolygon>;

/// Draw-ordered primitives of one panel.
struct Figure {
  std::vector<Primitive> primitives;
};

/// Nuisance transform applied to a panel's figure.
struct Nuisance {
  double angle_deg = 0.0;
  double scale = 1.0;
  Point2 offset;
};

struct GeneratorOptions {
  int size = 120;
  double stroke_width = 2.0;
  double closure_gap = 12.0;           // chord between open-curve endpoints, px
  double alignment_offset = 9.0;       // perpendicular dot displacement, px
  double symmetry_perturbation = 10.0; // vertex displacement, px
  double center_offset = 0.4;          // fraction of circle radius
  double connect_gap = 10.0;           // break in the connecting segment, px
  double parallel_tilt_deg = 25.0;
  double homothecy_stretch = 1.6;
};

struct GeneratedProblem {
  Concept kind = Concept::Closure;
  std::uint64_t seed = 0;
  int odd_index = 0;
  std::array<GrayRaster, kPanels> panels;
  std::array<Figure, kPanels> figures;
  std::array<Nuisance, kPanels> nuisance;
  nlohmann::json params;  // concept parameters plus per-panel nuisance
};

/// Deterministic in (concept, seed, options). Throws UnknownConcept via parse_concept.
GeneratedProblem generate(Concept kind, std::uint64_t seed, const GeneratorOptions& options = {});

/// Problems for seeds base_seed .. base_seed + n - 1. Throws InvalidArgument when n < 1.
std::vector<GeneratedProblem> generate_suite(Concept kind, std::size_t n, std::uint64_t base_seed,
                                             const GeneratorOptions& options = {});

/// Paints a figure onto a white canvas with black ink, no anti-aliasing.
GrayRaster rasterize(const Figure& figure, int size, double stroke_width);

/// Places the six panels on a 3x2 sheet separated by background gutters.
GrayRaster compose_sheet(std::span<const GrayRaster, kPanels> panels, int gutter = 12);

/// concept, seed, odd_index, params.
nlohmann::json manifest(const GeneratedProblem& problem);

}  // namespace oddity
