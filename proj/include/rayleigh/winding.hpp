#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/secular.hpp"

namespace rayleigh {

struct Rect {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
};

enum class ContourStatus { Clean, ContourTooCloseToZero };

std::string_view to_string(ContourStatus s) noexcept;

using ComplexFn = std::function<cplx(cplx)>;

struct WindingResult {
  int winding = 0;
  double phase_change = 0.0;  ///< total unwrapped phase change, radians
  double min_abs = 0.0;       ///< smallest |f| seen on the contour
  double max_abs = 0.0;
  std::size_t evaluations = 0;
  ContourStatus status = ContourStatus::Clean;
};

/// Relative contour-safety threshold: min |f| must exceed this times max |f|.
inline constexpr double kContourSafety = 1e-8;

/// Zero count of f inside `region` by the argument principle: the phase of f
/// is unwrapped along the counter-clockwise boundary, each of the
/// samples_per_edge steps per edge being bisected until every half-step
/// turns by at most π/2. Throws InvalidArgument for samples_per_edge < 64 or
/// a degenerate rectangle.
WindingResult winding_number(const ComplexFn& f, const Rect& region, std::size_t samples_per_edge = 64);

struct ScanOptions {
  double re_extent = 0.0;  ///< 0 selects 3·c1
  double im_floor = 0.0;   ///< 0 selects 1e-3·c2
  double im_ceiling = 0.0; ///< 0 selects 3·c1
  std::size_t tiles_re = 4;
  std::size_t tiles_im = 2;
  std::size_t samples_per_edge = 64;
  int max_depth = 8;
  std::size_t interior_re = 121;
  std::size_t interior_im = 61;
  unsigned threads = 0;
};

struct ScanReport {
  Rect region{};
  int winding = 0;
  double min_abs_on_contour = 0.0;
  double min_abs_interior = 0.0;
  cplx argmin_interior{};
  std::size_t subdivisions = 0;
  std::size_t rectangles = 0;  ///< clean rectangles whose windings were summed
  ContourStatus status = ContourStatus::Clean;
  std::optional<Rect> offending;  ///< first rectangle that could not be made clean
};

/// Argument-principle scan of [-re_extent, re_extent] × [im_floor, im_ceiling].
/// The region is tiled; any tile whose contour comes too close to a zero is
/// split into quadrants, up to max_depth levels. Throws InvalidArgument if
/// im_floor ≤ 0 or the extents are not positive.
ScanReport scan_upper_halfplane(const BoundaryParams& bp, const Material& mat, const ScanOptions& opts = {});

/// Same scan for an arbitrary function.
ScanReport scan_region(const ComplexFn& f, const Rect& region, const ScanOptions& opts);

struct AxisSample {
  double min_abs = 0.0;
  double argmin = 0.0;
  std::size_t samples = 0;
};

/// min |R(c)| over real c in [-extent, extent] at the given step, skipping
/// |c| < exclusion. Real supersonic c use the limit from the upper half-plane.
AxisSample axis_min_abs(const BoundaryParams& bp, const Material& mat, double extent, double step,
                        double exclusion);

}  // namespace rayleigh
