#include "rayleigh/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rayleigh/error.hpp"
#include "rayleigh/parallel.hpp"

namespace rayleigh {

std::string_view to_string(ContourStatus s) noexcept {
  return s == ContourStatus::Clean ? "Clean" : "ContourTooCloseToZero";
}

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr int kMaxSegmentDepth = 48;

/// Phase of b relative to a, in (-π, π].
double phase_step(cplx a, cplx b) { return std::arg(b * std::conj(a)); }

class ContourWalker {
 public:
  explicit ContourWalker(const ComplexFn& f) : f_(f) {}

  cplx eval(cplx z) {
    const cplx v = f_(z);
    ++result_.evaluations;
    const double m = std::abs(v);
    if (!std::isfinite(m)) {
      exhausted_ = true;
    }
    result_.min_abs = std::min(result_.min_abs, m);
    result_.max_abs = std::max(result_.max_abs, m);
    return v;
  }

  /// Phase change from za to zb given f(za), f(zb).
  double segment(cplx za, cplx zb, cplx fa, cplx fb, int depth) {
    if (fa == 0.0 || fb == 0.0) {
      exhausted_ = true;
      return 0.0;
    }
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = eval(zm);
    if (fm == 0.0) {
      exhausted_ = true;
      return 0.0;
    }
    const double left = phase_step(fa, fm);
    const double right = phase_step(fm, fb);
    const bool dip = std::abs(fm) < 0.25 * std::min(std::abs(fa), std::abs(fb));
    if (std::abs(left) <= kHalfPi && std::abs(right) <= kHalfPi && !dip) {
      return left + right;
    }
    if (depth >= kMaxSegmentDepth) {
      if (std::abs(left) > kHalfPi || std::abs(right) > kHalfPi) {
        exhausted_ = true;
      }
      return left + right;
    }
    return segment(za, zm, fa, fm, depth + 1) + segment(zm, zb, fm, fb, depth + 1);
  }

  WindingResult walk(const Rect& r, std::size_t samples_per_edge) {
    result_ = WindingResult{};
    result_.min_abs = std::numeric_limits<double>::infinity();
    result_.max_abs = 0.0;
    exhausted_ = false;

    const cplx corners[5] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
                             {r.re_min, r.im_max}, {r.re_min, r.im_min}};
    double phase = 0.0;
    cplx z_prev = corners[0];
    cplx f_prev = eval(z_prev);
    const cplx f_start = f_prev;
    for (int e = 0; e < 4; ++e) {
      for (std::size_t s = 1; s <= samples_per_edge; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(samples_per_edge);
        const cplx z = (s == samples_per_edge) ? corners[e + 1] : corners[e] + t * (corners[e + 1] - corners[e]);
        const cplx fz = (e == 3 && s == samples_per_edge) ? f_start : eval(z);
        phase += segment(z_prev, z, f_prev, fz, 0);
        z_prev = z;
        f_prev = fz;
      }
    }
    result_.phase_change = phase;
    result_.winding = static_cast<int>(std::lround(phase / (2.0 * std::numbers::pi)));
    const bool too_close = exhausted_ || !(result_.min_abs > kContourSafety * result_.max_abs);
    result_.status = too_close ? ContourStatus::ContourTooCloseToZero : ContourStatus::Clean;
    return result_;
  }

 private:
  const ComplexFn& f_;
  WindingResult result_;
  bool exhausted_ = false;
};

void check_rect(const Rect& r) {
  if (!(r.re_max > r.re_min) || !(r.im_max > r.im_min) || !std::isfinite(r.re_min) ||
      !std::isfinite(r.re_max) || !std::isfinite(r.im_min) || !std::isfinite(r.im_max)) {
    throw InvalidArgument("degenerate or non-finite rectangle");
  }
}

struct TileOutcome {
  int winding = 0;
  double min_abs = std::numeric_limits<double>::infinity();
  std::size_t subdivisions = 0;
  std::size_t rectangles = 0;
  bool clean = true;
  std::optional<Rect> offending;
};

void resolve_tile(const ComplexFn& f, const Rect& r, std::size_t samples, int depth, int max_depth,
                  TileOutcome& out) {
  const WindingResult w = winding_number(f, r, samples);
  if (w.status == ContourStatus::Clean) {
    out.winding += w.winding;
    out.min_abs = std::min(out.min_abs, w.min_abs);
    ++out.rectangles;
    return;
  }
  if (depth >= max_depth) {
    out.min_abs = std::min(out.min_abs, w.min_abs);
    out.clean = false;
    if (!out.offending) {
      out.offending = r;
    }
    return;
  }
  ++out.subdivisions;
  const double rm = 0.5 * (r.re_min + r.re_max);
  const double im = 0.5 * (r.im_min + r.im_max);
  const Rect quads[4] = {{r.re_min, rm, r.im_min, im},
                         {rm, r.re_max, r.im_min, im},
                         {r.re_min, rm, im, r.im_max},
                         {rm, r.re_max, im, r.im_max}};
  for (const Rect& q : quads) {
    resolve_tile(f, q, samples, depth + 1, max_depth, out);
  }
}

}  // namespace

WindingResult winding_number(const ComplexFn& f, const Rect& region, std::size_t samples_per_edge) {
  if (samples_per_edge < 64) {
    throw InvalidArgument("samples_per_edge must be at least 64");
  }
  check_rect(region);
  ContourWalker walker(f);
  return walker.walk(region, samples_per_edge);
}

ScanReport scan_region(const ComplexFn& f, const Rect& region, const ScanOptions& opts) {
  check_rect(region);
  if (!(region.im_min > 0.0)) {
    throw InvalidArgument("scan region must lie strictly above the real axis (im_min > 0)");
  }
  if (opts.tiles_re == 0 || opts.tiles_im == 0) {
    throw InvalidArgument("tile counts must be positive");
  }
  if (opts.samples_per_edge < 64) {
    throw InvalidArgument("samples_per_edge must be at least 64");
  }

  const std::size_t ntiles = opts.tiles_re * opts.tiles_im;
  const double dre = (region.re_max - region.re_min) / static_cast<double>(opts.tiles_re);
  const double dim = (region.im_max - region.im_min) / static_cast<double>(opts.tiles_im);

  // Quadrant splits keep a tile's edges, so a zero sitting on an internal
  // tile line survives any depth. Failing tilings are retried with the
  // internal lines shifted; the outer boundary never moves.
  constexpr double kLineShift[] = {0.0, 0.381966011250105, -0.236067977499790, 0.145898033750315};
  ScanReport report;
  report.region = region;
  for (double shift : kLineShift) {
    const auto line_re = [&](std::size_t i) {
      if (i == 0) return region.re_min;
      if (i == opts.tiles_re) return region.re_max;
      return region.re_min + dre * (static_cast<double>(i) + shift);
    };
    const auto line_im = [&](std::size_t j) {
      if (j == 0) return region.im_min;
      if (j == opts.tiles_im) return region.im_max;
      return region.im_min + dim * (static_cast<double>(j) + shift);
    };
    std::vector<TileOutcome> tiles(ntiles);
    parallel_for(ntiles, opts.threads, [&](std::size_t idx) {
      const std::size_t i = idx % opts.tiles_re;
      const std::size_t j = idx / opts.tiles_re;
      const Rect r{line_re(i), line_re(i + 1), line_im(j), line_im(j + 1)};
      resolve_tile(f, r, opts.samples_per_edge, 0, opts.max_depth, tiles[idx]);
    });

    const std::size_t earlier_subdivisions = report.subdivisions;
    report = ScanReport{};
    report.region = region;
    report.subdivisions = earlier_subdivisions;
    report.min_abs_on_contour = std::numeric_limits<double>::infinity();
    for (const auto& t : tiles) {
      report.winding += t.winding;
      report.min_abs_on_contour = std::min(report.min_abs_on_contour, t.min_abs);
      report.subdivisions += t.subdivisions;
      report.rectangles += t.rectangles;
      if (!t.clean) {
        report.status = ContourStatus::ContourTooCloseToZero;
        if (!report.offending) {
          report.offending = t.offending;
        }
      }
    }
    if (report.status == ContourStatus::Clean || (opts.tiles_re == 1 && opts.tiles_im == 1)) {
      break;
    }
    ++report.subdivisions;  // a retiling counts as one subdivision step
  }

  // Interior lattice, strictly inside the region.
  const std::size_t nre = std::max<std::size_t>(opts.interior_re, 1);
  const std::size_t nim = std::max<std::size_t>(opts.interior_im, 1);
  std::vector<double> row_min(nim, std::numeric_limits<double>::infinity());
  std::vector<cplx> row_arg(nim);
  parallel_for(nim, opts.threads, [&](std::size_t j) {
    const double y = region.im_min + (region.im_max - region.im_min) * (static_cast<double>(j) + 0.5) /
                                         static_cast<double>(nim);
    for (std::size_t i = 0; i < nre; ++i) {
      const double x = region.re_min + (region.re_max - region.re_min) * (static_cast<double>(i) + 0.5) /
                                           static_cast<double>(nre);
      const double m = std::abs(f(cplx(x, y)));
      if (m < row_min[j]) {
        row_min[j] = m;
        row_arg[j] = cplx(x, y);
      }
    }
  });
  report.min_abs_interior = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nim; ++j) {
    if (row_min[j] < report.min_abs_interior) {
      report.min_abs_interior = row_min[j];
      report.argmin_interior = row_arg[j];
    }
  }
  return report;
}

ScanReport scan_upper_halfplane(const BoundaryParams& bp, const Material& mat, const ScanOptions& opts) {
  const double re_extent = opts.re_extent > 0.0 ? opts.re_extent : 3.0 * mat.c1();
  const double im_floor = opts.im_floor > 0.0 ? opts.im_floor : 1e-3 * mat.c2();
  const double im_ceiling = opts.im_ceiling > 0.0 ? opts.im_ceiling : 3.0 * mat.c1();
  if (opts.im_floor < 0.0 || opts.re_extent < 0.0 || opts.im_ceiling < 0.0) {
    throw InvalidArgument("scan extents must be positive");
  }
  const cplx g1 = bp.gamma1();
  const cplx g2 = bp.gamma2();
  const ComplexFn f = [g1, g2, &mat](cplx c) { return secular_value(c, g1, g2, mat); };
  return scan_region(f, Rect{-re_extent, re_extent, im_floor, im_ceiling}, opts);
}

AxisSample axis_min_abs(const BoundaryParams& bp, const Material& mat, double extent, double step,
                        double exclusion) {
  if (!(extent > 0.0) || !(step > 0.0)) {
    throw InvalidArgument("axis sampling needs positive extent and step");
  }
  AxisSample out;
  out.min_abs = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::size_t>(std::floor(2.0 * extent / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double c = -extent + step * static_cast<double>(i);
    if (std::abs(c) < exclusion) {
      continue;
    }
    const double m = std::abs(secular_value(cplx(c, 0.0), bp.gamma1(), bp.gamma2(), mat));
    ++out.samples;
    if (m < out.min_abs) {
      out.min_abs = m;
      out.argmin = c;
    }
  }
  return out;
}

}  // namespace rayleigh
