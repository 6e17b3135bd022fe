#include <cmath>
#include <random>

#include "doctest.h"
#include "rayleigh/error.hpp"
#include "rayleigh/winding.hpp"
#include "support.hpp"

using namespace rayleigh;

namespace {
const Rect kBox{-2.0, 3.0, 0.5, 2.5};
}

TEST_CASE("winding of simple polynomials") {
  const cplx z0(1.0, 1.0);
  CHECK(winding_number([&](cplx c) { return c - z0; }, kBox).winding == 1);
  CHECK(winding_number([&](cplx c) { return (c - z0) * (c - z0); }, kBox).winding == 2);
  CHECK(winding_number([](cplx c) { return c + 5.0; }, kBox).winding == 0);
  CHECK(winding_number([&](cplx c) { return 1.0 / (c - z0); }, kBox).winding == -1);
  const auto three = winding_number([&](cplx c) { return (c - z0) * (c - cplx(-1.5, 2.0)) * (c - cplx(2.5, 0.6)); }, kBox);
  CHECK(three.winding == 3);
  CHECK(three.phase_change == doctest::Approx(6.0 * M_PI).epsilon(1e-6));
  CHECK(three.status == ContourStatus::Clean);
}

TEST_CASE("fast-turning phase is resolved by refinement") {
  // Twelve zeros packed near the bottom edge.
  const auto f = [](cplx c) {
    cplx p = 1.0;
    for (int j = 0; j < 12; ++j) {
      p *= c - cplx(-1.5 + 0.35 * j, 0.52);
    }
    return p;
  };
  const WindingResult r = winding_number(f, kBox);
  CHECK(r.winding == 12);
  CHECK(r.evaluations > 4 * 64);
}

TEST_CASE("winding argument validation") {
  CHECK_THROWS_AS(winding_number([](cplx c) { return c; }, kBox, 63), InvalidArgument);
  CHECK_THROWS_AS(winding_number([](cplx c) { return c; }, Rect{1.0, 1.0, 0.0, 1.0}), InvalidArgument);
}

TEST_CASE("zero on the contour is flagged") {
  const WindingResult r = winding_number([](cplx c) { return c - cplx(0.5, 0.5); }, kBox);
  CHECK(r.status == ContourStatus::ContourTooCloseToZero);
  CHECK(to_string(r.status) == "ContourTooCloseToZero");
}

TEST_CASE("doubling the samples leaves the secular winding unchanged") {
  const Material mat = test::reference_material();
  const BoundaryParams bp(cplx(0.5, 0.0), cplx(0.5, 0.0));
  const ComplexFn f = [&](cplx c) { return secular_pbc(c, bp, mat).value; };
  const Rect r{-3 * mat.c1(), 3 * mat.c1(), 1e-3 * mat.c2(), 3 * mat.c1()};
  const WindingResult a = winding_number(f, r, 64);
  const WindingResult b = winding_number(f, r, 128);
  CHECK(a.winding == b.winding);
  CHECK(a.phase_change == doctest::Approx(b.phase_change).epsilon(1e-9));
}

TEST_CASE("scan: ill-posed positive gamma has zeros in the upper half-plane") {
  const Material mat = test::reference_material();
  ScanOptions o;
  o.threads = 1;
  const ScanReport rep = scan_upper_halfplane(BoundaryParams(cplx(0.5, 0.0), cplx(0.5, 0.0)), mat, o);
  CHECK(rep.status == ContourStatus::Clean);
  CHECK(rep.winding >= 1);
  CHECK(rep.region.re_max == doctest::Approx(3 * mat.c1()));
  CHECK(rep.region.im_min == doctest::Approx(1e-3 * mat.c2()));
  CHECK(rep.min_abs_interior < 0.05);
  CHECK(rep.argmin_interior.imag() > 0.0);
}

TEST_CASE("scan: perturbed and pure impedance are zero-free") {
  const Material mat = test::reference_material();
  ScanOptions o;
  o.threads = 2;
  for (const BoundaryParams& bp : {BoundaryParams(cplx(-0.35, 0), cplx(-0.7, 0)), BoundaryParams::impedance(0.5, -0.3),
                                   BoundaryParams::stress_free(), BoundaryParams(cplx(-0.04, 0.3), cplx(-0.06, -1.2))}) {
    const ScanReport rep = scan_upper_halfplane(bp, mat, o);
    CHECK(rep.status == ContourStatus::Clean);
    CHECK(rep.winding == 0);
    CHECK(rep.rectangles >= o.tiles_re * o.tiles_im);
  }
}

TEST_CASE("scan escapes a zero on an internal tile line") {
  const Rect r{-2.0, 2.0, 0.5, 2.5};
  ScanOptions o;
  o.tiles_re = 2;
  o.tiles_im = 1;
  o.threads = 1;
  const auto f = [](cplx c) { return c - cplx(0.0, 1.37); };
  const ScanReport rep = scan_region(f, r, o);
  CHECK(rep.winding == 1);
  CHECK(rep.subdivisions > 0);
  CHECK(rep.status == ContourStatus::Clean);
  CHECK_FALSE(rep.offending.has_value());
}

TEST_CASE("scan reports a zero on the outer boundary") {
  const Rect r{-2.0, 2.0, 0.5, 2.5};
  ScanOptions o;
  o.threads = 1;
  o.max_depth = 2;
  const ScanReport stuck = scan_region([](cplx c) { return c - cplx(2.0, 1.1); }, r, o);
  CHECK(stuck.status == ContourStatus::ContourTooCloseToZero);
  REQUIRE(stuck.offending.has_value());
  CHECK(stuck.offending->re_max == 2.0);
}

TEST_CASE("near-edge zero resolved by quadrant refinement") {
  // Fast phase turn close to a tile edge; the result must stay exact.
  const Rect r{-2.0, 2.0, 0.5, 2.5};
  ScanOptions o;
  o.threads = 1;
  const ScanReport rep = scan_region([](cplx c) { return c - cplx(0.3, 0.5 + 1e-7); }, r, o);
  CHECK(rep.status == ContourStatus::Clean);
  CHECK(rep.winding == 1);
}

TEST_CASE("scan validates its region") {
  const Material mat = test::reference_material();
  ScanOptions o;
  o.im_floor = -1.0;
  CHECK_THROWS_AS(scan_upper_halfplane(BoundaryParams::stress_free(), mat, o), InvalidArgument);
  CHECK_THROWS_AS(scan_region([](cplx c) { return c; }, Rect{-1, 1, 0.0, 1}, ScanOptions{}), InvalidArgument);
}

TEST_CASE("axis sampling") {
  const Material mat = test::reference_material();
  const AxisSample s = axis_min_abs(BoundaryParams(cplx(-0.35, 0), cplx(-0.7, 0)), mat, 3 * mat.c1(), 1e-3, 1e-6);
  CHECK(s.min_abs > 0.0);
  CHECK(s.samples > 1000);
  // Stress-free has a real root at the Rayleigh speed.
  const AxisSample free = axis_min_abs(BoundaryParams::stress_free(), mat, 3 * mat.c1(), 1e-5, 0.05);
  CHECK(free.min_abs < 1e-3);
  CHECK(std::abs(std::abs(free.argmin) - 0.8096215626816857) < 1e-4);
}
