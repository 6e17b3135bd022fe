#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rayleigh/error.hpp"
#include "rayleigh/kernel.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/roots.hpp"
#include "rayleigh/secular.hpp"
#include "rayleigh/theorems.hpp"
#include "rayleigh/winding.hpp"

namespace py = pybind11;
using namespace rayleigh;

namespace {

Rect to_rect(const std::array<double, 4>& r) { return {r[0], r[1], r[2], r[3]}; }

py::tuple from_rect(const Rect& r) { return py::make_tuple(r.re_min, r.re_max, r.im_min, r.im_max); }

py::dict root_dict(const RootReport& r) {
  py::dict d;
  d["found"] = r.found;
  d["c_root"] = r.found ? py::object(py::float_(r.c_root)) : py::object(py::none());
  d["residual"] = r.found ? py::object(py::float_(r.residual)) : py::object(py::none());
  d["bracket"] = py::make_tuple(r.bracket.first, r.bracket.second);
  d["iterations"] = r.iterations;
  d["sign_changes"] = r.sign_changes;
  d["roots"] = r.roots;
  d["multiplicity_note"] = r.multiplicity_note;
  return d;
}

py::dict scan_dict(const ScanReport& s) {
  py::dict d;
  d["region"] = from_rect(s.region);
  d["winding"] = s.winding;
  d["min_abs_on_contour"] = s.min_abs_on_contour;
  d["min_abs_interior"] = s.min_abs_interior;
  d["argmin_interior"] = s.argmin_interior;
  d["subdivisions"] = s.subdivisions;
  d["rectangles"] = s.rectangles;
  d["status"] = std::string(to_string(s.status));
  d["offending"] = s.offending ? py::object(from_rect(*s.offending)) : py::object(py::none());
  return d;
}

ScanOptions scan_options(double re_extent, double im_floor, double im_ceiling, std::size_t tiles_re,
                         std::size_t tiles_im, std::size_t samples_per_edge, int max_depth, unsigned threads) {
  ScanOptions o;
  o.re_extent = re_extent;
  o.im_floor = im_floor;
  o.im_ceiling = im_ceiling;
  o.tiles_re = tiles_re;
  o.tiles_im = tiles_im;
  o.samples_per_edge = samples_per_edge;
  o.max_depth = max_depth;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Secular-equation analysis of Rayleigh waves with impedance and perturbed boundary conditions";

  auto base = py::register_exception<Error>(m, "RayleighError", PyExc_RuntimeError);
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<SingularSpeed>(m, "SingularSpeed", base.ptr());

  py::class_<Material>(m, "Material")
      .def_static("from_lame", &Material::from_lame, py::arg("rho"), py::arg("lam"), py::arg("mu"))
      .def_static("from_young_poisson", &Material::from_young_poisson, py::arg("rho"), py::arg("young"),
                  py::arg("poisson"))
      .def_property_readonly("rho", &Material::rho)
      .def_property_readonly("lam", &Material::lambda)
      .def_property_readonly("mu", &Material::mu)
      .def_property_readonly("c1", &Material::c1)
      .def_property_readonly("c2", &Material::c2)
      .def_property_readonly("young", &Material::young)
      .def_property_readonly("poisson", &Material::poisson)
      .def_property_readonly("shear_impedance", &Material::shear_impedance)
      .def(
          "nondimensionalize",
          [](const Material& mat, double z1, double z2) {
            const NondimParams p = mat.nondimensionalize(z1, z2);
            return py::make_tuple(p.tau, p.delta1, p.delta2);
          },
          py::arg("z1"), py::arg("z2"), "(tau, delta1, delta2)")
      .def("__repr__", [](const Material& mat) {
        return "Material(rho=" + std::to_string(mat.rho()) + ", lam=" + std::to_string(mat.lambda()) +
               ", mu=" + std::to_string(mat.mu()) + ")";
      });

  py::class_<BoundaryParams>(m, "BoundaryParams")
      .def(py::init<cplx, cplx>(), py::arg("gamma1"), py::arg("gamma2"))
      .def_static("stress_free", &BoundaryParams::stress_free)
      .def_static("impedance", &BoundaryParams::impedance, py::arg("z1"), py::arg("z2"))
      .def_property_readonly("gamma1", &BoundaryParams::gamma1)
      .def_property_readonly("gamma2", &BoundaryParams::gamma2)
      .def_property_readonly("regime", [](const BoundaryParams& bp) { return std::string(to_string(bp.regime())); });

  m.def(
      "secular",
      [](cplx c, cplx gamma1, cplx gamma2, const Material& mat) { return secular_value(c, gamma1, gamma2, mat); },
      py::arg("c"), py::arg("gamma1"), py::arg("gamma2"), py::arg("material"), "R(c; gamma1, gamma2)");
  m.def(
      "secular_array",
      [](py::array_t<cplx, py::array::c_style | py::array::forcecast> cs, cplx gamma1, cplx gamma2,
         const Material& mat) {
        py::array_t<cplx> out(cs.request().shape);
        const auto n = static_cast<std::size_t>(cs.size());
        const cplx* in = cs.data();
        cplx* dst = out.mutable_data();
        {
          py::gil_scoped_release release;
          for (std::size_t i = 0; i < n; ++i) {
            dst[i] = secular_value(in[i], gamma1, gamma2, mat);
          }
        }
        return out;
      },
      py::arg("c"), py::arg("gamma1"), py::arg("gamma2"), py::arg("material"), "R evaluated elementwise");
  m.def(
      "secular_impedance", [](cplx c, double z1, double z2, const Material& mat) { return secular_impedance(c, z1, z2, mat).value; },
      py::arg("c"), py::arg("z1"), py::arg("z2"), py::arg("material"));
  m.def("secular_nondim", &secular_nondim, py::arg("x"), py::arg("tau"), py::arg("delta1"), py::arg("delta2"));
  m.def(
      "decay_exponents",
      [](cplx c, const Material& mat) {
        const DecayExponents b = decay_exponents(c, mat);
        return py::make_tuple(b.b1, b.b2);
      },
      py::arg("c"), py::arg("material"));
  m.def("boundary_system_matrix", &boundary_system_matrix, py::arg("c"), py::arg("k"), py::arg("boundary"),
        py::arg("material"));
  m.def("determinant_oracle", &determinant_oracle, py::arg("c"), py::arg("k"), py::arg("boundary"), py::arg("material"));
  m.def("oracle_factor", &oracle_factor, py::arg("c"), py::arg("k"), py::arg("material"));

  m.def(
      "find_subsonic_root",
      [](double z1, double z2, const Material& mat, double tol, std::size_t samples) {
        return root_dict(find_subsonic_root(z1, z2, mat, RootOptions{tol, samples}));
      },
      py::arg("z1"), py::arg("z2"), py::arg("material"), py::arg("tol") = 1e-12, py::arg("samples") = 4096);
  m.def(
      "existence_map",
      [](const std::vector<double>& z1s, const std::vector<double>& z2s, const Material& mat, double tol,
         std::size_t samples, unsigned threads) {
        std::vector<ExistenceCell> cells;
        {
          py::gil_scoped_release release;
          cells = existence_map(z1s, z2s, mat, RootOptions{tol, samples}, threads);
        }
        const auto rows = static_cast<py::ssize_t>(z2s.size());
        const auto cols = static_cast<py::ssize_t>(z1s.size());
        py::array_t<bool> found({rows, cols});
        py::array_t<double> speed({rows, cols});
        auto f = found.mutable_unchecked<2>();
        auto s = speed.mutable_unchecked<2>();
        for (py::ssize_t j = 0; j < rows; ++j) {
          for (py::ssize_t i = 0; i < cols; ++i) {
            const RootReport& r = cells[static_cast<std::size_t>(j * cols + i)].report;
            f(j, i) = r.found;
            s(j, i) = r.found ? r.c_root : std::numeric_limits<double>::quiet_NaN();
          }
        }
        py::dict d;
        d["found"] = found;
        d["c_root"] = speed;
        return d;
      },
      py::arg("z1"), py::arg("z2"), py::arg("material"), py::arg("tol") = 1e-12, py::arg("samples") = 4096,
      py::arg("threads") = 0, "Arrays indexed [Z2 index, Z1 index]");

  m.def(
      "winding_number",
      [](const std::function<cplx(cplx)>& f, const std::array<double, 4>& rect, std::size_t samples) {
        const WindingResult w = winding_number(f, to_rect(rect), samples);
        py::dict d;
        d["winding"] = w.winding;
        d["phase_change"] = w.phase_change;
        d["min_abs"] = w.min_abs;
        d["max_abs"] = w.max_abs;
        d["evaluations"] = w.evaluations;
        d["status"] = std::string(to_string(w.status));
        return d;
      },
      py::arg("f"), py::arg("rect"), py::arg("samples_per_edge") = 64,
      "Zero count of f inside rect = (re_min, re_max, im_min, im_max)");
  m.def(
      "scan_upper_halfplane",
      [](const BoundaryParams& bp, const Material& mat, double re_extent, double im_floor, double im_ceiling,
         std::size_t tiles_re, std::size_t tiles_im, std::size_t samples_per_edge, int max_depth, unsigned threads) {
        const ScanOptions o =
            scan_options(re_extent, im_floor, im_ceiling, tiles_re, tiles_im, samples_per_edge, max_depth, threads);
        ScanReport s;
        {
          py::gil_scoped_release release;
          s = scan_upper_halfplane(bp, mat, o);
        }
        return scan_dict(s);
      },
      py::arg("boundary"), py::arg("material"), py::arg("re_extent") = 0.0, py::arg("im_floor") = 0.0,
      py::arg("im_ceiling") = 0.0, py::arg("tiles_re") = 4, py::arg("tiles_im") = 2, py::arg("samples_per_edge") = 64,
      py::arg("max_depth") = 8, py::arg("threads") = 0);
  m.def(
      "axis_min_abs",
      [](const BoundaryParams& bp, const Material& mat, double extent, double step, double exclusion) {
        const AxisSample a = axis_min_abs(bp, mat, extent, step, exclusion);
        return py::make_tuple(a.min_abs, a.argmin, a.samples);
      },
      py::arg("boundary"), py::arg("material"), py::arg("extent"), py::arg("step"), py::arg("exclusion"),
      "(min |R|, argmin, samples) over the real axis");

  m.def(
      "verify_maint11",
      [](const BoundaryParams& bp, const Material& mat) {
        const TheoremReport t = verify_maint11(bp, mat);
        py::dict d;
        d["beta0"] = t.beta0;
        d["d1"] = t.d1;
        d["d2"] = t.d2;
        d["lambdas"] = t.lambdas;
        d["jacobi"] = t.jacobi;
        d["epsilon"] = t.epsilon;
        d["epsilon_used"] = t.epsilon_used;
        d["min_eig_M"] = t.min_eig_M;
        d["max_rel_mismatch"] = t.max_rel_mismatch;
        d["pass"] = t.pass;
        return d;
      },
      py::arg("boundary"), py::arg("material"));
  m.def("restricted_quadratic_form", &restricted_quadratic_form, py::arg("c"), py::arg("k"), py::arg("material"));
  m.def("key_inequality_ratio", &key_inequality_ratio, py::arg("c"), py::arg("boundary"), py::arg("material"));
  m.def(
      "energy_identity_check",
      [](cplx c, double k, cplx amp1, cplx amp2, const Material& mat, const std::vector<double>& grid) {
        const EnergyCheck e = energy_identity_check(c, k, amp1, amp2, mat, grid);
        return py::make_tuple(e.max_residual, e.non_decreasing);
      },
      py::arg("c"), py::arg("k"), py::arg("amp1"), py::arg("amp2"), py::arg("material"), py::arg("x2_grid"),
      "(max relative residual, non_decreasing)");
  m.def(
      "hurwitz_convergence_check",
      [](double z1, double z2, const Material& mat, const std::array<double, 4>& rect, const std::vector<int>& ns,
         std::size_t grid_re, std::size_t grid_im) {
        const HurwitzReport h = hurwitz_convergence_check(z1, z2, mat, to_rect(rect), ns, grid_re, grid_im);
        py::list rows;
        for (const HurwitzRow& r : h.rows) {
          rows.append(py::make_tuple(r.n, r.sup_diff, r.r_n));
        }
        py::dict d;
        d["m1"] = h.m1;
        d["m2"] = h.m2;
        d["m3"] = h.m3;
        d["rows"] = rows;
        d["bound_holds"] = h.bound_holds;
        d["bound_decreasing"] = h.bound_decreasing;
        return d;
      },
      py::arg("z1"), py::arg("z2"), py::arg("material"), py::arg("rect"), py::arg("n_values"), py::arg("grid_re") = 81,
      py::arg("grid_im") = 41);
}
