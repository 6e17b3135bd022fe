#include "rayleigh/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "rayleigh/cli/output.hpp"
#include "rayleigh/kernel.hpp"
#include "rayleigh/parallel.hpp"
#include "rayleigh/roots.hpp"
#include "rayleigh/secular.hpp"
#include "rayleigh/theorems.hpp"
#include "rayleigh/winding.hpp"

namespace rayleigh::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json rect_json(const Rect& r) {
  return {{"re_min", r.re_min}, {"re_max", r.re_max}, {"im_min", r.im_min}, {"im_max", r.im_max}};
}

/// One entry of the `checks` array. margin > 0 means passed with room to spare.
Json check(const std::string& name, bool pass, double margin, const std::string& ref, Json detail = Json::object()) {
  Json c = {{"name", name}, {"pass", pass}, {"margin", margin}, {"paper_ref", ref}};
  if (!detail.empty()) {
    c["detail"] = std::move(detail);
  }
  return c;
}

Json skipped(const std::string& name, const std::string& ref, const std::string& reason) {
  return {{"name", name}, {"pass", nullptr}, {"margin", nullptr}, {"paper_ref", ref}, {"skipped", reason}};
}

Json base_report(std::string_view command, const RunConfig& cfg) {
  return {{"command", command}, {"config_echo", to_json(cfg)}, {"results", Json::object()}, {"checks", Json::array()}};
}

Json material_json(const Material& m) {
  return {{"rho", m.rho()}, {"lambda", m.lambda()}, {"mu", m.mu()}, {"c1", m.c1()}, {"c2", m.c2()}};
}

const BoundarySpec& require_boundary(const RunConfig& cfg) {
  if (!cfg.boundary) {
    throw ConfigError("config field 'boundary': missing");
  }
  return *cfg.boundary;
}

Json boundary_json(const BoundaryParams& bp) {
  return {{"gamma1", complex_json(bp.gamma1())}, {"gamma2", complex_json(bp.gamma2())}, {"regime", to_string(bp.regime())}};
}

bool all_applicable_pass(const Json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c.at("pass").is_null() || c.at("pass").get<bool>(); });
}

// Random c in the box, away from the mode-basis exclusion zones and from c = 0.
cplx draw_speed(std::mt19937_64& rng, const Material& mat, double re_lo, double re_hi, double im_lo, double im_hi) {
  std::uniform_real_distribution<double> re(re_lo, re_hi);
  std::uniform_real_distribution<double> im(im_lo, im_hi);
  while (true) {
    const cplx c(re(rng), im(rng));
    if (!is_singular_speed(c, mat) && std::abs(c) > 1e-2 * mat.c2()) {
      return c;
    }
  }
}

}  // namespace

CommandResult run_eval(const RunConfig& cfg, unsigned threads) {
  if (!cfg.eval) {
    throw ConfigError("config field 'eval': missing (give eval.real or eval.rect)");
  }
  const Material mat = cfg.material.build();
  const BoundaryParams bp = require_boundary(cfg).build();
  const std::vector<cplx> pts = cfg.eval->points();
  std::vector<cplx> vals(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) { vals[i] = secular_value(pts[i], bp.gamma1(), bp.gamma2(), mat); });

  CommandResult res;
  res.has_csv = true;
  std::ostringstream csv;
  csv << "c_re,c_im,R_re,R_im,abs_R\n";
  double min_abs = kInf;
  double max_abs = 0.0;
  cplx argmin{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double a = std::abs(vals[i]);
    csv << format_number(pts[i].real()) << ',' << format_number(pts[i].imag()) << ',' << format_number(vals[i].real())
        << ',' << format_number(vals[i].imag()) << ',' << format_number(a) << '\n';
    if (a < min_abs) {
      min_abs = a;
      argmin = pts[i];
    }
    max_abs = std::max(max_abs, a);
  }
  res.csv = csv.str();
  res.report = base_report("eval", cfg);
  res.report["results"] = {{"material", material_json(mat)},
                           {"boundary", boundary_json(bp)},
                           {"points", pts.size()},
                           {"min_abs_R", min_abs},
                           {"argmin", complex_json(argmin)},
                           {"max_abs_R", max_abs},
                           {"columns", Json::array({"c_re", "c_im", "R_re", "R_im", "abs_R"})}};
  return res;
}

CommandResult run_root(const RunConfig& cfg, unsigned /*threads*/) {
  const Material mat = cfg.material.build();
  const BoundaryParams bp = require_boundary(cfg).build();
  if (bp.regime() != Regime::StressFree && bp.regime() != Regime::PureImpedance) {
    throw RegimeError("root search needs a pure impedance or stress-free boundary (regime is " +
                      std::string(to_string(bp.regime())) + ")");
  }
  const RootReport r = find_subsonic_root(bp.z1(), bp.z2(), mat, cfg.root);
  CommandResult res;
  res.report = base_report("root", cfg);
  Json roots = Json::array();
  for (double x : r.roots) {
    roots.push_back(x);
  }
  Json out = {{"material", material_json(mat)}, {"boundary", boundary_json(bp)}, {"found", r.found}};
  if (r.found) {
    out["c_root"] = r.c_root;
    out["c_root_over_c2"] = r.c_root / mat.c2();
    out["residual"] = r.residual;
    out["bracket"] = Json::array({r.bracket.first, r.bracket.second});
  } else {
    out["c_root"] = nullptr;
    out["c_root_over_c2"] = nullptr;
    out["residual"] = nullptr;
    out["bracket"] = nullptr;
  }
  out["iterations"] = r.iterations;
  out["sign_changes"] = r.sign_changes;
  out["roots"] = roots;
  out["multiplicity_note"] = r.multiplicity_note;
  res.report["results"] = out;
  return res;
}

CommandResult run_scan(const RunConfig& cfg, unsigned threads) {
  const Material mat = cfg.material.build();
  const BoundaryParams bp = require_boundary(cfg).build();
  ScanOptions opts = cfg.scan.options;
  opts.threads = threads;
  const ScanReport s = scan_upper_halfplane(bp, mat, opts);

  CommandResult res;
  res.report = base_report("scan", cfg);
  Json out = {{"material", material_json(mat)},
              {"boundary", boundary_json(bp)},
              {"region", rect_json(s.region)},
              {"winding", s.winding},
              {"min_abs_on_contour", s.min_abs_on_contour},
              {"min_abs_interior", s.min_abs_interior},
              {"argmin_interior", complex_json(s.argmin_interior)},
              {"subdivisions", s.subdivisions},
              {"rectangles", s.rectangles},
              {"status", to_string(s.status)},
              {"offending", s.offending ? rect_json(*s.offending) : Json(nullptr)}};

  Json& checks = res.report["checks"];
  const bool clean = s.status == ContourStatus::Clean;
  checks.push_back(check("contour_clean", clean, s.min_abs_on_contour, "argument principle contour safety"));
  checks.push_back(check("winding_zero", s.winding == 0, 0.0 - static_cast<double>(s.winding),
                         "no secular roots in the upper half-plane"));

  bool axis_ok = true;
  const std::string axis_ref = "secular function nonvanishing on the real axis (perturbed regime)";
  if (bp.regime() == Regime::Perturbed && cfg.scan.axis_check) {
    const double step = cfg.scan.axis_step > 0.0 ? cfg.scan.axis_step : 1e-4 * mat.c2();
    const AxisSample a = axis_min_abs(bp, mat, s.region.re_max, step, cfg.scan.axis_exclusion);
    axis_ok = a.min_abs > 0.0;
    out["axis"] = {{"extent", s.region.re_max},
                   {"step", step},
                   {"exclusion", cfg.scan.axis_exclusion},
                   {"samples", a.samples},
                   {"min_abs", a.min_abs},
                   {"argmin", a.argmin}};
    checks.push_back(check("real_axis_nonvanishing", axis_ok, a.min_abs, axis_ref));
  } else {
    checks.push_back(skipped("real_axis_nonvanishing", axis_ref,
                             cfg.scan.axis_check ? "regime is not perturbed" : "disabled by scan.axis_check"));
  }
  res.report["results"] = out;

  if (!clean) {
    res.exit_code = kExitNumeric;
  } else if (s.winding > 0 || !axis_ok) {
    res.exit_code = kExitWinding;
  }
  return res;
}

CommandResult run_verify(const RunConfig& cfg, unsigned /*threads*/) {
  const Material mat = cfg.material.build();
  const BoundaryParams bp = require_boundary(cfg).build();
  const VerifySpec& v = cfg.verify;
  const double c1 = mat.c1();
  const double c2 = mat.c2();
  std::mt19937_64 rng(v.seed);

  CommandResult res;
  res.report = base_report("verify", cfg);
  Json& checks = res.report["checks"];
  Json out = {{"material", material_json(mat)}, {"boundary", boundary_json(bp)}};

  // Positive-definite boundary form and the key inequality need Re γ < 0.
  const std::string pd_ref = "positive-definite boundary form, perturbed regime";
  const std::string key_ref = "coercivity of the boundary operator on decaying modes";
  if (bp.regime() == Regime::Perturbed) {
    const TheoremReport t = verify_maint11(bp, mat);
    const double min_lambda = *std::min_element(t.lambdas.begin(), t.lambdas.end());
    checks.push_back(check("maint11_positive_definite", t.pass, std::min(min_lambda, t.min_eig_M), pd_ref,
                           {{"beta0", t.beta0},
                            {"d1", t.d1},
                            {"d2", t.d2},
                            {"lambdas", Json::array({t.lambdas[0], t.lambdas[1], t.lambdas[2], t.lambdas[3]})},
                            {"jacobi", Json::array({t.jacobi[0], t.jacobi[1], t.jacobi[2], t.jacobi[3]})},
                            {"epsilon", t.epsilon},
                            {"epsilon_used", t.epsilon_used},
                            {"min_eig_M", t.min_eig_M},
                            {"max_rel_mismatch", t.max_rel_mismatch}}));

    const double bound = t.epsilon / t.beta0;
    double worst = kInf;
    for (std::size_t i = 0; i < v.key_samples; ++i) {
      // Every fourth sample on the real axis, the rest above it.
      cplx c = draw_speed(rng, mat, -3.0 * c1, 3.0 * c1, 1e-3 * c2, 3.0 * c1);
      if (i % 4 == 0) {
        while (is_singular_speed(c.real(), mat) || std::abs(c.real()) <= 1e-2 * c2) {
          c = draw_speed(rng, mat, -3.0 * c1, 3.0 * c1, 1e-3 * c2, 3.0 * c1);
        }
        c = c.real();
      }
      worst = std::min(worst, key_inequality_ratio(c, bp, mat) - bound);
    }
    checks.push_back(check("key_inequality", worst >= -1e-9, worst + 1e-9, key_ref,
                           {{"samples", v.key_samples}, {"lower_bound", bound}}));
  } else {
    const std::string why = "regime is " + std::string(to_string(bp.regime())) + "; needs Re gamma1 < 0 and Re gamma2 < 0";
    checks.push_back(skipped("maint11_positive_definite", pd_ref, why));
    checks.push_back(skipped("key_inequality", key_ref, why));
  }

  {
    double worst = 0.0;
    std::uniform_real_distribution<double> u(1e-2, 1.0 - 1e-6);
    for (std::size_t i = 0; i < v.real_samples; ++i) {
      const double c = u(rng) * c2 * (i % 2 == 0 ? 1.0 : -1.0);
      const CMat2 q = restricted_quadratic_form(c, 1.0, mat);
      worst = std::max(worst, q.cwiseAbs().maxCoeff() / quadratic_form_scale(c, 1.0, mat));
    }
    checks.push_back(check("quadratic_form_real_zero", worst <= 1e-12, 1e-12 - worst,
                           "restricted energy form vanishes for real subsonic speeds",
                           {{"samples", v.real_samples}, {"max_relative_entry", worst}, {"threshold", 1e-12}}));
  }
  {
    double worst = -kInf;
    for (std::size_t i = 0; i < v.complex_samples; ++i) {
      const cplx c = draw_speed(rng, mat, -3.0 * c1, 3.0 * c1, 1e-6 * c2, 3.0 * c1);
      const CMat2 q = restricted_quadratic_form(c, 1.0, mat);
      worst = std::max(worst, hermitian2_eigenvalues(q)[1] / quadratic_form_scale(c, 1.0, mat));
    }
    checks.push_back(check("quadratic_form_nonpositive", worst <= 1e-10, 1e-10 - worst,
                           "restricted energy form is negative semidefinite for Im c > 0",
                           {{"samples", v.complex_samples}, {"max_relative_eigenvalue", worst}, {"threshold", 1e-10}}));
  }
  {
    double min_order = kInf;
    double worst_residual = 0.0;
    bool monotone = true;
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const auto grid = [](double h) {
      std::vector<double> g;
      const auto n = static_cast<std::size_t>(std::lround(1.0 / h));
      for (std::size_t i = 0; i <= n; ++i) {
        g.push_back(h * static_cast<double>(i));
      }
      return g;
    };
    const std::vector<double> coarse_grid = grid(0.02);
    const std::vector<double> fine_grid = grid(0.01);
    for (std::size_t i = 0; i < v.energy_samples; ++i) {
      const cplx c = draw_speed(rng, mat, -2.0 * c2, 2.0 * c2, 0.1 * c2, 2.0 * c2);
      const cplx a1(amp(rng), amp(rng));
      const cplx a2(amp(rng), amp(rng));
      const EnergyCheck coarse = energy_identity_check(c, 1.0, a1, a2, mat, coarse_grid);
      const EnergyCheck fine = energy_identity_check(c, 1.0, a1, a2, mat, fine_grid);
      min_order = std::min(min_order, std::log2(coarse.max_residual / fine.max_residual));
      worst_residual = std::max(worst_residual, fine.max_residual);
      monotone = monotone && coarse.non_decreasing && fine.non_decreasing;
    }
    const bool pass = v.energy_samples == 0 || (min_order >= 1.9 && monotone);
    checks.push_back(check("energy_identity", pass, v.energy_samples == 0 ? 0.0 : min_order - 1.9,
                           "energy flux grows at rate 2k|p|^2 Im c",
                           {{"samples", v.energy_samples},
                            {"min_observed_order", v.energy_samples == 0 ? Json(nullptr) : Json(min_order)},
                            {"max_residual_h_0.01", worst_residual},
                            {"non_decreasing", monotone}}));
  }
  {
    std::vector<int> ns;
    for (int n = 1; n <= v.hurwitz_n_max; n *= 2) {
      ns.push_back(n);
    }
    const HurwitzReport h = hurwitz_convergence_check(bp.z1(), bp.z2(), mat, v.hurwitz_region, ns);
    Json rows = Json::array();
    double margin = kInf;
    for (const HurwitzRow& row : h.rows) {
      rows.push_back({{"n", row.n}, {"sup_diff", row.sup_diff}, {"r_n", row.r_n}});
      margin = std::min(margin, row.r_n - row.sup_diff);
    }
    const double last = h.rows.back().sup_diff;
    const double prev = h.rows[h.rows.size() - 2].sup_diff;
    const bool rate = prev <= 1.1 * 2.0 * last;
    checks.push_back(check("hurwitz_convergence", h.bound_holds && h.bound_decreasing && rate, margin,
                           "uniform convergence of the perturbed to the impedance secular function",
                           {{"Z1", bp.z1()},
                            {"Z2", bp.z2()},
                            {"region", rect_json(v.hurwitz_region)},
                            {"m1", h.m1},
                            {"m2", h.m2},
                            {"m3", h.m3},
                            {"bound_holds", h.bound_holds},
                            {"bound_decreasing", h.bound_decreasing},
                            {"halving_ratio", last > 0.0 ? prev / last : kInf},
                            {"rows", rows}}));
  }
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.symmetry_samples; ++i) {
      const cplx c = draw_speed(rng, mat, -3.0 * c1, 3.0 * c1, -3.0 * c1, 3.0 * c1);
      const cplx lhs = secular_impedance(-c, bp.z1(), bp.z2(), mat).value;
      const cplx rhs = secular_impedance(c, -bp.z1(), -bp.z2(), mat).value;
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    checks.push_back(check("symmetry", worst <= 1e-12, 1e-12 - worst, "R(-c; iZ) = R(c; -iZ)",
                           {{"samples", v.symmetry_samples}, {"max_relative_gap", worst}, {"threshold", 1e-12}}));
  }
  {
    double worst = 0.0;
    std::uniform_real_distribution<double> kd(0.2, 3.0);
    for (std::size_t i = 0; i < v.oracle_samples; ++i) {
      const cplx c = draw_speed(rng, mat, -3.0 * c1, 3.0 * c1, -3.0 * c1, 3.0 * c1);
      const double k = kd(rng);
      const cplx det = determinant_oracle(c, k, bp, mat);
      const cplx via_r = oracle_factor(c, k, mat) * secular_pbc(c, bp, mat).value;
      const double scale = boundary_system_matrix(c, k, bp, mat).cwiseAbs().maxCoeff();
      worst = std::max(worst, std::abs(det - via_r) / std::max(std::abs(det), scale * scale));
    }
    checks.push_back(check("determinant_oracle", worst <= 1e-10, 1e-10 - worst,
                           "boundary determinant equals k^2 (i mu^2 / b2) R",
                           {{"samples", v.oracle_samples}, {"max_relative_gap", worst}, {"threshold", 1e-10}}));
  }
  {
    double worst = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double c = c2 * i / 200.0;
      const double x = c * c / (c2 * c2);
      const double classic = (2.0 - x) * (2.0 - x) - 4.0 * std::sqrt(1.0 - x) * std::sqrt(1.0 - c * c / (c1 * c1));
      const cplx r = secular_impedance(c, 0.0, 0.0, mat).value;
      worst = std::max(worst, std::abs(r - classic) / std::max(1.0, std::abs(classic)));
    }
    checks.push_back(check("stress_free_reduction", worst <= 1e-13, 1e-13 - worst,
                           "classical Rayleigh function at Z = 0",
                           {{"max_relative_gap", worst}, {"threshold", 1e-13}}));
  }
  const std::string real_ref = "impedance secular function is real on the subsonic interval";
  if (bp.regime() == Regime::PureImpedance || bp.regime() == Regime::StressFree) {
    double worst = 0.0;
    for (int i = 1; i < 400; ++i) {
      const double c = c2 * (i - 200) / 200.0;
      const cplx r = secular_pbc(c, bp, mat).value;
      worst = std::max(worst, std::abs(r.imag()) / std::max(1.0, std::abs(r)));
    }
    checks.push_back(check("subsonic_real", worst <= 1e-14, 1e-14 - worst, real_ref,
                           {{"max_relative_imag", worst}, {"threshold", 1e-14}}));
  } else {
    checks.push_back(skipped("subsonic_real", real_ref, "regime is not pure impedance"));
  }

  std::size_t passed = 0, failed = 0, skipped_n = 0;
  for (const Json& c : checks) {
    if (c.at("pass").is_null()) {
      ++skipped_n;
    } else if (c.at("pass").get<bool>()) {
      ++passed;
    } else {
      ++failed;
    }
  }
  out["passed"] = passed;
  out["failed"] = failed;
  out["skipped"] = skipped_n;
  res.report["results"] = out;
  res.exit_code = all_applicable_pass(checks) ? kExitOk : kExitVerify;
  return res;
}

CommandResult run_existence_map(const RunConfig& cfg, unsigned threads) {
  if (!cfg.existence_map) {
    throw ConfigError("config field 'existence_map': missing (give Z1 and Z2 grids)");
  }
  const Material mat = cfg.material.build();
  const std::vector<double> z1s = cfg.existence_map->z1.resolve();
  const std::vector<double> z2s = cfg.existence_map->z2.resolve();
  const auto cells = existence_map(z1s, z2s, mat, cfg.root, threads);

  CommandResult res;
  res.has_csv = true;
  std::ostringstream csv;
  csv << "Z1,Z2,found,c_root,residual\n";
  std::size_t found = 0;
  Json notes = Json::array();
  for (const ExistenceCell& cell : cells) {
    csv << format_number(cell.z1) << ',' << format_number(cell.z2) << ',' << (cell.report.found ? "true" : "false")
        << ',';
    if (cell.report.found) {
      ++found;
      csv << format_number(cell.report.c_root) << ',' << format_number(cell.report.residual);
    } else {
      csv << ',';
    }
    csv << '\n';
    if (!cell.report.multiplicity_note.empty()) {
      notes.push_back({{"Z1", cell.z1}, {"Z2", cell.z2}, {"note", cell.report.multiplicity_note}});
    }
  }
  res.csv = csv.str();
  res.report = base_report("existence-map", cfg);
  res.report["results"] = {{"material", material_json(mat)},
                           {"cells", cells.size()},
                           {"n_Z1", z1s.size()},
                           {"n_Z2", z2s.size()},
                           {"found", found},
                           {"order", "row-major, Z2 slow"},
                           {"notes", notes},
                           {"columns", Json::array({"Z1", "Z2", "found", "c_root", "residual"})}};
  return res;
}

bool is_known_command(std::string_view command) noexcept {
  return command == "eval" || command == "root" || command == "scan" || command == "verify" ||
         command == "existence-map";
}

CommandResult run_command(std::string_view command, const RunConfig& cfg, unsigned threads) {
  if (command == "eval") return run_eval(cfg, threads);
  if (command == "root") return run_root(cfg, threads);
  if (command == "scan") return run_scan(cfg, threads);
  if (command == "verify") return run_verify(cfg, threads);
  if (command == "existence-map") return run_existence_map(cfg, threads);
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

}  // namespace rayleigh::cli
