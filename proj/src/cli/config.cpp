#include "rayleigh/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace rayleigh::cli {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    fail(where, "expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      fail(where.empty() ? key : where + "." + key, "unknown key");
    }
  }
}

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

double number(const Json& obj, const std::string& where, const std::string& key) {
  const std::string field = join(where, key);
  if (!obj.contains(key)) {
    fail(field, "missing");
  }
  const Json& v = obj.at(key);
  if (!v.is_number()) {
    fail(field, "expected a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    fail(field, "must be finite");
  }
  return x;
}

double number_or(const Json& obj, const std::string& where, const std::string& key, double fallback) {
  return obj.contains(key) ? number(obj, where, key) : fallback;
}

std::size_t count_or(const Json& obj, const std::string& where, const std::string& key, std::size_t fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const Json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(join(where, key), "expected a non-negative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

bool bool_or(const Json& obj, const std::string& where, const std::string& key, bool fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj.at(key).is_boolean()) {
    fail(join(where, key), "expected true or false");
  }
  return obj.at(key).get<bool>();
}

std::string string_or(const Json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key) || obj.at(key).is_null()) {
    return {};
  }
  if (!obj.at(key).is_string()) {
    fail(join(where, key), "expected a string");
  }
  return obj.at(key).get<std::string>();
}

cplx complex_value(const Json& obj, const std::string& where, const std::string& key) {
  const std::string field = join(where, key);
  if (!obj.contains(key)) {
    fail(field, "missing");
  }
  const Json& v = obj.at(key);
  if (v.is_number()) {
    return {v.get<double>(), 0.0};
  }
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(field, "expected a number or [re, im]");
  }
  const cplx z(v[0].get<double>(), v[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(field, "must be finite");
  }
  return z;
}

void require_positive(double x, const std::string& field) {
  if (!(x > 0.0)) {
    fail(field, "must be positive");
  }
}

MaterialSpec parse_material(const Json& j) {
  check_keys(j, "material", {"rho", "lambda", "mu", "E", "nu"});
  MaterialSpec m;
  m.rho = number(j, "material", "rho");
  const bool lame = j.contains("lambda") || j.contains("mu");
  const bool young = j.contains("E") || j.contains("nu");
  if (lame == young) {
    fail("material", "give exactly one of {lambda, mu} or {E, nu}");
  }
  if (lame) {
    m.kind = MaterialSpec::Kind::Lame;
    m.lambda = number(j, "material", "lambda");
    m.mu = number(j, "material", "mu");
  } else {
    m.kind = MaterialSpec::Kind::YoungPoisson;
    m.young = number(j, "material", "E");
    m.poisson = number(j, "material", "nu");
  }
  m.build();  // surfaces constraint violations at parse time
  return m;
}

BoundarySpec parse_boundary(const Json& j) {
  check_keys(j, "boundary", {"gamma1", "gamma2", "Z1", "Z2", "stress_free"});
  const bool gamma = j.contains("gamma1") || j.contains("gamma2");
  const bool imp = j.contains("Z1") || j.contains("Z2");
  const bool free = j.contains("stress_free");
  if (static_cast<int>(gamma) + static_cast<int>(imp) + static_cast<int>(free) != 1) {
    fail("boundary", "give exactly one of {gamma1, gamma2}, {Z1, Z2} or {stress_free: true}");
  }
  BoundarySpec b;
  if (gamma) {
    b.kind = BoundarySpec::Kind::Gamma;
    b.gamma1 = complex_value(j, "boundary", "gamma1");
    b.gamma2 = complex_value(j, "boundary", "gamma2");
  } else if (imp) {
    b.kind = BoundarySpec::Kind::Impedance;
    b.z1 = number(j, "boundary", "Z1");
    b.z2 = number(j, "boundary", "Z2");
  } else {
    if (!bool_or(j, "boundary", "stress_free", false)) {
      fail("boundary.stress_free", "must be true when present");
    }
    b.kind = BoundarySpec::Kind::StressFree;
  }
  return b;
}

EvalSpec parse_eval(const Json& j) {
  check_keys(j, "eval", {"real", "rect"});
  if (j.contains("real") == j.contains("rect")) {
    fail("eval", "give exactly one of real or rect");
  }
  EvalSpec e;
  if (j.contains("real")) {
    const Json& r = j.at("real");
    check_keys(r, "eval.real", {"start", "stop", "step"});
    e.kind = EvalSpec::Kind::Real;
    e.start = number(r, "eval.real", "start");
    e.stop = number(r, "eval.real", "stop");
    e.step = number(r, "eval.real", "step");
    require_positive(e.step, "eval.real.step");
    if (!(e.stop >= e.start)) {
      fail("eval.real", "empty grid (stop < start)");
    }
    if ((e.stop - e.start) / e.step > 1e8) {
      fail("eval.real.step", "grid exceeds 1e8 points");
    }
  } else {
    const Json& r = j.at("rect");
    check_keys(r, "eval.rect", {"re_min", "re_max", "im_min", "im_max", "n_re", "n_im"});
    e.kind = EvalSpec::Kind::Rect;
    e.rect = {number(r, "eval.rect", "re_min"), number(r, "eval.rect", "re_max"), number(r, "eval.rect", "im_min"),
              number(r, "eval.rect", "im_max")};
    e.n_re = count_or(r, "eval.rect", "n_re", 0);
    e.n_im = count_or(r, "eval.rect", "n_im", 0);
    if (e.n_re < 2 || e.n_im < 2) {
      fail("eval.rect", "n_re and n_im must be at least 2");
    }
    if (!(e.rect.re_max > e.rect.re_min) || !(e.rect.im_max > e.rect.im_min)) {
      fail("eval.rect", "empty rectangle");
    }
  }
  return e;
}

GridSpec parse_grid(const Json& j, const std::string& where) {
  GridSpec g;
  if (j.is_array()) {
    if (j.empty()) {
      fail(where, "empty value list");
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number() || !std::isfinite(j[i].get<double>())) {
        fail(where + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      g.values.push_back(j[i].get<double>());
    }
    return g;
  }
  check_keys(j, where, {"start", "stop", "n"});
  g.start = number(j, where, "start");
  g.stop = number(j, where, "stop");
  g.n = count_or(j, where, "n", 0);
  if (g.n < 2) {
    fail(where + ".n", "must be at least 2");
  }
  if (!(g.stop > g.start)) {
    fail(where, "stop must exceed start");
  }
  return g;
}

}  // namespace

Material MaterialSpec::build() const {
  return kind == Kind::Lame ? Material::from_lame(rho, lambda, mu) : Material::from_young_poisson(rho, young, poisson);
}

BoundaryParams BoundarySpec::build() const {
  switch (kind) {
    case Kind::Gamma:
      return {gamma1, gamma2};
    case Kind::Impedance:
      return BoundaryParams::impedance(z1, z2);
    case Kind::StressFree:
      break;
  }
  return BoundaryParams::stress_free();
}

std::vector<cplx> EvalSpec::points() const {
  std::vector<cplx> pts;
  if (kind == Kind::Real) {
    // Small slack so that stop is included when it is a whole number of steps.
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9)) + 1;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      pts.emplace_back(start + step * static_cast<double>(i), 0.0);
    }
    return pts;
  }
  pts.reserve(n_re * n_im);
  for (std::size_t j = 0; j < n_im; ++j) {
    const double y = rect.im_min + (rect.im_max - rect.im_min) * static_cast<double>(j) / static_cast<double>(n_im - 1);
    for (std::size_t i = 0; i < n_re; ++i) {
      const double x =
          rect.re_min + (rect.re_max - rect.re_min) * static_cast<double>(i) / static_cast<double>(n_re - 1);
      pts.emplace_back(x, y);
    }
  }
  return pts;
}

std::vector<double> GridSpec::resolve() const {
  if (!values.empty()) {
    return values;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? stop : start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

RunConfig parse_config(const Json& doc) {
  check_keys(doc, "", {"material", "boundary", "eval", "root", "scan", "verify", "existence_map", "output"});
  RunConfig cfg;
  if (!doc.contains("material")) {
    fail("material", "missing");
  }
  cfg.material = parse_material(doc.at("material"));
  if (doc.contains("boundary")) {
    cfg.boundary = parse_boundary(doc.at("boundary"));
  }
  if (doc.contains("eval")) {
    cfg.eval = parse_eval(doc.at("eval"));
  }
  if (doc.contains("root")) {
    const Json& r = doc.at("root");
    check_keys(r, "root", {"tol", "samples"});
    cfg.root.tol = number_or(r, "root", "tol", cfg.root.tol);
    cfg.root.samples = count_or(r, "root", "samples", cfg.root.samples);
  }
  require_positive(cfg.root.tol, "root.tol");
  if (cfg.root.samples < 2) {
    fail("root.samples", "must be at least 2");
  }
  if (doc.contains("scan")) {
    const Json& s = doc.at("scan");
    check_keys(s, "scan", {"re_extent", "im_floor", "im_ceiling", "tiles_re", "tiles_im", "samples_per_edge",
                           "max_depth", "interior_re", "interior_im", "axis_check", "axis_step", "axis_exclusion"});
    ScanOptions& o = cfg.scan.options;
    o.re_extent = number_or(s, "scan", "re_extent", o.re_extent);
    o.im_floor = number_or(s, "scan", "im_floor", o.im_floor);
    o.im_ceiling = number_or(s, "scan", "im_ceiling", o.im_ceiling);
    o.tiles_re = count_or(s, "scan", "tiles_re", o.tiles_re);
    o.tiles_im = count_or(s, "scan", "tiles_im", o.tiles_im);
    o.samples_per_edge = count_or(s, "scan", "samples_per_edge", o.samples_per_edge);
    o.max_depth = static_cast<int>(count_or(s, "scan", "max_depth", static_cast<std::size_t>(o.max_depth)));
    o.interior_re = count_or(s, "scan", "interior_re", o.interior_re);
    o.interior_im = count_or(s, "scan", "interior_im", o.interior_im);
    cfg.scan.axis_check = bool_or(s, "scan", "axis_check", cfg.scan.axis_check);
    cfg.scan.axis_step = number_or(s, "scan", "axis_step", cfg.scan.axis_step);
    cfg.scan.axis_exclusion = number_or(s, "scan", "axis_exclusion", cfg.scan.axis_exclusion);
    // An explicit zero means "not set" only when omitted; spelled out it is an error.
    for (const char* key : {"re_extent", "im_floor", "im_ceiling", "axis_step"}) {
      if (s.contains(key)) {
        require_positive(s.at(key).get<double>(), std::string("scan.") + key);
      }
    }
    if (cfg.scan.axis_exclusion < 0.0) {
      fail("scan.axis_exclusion", "must be non-negative");
    }
    if (o.tiles_re == 0 || o.tiles_im == 0) {
      fail("scan", "tile counts must be positive");
    }
    if (o.samples_per_edge < 64) {
      fail("scan.samples_per_edge", "must be at least 64");
    }
    if (o.interior_re < 2 || o.interior_im < 2) {
      fail("scan", "interior grid counts must be at least 2");
    }
  }
  if (doc.contains("verify")) {
    const Json& v = doc.at("verify");
    check_keys(v, "verify", {"seed", "real_samples", "complex_samples", "energy_samples", "symmetry_samples",
                             "oracle_samples", "key_samples", "hurwitz_region", "hurwitz_n_max"});
    VerifySpec& s = cfg.verify;
    s.seed = count_or(v, "verify", "seed", s.seed);
    s.real_samples = count_or(v, "verify", "real_samples", s.real_samples);
    s.complex_samples = count_or(v, "verify", "complex_samples", s.complex_samples);
    s.energy_samples = count_or(v, "verify", "energy_samples", s.energy_samples);
    s.symmetry_samples = count_or(v, "verify", "symmetry_samples", s.symmetry_samples);
    s.oracle_samples = count_or(v, "verify", "oracle_samples", s.oracle_samples);
    s.key_samples = count_or(v, "verify", "key_samples", s.key_samples);
    if (v.contains("hurwitz_region")) {
      const Json& r = v.at("hurwitz_region");
      check_keys(r, "verify.hurwitz_region", {"re_min", "re_max", "im_min", "im_max"});
      s.hurwitz_region = {number(r, "verify.hurwitz_region", "re_min"), number(r, "verify.hurwitz_region", "re_max"),
                          number(r, "verify.hurwitz_region", "im_min"), number(r, "verify.hurwitz_region", "im_max")};
      if (!(s.hurwitz_region.im_min > 0.0) || !(s.hurwitz_region.re_max > s.hurwitz_region.re_min) ||
          !(s.hurwitz_region.im_max > s.hurwitz_region.im_min)) {
        fail("verify.hurwitz_region", "must be a nonempty rectangle with im_min > 0");
      }
    }
    s.hurwitz_n_max = static_cast<int>(count_or(v, "verify", "hurwitz_n_max", static_cast<std::size_t>(s.hurwitz_n_max)));
    if (s.hurwitz_n_max < 2 || s.hurwitz_n_max > (1 << 30)) {
      fail("verify.hurwitz_n_max", "must be in [2, 2^30]");
    }
  }
  if (doc.contains("existence_map")) {
    const Json& e = doc.at("existence_map");
    check_keys(e, "existence_map", {"Z1", "Z2"});
    if (!e.contains("Z1") || !e.contains("Z2")) {
      fail("existence_map", "needs both Z1 and Z2 grids");
    }
    cfg.existence_map = ExistenceSpec{parse_grid(e.at("Z1"), "existence_map.Z1"),
                                      parse_grid(e.at("Z2"), "existence_map.Z2")};
  }
  if (doc.contains("output")) {
    const Json& o = doc.at("output");
    check_keys(o, "output", {"path", "report"});
    cfg.output.path = string_or(o, "output", "path");
    cfg.output.report = string_or(o, "output", "report");
  }
  return cfg;
}

namespace {

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json grid_json(const GridSpec& g) {
  if (!g.values.empty()) {
    Json a = Json::array();
    for (double v : g.values) {
      a.push_back(v);
    }
    return a;
  }
  return Json{{"start", g.start}, {"stop", g.stop}, {"n", g.n}};
}

}  // namespace

Json to_json(const RunConfig& cfg) {
  Json doc = Json::object();
  const MaterialSpec& m = cfg.material;
  if (m.kind == MaterialSpec::Kind::Lame) {
    doc["material"] = {{"rho", m.rho}, {"lambda", m.lambda}, {"mu", m.mu}};
  } else {
    doc["material"] = {{"rho", m.rho}, {"E", m.young}, {"nu", m.poisson}};
  }
  if (cfg.boundary) {
    const BoundarySpec& b = *cfg.boundary;
    switch (b.kind) {
      case BoundarySpec::Kind::Gamma:
        doc["boundary"] = {{"gamma1", complex_json(b.gamma1)}, {"gamma2", complex_json(b.gamma2)}};
        break;
      case BoundarySpec::Kind::Impedance:
        doc["boundary"] = {{"Z1", b.z1}, {"Z2", b.z2}};
        break;
      case BoundarySpec::Kind::StressFree:
        doc["boundary"] = {{"stress_free", true}};
        break;
    }
  }
  if (cfg.eval) {
    const EvalSpec& e = *cfg.eval;
    if (e.kind == EvalSpec::Kind::Real) {
      doc["eval"] = {{"real", {{"start", e.start}, {"stop", e.stop}, {"step", e.step}}}};
    } else {
      doc["eval"] = {{"rect",
                      {{"re_min", e.rect.re_min},
                       {"re_max", e.rect.re_max},
                       {"im_min", e.rect.im_min},
                       {"im_max", e.rect.im_max},
                       {"n_re", e.n_re},
                       {"n_im", e.n_im}}}};
    }
  }
  doc["root"] = {{"tol", cfg.root.tol}, {"samples", cfg.root.samples}};

  const ScanOptions& o = cfg.scan.options;
  Json scan = Json::object();
  // Zero stands for a material-dependent default and is left out so the
  // document reparses to the same configuration.
  if (o.re_extent > 0.0) scan["re_extent"] = o.re_extent;
  if (o.im_floor > 0.0) scan["im_floor"] = o.im_floor;
  if (o.im_ceiling > 0.0) scan["im_ceiling"] = o.im_ceiling;
  scan["tiles_re"] = o.tiles_re;
  scan["tiles_im"] = o.tiles_im;
  scan["samples_per_edge"] = o.samples_per_edge;
  scan["max_depth"] = o.max_depth;
  scan["interior_re"] = o.interior_re;
  scan["interior_im"] = o.interior_im;
  scan["axis_check"] = cfg.scan.axis_check;
  if (cfg.scan.axis_step > 0.0) scan["axis_step"] = cfg.scan.axis_step;
  scan["axis_exclusion"] = cfg.scan.axis_exclusion;
  doc["scan"] = scan;

  const VerifySpec& v = cfg.verify;
  doc["verify"] = {{"seed", v.seed},
                   {"real_samples", v.real_samples},
                   {"complex_samples", v.complex_samples},
                   {"energy_samples", v.energy_samples},
                   {"symmetry_samples", v.symmetry_samples},
                   {"oracle_samples", v.oracle_samples},
                   {"key_samples", v.key_samples},
                   {"hurwitz_region",
                    {{"re_min", v.hurwitz_region.re_min},
                     {"re_max", v.hurwitz_region.re_max},
                     {"im_min", v.hurwitz_region.im_min},
                     {"im_max", v.hurwitz_region.im_max}}},
                   {"hurwitz_n_max", v.hurwitz_n_max}};
  if (cfg.existence_map) {
    doc["existence_map"] = {{"Z1", grid_json(cfg.existence_map->z1)}, {"Z2", grid_json(cfg.existence_map->z2)}};
  }
  Json out = Json::object();
  if (!cfg.output.path.empty()) out["path"] = cfg.output.path;
  if (!cfg.output.report.empty()) out["report"] = cfg.output.report;
  doc["output"] = out;
  return doc;
}

void apply_override(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "': expected key.path=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    value = text;
  }
  Json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) {
      throw ConfigError("override '" + assignment + "': empty path component");
    }
    parts.push_back(part);
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    Json& next = (*node)[parts[i]];
    if (next.is_null()) {
      next = Json::object();
    }
    if (!next.is_object()) {
      throw ConfigError("override '" + assignment + "': '" + parts[i] + "' is not an object");
    }
    node = &next;
  }
  if (value.is_null()) {
    node->erase(parts.back());  // key=null removes the key
  } else {
    (*node)[parts.back()] = value;
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    throw ConfigError("config file '" + path + "' is not valid JSON");
  }
  return doc;
}

}  // namespace rayleigh::cli
