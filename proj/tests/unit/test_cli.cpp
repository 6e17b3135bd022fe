#include <sstream>
#include <string>

#include "doctest.h"

#include "rayleigh/cli/app.hpp"
#include "rayleigh/cli/commands.hpp"
#include "rayleigh/cli/config.hpp"
#include "rayleigh/cli/output.hpp"

using namespace rayleigh;
using namespace rayleigh::cli;

namespace {

Json base_doc() {
  return Json::parse(R"({
    "material": {"rho": 1.0, "lambda": 0.4, "mu": 0.8},
    "boundary": {"gamma1": [-0.35, 0.0], "gamma2": [-0.7, 0.0]},
    "eval": {"real": {"start": 0.0, "stop": 1.0, "step": 0.25}}
  })");
}

std::string error_of(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("number formatting keeps 17 significant digits") {
  CHECK(format_number(1.0) == "1.0000000000000000e+00");
  CHECK(format_number(-0.1) == "-1.0000000000000001e-01");
  CHECK(format_number(1.0 / 0.0) == "inf");
  CHECK(format_number(-1.0 / 0.0) == "-inf");
  CHECK(format_number(0.0 / 0.0) == "nan");
  const double x = 0.9194016867619661;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("config parsing fills defaults and builds the model") {
  const RunConfig cfg = parse_config(base_doc());
  CHECK(cfg.material.kind == MaterialSpec::Kind::Lame);
  REQUIRE(cfg.boundary.has_value());
  CHECK(cfg.boundary->kind == BoundarySpec::Kind::Gamma);
  CHECK(cfg.boundary->gamma2 == cplx(-0.7, 0.0));
  REQUIRE(cfg.eval.has_value());
  CHECK(cfg.eval->points().size() == 5);
  CHECK(cfg.verify.seed == 20240501u);
  CHECK_FALSE(cfg.existence_map.has_value());
  CHECK(cfg.material.build().mu() == doctest::Approx(0.8));

  Json yp = base_doc();
  yp["material"] = Json::parse(R"({"rho": 2.0, "E": 2.5, "nu": 0.25})");
  const Material m = parse_config(yp).material.build();
  CHECK(m.young() == doctest::Approx(2.5));
  CHECK(m.poisson() == doctest::Approx(0.25));
}

TEST_CASE("rectangle grids are ordered with the imaginary part varying slowest") {
  Json doc = base_doc();
  doc["eval"] = Json::parse(
      R"({"rect": {"re_min": 0, "re_max": 1, "im_min": 0, "im_max": 2, "n_re": 3, "n_im": 2}})");
  const auto pts = parse_config(doc).eval->points();
  REQUIRE(pts.size() == 6);
  CHECK(pts[0] == cplx(0.0, 0.0));
  CHECK(pts[2] == cplx(1.0, 0.0));
  CHECK(pts[3] == cplx(0.0, 2.0));
}

TEST_CASE("validation messages name the offending field") {
  Json doc = base_doc();
  doc["scan"] = Json::parse(R"({"tiles": 3})");
  CHECK(error_of(doc).find("tiles") != std::string::npos);

  doc = base_doc();
  doc["eval"]["real"]["stop"] = -1.0;
  CHECK(error_of(doc).find("eval.real") != std::string::npos);

  doc = base_doc();
  doc["material"]["mu"] = "soft";
  CHECK(error_of(doc).find("mu") != std::string::npos);

  doc = base_doc();
  doc["boundary"]["Z1"] = 0.5;
  CHECK_FALSE(error_of(doc).empty());

  doc = base_doc();
  doc.erase("material");
  CHECK(error_of(doc).find("material") != std::string::npos);

  doc = base_doc();
  doc["scan"] = Json::parse(R"({"im_floor": 0.0})");
  CHECK(error_of(doc).find("im_floor") != std::string::npos);
}

TEST_CASE("overrides set, replace and erase keys") {
  Json doc = base_doc();
  apply_override(doc, "scan.im_floor=0.25");
  apply_override(doc, "boundary={\"Z1\": 0.5, \"Z2\": -0.3}");
  apply_override(doc, "eval=null");
  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.scan.options.im_floor == 0.25);
  CHECK(cfg.boundary->kind == BoundarySpec::Kind::Impedance);
  CHECK(cfg.boundary->z2 == -0.3);
  CHECK_FALSE(cfg.eval.has_value());

  CHECK_THROWS_AS(apply_override(doc, "no_equals_sign"), ConfigError);
  // Non-JSON text is kept as a string; the type check happens at parse time.
  apply_override(doc, "output.path=out.csv");
  CHECK(parse_config(doc).output.path == "out.csv");
  apply_override(doc, "scan.im_floor=[1,");
  CHECK(error_of(doc).find("im_floor") != std::string::npos);
}

TEST_CASE("to_json reparses to the same document") {
  Json doc = base_doc();
  doc["existence_map"] = Json::parse(R"({"Z1": [0.0, 0.5], "Z2": {"start": -1, "stop": 1, "n": 3}})");
  const Json once = to_json(parse_config(doc));
  const Json twice = to_json(parse_config(once));
  CHECK(to_json_text(once) == to_json_text(twice));
}

TEST_CASE("commands map outcomes to exit codes") {
  RunConfig cfg = parse_config(base_doc());
  CHECK_THROWS_AS(run_command("root", cfg, 1), RegimeError);

  const CommandResult eval = run_command("eval", cfg, 2);
  CHECK(eval.exit_code == kExitOk);
  CHECK(eval.has_csv);
  CHECK(eval.csv.rfind("c_re,c_im,R_re,R_im,abs_R\n", 0) == 0);
  CHECK(eval.report["command"] == "eval");

  const CommandResult scan = run_command("scan", cfg, 2);
  CHECK(scan.exit_code == kExitOk);
  CHECK(scan.report["results"]["winding"] == 0);

  cfg.boundary->gamma1 = cplx(0.5, 0.0);
  cfg.boundary->gamma2 = cplx(0.5, 0.0);
  CHECK(run_command("scan", cfg, 2).exit_code == kExitWinding);
  cfg.scan.options.im_floor = 0.1482430403440907;
  CHECK(run_command("scan", cfg, 2).exit_code == kExitNumeric);

  cfg.boundary = BoundarySpec{};
  cfg.verify.complex_samples = 500;
  const CommandResult verify = run_command("verify", cfg, 2);
  CHECK(verify.exit_code == kExitOk);
  CHECK_FALSE(verify.has_csv);

  CHECK(is_known_command("existence-map"));
  CHECK_FALSE(is_known_command("frobnicate"));
}

TEST_CASE("command line front end") {
  std::ostringstream out, err;
  const char* argv[] = {"rayleigh", "scan"};
  CHECK(run_cli(2, const_cast<char**>(argv), out, err) == kExitValidation);
  const char* help[] = {"rayleigh", "--help"};
  std::ostringstream out2, err2;
  CHECK(run_cli(2, const_cast<char**>(help), out2, err2) == kExitOk);
  CHECK(out2.str().find("--config") != std::string::npos);
}
