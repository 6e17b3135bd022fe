#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rayleigh/error.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/roots.hpp"
#include "rayleigh/secular.hpp"
#include "rayleigh/winding.hpp"

namespace rayleigh::cli {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration; the message names the field.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct MaterialSpec {
  enum class Kind { Lame, YoungPoisson } kind = Kind::Lame;
  double rho = 1.0;
  double lambda = 0.0;
  double mu = 0.0;
  double young = 0.0;
  double poisson = 0.0;

  Material build() const;
};

struct BoundarySpec {
  enum class Kind { Gamma, Impedance, StressFree } kind = Kind::StressFree;
  cplx gamma1{};
  cplx gamma2{};
  double z1 = 0.0;
  double z2 = 0.0;

  BoundaryParams build() const;
};

/// c-grid for `eval`: a real interval or a complex rectangle.
struct EvalSpec {
  enum class Kind { Real, Rect } kind = Kind::Real;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  Rect rect{};
  std::size_t n_re = 0;
  std::size_t n_im = 0;

  std::vector<cplx> points() const;
};

/// Either an explicit value list or `n` equispaced points on [start, stop].
struct GridSpec {
  std::vector<double> values;
  double start = 0.0;
  double stop = 0.0;
  std::size_t n = 0;

  std::vector<double> resolve() const;
};

struct ScanSpec {
  ScanOptions options{};        ///< threads is taken from the command line
  bool axis_check = true;       ///< 1-D real-axis sampling for the perturbed regime
  double axis_step = 0.0;       ///< 0 selects 1e-4·c2
  double axis_exclusion = 1e-6;
};

struct VerifySpec {
  std::uint64_t seed = 20240501;
  std::size_t real_samples = 1000;
  std::size_t complex_samples = 10000;
  std::size_t energy_samples = 20;
  std::size_t symmetry_samples = 1000;
  std::size_t oracle_samples = 1000;
  std::size_t key_samples = 200;
  Rect hurwitz_region{-2.0, 2.0, 0.5, 2.0};
  int hurwitz_n_max = 2048;
};

struct ExistenceSpec {
  GridSpec z1;
  GridSpec z2;
};

struct OutputSpec {
  std::string path;    ///< empty: standard output
  std::string report;  ///< JSON report next to grid data; empty: path + ".json" when path is set
};

struct RunConfig {
  MaterialSpec material;
  std::optional<BoundarySpec> boundary;
  std::optional<EvalSpec> eval;
  RootOptions root{};
  ScanSpec scan{};
  VerifySpec verify{};
  std::optional<ExistenceSpec> existence_map;
  OutputSpec output{};
};

/// Strict parse: unknown keys and missing or mistyped fields are ConfigErrors.
RunConfig parse_config(const Json& doc);

/// Fully resolved document including every default; parse_config accepts it back.
Json to_json(const RunConfig& cfg);

/// Applies `a.b.c=value` to the raw document. The value is parsed as JSON,
/// falling back to a plain string.
void apply_override(Json& doc, const std::string& assignment);

Json load_json_file(const std::string& path);

}  // namespace rayleigh::cli
