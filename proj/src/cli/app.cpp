#include "rayleigh/cli/app.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rayleigh/cli/commands.hpp"
#include "rayleigh/cli/output.hpp"

namespace rayleigh::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  f << text;
  if (!f) {
    throw Error("failed writing '" + path + "'");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secular-equation analysis of Rayleigh waves with impedance and perturbed boundary conditions",
               "rayleigh"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_path;
  std::string report_path;
  unsigned threads = 0;
  bool dump_config = false;

  app.add_option("command", command, "eval | root | scan | verify | existence-map")->required();
  app.add_option("--config,-c", config_path, "JSON configuration file")->required();
  app.add_option("--set,-s", overrides, "Override a config field, e.g. --set boundary.Z1=0.3 (value parsed as JSON)");
  app.add_option("--output,-o", output_path, "Primary output file (CSV for grid commands, JSON otherwise)");
  app.add_option("--report", report_path, "JSON report file for grid commands");
  app.add_option("--threads,-j", threads, "Worker threads; 0 uses every available core")->default_val(0);
  app.add_flag("--dump-config", dump_config, "Print the fully resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (!is_known_command(command)) {
      throw ConfigError("unknown command '" + command + "' (expected eval, root, scan, verify or existence-map)");
    }
    Json doc = load_json_file(config_path);
    for (const std::string& o : overrides) {
      apply_override(doc, o);
    }
    if (!output_path.empty()) {
      apply_override(doc, "output.path=" + Json(output_path).dump());
    }
    if (!report_path.empty()) {
      apply_override(doc, "output.report=" + Json(report_path).dump());
    }
    const RunConfig cfg = parse_config(doc);
    if (dump_config) {
      write_json(out, to_json(cfg));
      return kExitOk;
    }

    const CommandResult res = run_command(command, cfg, threads);
    const std::string report = to_json_text(res.report);
    if (res.has_csv) {
      if (cfg.output.path.empty()) {
        out << res.csv;
      } else {
        write_file(cfg.output.path, res.csv);
      }
      std::string report_file = cfg.output.report;
      if (report_file.empty() && !cfg.output.path.empty()) {
        report_file = cfg.output.path + ".json";
      }
      if (!report_file.empty()) {
        write_file(report_file, report);
      }
    } else {
      const std::string& target = cfg.output.report.empty() ? cfg.output.path : cfg.output.report;
      if (target.empty()) {
        out << report;
      } else {
        write_file(target, report);
      }
    }
    if (res.exit_code != kExitOk) {
      err << "rayleigh " << command << ": exit " << res.exit_code << "\n";
    }
    return res.exit_code;
  } catch (const ConstraintViolation& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RegimeError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace rayleigh::cli
