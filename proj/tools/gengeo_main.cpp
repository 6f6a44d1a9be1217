// gengeo: coordinate-chart computations for generalized almost complex
// structures on TM + T*M.  Subcommands:
//   check      classify a structure and evaluate its integrability residuals
//   verify     run the full verification sweep on the builtin six-sphere
//   scan       sweep spherical coefficient directions for vanishing residuals
//   export-s6  print the builtin six-sphere geometry as a config file

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "gengeo/cli.hpp"

namespace {

int emit(const gengeo::CliResult& result, const std::string& out_path) {
  std::cout << result.report;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "gengeo: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << result.report;
  }
  return result.exit_code;
}

void add_common(CLI::App* cmd, gengeo::RunConfig& cfg) {
  cmd->add_option("--chart", cfg.chart, "builtin 's6' or a geometry file path");
  cmd->add_option("--seed", cfg.seed, "sample seed");
  cmd->add_option("--out", cfg.out, "also write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized geometry engine"};
  app.require_subcommand(1);

  gengeo::RunConfig cfg;

  CLI::App* check = app.add_subcommand("check", "classify a structure and its residuals");
  add_common(check, cfg);
  check->add_option("--structure", cfg.structure,
                    "jg | jomega | jlambda[:lambda=-1] | spherical:a=..,b=..,c=..");
  check->add_option("--points", cfg.points, "sample point count");
  check->add_option("--tol-vanish", cfg.tol_vanish, "scaled vanishing threshold");
  check->add_option("--tol-nonvanish", cfg.tol_nonvanish, "absolute nonvanishing threshold");

  CLI::App* verify = app.add_subcommand("verify", "full verification sweep on the six-sphere");
  add_common(verify, cfg);

  CLI::App* scan = app.add_subcommand("scan", "sweep spherical coefficient directions");
  add_common(scan, cfg);
  scan->add_option("--directions", cfg.directions, "coefficient directions on the unit sphere");
  scan->add_option("--points", cfg.points, "sample points per direction");
  scan->add_option("--tol-nonvanish", cfg.tol_nonvanish, "absolute nonvanishing threshold");

  CLI::App* exp = app.add_subcommand("export-s6", "print the builtin geometry as a config file");
  exp->add_option("--out", cfg.out, "also write the config to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return emit(gengeo::run_check(cfg), cfg.out);
    if (verify->parsed()) return emit(gengeo::run_verify(cfg), cfg.out);
    if (scan->parsed()) return emit(gengeo::run_scan(cfg), cfg.out);
    if (exp->parsed()) return emit(gengeo::run_export(), cfg.out);
  } catch (const gengeo::ConfigError& e) {
    std::cerr << "gengeo: " << e.what() << "\n";
    return 2;
  } catch (const gengeo::ParseError& e) {
    std::cerr << "gengeo: " << e.what() << "\n";
    return 2;
  } catch (const gengeo::DomainError& e) {
    std::cerr << "gengeo: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gengeo: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
