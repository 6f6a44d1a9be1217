#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "gengeo/genbundle.hpp"
#include "gengeo/sphere6.hpp"

namespace gengeo {

// Bad user input: file syntax, unknown keys, inconsistent knobs.  Distinct
// from DomainError (valid input that leaves the numeric domain) so the CLI
// can map them to different exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runtime knobs shared by the CLI subcommands.
struct RunConfig {
  std::string chart = "s6";  // "s6" or a path to a geometry file
  std::string structure = "spherical:a=0.6,b=0,c=0.8";
  std::uint64_t seed = 1;
  int points = 100;
  double tol_vanish = 1e-9;
  double tol_nonvanish = 1e-3;
  int directions = 200;
  std::string out;  // report file; empty writes to stdout only
};

void validate(const RunConfig& cfg);  // throws ConfigError

struct LoadedGeometry {
  ChartPtr chart;
  std::optional<MetricField> metric;
  std::optional<EndoField> j;
  bool builtin_s6 = false;
};

// chart_spec is "s6" for the builtin round sphere, or a path to a geometry
// file.  File format (see README): '#' comments, [section] headers, key =
// value with indented continuation lines; matrix values list rows separated
// by ';' and entries by ','; entries are expressions in the chart
// coordinates.  Sections: [chart] (name, coords, domain, embedding),
// [metric] (g, ginv), [endo.J] (rows, or builtin = cross with optional
// row1/col1 fixture checks).
LoadedGeometry load_geometry(const std::string& chart_spec);
LoadedGeometry parse_geometry_text(const std::string& text, const std::string& origin);

// Structure specs: "jg", "jomega", "jlambda" or "jlambda:lambda=-1",
// "spherical:a=...,b=...,c=..." where a, b, c are expressions in the chart
// coordinates.  seed feeds the sample points of the spherical norm check.
BlockEndo build_structure(const std::string& spec, const LoadedGeometry& geo,
                          std::uint64_t seed = 1);

// The builtin round sphere as a loadable geometry file.
std::string export_sphere6_config();

}  // namespace gengeo
