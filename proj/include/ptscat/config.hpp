#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ptscat/integrator.hpp"
#include "ptscat/potential.hpp"

namespace ptscat {

enum class Spacing { Linear, Log };
enum class Format { Csv, Json };

struct GridConfig {
  double emin = 0.01;
  double emax = 5.0;
  int n_energies = 200;
  Spacing spacing = Spacing::Linear;
  double tol = 1e-6;
  unsigned jobs = 1;
};

struct OutputConfig {
  Format format = Format::Csv;
  std::string path;  // empty: standard output
};

/// Everything a run needs. Defaults describe a Scarf II well (V1 = 1, V2 = 0.5)
/// scanned on E in [0.01, 5].
struct RunConfig {
  PotentialSpec potential = PotentialSpec::scarf(1.0, 0.5);
  SolverConfig solver;
  GridConfig grid;
  OutputConfig output;

  /// Energy grid described by the [grid] section.
  std::vector<double> energies() const;
  void validate() const;
};

/// Rebuilds a spec through its model's factory: validates the geometry and
/// recomputes (V1, V2) from (c, d) for the ScarfIIcd model.
PotentialSpec make_potential(const PotentialSpec& raw);

/// Parses INI text with sections [potential], [solver], [grid], [output].
/// Unknown sections or keys are rejected with DomainError.
RunConfig parse_config(std::string_view text);

/// Reads and parses a config file; IoError if it cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical INI rendering of the resolved configuration (fixed key order,
/// 17 significant digits). parse_config(canonical_text(c)) reproduces c.
std::string canonical_text(const RunConfig& cfg);

/// 64-bit FNV-1a of text, as 16 hex digits.
std::string text_hash(std::string_view text);

/// Hash of canonical_text plus command-specific text. The worker count and
/// output path are left out so they do not change the provenance.
std::string config_hash(const RunConfig& cfg, std::string_view extra = {});

std::string_view to_string(Format f);
Format format_from_string(std::string_view name);
std::string_view to_string(Method m);
Method method_from_string(std::string_view name);
std::string_view to_string(Spacing s);
Spacing spacing_from_string(std::string_view name);

}  // namespace ptscat
