#pragma once

#include <string>
#include <vector>

#include "ptscat/potential.hpp"
#include "ptscat/smatrix.hpp"

namespace ptscat {

/// A potential with one strength left free.
struct Family {
  enum class Free { V2, D };  // D: the d of a (c,d) Scarf II spec, c held fixed
  PotentialSpec base;
  Free free = Free::V2;

  PotentialSpec at(double value) const;
};

struct Bracket {
  double lo;
  double hi;
};

struct VbetaResult {
  std::vector<Bracket> brackets;  // one per transparent -> violated change, ascending
  std::vector<std::string> warnings;
};

struct VbetaOptions {
  double resolution = 1e-3;
  int coarse_points = 9;  // predicate samples before bisection, endpoints included
  ScanOptions scan;
};

/// Largest free-parameter value that keeps the family transparent on the energy
/// grid, bracketed by bisection. Throws DomainError unless the family is
/// transparent at range_lo and violated at range_hi.
VbetaResult vbeta_search(const Family& family, double range_lo, double range_hi,
                         const std::vector<double>& energies, const SolverConfig& cfg = {},
                         const VbetaOptions& opt = {});

struct SweepAxis {
  std::string name;
  std::vector<double> values;

  bool operator==(const SweepAxis&) const = default;
};

struct Provenance {
  std::string config_hash;
  std::string tool_version;

  bool operator==(const Provenance&) const = default;
};

/// Rectangular grid of results. Cells are stored row-major with the last axis
/// varying fastest; every cell carries one value per field.
struct SweepGrid {
  std::vector<SweepAxis> axes;
  std::vector<std::string> fields;
  std::vector<std::vector<double>> cells;
  Provenance provenance;

  std::size_t cell_count() const;
  /// Throws DomainError when the payload does not match the axes and fields.
  void validate() const;
  bool operator==(const SweepGrid&) const = default;
};

struct PlaneScanOptions {
  int nc = 64;
  int nd = 64;
  double tol = 1e-6;
  int spot_checks = 0;           // numeric verdicts on this many cells, spread by a fixed stride
  std::vector<double> energies;  // grid for spot checks; empty picks a log grid on [1e-4, 5]
  unsigned jobs = 1;
};

struct PlaneScanResult {
  SweepGrid grid;                  // fields: transparent, B0, contour_d, checked, numeric_transparent
  double max_boundary_offset = 0.0;  // worst distance, in cells, of the first violating cell edge from the contour
  int spot_checked = 0;
  int disagreements = 0;           // analytic vs numeric, outside the one-cell boundary band
  std::vector<std::string> warnings;
};

/// Transparency map of the (c,d) Scarf II plane from B(k=0) <= 2, with
/// optional numeric spot checks. Cells are sampled at their centres.
PlaneScanResult plane_scan(double c_lo, double c_hi, double d_lo, double d_hi,
                           const PlaneScanOptions& opt = {}, const SolverConfig& cfg = {});

/// n points from lo to hi, geometrically spaced.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace ptscat
