#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptscat/integrator.hpp"
#include "ptscat/potential.hpp"

namespace ptscat {

/// Scattering amplitudes at one momentum. Reflections are referenced to the
/// origin; t is taken from left injection, t_right from right injection.
struct ScatteringData {
  cplx k;
  cplx energy;
  cplx r_left;
  cplx r_right;
  cplx t;
  cplx t_right;
  cplx denominator;   // i k f(-L) + f'(-L) of left injection; zero at a pole of t
  bool near_pole = false;

  double R_left() const { return std::norm(r_left); }
  double R_right() const { return std::norm(r_right); }
  double T() const { return std::norm(t); }
};

struct SMatrixAnalysis {
  cplx s_plus;
  cplx s_minus;
  double beta = 0.0;  // |r_left / t - r_right / t|
  cplx det_s;         // r_left r_right - t^2 = s_plus s_minus
  bool unimodular = false;
};

struct EnergyInterval {
  double lo;
  double hi;
};

struct GridRow {
  double E;
  cplx r_left;
  cplx r_right;
  cplx t;
  double abs_s_plus;
  double abs_s_minus;
  double beta;
  double detS_abs;
  bool unimodular;
  bool near_pole;
};

struct TransparencyReport {
  std::vector<GridRow> grid;
  bool transparent = false;
  std::vector<EnergyInterval> violation_intervals;
  std::optional<double> crossover_E_s;
  std::vector<double> near_pole_energies;
  std::vector<std::string> warnings;
};

struct ScanOptions {
  double tol = 1e-6;              // unimodularity tolerance on ||s|| - 1|
  double jump_threshold = 0.05;   // minimum jump in both |s+| and |s-| at E_s
  unsigned jobs = 1;
};

/// Amplitudes by integrating from +L (left injection) and from -L (right
/// injection) with C = 1.
ScatteringData scatter(const PotentialSpec& spec, cplx k, const SolverConfig& cfg = {});

/// Left-injection denominator D(k) = i k f(-L) + f'(-L) alone (one propagation).
cplx transmission_denominator(const PotentialSpec& spec, cplx k, const SolverConfig& cfg = {});

/// Eigenvalues of the two-port S-matrix (principal square root).
SMatrixAnalysis smatrix_analysis(const ScatteringData& data, double tol = 1e-6);

/// Scans the energy grid; violation intervals are maximal runs of
/// non-unimodular points; near-pole points are excluded from the verdict.
TransparencyReport transparency_scan(const PotentialSpec& spec, const std::vector<double>& energies,
                                     const SolverConfig& cfg = {}, const ScanOptions& opt = {});

/// n energies, uniformly spaced on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace ptscat
