#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ptscat/integrator.hpp"
#include "ptscat/potential.hpp"

namespace ptscat {

enum class Axis { RealK, ImaginaryK };

/// Where D(k) comes from. Auto uses the closed form for double deltas and the
/// integrator for everything else.
enum class DenominatorSource { Auto, Analytic, Integrator };

struct ProbeConfig {
  SolverConfig solver = [] {
    SolverConfig s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-14;
    return s;
  }();
  double density = 400.0;          // scan points per unit kappa or k
  double scan_rel_tol = 1e-8;      // integrator tolerance on the scan grid; roots use solver.rel_tol
  double residual_factor = 1e-9;   // accept |D(k0)| < residual_factor * median |D| on the scan
  double axis_tol = 1e-6;          // real-axis roots need |Im k| <= axis_tol * |k|
  double kappa_min = 1e-3;         // lower end of imaginary-axis scans used internally
  DenominatorSource source = DenominatorSource::Auto;
};

struct AxisScan {
  std::vector<cplx> roots;  // ascending along the axis
  double median_abs = 0.0;  // median |D| over the scan grid (the residual reference)
  std::vector<std::string> warnings;
};

/// Zeros of the transmission denominator along one axis. For the imaginary
/// axis [lo, hi] is a kappa range and the roots are i*kappa; D is real there
/// for PT-symmetric potentials, so roots are found from sign changes. On the
/// real axis, local minima of |D| seed complex Newton and only roots within
/// axis_tol of the axis are kept.
AxisScan axis_pole_scan(const PotentialSpec& spec, Axis axis, double lo, double hi,
                        const ProbeConfig& cfg = {});

struct ComplexRect {
  double re_lo, re_hi;
  double im_lo, im_hi;
};

struct ComplexPoleOptions {
  int nx = 4;
  int ny = 4;
  int max_depth = 4;         // cell subdivisions before giving up
  int max_edge_points = 512; // per cell edge
};

struct ComplexPoleResult {
  std::vector<cplx> roots;
  int winding_total = 0;                 // sum of cell counts over resolved cells
  std::vector<ComplexRect> unresolved;   // cells whose count or root could not be settled
  std::vector<std::string> warnings;
};

/// Argument-principle count of zeros of D per cell with Newton refinement.
ComplexPoleResult complex_pole_search(const PotentialSpec& spec, const ComplexRect& rect,
                                      const ComplexPoleOptions& opt = {},
                                      const ProbeConfig& cfg = {});

struct EpEstimate {
  double v_alpha;   // midpoint of the bracket
  double lo;        // pole count still at its starting value
  double hi;        // pole count dropped
  int count_lo;     // imaginary-axis poles at the start of the range
};

/// V2 at which imaginary-axis poles coalesce and leave the axis. Bisects on
/// "pole count at V2 >= pole count at range_lo" until the bracket is narrower
/// than resolution. Throws DomainError if there is no pole at range_lo or the
/// count does not drop by range_hi.
EpEstimate exceptional_point(const PotentialSpec& family, double range_lo, double range_hi,
                             double resolution = 1e-3, const ProbeConfig& cfg = {});

/// Upper kappa bound for bound-state scans of a spec.
double kappa_ceiling(const PotentialSpec& spec);

struct SpectralReport {
  std::vector<double> bound_states;        // E < 0, ascending
  std::vector<double> singularities;       // E* > 0, ascending
  std::vector<std::pair<cplx, cplx>> complex_poles;  // conjugate E pairs
  std::optional<EpEstimate> ep_estimate;
  std::vector<std::string> warnings;
};

struct SpectrumRequest {
  double k_max = 5.0;                    // real-axis scan range (0, k_max]
  std::optional<ComplexRect> rect;       // complex-plane search, skipped when absent
  std::optional<std::pair<double, double>> ep_range;
  double ep_resolution = 1e-3;
};

SpectralReport spectral_report(const PotentialSpec& spec, const SpectrumRequest& req,
                               const ProbeConfig& cfg = {});

/// D(k) as used by the probe (scaled by a nonvanishing factor for the
/// integrator source, so only its zeros are meaningful).
cplx probe_denominator(const PotentialSpec& spec, cplx k, const ProbeConfig& cfg = {});

}  // namespace ptscat
