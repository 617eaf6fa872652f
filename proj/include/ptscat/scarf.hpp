#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace ptscat {

/// Closed-form results for the complex Scarf II potential
/// V(x) = -V1 sech^2 x + i V2 sech x tanh x (units 2m = hbar^2 = 1).

struct ScarfParameters {
  double a = 0.0;
  double b = 0.0;
  bool valid_domain = false;  // |V2| <= V1 + 1/4
};

/// The (a, b) pair of the unbroken domain. Throws DomainError when either
/// inner radical is negative.
ScarfParameters scarf_parameters(double v1, double v2);

/// V1 + 1/4: the strength |V2| at which the real spectrum coalesces.
inline double exceptional_strength(double v1) { return v1 + 0.25; }

enum class Branch { N, M };

struct BoundLevel {
  double energy;
  Branch branch;
  int index;
  /// Set for the m = 0 level of the m-branch: numerically it is never a pole
  /// of the transmission amplitude (checked against imaginary-axis scans).
  bool flagged;
};

/// Real discrete levels of both branches, sorted by energy. Flagged levels
/// are kept so callers can compare them with numeric pole scans.
std::vector<BoundLevel> scarf_bound_spectrum(double v1, double v2);

/// Only the levels that are actual poles (flagged ones dropped), ascending.
std::vector<double> scarf_bound_energies(double v1, double v2);

struct CdStrengths {
  double v1;
  double v2;   // always >= 0
  double gap;  // v2 - v1 = 4 d^2 + 1/4, so v2 - (v1 + 1/4) = 4 d^2
};

/// Broken-domain map (c, d) -> (V1, V2).
CdStrengths cd_parametrization(double c, double d);

/// Inverse map, defined for V2 >= V1 + 1/4 and V1 + V2 + 1/4 >= 0; returns the
/// representative with c >= -1/2 and d >= 0.
std::pair<double, double> cd_from_strengths(double v1, double v2);

/// B(k) = 2 |cos(pi a) sin(pi b)| sech(pi k) in the unbroken domain.
double scarf_beta_unbroken(double v1, double v2, double k);

/// (r_left / t, r_right / t) in the (c, d) parametrization; k > 0.
std::pair<std::complex<double>, std::complex<double>> scarf_rt_ratios(double c, double d, double k);

struct Transmission {
  double value;     // +inf when divergent
  bool divergent;   // spectral singularity: integer c and k = d
};

/// T(k) in the (c, d) parametrization, evaluated in log space.
Transmission scarf_transmission(double c, double d, double k);

/// B(k) = (cos 2 pi c + cosh 2 pi d) sech(pi k); k = 0 allowed.
double scarf_beta_broken(double c, double d, double k);

/// Largest d at which the (c, d) potential stays transparent.
double transparency_contour(double c);

struct CriticalStrengths {
  double v1;       // V1(c) on the transparency contour
  double v_alpha;  // v1 + 1/4
  double v_beta;   // |V2(c)| on the contour
};

CriticalStrengths critical_strengths(double c);

}  // namespace ptscat
