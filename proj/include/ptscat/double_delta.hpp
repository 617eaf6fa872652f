#pragma once

#include <complex>
#include <vector>

namespace ptscat {

/// (V1 + iV2) delta(x + a) + (V1 - iV2) delta(x - a), jump convention
/// psi'(x0+) - psi'(x0-) = lambda psi(x0).
struct DeltaPairSpec {
  double v1 = 0.0;
  double v2 = 0.0;
  double a = 1.0;
};

struct DeltaAmplitudes {
  std::complex<double> r_left;
  std::complex<double> r_right;
  std::complex<double> t;
};

/// D(k) = 2k^2 cos 2ka + 2k V1 sin 2ka + i[2k V1 cos 2ka + (V1^2 + V2^2 - 2k^2) sin 2ka].
/// Zeros are the poles of t(k): bound states at k = i kappa, spectral
/// singularities on the real axis.
std::complex<double> dd_denominator(const DeltaPairSpec& spec, std::complex<double> k);

/// dD/dk, analytic.
std::complex<double> dd_denominator_dk(const DeltaPairSpec& spec, std::complex<double> k);

/// Amplitudes at (possibly complex) k != 0, phased so that the outgoing
/// waves are referenced to the origin (same convention as the integrator).
DeltaAmplitudes dd_amplitudes(const DeltaPairSpec& spec, std::complex<double> k);

struct SingularityCandidate {
  int type = 0;                  // 1: V1 = 0 family, 2: E* = (V2^2 - V1^2)/2 family
  int order = -1;                // n of the type-1 family, -1 otherwise
  double seed_energy = 0.0;      // closed-form prediction
  std::complex<double> root_k;   // refined zero of D at the given parameters
  double energy = 0.0;           // Re(root_k)^2: location of the T(E) spike
  double tuned_v2 = 0.0;         // V2 for which the zero sits exactly on the real axis
  double tuned_energy = 0.0;     // the real-axis zero at tuned_v2, squared
  double tuned_residual = 0.0;   // |D| / scale at (tuned_v2, sqrt(tuned_energy))
};

/// Closed-form spectral-singularity seeds, each refined on the denominator
/// and kept only if the refined zero lies on the real axis within axis_tol * |k|.
std::vector<SingularityCandidate> dd_ss_predict(const DeltaPairSpec& spec, double axis_tol = 1e-3);

/// Bound-state energies (E < 0, ascending) from zeros of D(i kappa).
std::vector<double> dd_bound_states(const DeltaPairSpec& spec);

/// |D| normalisation used by residual thresholds.
double dd_scale(const DeltaPairSpec& spec, std::complex<double> k);

}  // namespace ptscat
