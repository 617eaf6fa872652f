#pragma once

#include <complex>

#include "ptscat/potential.hpp"

namespace ptscat {

/// psi and psi' at position x.
struct WaveState {
  cplx psi;
  cplx dpsi;
  double x = 0.0;
};

enum class Method { FixedRk4, AdaptiveRk };

struct SolverConfig {
  double match_radius = 0.0;   // L; 0 picks effective_support(spec, support_tol)
  double step = 1e-2;          // fixed step, or initial step for the adaptive method
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;      // relative to the magnitude of the initial state
  Method method = Method::AdaptiveRk;
  double support_tol = 1e-12;  // tail cut-off used when match_radius is 0
  double near_pole_ratio = 1e-6;
  long max_steps = 2'000'000;

  /// Throws DomainError if the tolerances or step are unusable.
  void validate() const;
};

/// Matching radius actually used for a spec: cfg.match_radius if set, else the
/// effective support (at least 1 for potentials that vanish everywhere).
double match_radius_for(const PotentialSpec& spec, const SolverConfig& cfg);

/// Integrates psi'' = (V(x) - k^2) psi from init.x to to_x (either direction).
///
/// The integrator stops at every breakpoint of the potential. Delta
/// interactions lying in the closed interval between init.x and to_x are
/// applied as exact jumps in psi'; the states at both ends are understood as
/// the limits from outside that interval.
///
/// Throws NumericError (carrying the position) on step-size underflow,
/// non-finite state, or when max_steps is exhausted.
WaveState propagate(const PotentialSpec& spec, cplx k, const WaveState& init, double to_x,
                    const SolverConfig& cfg);

}  // namespace ptscat
