#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace ptscat {

struct RealRootOptions {
  double density = 400.0;  // grid points per unit length
  int min_points = 32;
};

/// All roots of a real function on [lo, hi]: sign changes on a uniform grid
/// refined by TOMS 748, plus close pairs that hide between grid points (a
/// local extremum of |f| that crosses zero when minimised).
std::vector<double> real_roots(const std::function<double(double)>& f, double lo, double hi,
                               const RealRootOptions& opt = {});

/// Same, with a cheap function for the grid and an accurate one for refinement.
/// Both must share sign structure away from the roots.
std::vector<double> real_roots(const std::function<double(double)>& scan,
                               const std::function<double(double)>& refine, double lo, double hi,
                               const RealRootOptions& opt = {});

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

/// Newton iteration on an analytic function. The derivative is taken from df
/// when given, otherwise from a central difference. Returns nullopt when the
/// iteration does not settle within max_iter.
std::optional<std::complex<double>> newton_complex(const ComplexFn& f, std::complex<double> z0,
                                                   const ComplexFn& df = {}, double rel_tol = 1e-13,
                                                   int max_iter = 60, double max_step = 0.5);

}  // namespace ptscat
