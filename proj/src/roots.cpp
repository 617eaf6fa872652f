#include "ptscat/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace ptscat {

namespace {

double refine_bracket(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) return 0.5 * (a + b);
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

std::vector<double> real_roots(const std::function<double(double)>& f, double lo, double hi,
                               const RealRootOptions& opt) {
  return real_roots(f, f, lo, hi, opt);
}

std::vector<double> real_roots(const std::function<double(double)>& scan,
                               const std::function<double(double)>& f, double lo, double hi,
                               const RealRootOptions& opt) {
  std::vector<double> roots;
  if (!(hi > lo)) return roots;
  const int n = std::max(opt.min_points, static_cast<int>(std::ceil(opt.density * (hi - lo))));
  std::vector<double> xs(n + 1);
  std::vector<double> fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo + (hi - lo) * i / n;
    fs[i] = scan(xs[i]);
  }
  auto sign_change = [&](int i) { return (fs[i] < 0.0) != (fs[i + 1] < 0.0); };

  for (int i = 0; i < n; ++i) {
    if (fs[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (fs[i + 1] != 0.0 && sign_change(i))
      roots.push_back(refine_bracket(f, xs[i], xs[i + 1]));
  }
  if (fs[n] == 0.0) roots.push_back(xs[n]);

  for (int i = 1; i < n; ++i) {
    if (sign_change(i - 1) || sign_change(i) || fs[i] == 0.0) continue;
    const double here = std::abs(fs[i]);
    if (!(here < std::abs(fs[i - 1]) && here < std::abs(fs[i + 1]))) continue;
    const double s = fs[i] > 0.0 ? 1.0 : -1.0;
    auto g = [&](double x) { return s * f(x); };
    const auto m = boost::math::tools::brent_find_minima(g, xs[i - 1], xs[i + 1], 50);
    if (m.second >= 0.0) continue;
    roots.push_back(refine_bracket(f, xs[i - 1], m.first));
    roots.push_back(refine_bracket(f, m.first, xs[i + 1]));
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) { return std::abs(a - b) < 1e-12 * (hi - lo); }),
              roots.end());
  return roots;
}

std::optional<std::complex<double>> newton_complex(const ComplexFn& f, std::complex<double> z0,
                                                   const ComplexFn& df, double rel_tol,
                                                   int max_iter, double max_step) {
  std::complex<double> z = z0;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    const auto fz = f(z);
    if (fz == 0.0) return z;
    std::complex<double> d;
    if (df) {
      d = df(z);
    } else {
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      d = (f(z + h) - f(z - h)) / (2.0 * h);
    }
    if (d == 0.0 || !std::isfinite(std::abs(d))) return std::nullopt;
    auto step = fz / d;
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    last_step = std::abs(step);
    if (last_step <= rel_tol * std::max(1.0, std::abs(z))) return z;
  }
  // Stagnation at the noise floor of f still counts as converged.
  if (last_step <= 1e-7 * std::max(1.0, std::abs(z))) return z;
  return std::nullopt;
}

}  // namespace ptscat
