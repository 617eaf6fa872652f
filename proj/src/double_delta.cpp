#include "ptscat/double_delta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ptscat/error.hpp"
#include "ptscat/roots.hpp"

namespace ptscat {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

cplx denominator(double v1, double v2, double a, cplx k) {
  const cplx c = std::cos(2.0 * k * a);
  const cplx s = std::sin(2.0 * k * a);
  return 2.0 * k * k * c + 2.0 * k * v1 * s + kI * (2.0 * k * v1 * c + (v1 * v1 + v2 * v2 - 2.0 * k * k) * s);
}

cplx denominator_dk(double v1, double v2, double a, cplx k) {
  const cplx c = std::cos(2.0 * k * a);
  const cplx s = std::sin(2.0 * k * a);
  const cplx re_part = 4.0 * k * c - 4.0 * a * k * k * s + 2.0 * v1 * s + 4.0 * a * k * v1 * c;
  const cplx im_part = 2.0 * v1 * c - 4.0 * a * k * v1 * s - 4.0 * k * s +
                       2.0 * a * (v1 * v1 + v2 * v2 - 2.0 * k * k) * c;
  return re_part + kI * im_part;
}

// Reflection for incidence from the side of the (V1 - i v2) delta, as printed
// with the sign of v2 as given.
cplx reflection_numerator(double v1, double v2, double a, cplx k) {
  return kI * std::exp(-2.0 * kI * k * a) *
         ((2.0 * k * v2 - v1 * v1 - v2 * v2) * std::sin(2.0 * k * a) - 2.0 * k * v1 * std::cos(2.0 * k * a));
}

struct Tuned {
  double k;
  double v2;
  double residual;
};

// Newton on (k, V2) in R^2 so that D(k; V1, V2) = 0 with k real.
Tuned tune_to_axis(const DeltaPairSpec& spec, double k0) {
  double k = k0;
  double v2 = spec.v2;
  for (int it = 0; it < 80; ++it) {
    const cplx f = denominator(spec.v1, v2, spec.a, k);
    const cplx dk = denominator_dk(spec.v1, v2, spec.a, k);
    const cplx dv = kI * 2.0 * v2 * std::sin(2.0 * k * spec.a);
    const double det = dk.real() * dv.imag() - dv.real() * dk.imag();
    if (det == 0.0 || !std::isfinite(det)) break;
    const double step_k = (f.real() * dv.imag() - dv.real() * f.imag()) / det;
    const double step_v = (dk.real() * f.imag() - f.real() * dk.imag()) / det;
    k -= step_k;
    v2 -= step_v;
    if (std::abs(step_k) + std::abs(step_v) < 1e-15 * (std::abs(k) + std::abs(v2))) break;
  }
  const DeltaPairSpec tuned{spec.v1, v2, spec.a};
  return {k, v2, std::abs(denominator(spec.v1, v2, spec.a, k)) / dd_scale(tuned, k)};
}

}  // namespace

double dd_scale(const DeltaPairSpec& spec, std::complex<double> k) {
  const double ak = std::abs(k);
  return 2.0 * ak * ak + 2.0 * ak * std::abs(spec.v1) + spec.v1 * spec.v1 + spec.v2 * spec.v2;
}

std::complex<double> dd_denominator(const DeltaPairSpec& spec, std::complex<double> k) {
  return denominator(spec.v1, spec.v2, spec.a, k);
}

std::complex<double> dd_denominator_dk(const DeltaPairSpec& spec, std::complex<double> k) {
  return denominator_dk(spec.v1, spec.v2, spec.a, k);
}

DeltaAmplitudes dd_amplitudes(const DeltaPairSpec& spec, std::complex<double> k) {
  if (k == 0.0) throw DomainError("double-delta amplitudes undefined at k = 0");
  const cplx den = dd_denominator(spec, k);
  // D is even in V2, so mirroring the potential only flips the numerator.
  return {reflection_numerator(spec.v1, -spec.v2, spec.a, k) / den,
          reflection_numerator(spec.v1, spec.v2, spec.a, k) / den,
          2.0 * k * k * std::exp(-2.0 * kI * k * spec.a) / den};
}

std::vector<SingularityCandidate> dd_ss_predict(const DeltaPairSpec& spec, double axis_tol) {
  using std::numbers::pi;
  std::vector<SingularityCandidate> seeds;
  const double av2 = std::abs(spec.v2);

  if (spec.v1 == 0.0 && av2 > 0.0) {
    const double n_real = (av2 * 2.0 * std::numbers::sqrt2 * spec.a / pi - 1.0) / 2.0;
    const double n = std::round(n_real);
    if (n >= 0.0 && std::abs(n_real - n) < 0.05) {
      SingularityCandidate c;
      c.type = 1;
      c.order = static_cast<int>(n);
      c.seed_energy = pi * pi * (2 * n + 1) * (2 * n + 1) / (16.0 * spec.a * spec.a);
      seeds.push_back(c);
    }
  }
  if (av2 > std::abs(spec.v1)) {
    SingularityCandidate c;
    c.type = 2;
    c.seed_energy = 0.5 * (spec.v2 * spec.v2 - spec.v1 * spec.v1);
    seeds.push_back(c);
  }

  std::vector<SingularityCandidate> out;
  auto f = [&](cplx k) { return dd_denominator(spec, k); };
  auto df = [&](cplx k) { return dd_denominator_dk(spec, k); };
  for (auto c : seeds) {
    const auto root = newton_complex(f, std::sqrt(c.seed_energy), df, 1e-15, 100, 0.25);
    if (!root || root->real() <= 0.0) continue;
    if (std::abs(root->imag()) > axis_tol * std::abs(*root)) continue;
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const SingularityCandidate& o) {
      return std::abs(o.root_k - *root) < 1e-8 * std::abs(*root);
    });
    if (duplicate) continue;
    c.root_k = *root;
    c.energy = root->real() * root->real();
    const auto tuned = tune_to_axis(spec, root->real());
    c.tuned_v2 = tuned.v2;
    c.tuned_energy = tuned.k * tuned.k;
    c.tuned_residual = tuned.residual;
    out.push_back(c);
  }
  return out;
}

std::vector<double> dd_bound_states(const DeltaPairSpec& spec) {
  // On the imaginary axis D is real; divide out the exponential growth.
  auto g = [&](double kappa) {
    const cplx k(0.0, kappa);
    return dd_denominator(spec, k).real() / (std::exp(2.0 * kappa * spec.a) * (1.0 + kappa * kappa));
  };
  const double hi = std::abs(spec.v1) + std::abs(spec.v2) + 1.0 / spec.a;
  std::vector<double> energies;
  for (double kappa : real_roots(g, 1e-4, hi)) energies.push_back(-kappa * kappa);
  std::sort(energies.begin(), energies.end());
  return energies;
}

}  // namespace ptscat
