#include "ptscat/scarf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ptscat/error.hpp"

namespace ptscat {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi x) and cos(pi x) with exact zeros at integers / half-integers, so that
// periodicity in c and the integer-c singularity survive rounding.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r == std::round(r)) return 0.0;
  return std::sin(kPi * r);
}

double cos_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r - std::floor(r) == 0.5) return 0.0;
  return std::cos(kPi * r);
}

// log(sinh^2 z) for z != 0.
double log_sinh2(double z) {
  const double a = std::abs(z);
  if (a < 20.0) return 2.0 * std::log(std::sinh(a));
  return 2.0 * (a - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * a)));
}

double log_cosh2(double z) {
  const double a = std::abs(z);
  if (a < 20.0) return 2.0 * std::log(std::cosh(a));
  return 2.0 * (a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a)));
}

// log(s2 + sinh^2 z); -inf when both vanish.
double log_sum_sinh2(double s2, double z) {
  if (z == 0.0) return s2 > 0.0 ? std::log(s2) : -std::numeric_limits<double>::infinity();
  const double ls = log_sinh2(z);
  if (s2 <= 0.0) return ls;
  const double lo = std::min(ls, std::log(s2));
  const double hi = std::max(ls, std::log(s2));
  return hi + std::log1p(std::exp(lo - hi));
}

void require_positive_k(double k) {
  if (!(k > 0.0)) throw DomainError("evaluate limit not supported; k must be positive");
}

}  // namespace

ScarfParameters scarf_parameters(double v1, double v2) {
  const double av2 = std::abs(v2);
  const double plus = v1 + av2 + 0.25;
  const double minus = v1 - av2 + 0.25;
  if (plus < 0.0 || minus < 0.0)
    throw DomainError("broken-domain parameters; use (c,d) parametrization");
  const double sp = std::sqrt(plus);
  const double sm = std::sqrt(minus);
  return {0.5 * (sp + sm - 1.0), 0.5 * (sp - sm), true};
}

std::vector<BoundLevel> scarf_bound_spectrum(double v1, double v2) {
  ScarfParameters p;
  try {
    p = scarf_parameters(v1, v2);
  } catch (const DomainError&) {
    throw DomainError("broken PT-symmetric domain: no real discrete spectrum; "
                      "search complex poles with the spectral probe instead");
  }
  std::vector<BoundLevel> levels;
  for (int n = 0; n < p.a; ++n) levels.push_back({-(n - p.a) * (n - p.a), Branch::N, n, false});
  for (int m = 0; m < p.b + 0.5; ++m) {
    const double kappa = m - 0.5 - p.b;
    levels.push_back({-kappa * kappa, Branch::M, m, m == 0});
  }
  std::sort(levels.begin(), levels.end(),
            [](const BoundLevel& x, const BoundLevel& y) { return x.energy < y.energy; });
  return levels;
}

std::vector<double> scarf_bound_energies(double v1, double v2) {
  std::vector<double> out;
  for (const auto& l : scarf_bound_spectrum(v1, v2))
    if (!l.flagged) out.push_back(l.energy);
  return out;
}

CdStrengths cd_parametrization(double c, double d) {
  const double s = (c + 0.5) * (c + 0.5);
  const double v1 = 2.0 * (s - d * d) - 0.25;
  const double v2 = 2.0 * (s + d * d);
  return {v1, v2, v2 - v1};
}

std::pair<double, double> cd_from_strengths(double v1, double v2) {
  const double av2 = std::abs(v2);
  const double sum = v1 + av2 + 0.25;
  const double gap = av2 - v1 - 0.25;
  if (sum < 0.0 || gap < 0.0)
    throw DomainError("(c,d) parametrization needs |V2| >= V1 + 1/4 and V1 + |V2| + 1/4 >= 0");
  return {0.5 * std::sqrt(sum) - 0.5, 0.5 * std::sqrt(gap)};
}

double scarf_beta_unbroken(double v1, double v2, double k) {
  if (k < 0.0) throw DomainError("k must be non-negative");
  const auto p = scarf_parameters(v1, v2);
  return 2.0 * std::abs(cos_pi(p.a) * sin_pi(p.b)) / std::cosh(kPi * k);
}

std::pair<std::complex<double>, std::complex<double>> scarf_rt_ratios(double c, double d, double k) {
  require_positive_k(k);
  const double c2 = cos_pi(2.0 * c);
  const double ch = std::cosh(2.0 * kPi * d);
  const double even = (c2 + ch) / (2.0 * std::cosh(kPi * k));
  const double odd = (ch - c2) / (2.0 * std::sinh(kPi * k));
  const std::complex<double> minus_i(0.0, -1.0);
  return {minus_i * (-even + odd), minus_i * (even + odd)};
}

Transmission scarf_transmission(double c, double d, double k) {
  require_positive_k(k);
  const double s = sin_pi(c);
  const double s2 = s * s;
  const double pk = kPi * k;
  const double log_den = log_sum_sinh2(s2, kPi * (d - k)) + log_sum_sinh2(s2, kPi * (d + k));
  if (std::isinf(log_den) && log_den < 0.0)
    return {std::numeric_limits<double>::infinity(), true};
  const double log_num = log_sinh2(pk) + log_cosh2(pk);
  return {std::exp(log_num - log_den), false};
}

double scarf_beta_broken(double c, double d, double k) {
  if (k < 0.0) throw DomainError("k must be non-negative");
  return (cos_pi(2.0 * c) + std::cosh(2.0 * kPi * d)) / std::cosh(kPi * k);
}

double transparency_contour(double c) {
  return std::acosh(2.0 - cos_pi(2.0 * c)) / (2.0 * kPi);
}

CriticalStrengths critical_strengths(double c) {
  const double d = transparency_contour(c);
  const auto m = cd_parametrization(c, d);
  return {m.v1, exceptional_strength(m.v1), m.v2};
}

}  // namespace ptscat
