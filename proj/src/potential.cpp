#include "ptscat/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ptscat/error.hpp"
#include "ptscat/scarf.hpp"

namespace ptscat {

namespace {

struct Shape {
  double even;
  double odd;
};

double sech(double x) { return 1.0 / std::cosh(x); }

// Phi_e, phi_o of the profile pair at x. All pairs are continuous, so no
// one-sided handling is needed here.
Shape profile_shape(ProfilePair pair, double x, double w) {
  switch (pair) {
    case ProfilePair::Sech2SechTanh: {
      const double s = sech(x);
      return {s * s, s * std::tanh(x)};
    }
    case ProfilePair::SechSechTanh: {
      const double s = sech(x);
      return {s, s * std::tanh(x)};
    }
    case ProfilePair::GaussXGauss: {
      const double g = std::exp(-x * x);
      return {g, x * g};
    }
    case ProfilePair::Parabolic: {
      const double u = x / w;
      if (std::abs(u) > 1.0) return {0.0, 0.0};
      return {1.0 - u * u, u * (1.0 - u * u)};
    }
    case ProfilePair::Triangular: {
      const double u = x / w;
      const double au = std::abs(u);
      if (au > 1.0) return {0.0, 0.0};
      const double odd = au <= 0.5 ? 2.0 * u : 2.0 * std::copysign(1.0 - au, u);
      return {1.0 - au, odd};
    }
  }
  return {0.0, 0.0};
}

cplx rectangular_value(const PotentialSpec& s, double x, int side) {
  const double L = s.half_width;
  bool inside_even;
  bool inside_odd;
  double sign;
  if (side == 0) {
    inside_even = std::abs(x) <= L;
    inside_odd = std::abs(x) < L;
    sign = x >= 0.0 ? 1.0 : -1.0;
  } else if (side > 0) {
    inside_even = x >= -L && x < L;
    inside_odd = inside_even;
    sign = x >= 0.0 ? 1.0 : -1.0;
  } else {
    inside_even = x > -L && x <= L;
    inside_odd = inside_even;
    sign = x > 0.0 ? 1.0 : -1.0;
  }
  const double re = inside_even ? -s.v1 : 0.0;
  const double im = inside_odd ? s.v2 * sign : 0.0;
  return {re, im};
}

cplx pointwise_value(const PotentialSpec& s, double x, int side) {
  switch (s.model) {
    case Model::DoubleDelta:
      throw DomainError("point interaction not pointwise-evaluable");
    case Model::Rectangular:
      return rectangular_value(s, x, side);
    case Model::ScarfII:
    case Model::ScarfIIcd: {
      const auto sh = profile_shape(ProfilePair::Sech2SechTanh, x, 1.0);
      return {-s.strength_v1() * sh.even, s.strength_v2() * sh.odd};
    }
    case Model::Profile: {
      const auto sh = profile_shape(s.profile, x, s.half_width);
      return {-s.v1 * sh.even, s.v2 * sh.odd};
    }
  }
  return {};
}

void require_width(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("half_width must be positive and finite");
}

// Upper bound x_hi beyond which |V| < tol, from a monotone envelope of the tail.
double tail_bound(const PotentialSpec& s, double tol) {
  const double a1 = std::abs(s.strength_v1());
  const double a2 = std::abs(s.strength_v2());
  const bool gaussian = s.model == Model::Profile && s.profile == ProfilePair::GaussXGauss;
  if (!gaussian) {
    // sech^2 <= sech <= 2 e^{-x}
    return std::max(0.0, std::log(2.0 * (a1 + a2) / tol));
  }
  auto env = [&](double x) { return (a1 + a2 * x) * std::exp(-x * x); };
  double x = 1.0;
  while (env(x) >= tol) x *= 2.0;
  return x;
}

}  // namespace

PotentialSpec PotentialSpec::scarf(double v1, double v2) {
  PotentialSpec s;
  s.model = Model::ScarfII;
  s.v1 = v1;
  s.v2 = v2;
  return s;
}

PotentialSpec PotentialSpec::scarf_cd(double c, double d) {
  PotentialSpec s;
  s.model = Model::ScarfIIcd;
  s.c = c;
  s.d = d;
  const auto m = cd_parametrization(c, d);
  s.v1 = m.v1;
  s.v2 = m.v2;
  return s;
}

PotentialSpec PotentialSpec::rectangular(double v1, double v2, double half_width) {
  require_width(half_width);
  PotentialSpec s;
  s.model = Model::Rectangular;
  s.v1 = v1;
  s.v2 = v2;
  s.half_width = half_width;
  return s;
}

PotentialSpec PotentialSpec::double_delta(double v1, double v2, double a) {
  require_width(a);
  PotentialSpec s;
  s.model = Model::DoubleDelta;
  s.v1 = v1;
  s.v2 = v2;
  s.half_width = a;
  return s;
}

PotentialSpec PotentialSpec::shaped(ProfilePair pair, double v1, double v2, double half_width) {
  require_width(half_width);
  PotentialSpec s;
  s.model = Model::Profile;
  s.profile = pair;
  s.v1 = v1;
  s.v2 = v2;
  s.half_width = half_width;
  return s;
}

double PotentialSpec::strength_v1() const {
  return model == Model::ScarfIIcd ? cd_parametrization(c, d).v1 : v1;
}

double PotentialSpec::strength_v2() const {
  return model == Model::ScarfIIcd ? cd_parametrization(c, d).v2 : v2;
}

PotentialSpec PotentialSpec::parity_flipped() const { return with_v2(-strength_v2()); }

PotentialSpec PotentialSpec::with_v2(double new_v2) const {
  PotentialSpec s = *this;
  if (s.model == Model::ScarfIIcd) {
    s.model = Model::ScarfII;
    s.v1 = strength_v1();
    s.c = 0.0;
    s.d = 0.0;
  }
  s.v2 = new_v2;
  return s;
}

bool is_point_interaction(const PotentialSpec& spec) { return spec.model == Model::DoubleDelta; }

bool has_compact_support(const PotentialSpec& spec) {
  switch (spec.model) {
    case Model::Rectangular:
    case Model::DoubleDelta:
      return true;
    case Model::Profile:
      return spec.profile == ProfilePair::Parabolic || spec.profile == ProfilePair::Triangular;
    default:
      return false;
  }
}

cplx evaluate_potential(const PotentialSpec& spec, double x) { return pointwise_value(spec, x, 0); }

cplx evaluate_potential_limit(const PotentialSpec& spec, double x, int side) {
  return pointwise_value(spec, x, side > 0 ? 1 : -1);
}

double effective_support(const PotentialSpec& spec, double tol) {
  if (!(tol > 0.0)) throw DomainError("support tolerance must be positive");
  if (!std::isfinite(spec.strength_v1()) || !std::isfinite(spec.strength_v2()))
    throw DomainError("no finite support at tolerance");
  if (has_compact_support(spec)) return spec.half_width;

  const double x_hi = tail_bound(spec, tol);
  if (!std::isfinite(x_hi)) throw DomainError("no finite support at tolerance");
  auto above = [&](double x) { return std::abs(evaluate_potential(spec, x)) >= tol; };

  // Walk inward from the envelope bound to the outermost point still above tol.
  constexpr int kSamples = 4000;
  double outer = x_hi;
  double inner = -1.0;
  for (int i = kSamples - 1; i >= 0; --i) {
    const double x = x_hi * i / kSamples;
    if (above(x)) {
      inner = x;
      break;
    }
    outer = x;
  }
  if (inner < 0.0) return 0.0;
  for (int it = 0; it < 200 && outer - inner > 1e-14 * std::max(1.0, outer); ++it) {
    const double mid = 0.5 * (inner + outer);
    (above(mid) ? inner : outer) = mid;
  }
  return outer;
}

std::vector<double> breakpoints(const PotentialSpec& spec) {
  const double w = spec.half_width;
  switch (spec.model) {
    case Model::Rectangular:
      return {-w, 0.0, w};
    case Model::DoubleDelta:
      return {-w, w};
    case Model::Profile:
      if (spec.profile == ProfilePair::Parabolic) return {-w, w};
      if (spec.profile == ProfilePair::Triangular) return {-w, -0.5 * w, 0.0, 0.5 * w, w};
      return {};
    default:
      return {};
  }
}

std::vector<PointInteraction> point_interactions(const PotentialSpec& spec) {
  if (spec.model != Model::DoubleDelta) return {};
  return {{-spec.half_width, cplx(spec.v1, spec.v2)}, {spec.half_width, cplx(spec.v1, -spec.v2)}};
}

namespace {
constexpr std::array<std::pair<Model, std::string_view>, 5> kModelNames{{
    {Model::ScarfII, "scarf2"},
    {Model::ScarfIIcd, "scarf2-cd"},
    {Model::Rectangular, "rectangular"},
    {Model::DoubleDelta, "double-delta"},
    {Model::Profile, "profile"},
}};
constexpr std::array<std::pair<ProfilePair, std::string_view>, 5> kProfileNames{{
    {ProfilePair::Sech2SechTanh, "sech2_sechtanh"},
    {ProfilePair::SechSechTanh, "sech_sechtanh"},
    {ProfilePair::GaussXGauss, "gauss_xgauss"},
    {ProfilePair::Parabolic, "parabolic"},
    {ProfilePair::Triangular, "triangular"},
}};
}  // namespace

std::string_view to_string(Model m) {
  for (const auto& [k, v] : kModelNames)
    if (k == m) return v;
  return "?";
}

std::string_view to_string(ProfilePair p) {
  for (const auto& [k, v] : kProfileNames)
    if (k == p) return v;
  return "?";
}

Model model_from_string(std::string_view name) {
  for (const auto& [k, v] : kModelNames)
    if (v == name) return k;
  throw DomainError("unknown model '" + std::string(name) + "'");
}

ProfilePair profile_from_string(std::string_view name) {
  for (const auto& [k, v] : kProfileNames)
    if (v == name) return k;
  throw DomainError("unknown profile '" + std::string(name) + "'");
}

}  // namespace ptscat
