#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace ptscat {

using cplx = std::complex<double>;

enum class Model { ScarfII, ScarfIIcd, Rectangular, DoubleDelta, Profile };

/// Even/odd shape pairs (phi_e, phi_o) for the generic profile model.
enum class ProfilePair { Sech2SechTanh, SechSechTanh, GaussXGauss, Parabolic, Triangular };

/// A complex PT-symmetric potential V(x) = -V1 phi_e(x) + i V2 phi_o(x).
///
/// The real part is a well for V1 > 0 for every pointwise model. The double
/// delta follows its own convention: (V1 + iV2) delta(x + a) + (V1 - iV2) delta(x - a),
/// so V1 < 0 is attractive there.
struct PotentialSpec {
  Model model = Model::ScarfII;
  double v1 = 0.0;
  double v2 = 0.0;
  double half_width = 1.0;  // L (rectangular, compact profiles) or a (double delta)
  double c = 0.0;           // ScarfIIcd only
  double d = 0.0;           // ScarfIIcd only
  ProfilePair profile = ProfilePair::Sech2SechTanh;

  static PotentialSpec scarf(double v1, double v2);
  static PotentialSpec scarf_cd(double c, double d);
  static PotentialSpec rectangular(double v1, double v2, double half_width);
  static PotentialSpec double_delta(double v1, double v2, double a);
  static PotentialSpec shaped(ProfilePair pair, double v1, double v2, double half_width = 1.0);

  /// Effective (V1, V2) after resolving the (c, d) map.
  double strength_v1() const;
  double strength_v2() const;

  /// Mirror image x -> -x, i.e. V2 -> -V2. ScarfIIcd is resolved to ScarfII.
  PotentialSpec parity_flipped() const;

  /// Same model with the imaginary strength replaced (ScarfIIcd resolved to ScarfII).
  PotentialSpec with_v2(double v2) const;

  bool operator==(const PotentialSpec&) const = default;
};

/// A delta interaction psi'(x0+) - psi'(x0-) = strength * psi(x0).
struct PointInteraction {
  double x;
  cplx strength;
};

bool is_point_interaction(const PotentialSpec& spec);
bool has_compact_support(const PotentialSpec& spec);

/// V(x) with the boundary values of the rectangular steps taken literally
/// (Theta_2 = +1 on [0, L), -1 on (-L, 0), 0 for |x| >= L; Theta_1 = 1 on |x| <= L).
cplx evaluate_potential(const PotentialSpec& spec, double x);

/// One-sided limit of V at x: side > 0 from the right, side < 0 from the left.
/// Identical to evaluate_potential away from discontinuities.
cplx evaluate_potential_limit(const PotentialSpec& spec, double x, int side);

/// Smallest L with |V(x)| < tol for all |x| >= L; exact half-width for compact models.
double effective_support(const PotentialSpec& spec, double tol);

/// Points where the potential is discontinuous or kinked (sorted, ascending).
std::vector<double> breakpoints(const PotentialSpec& spec);

/// Delta interactions, sorted by position. Empty for pointwise models.
std::vector<PointInteraction> point_interactions(const PotentialSpec& spec);

std::string_view to_string(Model m);
std::string_view to_string(ProfilePair p);
Model model_from_string(std::string_view name);
ProfilePair profile_from_string(std::string_view name);

}  // namespace ptscat
