#pragma once

#include <random>
#include <vector>

#include "ptscat/potential.hpp"

namespace testing {

/// Deterministic draw of a PT-symmetric spec from any model.
inline ptscat::PotentialSpec random_spec(std::mt19937_64& rng) {
  using ptscat::PotentialSpec;
  using ptscat::ProfilePair;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  switch (rng() % 8) {
    case 0:
      return PotentialSpec::scarf(in(-1.0, 4.0), in(-3.0, 3.0));
    case 1:
      return PotentialSpec::scarf_cd(in(-1.0, 1.0), in(0.0, 0.5));
    case 2:
      return PotentialSpec::rectangular(in(-2.0, 6.0), in(-3.0, 3.0), in(0.5, 2.5));
    case 3:
      return PotentialSpec::double_delta(in(-3.0, 3.0), in(-4.0, 4.0), in(0.5, 1.5));
    case 4:
      return PotentialSpec::shaped(ProfilePair::SechSechTanh, in(-1.0, 3.0), in(-2.0, 2.0));
    case 5:
      return PotentialSpec::shaped(ProfilePair::GaussXGauss, in(-1.0, 3.0), in(-2.0, 2.0));
    case 6:
      return PotentialSpec::shaped(ProfilePair::Parabolic, in(-1.0, 4.0), in(-3.0, 3.0), in(0.5, 2.0));
    default:
      return PotentialSpec::shaped(ProfilePair::Triangular, in(-1.0, 4.0), in(-3.0, 3.0), in(0.5, 2.0));
  }
}

}  // namespace testing
