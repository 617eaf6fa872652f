#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ptscat/error.hpp"
#include "ptscat/scarf.hpp"

using namespace ptscat;

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;

// Direct evaluation of the closed forms in long double.
long double transmission_ref(long double c, long double d, long double k) {
  const long double s = std::sin(kPiL * c);
  const long double num = std::pow(std::sinh(kPiL * k) * std::cosh(kPiL * k), 2.0L);
  const long double den = (s * s + std::pow(std::sinh(kPiL * (d - k)), 2.0L)) *
                          (s * s + std::pow(std::sinh(kPiL * (d + k)), 2.0L));
  return num / den;
}

std::pair<long double, long double> ratio_ref(long double c, long double d, long double k) {
  // imaginary parts of r_left/t and r_right/t
  const long double c2 = std::cos(2.0L * kPiL * c);
  const long double ch = std::cosh(2.0L * kPiL * d);
  const long double e = (c2 + ch) / (2.0L * std::cosh(kPiL * k));
  const long double o = (ch - c2) / (2.0L * std::sinh(kPiL * k));
  return {-(-e + o), -(e + o)};
}

}  // namespace

TEST_SUITE("scarf") {

TEST_CASE("(a, b) parameters") {
  auto p = scarf_parameters(2.0, 0.0);
  CHECK(p.a == doctest::Approx(1.0));
  CHECK(p.b == doctest::Approx(0.0));
  p = scarf_parameters(6.0, 2.0);
  CHECK(p.a == doctest::Approx(1.9669).epsilon(1e-4));
  CHECK(p.b == doctest::Approx(0.4054).epsilon(1e-3));
  p = scarf_parameters(0.75, 1.0);
  CHECK(p.a == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0));
  CHECK(p.b == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK_THROWS_WITH_AS(scarf_parameters(1.0, 1.5), "broken-domain parameters; use (c,d) parametrization",
                       DomainError);
}

TEST_CASE("(a, b) radical identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u1(-0.2, 8.0), u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double v1 = u1(rng);
    const double v2 = (2.0 * u(rng) - 1.0) * (v1 + 0.25);
    const auto p = scarf_parameters(v1, v2);
    CHECK(p.a + p.b + 0.5 == doctest::Approx(std::sqrt(v1 + std::abs(v2) + 0.25)).epsilon(1e-12));
    CHECK(p.a - p.b + 0.5 == doctest::Approx(std::sqrt(v1 - std::abs(v2) + 0.25)).epsilon(1e-12));
  }
}

TEST_CASE("bound spectrum") {
  auto levels = scarf_bound_spectrum(6.0, 2.0);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].energy == doctest::Approx(-3.8687).epsilon(1e-4));
  CHECK(levels[0].branch == Branch::N);
  CHECK(levels[1].energy == doctest::Approx(-0.9349).epsilon(1e-3));
  CHECK(levels[2].energy == doctest::Approx(-0.8197).epsilon(1e-3));
  CHECK(levels[2].branch == Branch::M);
  CHECK(levels[2].flagged);
  CHECK(scarf_bound_energies(6.0, 2.0).size() == 2);

  levels = scarf_bound_spectrum(2.0, 0.0);
  REQUIRE(levels.size() == 2);
  CHECK(levels[0].energy == doctest::Approx(-1.0));
  CHECK(levels[1].energy == doctest::Approx(-0.25));
  CHECK(levels[1].flagged);
  CHECK(scarf_bound_energies(2.0, 0.0) == std::vector<double>{-1.0});

  CHECK(scarf_bound_energies(0.0, 0.0).empty());
  levels = scarf_bound_spectrum(0.0, 0.0);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0].flagged);
  CHECK_THROWS_AS(scarf_bound_spectrum(1.0, 2.0), DomainError);
}

TEST_CASE("(c, d) map") {
  auto m = cd_parametrization(0.4, 0.3);
  CHECK(m.v1 == doctest::Approx(1.19));
  CHECK(m.v2 == doctest::Approx(1.80));
  m = cd_parametrization(-0.4, 0.3);
  CHECK(m.v1 == doctest::Approx(-0.41));
  CHECK(m.v2 == doctest::Approx(0.20));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uc(-0.5, 1.5), ud(0.0, 0.6);
  for (int i = 0; i < 200; ++i) {
    const double c = uc(rng), d = ud(rng);
    m = cd_parametrization(c, d);
    CHECK(m.gap == doctest::Approx(4.0 * d * d + 0.25));
    CHECK(m.v2 - exceptional_strength(m.v1) == doctest::Approx(4.0 * d * d).epsilon(1e-10));
    const auto [c2, d2] = cd_from_strengths(m.v1, m.v2);
    CHECK(c2 == doctest::Approx(c).epsilon(1e-9));
    CHECK(d2 == doctest::Approx(d).epsilon(1e-9));
  }
}

TEST_CASE("B in the unbroken domain") {
  CHECK(scarf_beta_unbroken(2.0, 0.0, 0.3) == 0.0);
  CHECK(scarf_beta_unbroken(6.0, 2.0, 0.0) == doctest::Approx(1.902).epsilon(1e-3));
  CHECK(scarf_beta_unbroken(6.0, 2.0, 20.0) < 1e-25);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double v1 = 10.0 * u(rng);
    const double v2 = u(rng) * (v1 + 0.25);
    CHECK(scarf_beta_unbroken(v1, v2, 5.0 * u(rng)) <= 2.0);
  }
  CHECK_THROWS_AS(scarf_beta_unbroken(1.0, 3.0, 1.0), DomainError);
}

TEST_CASE("r/t ratios") {
  const auto [rl, rr] = scarf_rt_ratios(0.0, 0.0, 1.0);
  const double s = 1.0 / std::cosh(std::numbers::pi);
  CHECK(rl.real() == 0.0);
  CHECK(rl.imag() == doctest::Approx(s));
  CHECK(rr.imag() == doctest::Approx(-s));

  const auto [a, b] = scarf_rt_ratios(0.4, 0.3, 1.0);
  const auto [ra, rb] = ratio_ref(0.4L, 0.3L, 1.0L);
  CHECK(a.imag() == doctest::Approx(static_cast<double>(ra)).epsilon(1e-14));
  CHECK(b.imag() == doctest::Approx(static_cast<double>(rb)).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(scarf_rt_ratios(0.2, 0.1, 0.0), "evaluate limit not supported; k must be positive",
                       DomainError);
}

TEST_CASE("ratio difference reproduces B") {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> uc(-1.0, 1.0), ud(0.0, 0.5), uk(0.1, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double c = uc(rng), d = ud(rng), k = uk(rng);
    const auto [rl, rr] = scarf_rt_ratios(c, d, k);
    CHECK(std::abs(rl - rr) == doctest::Approx(scarf_beta_broken(c, d, k)).epsilon(1e-12));
  }
}

TEST_CASE("transmission") {
  const auto ss = scarf_transmission(1.0, 0.5, 0.5);
  CHECK(ss.divergent);
  CHECK(std::isinf(ss.value));

  const auto t = scarf_transmission(0.4, 0.3, 1.0);
  CHECK_FALSE(t.divergent);
  CHECK(t.value == doctest::Approx(static_cast<double>(transmission_ref(0.4L, 0.3L, 1.0L))).epsilon(1e-13));
  CHECK(t.value == doctest::Approx(0.98).epsilon(0.02));

  CHECK(scarf_transmission(0.5, 0.0, 8.0).value == doctest::Approx(1.0).epsilon(1e-9));
  const auto big = scarf_transmission(0.3, 0.2, 400.0);
  CHECK(std::isfinite(big.value));
  CHECK(big.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(scarf_transmission(0.3, 0.2, -1.0), DomainError);
}

TEST_CASE("no real-k divergence inside the transparency domain") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(-1.0, 1.0), u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double c = uc(rng);
    const double d = u(rng) * transparency_contour(c);
    for (double k = 0.01; k < 5.0; k += 0.07) CHECK_FALSE(scarf_transmission(c, d, k).divergent);
  }
  CHECK_FALSE(scarf_transmission(0.999, 0.5, 0.5).divergent);
  CHECK(scarf_transmission(-1.0, 0.25, 0.25).divergent);
}

TEST_CASE("B in the broken domain") {
  CHECK(scarf_beta_broken(0.0, 0.0, 0.0) == doctest::Approx(2.0));
  CHECK(scarf_beta_broken(0.4, 0.3, 0.0) ==
        doctest::Approx(std::cos(0.8 * std::numbers::pi) + std::cosh(0.6 * std::numbers::pi)).epsilon(1e-14));
  CHECK(scarf_beta_broken(0.4, 0.3, 0.0) == doctest::Approx(2.55993).epsilon(1e-5));
  const double b0 = scarf_beta_broken(0.4, 0.3, 0.0);
  const double ks = std::acosh(b0 / 2.0) / std::numbers::pi;
  CHECK(scarf_beta_broken(0.4, 0.3, ks) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ks * ks == doctest::Approx(0.054).epsilon(0.05));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uc(-1.0, 1.0), ud(0.0, 0.5), uk(0.01, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double c = uc(rng), d = ud(rng), k = uk(rng);
    CHECK(scarf_beta_broken(c, d, k + 1e-3) < scarf_beta_broken(c, d, k));
  }
}

TEST_CASE("transparency contour and critical strengths") {
  CHECK(transparency_contour(0.0) == 0.0);
  CHECK(transparency_contour(0.5) == doctest::Approx(0.28055).epsilon(1e-4));
  CHECK(transparency_contour(0.25) == doctest::Approx(0.2096).epsilon(1e-3));
  CHECK(scarf_beta_broken(0.3, transparency_contour(0.3), 0.0) == doctest::Approx(2.0));

  CHECK(critical_strengths(0.0).v_beta == doctest::Approx(0.5));
  CHECK(critical_strengths(0.5).v_beta == doctest::Approx(2.157).epsilon(1e-3));
  for (int i = 1; i < 100; ++i) {
    const auto s = critical_strengths(i / 100.0);
    CHECK(s.v1 < s.v_alpha);
    CHECK(s.v_alpha < s.v_beta);
  }
}

TEST_CASE("periodicity in c") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uc(-1.0, 1.0), ud(0.0, 0.5), uk(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double c = uc(rng), d = ud(rng), k = uk(rng);
    CHECK(scarf_beta_broken(c + 1.0, d, k) == doctest::Approx(scarf_beta_broken(c, d, k)).epsilon(1e-9));
    CHECK(scarf_transmission(c + 1.0, d, k).value ==
          doctest::Approx(scarf_transmission(c, d, k).value).epsilon(1e-9));
    CHECK(transparency_contour(c + 1.0) == doctest::Approx(transparency_contour(c)).epsilon(1e-9));
    const auto [a, b] = scarf_rt_ratios(c + 1.0, d, k);
    const auto [a0, b0] = scarf_rt_ratios(c, d, k);
    CHECK(std::abs(a - a0) <= 1e-9 * std::abs(a0) + 1e-12);
    CHECK(std::abs(b - b0) <= 1e-9 * std::abs(b0) + 1e-12);
  }
}

}  // TEST_SUITE
