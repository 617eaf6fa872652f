#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ptscat/error.hpp"
#include "ptscat/integrator.hpp"
#include "random_specs.hpp"

using namespace ptscat;

namespace {

const cplx I{0.0, 1.0};

SolverConfig tight() {
  SolverConfig c;
  c.rel_tol = 1e-11;
  c.abs_tol = 1e-13;
  return c;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("free plane wave") {
  const auto free = PotentialSpec::scarf(0.0, 0.0);
  for (Method m : {Method::AdaptiveRk, Method::FixedRk4}) {
    SolverConfig cfg = tight();
    cfg.method = m;
    cfg.step = 1e-3;
    const auto out = propagate(free, 1.0, {1.0, I, 0.0}, std::numbers::pi, cfg);
    CHECK(out.x == std::numbers::pi);
    CHECK(std::abs(out.psi - cplx(-1.0, 0.0)) < 1e-9);
    CHECK(std::abs(out.dpsi - cplx(0.0, -1.0)) < 1e-9);
  }
}

TEST_CASE("constant segment matches the closed-form transfer") {
  const auto rect = PotentialSpec::rectangular(5.0, 2.2, 2.0);
  for (cplx k : {cplx(0.7, 0.0), cplx(2.1, 0.0), cplx(0.0, 1.3)}) {
    const WaveState init{cplx(0.3, -0.2), cplx(1.1, 0.4), 0.0};
    const auto out = propagate(rect, k, init, 2.0, tight());
    const auto [p, d] = oracle::constant_transfer(init.psi, init.dpsi, cplx(-5.0, 2.2), k, 2.0);
    CHECK(rel(out.psi, p) < 1e-9);
    CHECK(rel(out.dpsi, d) < 1e-9);
  }
}

TEST_CASE("scattering states across the rectangular well and the double delta") {
  for (double k : {0.3, 1.0, 2.7}) {
    for (int model = 0; model < 3; ++model) {
      PotentialSpec spec;
      oracle::Amplitudes ref;
      if (model == 0) {
        spec = PotentialSpec::rectangular(5.0, 0.0, 2.0);
        ref = oracle::rectangular(5.0, 0.0, 2.0, k);
      } else if (model == 1) {
        spec = PotentialSpec::rectangular(5.0, 2.2, 2.0);
        ref = oracle::rectangular(5.0, 2.2, 2.0, k);
      } else {
        spec = PotentialSpec::double_delta(-2.0, 0.0, 1.0);
        ref = oracle::double_delta(-2.0, 0.0, 1.0, k);
      }
      // left injection: t e^{ikx} on the right, e^{ikx} + r e^{-ikx} on the left
      const double x = 3.0;
      const WaveState right{ref.t * std::exp(I * k * x), I * k * ref.t * std::exp(I * k * x), x};
      const auto out = propagate(spec, k, right, -x, tight());
      const cplx in = std::exp(-I * k * x), back = ref.r_left * std::exp(I * k * x);
      CHECK(rel(out.psi, in + back) < 1e-8);
      CHECK(rel(out.dpsi, I * k * (in - back)) < 1e-8);
    }
  }
}

TEST_CASE("delta jumps on the closed interval") {
  const auto dd = PotentialSpec::double_delta(1.5, 0.5, 1.0);
  const auto cfg = tight();
  // starting exactly on the delta: the state is the outside limit, so the jump applies
  const auto a = propagate(dd, 1.0, {1.0, 0.0, 1.0}, 0.999999999, cfg);
  CHECK(std::abs(a.dpsi + cplx(1.5, -0.5)) < 1e-6);
  const auto b = propagate(dd, 1.0, {1.0, 0.0, 1.0}, 1.0, cfg);
  CHECK(b.dpsi == cplx(0.0, 0.0));
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  const auto cfg = tight();
  for (int i = 0; i < 40; ++i) {
    const auto spec = testing::random_spec(rng);
    const double L = match_radius_for(spec, cfg);
    const cplx k(0.2 + std::abs(g(rng)), 0.0);
    const cplx alpha(g(rng), g(rng));
    const WaveState init{std::exp(I * k * L), I * k * std::exp(I * k * L), L};
    const auto one = propagate(spec, k, init, -L, cfg);
    const auto many = propagate(spec, k, {alpha * init.psi, alpha * init.dpsi, L}, -L, cfg);
    CHECK(rel(many.psi, alpha * one.psi) < 1e-9);
    CHECK(rel(many.dpsi, alpha * one.dpsi) < 1e-9);
  }
}

TEST_CASE("reversibility and Wronskian conservation") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uk(0.2, 3.0);
  SolverConfig cfg;
  cfg.rel_tol = 1e-10;
  for (int i = 0; i < 40; ++i) {
    const auto spec = testing::random_spec(rng);
    const double L = match_radius_for(spec, cfg);
    const double k = uk(rng);
    const WaveState a{1.0, I * k, L};
    const WaveState b{0.5, cplx(-0.3, 2.0), L};
    const auto fa = propagate(spec, k, a, -L, cfg);
    const auto fb = propagate(spec, k, b, -L, cfg);
    const auto back = propagate(spec, k, fa, L, cfg);
    const double size = std::abs(fa.psi) + std::abs(fa.dpsi) / k;
    CHECK(std::abs(back.psi - a.psi) < 10.0 * cfg.rel_tol * size * 10.0);
    CHECK(std::abs(back.dpsi - a.dpsi) < 10.0 * cfg.rel_tol * size * k * 10.0);

    const cplx w0 = a.psi * b.dpsi - b.psi * a.dpsi;
    const cplx w1 = fa.psi * fb.dpsi - fb.psi * fa.dpsi;
    const double wscale = (std::abs(fa.psi) + std::abs(fa.dpsi)) * (std::abs(fb.psi) + std::abs(fb.dpsi));
    CHECK(std::abs(w1 - w0) < 100.0 * cfg.rel_tol * wscale);
  }
}

TEST_CASE("fourth-order convergence of the fixed step") {
  const auto rect = PotentialSpec::rectangular(5.0, 2.2, 2.0);
  const cplx k = 1.3;
  const WaveState init{1.0, I * k, 0.0};
  const auto [p, d] = oracle::constant_transfer(init.psi, init.dpsi, cplx(-5.0, 2.2), k, 2.0);
  std::vector<double> err;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    SolverConfig cfg;
    cfg.method = Method::FixedRk4;
    cfg.step = h;
    const auto out = propagate(rect, k, init, 2.0, cfg);
    err.push_back(std::abs(out.psi - p) + std::abs(out.dpsi - d));
  }
  CHECK(err[0] / err[1] == doctest::Approx(16.0).epsilon(0.5));
  CHECK(err[1] / err[2] == doctest::Approx(16.0).epsilon(0.5));
}

TEST_CASE("configuration and failure diagnostics") {
  SolverConfig bad;
  bad.rel_tol = 0.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = {};
  bad.step = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  SolverConfig tiny;
  tiny.max_steps = 5;
  try {
    propagate(PotentialSpec::scarf(1.0, 0.5), 1.0, {1.0, I, 10.0}, -10.0, tiny);
    FAIL("expected a step budget failure");
  } catch (const NumericError& e) {
    CHECK(std::isfinite(e.location()));
  }

  // exponential growth far beyond double range
  CHECK_THROWS_AS(propagate(PotentialSpec::scarf(1.0, 0.5), cplx(0.0, 30.0), {1.0, 0.0, 20.0}, -20.0, {}),
                  NumericError);

  CHECK(match_radius_for(PotentialSpec::rectangular(5.0, 2.0, 2.0), {}) == 2.0);
  SolverConfig fixed;
  fixed.match_radius = 7.5;
  CHECK(match_radius_for(PotentialSpec::scarf(1.0, 0.5), fixed) == 7.5);
  CHECK(match_radius_for(PotentialSpec::scarf(0.0, 0.0), {}) == 1.0);
}

}  // TEST_SUITE
