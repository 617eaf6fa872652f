#include "ptscat/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ptscat/error.hpp"

namespace ptscat {

namespace {

struct Vec2 {
  cplx psi;
  cplx dpsi;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.psi + b.psi, a.dpsi + b.dpsi}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.psi, s * a.dpsi}; }

// Right-hand side on one smooth segment [lo, hi]; the potential is taken as the
// one-sided limit from inside the segment at its ends.
class Segment {
 public:
  Segment(const PotentialSpec& spec, cplx k, double lo, double hi)
      : spec_(spec), k2_(k * k), mid_(0.5 * (lo + hi)), free_(is_point_interaction(spec)) {}

  Vec2 operator()(double x, const Vec2& y) const {
    const cplx v = free_ ? cplx{} : evaluate_potential_limit(spec_, x, x < mid_ ? 1 : -1);
    return {y.dpsi, (v - k2_) * y.psi};
  }

 private:
  const PotentialSpec& spec_;
  cplx k2_;
  double mid_;
  bool free_;
};

bool finite(const Vec2& y) {
  return std::isfinite(y.psi.real()) && std::isfinite(y.psi.imag()) &&
         std::isfinite(y.dpsi.real()) && std::isfinite(y.dpsi.imag());
}

void check_finite(const Vec2& y, double x) {
  if (!finite(y)) throw NumericError("non-finite wave state during propagation", x);
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
 public:
  Stepper(const SolverConfig& cfg, long& steps) : cfg_(cfg), steps_(steps) {}

  // Advances y from x0 to x1 on one smooth segment.
  void run(const Segment& f, double x0, double x1, Vec2& y) {
    if (x0 == x1) return;
    if (cfg_.method == Method::FixedRk4)
      rk4(f, x0, x1, y);
    else
      dopri(f, x0, x1, y);
  }

 private:
  void count(double x) {
    if (++steps_ > cfg_.max_steps) throw NumericError("integration step budget exhausted", x);
  }

  void rk4(const Segment& f, double x0, double x1, Vec2& y) {
    const double len = x1 - x0;
    const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(len) / cfg_.step - 1e-9)));
    const double h = len / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      const double x = x0 + h * static_cast<double>(i);
      const Vec2 k1 = f(x, y);
      const Vec2 k2 = f(x + 0.5 * h, y + (0.5 * h) * k1);
      const Vec2 k3 = f(x + 0.5 * h, y + (0.5 * h) * k2);
      const Vec2 k4 = f(x + h, y + h * k3);
      y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      check_finite(y, x + h);
      count(x + h);
    }
  }

  void dopri(const Segment& f, double x0, double x1, Vec2& y) {
    const double dir = x1 > x0 ? 1.0 : -1.0;
    double x = x0;
    double h = dir * std::min(std::abs(h_ > 0.0 ? h_ : cfg_.step), std::abs(x1 - x0));
    Vec2 k1 = f(x, y);
    while (dir * (x1 - x) > 0.0) {
      if (dir * (x + h - x1) > 0.0) h = x1 - x;
      const double hmin = 1e-13 * std::max(1.0, std::abs(x));
      if (std::abs(h) < hmin && std::abs(x1 - x) > hmin)
        throw NumericError("step size underflow (stiff problem or overflowing solution)", x);

      const Vec2 k2 = f(x + c2 * h, y + (h * a21) * k1);
      const Vec2 k3 = f(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
      const Vec2 k4 = f(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vec2 k5 = f(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vec2 k6 = f(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vec2 yn = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      const Vec2 k7 = f(x + h, yn);
      const Vec2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      count(x);

      double ratio = 0.0;
      const auto comp = [&](cplx e, cplx a, cplx b) {
        const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(a), std::abs(b));
        ratio = std::max(ratio, std::abs(e) / sc);
      };
      comp(err.psi, y.psi, yn.psi);
      comp(err.dpsi, y.dpsi, yn.dpsi);
      if (!std::isfinite(ratio)) {
        h *= 0.2;
        continue;
      }
      const double fac = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      if (ratio <= 1.0) {
        x = (std::abs(x1 - (x + h)) <= hmin) ? x1 : x + h;
        y = yn;
        check_finite(y, x);
        k1 = k7;
        h_ = std::abs(h) * fac;
        h *= fac;
      } else {
        h *= std::min(1.0, fac);
      }
    }
  }

  const SolverConfig& cfg_;
  long& steps_;
  double h_ = 0.0;
};

}  // namespace

void SolverConfig::validate() const {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-3)) throw DomainError("rel_tol must lie in (1e-14, 1e-3)");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (!(step > 0.0)) throw DomainError("step must be positive");
  if (match_radius < 0.0) throw DomainError("match_radius must be non-negative");
  if (max_steps <= 0) throw DomainError("max_steps must be positive");
}

double match_radius_for(const PotentialSpec& spec, const SolverConfig& cfg) {
  if (cfg.match_radius > 0.0) {
    if (has_compact_support(spec) && cfg.match_radius < spec.half_width)
      throw DomainError("match_radius cuts through a compact potential");
    return cfg.match_radius;
  }
  const double L = effective_support(spec, cfg.support_tol);
  return L > 0.0 ? L : 1.0;
}

WaveState propagate(const PotentialSpec& spec, cplx k, const WaveState& init, double to_x,
                    const SolverConfig& cfg) {
  cfg.validate();
  const double from = init.x;
  if (from == to_x) return init;
  const double dir = to_x > from ? 1.0 : -1.0;
  const double lo = std::min(from, to_x);
  const double hi = std::max(from, to_x);

  // Linear problem: integrate a unit-scale copy so tolerances are scale-free.
  const double scale = std::max(std::abs(init.psi), std::abs(init.dpsi));
  if (scale == 0.0) return {0.0, 0.0, to_x};
  Vec2 y{init.psi / scale, init.dpsi / scale};

  const auto deltas = point_interactions(spec);
  auto apply_jumps = [&](double x) {
    for (const auto& p : deltas)
      if (p.x == x) y.dpsi += dir * p.strength * y.psi;
  };

  std::vector<double> stops;
  for (double b : breakpoints(spec))
    if (b > lo && b < hi) stops.push_back(b);
  if (dir < 0.0) std::reverse(stops.begin(), stops.end());
  stops.push_back(to_x);

  long steps = 0;
  Stepper stepper(cfg, steps);
  double x = from;
  apply_jumps(x);
  for (double stop : stops) {
    const Segment seg(spec, k, std::min(x, stop), std::max(x, stop));
    stepper.run(seg, x, stop, y);
    x = stop;
    apply_jumps(x);
  }
  return {scale * y.psi, scale * y.dpsi, to_x};
}

}  // namespace ptscat
