#include "ptscat/smatrix.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ptscat/error.hpp"
#include "ptscat/parallel.hpp"

namespace ptscat {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Injection {
  cplx f;
  cplx df;
};

// Left injection: transmitted wave e^{ikx} beyond +L, propagated back to -L.
Injection inject_left(const PotentialSpec& spec, cplx k, double L, const SolverConfig& cfg) {
  const cplx e = std::exp(kI * k * L);
  const auto s = propagate(spec, k, {e, kI * k * e, L}, -L, cfg);
  return {s.psi, s.dpsi};
}

// Right injection: transmitted wave e^{-ikx} beyond -L, propagated to +L.
Injection inject_right(const PotentialSpec& spec, cplx k, double L, const SolverConfig& cfg) {
  const cplx e = std::exp(kI * k * L);
  const auto s = propagate(spec, k, {e, -kI * k * e, -L}, L, cfg);
  return {s.psi, s.dpsi};
}

void require_nonzero(cplx k) {
  if (k == 0.0) throw DomainError("scattering amplitudes undefined at k = 0");
}

}  // namespace

cplx transmission_denominator(const PotentialSpec& spec, cplx k, const SolverConfig& cfg) {
  require_nonzero(k);
  const double L = match_radius_for(spec, cfg);
  const auto in = inject_left(spec, k, L, cfg);
  return kI * k * in.f + in.df;
}

ScatteringData scatter(const PotentialSpec& spec, cplx k, const SolverConfig& cfg) {
  require_nonzero(k);
  const double L = match_radius_for(spec, cfg);
  const cplx phase = std::exp(-kI * k * L);

  const auto left = inject_left(spec, k, L, cfg);
  const cplx dl = kI * k * left.f + left.df;
  const auto right = inject_right(spec, k, L, cfg);
  const cplx dr = kI * k * right.f - right.df;

  ScatteringData out;
  out.k = k;
  out.energy = k * k;
  out.denominator = dl;
  out.r_left = phase * phase * (kI * k * left.f - left.df) / dl;
  out.t = phase * 2.0 * kI * k / dl;
  out.r_right = phase * phase * (kI * k * right.f + right.df) / dr;
  out.t_right = phase * 2.0 * kI * k / dr;

  const double ratio = cfg.near_pole_ratio;
  out.near_pole = std::abs(dl) < ratio * (std::abs(k * left.f) + std::abs(left.df)) ||
                  std::abs(dr) < ratio * (std::abs(k * right.f) + std::abs(right.df));
  return out;
}

SMatrixAnalysis smatrix_analysis(const ScatteringData& data, double tol) {
  if (data.t == 0.0) throw NumericError("transmission zero; eigenvalues reduce to reflections");
  const cplx rl = data.r_left;
  const cplx rr = data.r_right;
  const cplx t = data.t;
  const cplx root = std::sqrt((rl - rr) * (rl - rr) + 4.0 * t * t);
  SMatrixAnalysis a;
  a.s_plus = 0.5 * (rl + rr + root);
  a.s_minus = 0.5 * (rl + rr - root);
  a.beta = std::abs(rl / t - rr / t);
  a.det_s = rl * rr - t * t;
  a.unimodular = std::max(std::abs(std::abs(a.s_plus) - 1.0), std::abs(std::abs(a.s_minus) - 1.0)) < tol;
  return a;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}

namespace {

GridRow make_row(const PotentialSpec& spec, double E, const SolverConfig& cfg, double tol) {
  const auto data = scatter(spec, std::sqrt(E), cfg);
  const auto a = smatrix_analysis(data, tol);
  return {E,
          data.r_left,
          data.r_right,
          data.t,
          std::abs(a.s_plus),
          std::abs(a.s_minus),
          a.beta,
          std::abs(a.det_s),
          a.unimodular,
          data.near_pole};
}

int ordering(const GridRow& r) { return r.abs_s_plus >= r.abs_s_minus ? 1 : -1; }

bool is_jump(const GridRow& a, const GridRow& b, double threshold) {
  return ordering(a) != ordering(b) && std::abs(a.abs_s_plus - b.abs_s_plus) > threshold &&
         std::abs(a.abs_s_minus - b.abs_s_minus) > threshold;
}

// Bisection on E for the point where the ordering of |s+|, |s-| flips.
double refine_crossover(const PotentialSpec& spec, GridRow lo, GridRow hi, const SolverConfig& cfg,
                        double tol) {
  for (int it = 0; it < 60 && hi.E - lo.E > 1e-12 * hi.E; ++it) {
    const auto mid = make_row(spec, 0.5 * (lo.E + hi.E), cfg, tol);
    (ordering(mid) == ordering(lo) ? lo : hi) = mid;
  }
  return 0.5 * (lo.E + hi.E);
}

}  // namespace

TransparencyReport transparency_scan(const PotentialSpec& spec, const std::vector<double>& energies,
                                     const SolverConfig& cfg, const ScanOptions& opt) {
  if (energies.empty()) throw DomainError("energy grid is empty");
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!(energies[i] > 0.0)) throw DomainError("energy grid must be positive");
    if (i > 0 && !(energies[i] > energies[i - 1])) throw DomainError("energy grid must be ascending");
  }
  cfg.validate();

  TransparencyReport rep;
  rep.grid.resize(energies.size());
  parallel_for(energies.size(), opt.jobs,
               [&](std::size_t i) { rep.grid[i] = make_row(spec, energies[i], cfg, opt.tol); });

  // Runs of violations over the points that take part in the verdict.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::optional<std::size_t> start;
  std::size_t last = 0;
  for (std::size_t i = 0; i < rep.grid.size(); ++i) {
    const auto& row = rep.grid[i];
    if (row.near_pole) {
      rep.near_pole_energies.push_back(row.E);
      continue;
    }
    if (!row.unimodular) {
      if (!start) start = i;
      last = i;
    } else if (start) {
      runs.emplace_back(*start, last);
      start.reset();
    }
  }
  if (start) runs.emplace_back(*start, last);

  for (const auto& [a, b] : runs) {
    rep.violation_intervals.push_back({rep.grid[a].E, rep.grid[b].E});
    std::size_t members = 0;
    for (std::size_t i = a; i <= b; ++i) members += rep.grid[i].near_pole ? 0 : 1;
    if (members < 3) {
      rep.warnings.push_back(fmt::format(
          "violation interval [{:.6g}, {:.6g}] has {} grid point(s); too coarse to bracket a crossover",
          rep.grid[a].E, rep.grid[b].E, members));
      continue;
    }
    if (rep.crossover_E_s) continue;
    std::optional<std::size_t> prev;
    for (std::size_t i = a; i <= b; ++i) {
      if (rep.grid[i].near_pole) continue;
      if (prev && is_jump(rep.grid[*prev], rep.grid[i], opt.jump_threshold)) {
        rep.crossover_E_s = refine_crossover(spec, rep.grid[*prev], rep.grid[i], cfg, opt.tol);
        break;
      }
      prev = i;
    }
  }
  rep.transparent = rep.violation_intervals.empty();
  if (!rep.near_pole_energies.empty())
    rep.warnings.push_back(fmt::format("{} grid point(s) near a pole excluded from the verdict",
                                       rep.near_pole_energies.size()));
  return rep;
}

}  // namespace ptscat
