#include "ptscat/sweep.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ptscat/error.hpp"
#include "ptscat/parallel.hpp"
#include "ptscat/scarf.hpp"

namespace ptscat {

PotentialSpec Family::at(double value) const {
  if (free == Free::V2) return base.with_v2(value);
  if (base.model != Model::ScarfIIcd) throw DomainError("free parameter d needs a (c,d) Scarf II base");
  return PotentialSpec::scarf_cd(base.c, value);
}

VbetaResult vbeta_search(const Family& family, double range_lo, double range_hi,
                         const std::vector<double>& energies, const SolverConfig& cfg,
                         const VbetaOptions& opt) {
  if (!(range_hi > range_lo)) throw DomainError("search range needs hi > lo");
  if (!(opt.resolution > 0.0)) throw DomainError("resolution must be positive");
  if (opt.coarse_points < 2) throw DomainError("need at least two coarse samples");

  auto transparent = [&](double v) { return transparency_scan(family.at(v), energies, cfg, opt.scan).transparent; };

  const int n = opt.coarse_points;
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<char> ps(xs.size());
  for (int i = 0; i < n; ++i) {
    xs[i] = range_lo + (range_hi - range_lo) * i / (n - 1);
    ps[i] = transparent(xs[i]);
  }
  if (!ps.front()) throw DomainError(fmt::format("family is not transparent at the range start {:.6g}", range_lo));
  if (ps.back()) throw DomainError(fmt::format("family is still transparent at the range end {:.6g}", range_hi));

  VbetaResult out;
  for (int i = 0; i + 1 < n; ++i) {
    if (ps[i] == ps[i + 1]) continue;
    double lo = xs[i];
    double hi = xs[i + 1];
    const bool at_lo = ps[i];
    while (hi - lo > opt.resolution) {
      const double mid = 0.5 * (lo + hi);
      (transparent(mid) == at_lo ? lo : hi) = mid;
    }
    out.brackets.push_back({lo, hi});
  }
  if (out.brackets.size() > 1)
    out.warnings.push_back(fmt::format(
        "transparency is not monotone on [{:.6g}, {:.6g}]: {} sign changes", range_lo, range_hi, out.brackets.size()));
  return out;
}

std::size_t SweepGrid::cell_count() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

void SweepGrid::validate() const {
  if (cells.size() != cell_count())
    throw DomainError(fmt::format("sweep grid has {} cells, axes imply {}", cells.size(), cell_count()));
  for (const auto& c : cells)
    if (c.size() != fields.size()) throw DomainError("sweep cell payload does not match the field list");
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log grid needs 0 < lo < hi");
  if (n < 2) throw DomainError("log grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double r = std::log(hi / lo);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i / (n - 1));
  g.back() = hi;
  return g;
}

PlaneScanResult plane_scan(double c_lo, double c_hi, double d_lo, double d_hi, const PlaneScanOptions& opt,
                           const SolverConfig& cfg) {
  if (opt.nc < 16 || opt.nd < 16) throw DomainError("plane scan needs at least 16 cells per axis");
  if (!(c_hi > c_lo) || !(d_hi > d_lo)) throw DomainError("plane scan ranges need hi > lo");

  PlaneScanResult res;
  SweepGrid& g = res.grid;
  const double dc = (c_hi - c_lo) / opt.nc;
  const double dd = (d_hi - d_lo) / opt.nd;
  SweepAxis ca{"c", {}};
  SweepAxis da{"d", {}};
  for (int i = 0; i < opt.nc; ++i) ca.values.push_back(c_lo + (i + 0.5) * dc);
  for (int j = 0; j < opt.nd; ++j) da.values.push_back(d_lo + (j + 0.5) * dd);
  g.axes = {ca, da};
  g.fields = {"transparent", "B0", "contour_d", "checked", "numeric_transparent"};
  g.cells.resize(g.cell_count());

  for (int i = 0; i < opt.nc; ++i) {
    const double c = ca.values[i];
    const double contour = transparency_contour(c);
    int first_violation = opt.nd;
    for (int j = 0; j < opt.nd; ++j) {
      const double b0 = scarf_beta_broken(c, da.values[j], 0.0);
      const bool ok = b0 <= 2.0;
      if (!ok && first_violation == opt.nd) first_violation = j;
      g.cells[static_cast<std::size_t>(i) * opt.nd + j] = {ok ? 1.0 : 0.0, b0, contour, 0.0, -1.0};
    }
    // Lower edge of the first violating cell against the contour, in cells.
    const double edge = d_lo + first_violation * dd;
    const double offset = std::abs(edge - std::clamp(contour, d_lo, d_hi)) / dd;
    res.max_boundary_offset = std::max(res.max_boundary_offset, offset);
  }

  if (opt.spot_checks > 0) {
    const auto energies = opt.energies.empty() ? log_grid(1e-4, 5.0, 48) : opt.energies;
    const std::size_t total = g.cells.size();
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(opt.spot_checks), total);
    // Rows evenly spread in d, columns from a golden-ratio sequence in c.
    std::vector<std::size_t> picks;
    for (std::size_t s = 0; s < count; ++s) {
      const double frac = std::fmod(0.5 + static_cast<double>(s) * 0.6180339887498949, 1.0);
      const auto col = static_cast<std::size_t>(frac * opt.nc);
      const auto row = static_cast<std::size_t>((static_cast<double>(s) + 0.5) / count * opt.nd);
      picks.push_back(col * opt.nd + row);
    }

    ScanOptions so;
    so.tol = opt.tol;
    std::vector<char> verdict(picks.size());
    parallel_for(picks.size(), opt.jobs, [&](std::size_t s) {
      const std::size_t idx = picks[s];
      const auto spec = PotentialSpec::scarf_cd(ca.values[idx / opt.nd], da.values[idx % opt.nd]);
      verdict[s] = transparency_scan(spec, energies, cfg, so).transparent;
    });
    for (std::size_t s = 0; s < picks.size(); ++s) {
      auto& cell = g.cells[picks[s]];
      cell[3] = 1.0;
      cell[4] = verdict[s] ? 1.0 : 0.0;
      const double d = da.values[picks[s] % opt.nd];
      const bool in_band = std::abs(d - cell[2]) <= dd;
      if (cell[0] != cell[4]) {
        if (in_band) {
          res.warnings.push_back(fmt::format("boundary-band disagreement at c={:.6g}, d={:.6g}",
                                             ca.values[picks[s] / opt.nd], d));
        } else {
          ++res.disagreements;
        }
      }
    }
    res.spot_checked = static_cast<int>(picks.size());
  }
  return res;
}

}  // namespace ptscat
