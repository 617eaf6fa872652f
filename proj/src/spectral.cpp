#include "ptscat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "ptscat/double_delta.hpp"
#include "ptscat/error.hpp"
#include "ptscat/roots.hpp"

namespace ptscat {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kMaxGrowth = 600.0;  // exponent budget of the decaying-start propagation

bool use_analytic(const PotentialSpec& spec, const ProbeConfig& cfg) {
  if (cfg.source == DenominatorSource::Analytic) {
    if (!is_point_interaction(spec))
      throw DomainError("analytic denominator is only available for double-delta models");
    return true;
  }
  return cfg.source == DenominatorSource::Auto && is_point_interaction(spec);
}

DeltaPairSpec delta_pair(const PotentialSpec& spec) { return {spec.v1, spec.v2, spec.half_width}; }

double radius(const PotentialSpec& spec, const ProbeConfig& cfg) {
  return use_analytic(spec, cfg) ? spec.half_width : match_radius_for(spec, cfg.solver);
}

ComplexFn derivative_of(const PotentialSpec& spec, const ProbeConfig& cfg) {
  if (!use_analytic(spec, cfg)) return {};
  const auto pair = delta_pair(spec);
  return [pair](cplx k) { return dd_denominator_dk(pair, k); };
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// Same probe at the looser scan tolerance (no-op for the closed form).
ProbeConfig scan_config(const ProbeConfig& cfg) {
  ProbeConfig c = cfg;
  c.solver.rel_tol = std::max(cfg.solver.rel_tol, cfg.scan_rel_tol);
  c.solver.abs_tol = std::max(cfg.solver.abs_tol, 1e-2 * c.solver.rel_tol);
  return c;
}

int sample_count(double lo, double hi, double density) {
  return std::max(32, static_cast<int>(std::ceil(density * (hi - lo))));
}

AxisScan scan_imaginary(const PotentialSpec& spec, double lo, double hi, const ProbeConfig& cfg) {
  AxisScan out;
  const double L = radius(spec, cfg);
  if (2.0 * hi * L > kMaxGrowth) {
    const double cut = kMaxGrowth / (2.0 * L);
    out.warnings.push_back(
        fmt::format("kappa range truncated from {:.6g} to {:.6g} (kappa*L overflow)", hi, cut));
    hi = cut;
  }
  if (!(hi > lo)) return out;

  // D(i kappa) is real for PT-symmetric potentials; the positive weight only
  // removes the exponential growth.
  const ProbeConfig coarse = scan_config(cfg);
  auto weighted = [&](const ProbeConfig& c) {
    return [&spec, &c, L](double kappa) {
      const double w = std::exp(-2.0 * kappa * L) / (1.0 + kappa * kappa);
      return probe_denominator(spec, cplx(0.0, kappa), c).real() * w;
    };
  };
  const std::function<double(double)> g = weighted(cfg);
  std::vector<double> mags;
  const std::function<double(double)> g_scan = [&, f = weighted(coarse)](double kappa) {
    const double v = f(kappa);
    mags.push_back(std::abs(v));
    return v;
  };

  RealRootOptions opt;
  opt.density = cfg.density;
  const auto candidates = real_roots(g_scan, g, lo, hi, opt);
  out.median_abs = median(mags);
  for (double kappa : candidates) {
    const double res = std::abs(g(kappa));
    if (res < cfg.residual_factor * out.median_abs) {
      out.roots.emplace_back(0.0, kappa);
    } else {
      out.warnings.push_back(
          fmt::format("candidate kappa={:.10g} dropped: residual {:.3g} above threshold", kappa, res));
    }
  }
  return out;
}

AxisScan scan_real(const PotentialSpec& spec, double lo, double hi, const ProbeConfig& cfg) {
  AxisScan out;
  auto f = [&](cplx k) { return probe_denominator(spec, k, cfg); };
  const auto df = derivative_of(spec, cfg);
  const ProbeConfig coarse = scan_config(cfg);

  const int n = sample_count(lo, hi, cfg.density);
  std::vector<double> ks(static_cast<std::size_t>(n) + 1);
  std::vector<double> mags(ks.size());
  for (int i = 0; i <= n; ++i) {
    ks[i] = lo + (hi - lo) * i / n;
    mags[i] = std::abs(probe_denominator(spec, ks[i], coarse));
  }
  out.median_abs = median(mags);
  const double accept = cfg.residual_factor * out.median_abs;

  for (int i = 1; i < n; ++i) {
    if (!(mags[i] <= mags[i - 1] && mags[i] <= mags[i + 1])) continue;
    const auto root = newton_complex(f, ks[i], df, 1e-14, 80, 0.25 * (hi - lo));
    const bool suspicious = mags[i] < 1e-3 * out.median_abs;
    if (!root) {
      if (suspicious)
        out.warnings.push_back(fmt::format("refinement diverged from k={:.10g}; candidate dropped", ks[i]));
      continue;
    }
    const cplx k = *root;
    if (k.real() < lo || k.real() > hi) continue;
    if (std::abs(k.imag()) > cfg.axis_tol * std::abs(k)) continue;
    if (std::abs(f(k)) >= accept) {
      if (suspicious)
        out.warnings.push_back(fmt::format("candidate k={:.10g} dropped: residual above threshold", k.real()));
      continue;
    }
    const bool dup = std::any_of(out.roots.begin(), out.roots.end(),
                                 [&](cplx o) { return std::abs(o - k) < 1e-8 * std::abs(k); });
    if (!dup) out.roots.push_back(k);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return out;
}

// Argument-principle machinery.
class Winding {
 public:
  Winding(const ComplexFn& f, int budget) : f_(f), budget_(budget) {}

  // Winding number of f around the rectangle, or nullopt when the phase cannot
  // be tracked (a zero on or very near the contour).
  std::optional<int> count(const ComplexRect& r) {
    const cplx corners[4] = {{r.re_lo, r.im_lo}, {r.re_hi, r.im_lo}, {r.re_hi, r.im_hi}, {r.re_lo, r.im_hi}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
      const auto d = edge(corners[e], corners[(e + 1) % 4]);
      if (!d) return std::nullopt;
      total += *d;
    }
    const double w = total / (2.0 * std::numbers::pi);
    const double n = std::round(w);
    if (std::abs(w - n) > 0.2) return std::nullopt;
    return static_cast<int>(n);
  }

 private:
  std::optional<double> edge(cplx a, cplx b) {
    used_ = 0;
    constexpr int kStart = 8;
    double total = 0.0;
    cplx za = a;
    cplx fa = eval(a);
    if (!valid(fa)) return std::nullopt;
    for (int i = 1; i <= kStart; ++i) {
      const cplx zb = a + (b - a) * (static_cast<double>(i) / kStart);
      const cplx fb = eval(zb);
      if (!valid(fb)) return std::nullopt;
      const auto d = segment(za, fa, zb, fb);
      if (!d) return std::nullopt;
      total += *d;
      za = zb;
      fa = fb;
    }
    return total;
  }

  std::optional<double> segment(cplx za, cplx fa, cplx zb, cplx fb) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < std::numbers::pi / 4) return d;
    if (used_ >= budget_) return std::nullopt;
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = eval(zm);
    if (!valid(fm)) return std::nullopt;
    const auto left = segment(za, fa, zm, fm);
    if (!left) return std::nullopt;
    const auto right = segment(zm, fm, zb, fb);
    if (!right) return std::nullopt;
    return *left + *right;
  }

  cplx eval(cplx z) {
    ++used_;
    return f_(z);
  }

  static bool valid(cplx v) { return std::isfinite(std::abs(v)) && v != 0.0; }

  const ComplexFn& f_;
  int budget_;
  int used_ = 0;
};

bool inside(const ComplexRect& r, cplx z) {
  const double mx = 1e-9 * (r.re_hi - r.re_lo);
  const double my = 1e-9 * (r.im_hi - r.im_lo);
  return z.real() >= r.re_lo - mx && z.real() <= r.re_hi + mx && z.imag() >= r.im_lo - my &&
         z.imag() <= r.im_hi + my;
}

std::vector<ComplexRect> quarter(const ComplexRect& r) {
  const double xm = 0.5 * (r.re_lo + r.re_hi);
  const double ym = 0.5 * (r.im_lo + r.im_hi);
  return {{r.re_lo, xm, r.im_lo, ym}, {xm, r.re_hi, r.im_lo, ym}, {r.re_lo, xm, ym, r.im_hi}, {xm, r.re_hi, ym, r.im_hi}};
}

cplx center(const ComplexRect& r) { return {0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi)}; }

class CellSearch {
 public:
  CellSearch(const ComplexFn& f, const ComplexFn& df, const ComplexPoleOptions& opt, ComplexPoleResult& out)
      : f_(f), df_(df), opt_(opt), out_(out), winding_(f, opt.max_edge_points) {}

  void run(const ComplexRect& cell, int depth) {
    const auto n = winding_.count(cell);
    if (!n || *n < 0) {
      split_or_give_up(cell, depth, "unstable winding number on cell edge");
      return;
    }
    if (*n == 0) return;
    if (*n > 1 && depth < opt_.max_depth) {
      for (const auto& q : quarter(cell)) run(q, depth + 1);
      return;
    }
    std::vector<cplx> seeds{center(cell)};
    if (*n > 1)
      for (const auto& q : quarter(cell)) seeds.push_back(center(q));
    std::vector<cplx> found;
    for (cplx s : seeds) {
      const auto root = newton_complex(f_, s, df_, 1e-14, 80, 0.5 * std::abs(cell.re_hi - cell.re_lo));
      if (!root || !inside(cell, *root)) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](cplx o) {
        return std::abs(o - *root) < 1e-8 * std::max(1.0, std::abs(*root));
      });
      if (!dup) found.push_back(*root);
      if (static_cast<int>(found.size()) == *n) break;
    }
    if (static_cast<int>(found.size()) == *n) {
      out_.roots.insert(out_.roots.end(), found.begin(), found.end());
      out_.winding_total += *n;
      return;
    }
    split_or_give_up(cell, depth, "Newton refinement did not recover every zero in cell");
  }

 private:
  void split_or_give_up(const ComplexRect& cell, int depth, const char* why) {
    if (depth < opt_.max_depth) {
      for (const auto& q : quarter(cell)) run(q, depth + 1);
      return;
    }
    out_.unresolved.push_back(cell);
    out_.warnings.push_back(fmt::format("{}: Re k in [{:.6g}, {:.6g}], Im k in [{:.6g}, {:.6g}]", why,
                                        cell.re_lo, cell.re_hi, cell.im_lo, cell.im_hi));
  }

  const ComplexFn& f_;
  const ComplexFn& df_;
  const ComplexPoleOptions& opt_;
  ComplexPoleResult& out_;
  Winding winding_;
};

}  // namespace

cplx probe_denominator(const PotentialSpec& spec, cplx k, const ProbeConfig& cfg) {
  if (use_analytic(spec, cfg)) return dd_denominator(delta_pair(spec), k);
  const double L = match_radius_for(spec, cfg.solver);
  // psi(L) = 1 instead of e^{ikL}: D times e^{-ikL}, same zeros.
  const auto s = propagate(spec, k, {1.0, kI * k, L}, -L, cfg.solver);
  return kI * k * s.psi + s.dpsi;
}

AxisScan axis_pole_scan(const PotentialSpec& spec, Axis axis, double lo, double hi,
                        const ProbeConfig& cfg) {
  if (!(lo > 0.0)) throw DomainError("axis scan needs lo > 0");
  if (!(hi > lo)) throw DomainError("axis scan needs hi > lo");
  if (!(cfg.density > 0.0)) throw DomainError("scan density must be positive");
  return axis == Axis::ImaginaryK ? scan_imaginary(spec, lo, hi, cfg) : scan_real(spec, lo, hi, cfg);
}

ComplexPoleResult complex_pole_search(const PotentialSpec& spec, const ComplexRect& rect,
                                      const ComplexPoleOptions& opt, const ProbeConfig& cfg) {
  if (!(rect.re_hi > rect.re_lo) || !(rect.im_hi > rect.im_lo))
    throw DomainError("empty search rectangle");
  if (!(rect.im_lo > 0.0)) throw DomainError("search rectangle must lie in the upper half plane");
  if (opt.nx < 1 || opt.ny < 1) throw DomainError("cell grid must be at least 1x1");

  // e^{2ikR} strips the free-wave factor from D: the scaled function stays
  // O(k) across the rectangle, which keeps edge phases slow and Newton local.
  const double R = radius(spec, cfg);
  const ComplexFn f = [&](cplx k) { return probe_denominator(spec, k, cfg) * std::exp(2.0 * kI * k * R); };
  ComplexFn df;
  if (const auto raw = derivative_of(spec, cfg)) {
    df = [&, raw](cplx k) {
      const cplx e = std::exp(2.0 * kI * k * R);
      return (raw(k) + 2.0 * kI * R * probe_denominator(spec, k, cfg)) * e;
    };
  }
  ComplexPoleResult out;
  CellSearch search(f, df, opt, out);
  const double dx = (rect.re_hi - rect.re_lo) / opt.nx;
  const double dy = (rect.im_hi - rect.im_lo) / opt.ny;
  for (int j = 0; j < opt.ny; ++j)
    for (int i = 0; i < opt.nx; ++i)
      search.run({rect.re_lo + i * dx, rect.re_lo + (i + 1) * dx, rect.im_lo + j * dy, rect.im_lo + (j + 1) * dy},
                 0);
  std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

double kappa_ceiling(const PotentialSpec& spec) {
  const double v1 = spec.strength_v1();
  const double v2 = std::abs(spec.strength_v2());
  if (is_point_interaction(spec)) return std::abs(v1) + v2 + 1.0 / spec.half_width;
  return std::sqrt(std::max(0.0, v1) + v2) + 0.5;
}

EpEstimate exceptional_point(const PotentialSpec& family, double range_lo, double range_hi,
                             double resolution, const ProbeConfig& cfg) {
  if (!(range_hi > range_lo)) throw DomainError("exceptional-point range needs hi > lo");
  if (!(resolution > 0.0)) throw DomainError("resolution must be positive");
  auto count = [&](double v2) {
    const auto s = family.with_v2(v2);
    return static_cast<int>(axis_pole_scan(s, Axis::ImaginaryK, cfg.kappa_min, kappa_ceiling(s), cfg).roots.size());
  };
  const int c0 = count(range_lo);
  if (c0 < 1) throw DomainError("no imaginary-axis pole at the start of the range");
  if (count(range_hi) >= c0) throw DomainError("imaginary-axis pole count does not drop within the range");
  double lo = range_lo;
  double hi = range_hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (count(mid) >= c0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), lo, hi, c0};
}

SpectralReport spectral_report(const PotentialSpec& spec, const SpectrumRequest& req, const ProbeConfig& cfg) {
  SpectralReport rep;
  auto merge = [&](std::vector<std::string>& w) { rep.warnings.insert(rep.warnings.end(), w.begin(), w.end()); };

  auto im = axis_pole_scan(spec, Axis::ImaginaryK, cfg.kappa_min, kappa_ceiling(spec), cfg);
  merge(im.warnings);
  for (cplx k : im.roots) rep.bound_states.push_back(-k.imag() * k.imag());
  std::sort(rep.bound_states.begin(), rep.bound_states.end());

  if (req.k_max > cfg.kappa_min) {
    auto re = axis_pole_scan(spec, Axis::RealK, cfg.kappa_min, req.k_max, cfg);
    merge(re.warnings);
    for (cplx k : re.roots) rep.singularities.push_back(k.real() * k.real());
  }

  if (req.rect) {
    auto cp = complex_pole_search(spec, *req.rect, {}, cfg);
    merge(cp.warnings);
    std::vector<cplx> energies;
    for (cplx k : cp.roots) {
      const cplx E = k * k;
      if (std::abs(E.imag()) > 1e-8 * std::abs(E)) energies.push_back(E);
    }
    std::vector<bool> used(energies.size(), false);
    for (std::size_t i = 0; i < energies.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      std::optional<std::size_t> partner;
      for (std::size_t j = i + 1; j < energies.size() && !partner; ++j)
        if (!used[j] && std::abs(energies[j] - std::conj(energies[i])) < 1e-6 * std::abs(energies[i])) partner = j;
      if (!partner) {
        rep.warnings.push_back(fmt::format("complex pole E={:.8g}{:+.8g}i has no conjugate partner in the rectangle",
                                           energies[i].real(), energies[i].imag()));
        continue;
      }
      used[*partner] = true;
      const bool upper_first = energies[i].imag() > 0.0;
      rep.complex_poles.emplace_back(upper_first ? energies[i] : energies[*partner],
                                     upper_first ? energies[*partner] : energies[i]);
    }
  }

  if (req.ep_range) {
    try {
      rep.ep_estimate = exceptional_point(spec, req.ep_range->first, req.ep_range->second, req.ep_resolution, cfg);
    } catch (const DomainError& e) {
      rep.warnings.push_back(std::string("exceptional point not located: ") + e.what());
    }
  }
  return rep;
}

}  // namespace ptscat
