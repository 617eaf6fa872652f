#include "ptscat/validate.hpp"

#include <cmath>
#include <functional>
#include <tuple>

#include <fmt/format.h>

#include "ptscat/double_delta.hpp"
#include "ptscat/scarf.hpp"
#include "ptscat/smatrix.hpp"
#include "ptscat/spectral.hpp"

namespace ptscat {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult scarf_broken_amplitudes() {
  const SolverConfig cfg;
  double worst = 0.0;
  for (const auto& [c, d, k] : {std::tuple{0.4, 0.3, 1.0}, {-0.7, 0.1, 0.3}, {0.2, 0.45, 2.5}}) {
    const auto data = scatter(PotentialSpec::scarf_cd(c, d), k, cfg);
    const auto [rl, rr] = scarf_rt_ratios(c, d, k);
    worst = std::max({worst, rel(data.T(), scarf_transmission(c, d, k).value),
                      std::abs(data.r_left / data.t - rl) / std::abs(rl), std::abs(data.r_right / data.t - rr) / std::abs(rr)});
  }
  return {"scarf (c,d) amplitudes vs closed form", worst < 1e-5, fmt::format("max rel err {:.2e}", worst)};
}

CheckResult scarf_unbroken_beta() {
  double worst = 0.0;
  for (const auto& [v1, v2, k] : {std::tuple{2.0, 1.0, 0.5}, {6.0, 2.0, 1.2}, {1.0, 0.5, 0.2}}) {
    const auto data = scatter(PotentialSpec::scarf(v1, v2), k);
    worst = std::max(worst, std::abs(smatrix_analysis(data).beta - scarf_beta_unbroken(v1, v2, k)));
  }
  return {"scarf (V1,V2) B(k) vs closed form", worst < 1e-6, fmt::format("max abs err {:.2e}", worst)};
}

CheckResult delta_amplitudes() {
  double worst = 0.0;
  for (const auto& [v1, v2, k] : {std::tuple{-2.0, 1.0, 0.7}, {1.5, 3.0, 2.2}, {0.0, 2.0, 1.1}}) {
    const auto num = scatter(PotentialSpec::double_delta(v1, v2, 1.0), k);
    const auto ana = dd_amplitudes({v1, v2, 1.0}, k);
    worst = std::max({worst, std::abs(num.r_left - ana.r_left), std::abs(num.r_right - ana.r_right),
                      std::abs(num.t - ana.t)});
  }
  return {"double delta amplitudes vs closed form", worst < 1e-8, fmt::format("max abs err {:.2e}", worst)};
}

CheckResult pseudo_unitarity() {
  double worst = 0.0;
  const std::vector<PotentialSpec> specs{PotentialSpec::rectangular(5.0, 2.2, 2.0), PotentialSpec::scarf(1.0, 0.5),
                                         PotentialSpec::shaped(ProfilePair::GaussXGauss, 2.0, 1.5, 1.0),
                                         PotentialSpec::double_delta(-1.0, 2.0, 1.0)};
  for (const auto& s : specs)
    for (double E : {0.05, 0.7, 3.0}) {
      const auto d = scatter(s, std::sqrt(E));
      worst = std::max({worst, std::abs(std::abs(smatrix_analysis(d).det_s) - 1.0), std::abs(d.t - d.t_right)});
    }
  return {"|det S| = 1 and t_left = t_right", worst < 1e-6, fmt::format("max deviation {:.2e}", worst)};
}

CheckResult scarf_levels() {
  const auto levels = scarf_bound_energies(6.0, 2.0);
  const auto scan = axis_pole_scan(PotentialSpec::scarf(6.0, 2.0), Axis::ImaginaryK, 1e-3, 4.0);
  bool ok = scan.roots.size() == levels.size();
  double worst = 0.0;
  for (std::size_t i = 0; ok && i < levels.size(); ++i) {
    const double kappa = scan.roots[scan.roots.size() - 1 - i].imag();
    worst = std::max(worst, std::abs(-kappa * kappa - levels[i]));
  }
  ok = ok && worst < 1e-6;
  return {"scarf bound states vs closed form", ok,
          fmt::format("{} numeric / {} analytic levels, max err {:.2e}", scan.roots.size(), levels.size(), worst)};
}

CheckResult hermitian_flux() {
  double worst = 0.0;
  const std::vector<PotentialSpec> specs{PotentialSpec::rectangular(5.0, 0.0, 2.0), PotentialSpec::scarf(3.0, 0.0),
                                         PotentialSpec::shaped(ProfilePair::Triangular, 2.0, 0.0, 1.5)};
  for (const auto& s : specs)
    for (double E : {0.1, 1.0, 4.0}) {
      const auto d = scatter(s, std::sqrt(E));
      worst = std::max({worst, std::abs(d.R_left() + d.T() - 1.0), smatrix_analysis(d).beta});
    }
  return {"hermitian limit R + T = 1, B = 0", worst < 1e-8, fmt::format("max deviation {:.2e}", worst)};
}

}  // namespace

std::vector<CheckResult> run_validation() {
  const std::vector<std::function<CheckResult()>> checks{scarf_broken_amplitudes, scarf_unbroken_beta, delta_amplitudes,
                                                         pseudo_unitarity,        scarf_levels,        hermitian_flux};
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
  }
  return out;
}

}  // namespace ptscat
