// ptscat: scattering amplitudes, transparency scans, pole spectra and sweeps
// for complex PT-symmetric potentials in one dimension.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ptscat/config.hpp"
#include "ptscat/error.hpp"
#include "ptscat/export.hpp"
#include "ptscat/scarf.hpp"
#include "ptscat/smatrix.hpp"
#include "ptscat/spectral.hpp"
#include "ptscat/sweep.hpp"
#include "ptscat/validate.hpp"

using namespace ptscat;

namespace {

constexpr int kUsage = 1;
constexpr int kNumeric = 2;
constexpr int kValidation = 3;

// Flags shared by every subcommand; each overrides its config key when given.
struct Overrides {
  std::string config_path;
  std::optional<std::string> model, profile, method, spacing, format, out;
  std::optional<double> v1, v2, c, d, half_width, match_radius, rel_tol, emin, emax, tol;
  std::optional<int> n_energies;
  std::optional<unsigned> jobs;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "INI config file ([potential], [solver], [grid], [output])");
    app.add_option("--model", model, "scarf2 | scarf2-cd | rectangular | double-delta | profile");
    app.add_option("--profile", profile, "profile pair for --model profile");
    app.add_option("--v1", v1, "strength of the real part");
    app.add_option("--v2", v2, "strength of the imaginary part");
    app.add_option("--c", c, "c of the (c,d) Scarf II parametrization");
    app.add_option("--d", d, "d of the (c,d) Scarf II parametrization");
    app.add_option("--half-width", half_width, "L (rectangular, compact profiles) or a (double delta)");
    app.add_option("--match-radius", match_radius, "matching radius L; 0 = automatic");
    app.add_option("--rel-tol", rel_tol, "integrator relative tolerance");
    app.add_option("--method", method, "adaptive | rk4");
    app.add_option("--emin", emin, "lowest energy of the grid");
    app.add_option("--emax", emax, "highest energy of the grid");
    app.add_option("--n-energies", n_energies, "number of grid energies");
    app.add_option("--spacing", spacing, "linear | log");
    app.add_option("--tol", tol, "unimodularity tolerance");
    app.add_option("--jobs", jobs, "worker threads");
    app.add_option("--format", format, "csv | json");
    app.add_option("--out", out, "output file (default: standard output)");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    PotentialSpec raw = cfg.potential;
    if (model) raw.model = model_from_string(*model);
    if (profile) raw.profile = profile_from_string(*profile);
    if (v1) raw.v1 = *v1;
    if (v2) raw.v2 = *v2;
    if (c) raw.c = *c;
    if (d) raw.d = *d;
    if (half_width) raw.half_width = *half_width;
    cfg.potential = make_potential(raw);
    if (match_radius) cfg.solver.match_radius = *match_radius;
    if (rel_tol) cfg.solver.rel_tol = *rel_tol;
    if (method) cfg.solver.method = method_from_string(*method);
    if (emin) cfg.grid.emin = *emin;
    if (emax) cfg.grid.emax = *emax;
    if (n_energies) cfg.grid.n_energies = *n_energies;
    if (spacing) cfg.grid.spacing = spacing_from_string(*spacing);
    if (tol) cfg.grid.tol = *tol;
    if (jobs) cfg.grid.jobs = *jobs;
    if (format) cfg.output.format = format_from_string(*format);
    if (out) cfg.output.path = *out;
    cfg.validate();
    return cfg;
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.path.empty())
    std::cout << text;
  else
    write_file(cfg.output.path, text);
}

bool json_out(const RunConfig& cfg) { return cfg.output.format == Format::Json; }

int cmd_scatter(const Overrides& o, double energy) {
  const auto cfg = o.resolve();
  if (!(energy > 0.0)) throw DomainError("--energy must be positive");
  const auto data = scatter(cfg.potential, std::sqrt(energy), cfg.solver);
  const auto a = smatrix_analysis(data, cfg.grid.tol);
  const auto prov = make_provenance(config_hash(cfg, fmt::format("scatter {}", energy)));
  emit(cfg, json_out(cfg) ? scatter_json(data, a, prov) : scatter_csv(data, a, prov));
  if (data.near_pole) std::cerr << "warning: energy lies near a pole of t; amplitudes are ill-conditioned\n";
  return 0;
}

int cmd_transparency(const Overrides& o, double jump) {
  const auto cfg = o.resolve();
  ScanOptions so;
  so.tol = cfg.grid.tol;
  so.jobs = cfg.grid.jobs;
  so.jump_threshold = jump;
  const auto rep = transparency_scan(cfg.potential, cfg.energies(), cfg.solver, so);
  const auto prov = make_provenance(config_hash(cfg, fmt::format("transparency {}", jump)));
  emit(cfg, json_out(cfg) ? transparency_json(rep, prov) : transparency_csv(rep, prov));

  std::cerr << (rep.transparent ? "transparent" : "not transparent") << " on the grid\n";
  for (const auto& v : rep.violation_intervals) std::cerr << fmt::format("  violation: [{:.6g}, {:.6g}]\n", v.lo, v.hi);
  if (rep.crossover_E_s) std::cerr << fmt::format("  crossover E_s = {:.6g}\n", *rep.crossover_E_s);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

struct SpectrumArgs {
  double k_max = 5.0;
  std::vector<double> rect;
  std::vector<double> ep_range;
  double ep_resolution = 1e-3;
};

int cmd_spectrum(const Overrides& o, const SpectrumArgs& s) {
  const auto cfg = o.resolve();
  SpectrumRequest req;
  req.k_max = s.k_max;
  req.ep_resolution = s.ep_resolution;
  if (!s.rect.empty()) req.rect = ComplexRect{s.rect[0], s.rect[1], s.rect[2], s.rect[3]};
  if (!s.ep_range.empty()) req.ep_range = std::pair{s.ep_range[0], s.ep_range[1]};
  ProbeConfig pc;
  pc.solver.match_radius = cfg.solver.match_radius;
  pc.solver.support_tol = cfg.solver.support_tol;
  const auto rep = spectral_report(cfg.potential, req, pc);
  const auto prov = make_provenance(config_hash(
      cfg, fmt::format("spectrum {} [{}] [{}] {}", s.k_max, fmt::join(s.rect, " "), fmt::join(s.ep_range, " "),
                       s.ep_resolution)));
  emit(cfg, json_out(cfg) ? spectral_json(rep, prov) : spectral_csv(rep, prov));

  auto opt = [](const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? fmt::format("{:.6g}", v[i]) : std::string("-");
  };
  const auto& p = cfg.potential;
  std::cerr << fmt::format("{:>22} {:>12} {:>12} {:>12}\n", "V", "E0", "E1", "E*");
  std::cerr << fmt::format("{:>22} {:>12} {:>12} {:>12}\n",
                           fmt::format("{:.6g}{:+.6g}i", p.strength_v1(), p.strength_v2()), opt(rep.bound_states, 0),
                           opt(rep.bound_states, 1), opt(rep.singularities, 0));
  for (std::size_t i = 2; i < rep.bound_states.size(); ++i)
    std::cerr << fmt::format("  E{} = {:.6g}\n", i, rep.bound_states[i]);
  for (std::size_t i = 1; i < rep.singularities.size(); ++i)
    std::cerr << fmt::format("  E*{} = {:.6g}\n", i, rep.singularities[i]);
  if (rep.ep_estimate)
    std::cerr << fmt::format("  exceptional point V2 in [{:.6g}, {:.6g}]\n", rep.ep_estimate->lo, rep.ep_estimate->hi);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

struct VbetaArgs {
  std::vector<double> range;
  double resolution = 1e-3;
  std::string free = "v2";
};

int cmd_vbeta(const Overrides& o, const VbetaArgs& a) {
  const auto cfg = o.resolve();
  Family fam{cfg.potential, a.free == "d" ? Family::Free::D : Family::Free::V2};
  if (a.free != "d" && a.free != "v2") throw DomainError("--free must be v2 or d");
  VbetaOptions vo;
  vo.resolution = a.resolution;
  vo.scan.tol = cfg.grid.tol;
  vo.scan.jobs = cfg.grid.jobs;
  const auto res = vbeta_search(fam, a.range[0], a.range[1], cfg.energies(), cfg.solver, vo);
  const auto prov =
      make_provenance(config_hash(cfg, fmt::format("vbeta {} {} {} {}", a.range[0], a.range[1], a.resolution, a.free)));
  emit(cfg, json_out(cfg) ? vbeta_json(res, prov) : vbeta_csv(res, prov));
  for (const auto& b : res.brackets) std::cerr << fmt::format("boundary in [{:.8g}, {:.8g}]\n", b.lo, b.hi);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

struct PlaneArgs {
  std::vector<double> c_range{0.0, 1.0};
  std::vector<double> d_range{0.0, 0.4};
  int resolution = 64;
  int spot_checks = 0;
};

int cmd_plane(const Overrides& o, const PlaneArgs& a) {
  const auto cfg = o.resolve();
  PlaneScanOptions po;
  po.nc = po.nd = a.resolution;
  po.tol = cfg.grid.tol;
  po.spot_checks = a.spot_checks;
  po.jobs = cfg.grid.jobs;
  auto res = plane_scan(a.c_range[0], a.c_range[1], a.d_range[0], a.d_range[1], po, cfg.solver);
  res.grid.provenance = make_provenance(config_hash(
      cfg, fmt::format("plane {} {} {} {} {} {}", a.c_range[0], a.c_range[1], a.d_range[0], a.d_range[1],
                       a.resolution, a.spot_checks)));
  emit(cfg, json_out(cfg) ? sweep_json(res.grid) : sweep_csv(res.grid));
  std::cerr << fmt::format("boundary offset from contour: {:.3g} cells; spot checks {} ({} disagreements)\n",
                           res.max_boundary_offset, res.spot_checked, res.disagreements);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

int cmd_validate() {
  bool ok = true;
  for (const auto& r : run_validation()) {
    std::cout << fmt::format("[{}] {}: {}\n", r.pass ? "PASS" : "FAIL", r.name, r.detail);
    ok = ok && r.pass;
  }
  return ok ? 0 : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering from complex PT-symmetric potentials in one dimension"};
  app.set_version_flag("--version", PTSCAT_VERSION);
  app.require_subcommand(1);

  Overrides o;
  double energy = 0.0;
  auto* scatter_cmd = app.add_subcommand("scatter", "amplitudes and S-matrix eigenvalues at one energy");
  o.attach(*scatter_cmd);
  scatter_cmd->add_option("--energy", energy, "energy E = k^2")->required();

  double jump = 0.05;
  auto* transp = app.add_subcommand("transparency", "unimodularity of s+- over the energy grid");
  o.attach(*transp);
  transp->add_option("--jump", jump, "minimum jump of |s+| and |s-| reported as a crossover");

  SpectrumArgs sa;
  auto* spec = app.add_subcommand("spectrum", "bound states, spectral singularities, complex poles");
  o.attach(*spec);
  spec->add_option("--k-max", sa.k_max, "upper end of the real-axis scan");
  spec->add_option("--rect", sa.rect, "complex-k rectangle re_lo re_hi im_lo im_hi")->expected(4);
  spec->add_option("--ep-range", sa.ep_range, "V2 range for the exceptional-point search")->expected(2);
  spec->add_option("--ep-resolution", sa.ep_resolution, "bracket width of the exceptional point");

  auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  VbetaArgs va;
  auto* vbeta = sweep->add_subcommand("vbeta", "largest strength keeping transparency");
  o.attach(*vbeta);
  vbeta->add_option("--range", va.range, "lo hi of the free parameter")->expected(2)->required();
  vbeta->add_option("--resolution", va.resolution, "bracket width");
  vbeta->add_option("--free", va.free, "free parameter: v2 or d");
  PlaneArgs pa;
  auto* plane = sweep->add_subcommand("plane", "transparency map of the (c,d) plane");
  o.attach(*plane);
  plane->add_option("--c-range", pa.c_range, "c range")->expected(2);
  plane->add_option("--d-range", pa.d_range, "d range")->expected(2);
  plane->add_option("--resolution", pa.resolution, "cells per axis (>= 16)");
  plane->add_option("--spot-checks", pa.spot_checks, "numeric verdicts on this many cells");

  auto* validate = app.add_subcommand("validate", "analytic-versus-numeric oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (scatter_cmd->parsed()) return cmd_scatter(o, energy);
    if (transp->parsed()) return cmd_transparency(o, jump);
    if (spec->parsed()) return cmd_spectrum(o, sa);
    if (vbeta->parsed()) return cmd_vbeta(o, va);
    if (plane->parsed()) return cmd_plane(o, pa);
    if (validate->parsed()) return cmd_validate();
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what();
    if (!std::isnan(e.location())) std::cerr << fmt::format(" (at x = {:.6g})", e.location());
    std::cerr << "\n";
    return kNumeric;
  }
  return kUsage;
}
