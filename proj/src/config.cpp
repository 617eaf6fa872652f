#include "ptscat/config.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "ptscat/error.hpp"
#include "ptscat/smatrix.hpp"
#include "ptscat/sweep.hpp"

namespace ptscat {

namespace pt = boost::property_tree;

namespace {

template <class E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<Format, 2> kFormats{{{Format::Csv, "csv"}, {Format::Json, "json"}}};
constexpr NameTable<Method, 2> kMethods{{{Method::FixedRk4, "rk4"}, {Method::AdaptiveRk, "adaptive"}}};
constexpr NameTable<Spacing, 2> kSpacings{{{Spacing::Linear, "linear"}, {Spacing::Log, "log"}}};

template <class E, std::size_t N>
std::string_view name_of(const NameTable<E, N>& table, E e) {
  for (const auto& [k, v] : table)
    if (k == e) return v;
  return "?";
}

template <class E, std::size_t N>
E value_of(const NameTable<E, N>& table, std::string_view name, const char* what) {
  for (const auto& [k, v] : table)
    if (v == name) return k;
  throw DomainError(fmt::format("unknown {} '{}'", what, name));
}

const std::set<std::string>& allowed_keys(const std::string& section) {
  static const std::set<std::string> potential{"model", "v1", "v2", "c", "d", "half_width", "profile"};
  static const std::set<std::string> solver{"match_radius", "step", "rel_tol", "abs_tol", "method", "support_tol"};
  static const std::set<std::string> grid{"emin", "emax", "n_energies", "spacing", "tol", "jobs"};
  static const std::set<std::string> output{"format", "path"};
  if (section == "potential") return potential;
  if (section == "solver") return solver;
  if (section == "grid") return grid;
  if (section == "output") return output;
  throw DomainError(fmt::format("unknown config section [{}]", section));
}

template <class T>
T get(const pt::ptree& tree, const char* path, T fallback) {
  const auto node = tree.get_child_optional(path);
  if (!node) return fallback;
  try {
    return node->get_value<T>();
  } catch (const pt::ptree_bad_data&) {
    throw DomainError(fmt::format("config key {} has an invalid value '{}'", path, node->data()));
  }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::string_view to_string(Format f) { return name_of(kFormats, f); }
Format format_from_string(std::string_view name) { return value_of(kFormats, name, "output format"); }
std::string_view to_string(Method m) { return name_of(kMethods, m); }
Method method_from_string(std::string_view name) { return value_of(kMethods, name, "integration method"); }
std::string_view to_string(Spacing s) { return name_of(kSpacings, s); }
Spacing spacing_from_string(std::string_view name) { return value_of(kSpacings, name, "grid spacing"); }

PotentialSpec make_potential(const PotentialSpec& raw) {
  switch (raw.model) {
    case Model::ScarfII:
      return PotentialSpec::scarf(raw.v1, raw.v2);
    case Model::ScarfIIcd:
      return PotentialSpec::scarf_cd(raw.c, raw.d);
    case Model::Rectangular:
      return PotentialSpec::rectangular(raw.v1, raw.v2, raw.half_width);
    case Model::DoubleDelta:
      return PotentialSpec::double_delta(raw.v1, raw.v2, raw.half_width);
    case Model::Profile:
      return PotentialSpec::shaped(raw.profile, raw.v1, raw.v2, raw.half_width);
  }
  throw DomainError("unknown model");
}

std::vector<double> RunConfig::energies() const {
  if (grid.spacing == Spacing::Log) return log_grid(grid.emin, grid.emax, grid.n_energies);
  return linear_grid(grid.emin, grid.emax, grid.n_energies);
}

void RunConfig::validate() const {
  solver.validate();
  if (!(grid.emin > 0.0) || !(grid.emax > grid.emin)) throw DomainError("energy grid needs 0 < emin < emax");
  if (grid.n_energies < 2) throw DomainError("energy grid needs at least two points");
  if (!(grid.tol > 0.0)) throw DomainError("unimodularity tolerance must be positive");
  if (grid.jobs < 1) throw DomainError("jobs must be at least 1");
}

RunConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw DomainError(fmt::format("malformed config (line {}): {}", e.line(), e.message()));
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw DomainError(fmt::format("config key '{}' outside a section", section));
    const auto& keys = allowed_keys(section);
    for (const auto& [key, value] : body)
      if (!keys.contains(key)) throw DomainError(fmt::format("unknown config key {}.{}", section, key));
  }

  RunConfig cfg;
  PotentialSpec raw = cfg.potential;
  raw.model = model_from_string(get<std::string>(tree, "potential.model", std::string(to_string(raw.model))));
  raw.v1 = get(tree, "potential.v1", raw.v1);
  raw.v2 = get(tree, "potential.v2", raw.v2);
  raw.c = get(tree, "potential.c", raw.c);
  raw.d = get(tree, "potential.d", raw.d);
  raw.half_width = get(tree, "potential.half_width", raw.half_width);
  if (const auto p = tree.get_optional<std::string>("potential.profile")) raw.profile = profile_from_string(*p);
  cfg.potential = make_potential(raw);

  auto& s = cfg.solver;
  s.match_radius = get(tree, "solver.match_radius", s.match_radius);
  s.step = get(tree, "solver.step", s.step);
  s.rel_tol = get(tree, "solver.rel_tol", s.rel_tol);
  s.abs_tol = get(tree, "solver.abs_tol", s.abs_tol);
  s.support_tol = get(tree, "solver.support_tol", s.support_tol);
  if (const auto m = tree.get_optional<std::string>("solver.method")) s.method = method_from_string(*m);

  auto& g = cfg.grid;
  g.emin = get(tree, "grid.emin", g.emin);
  g.emax = get(tree, "grid.emax", g.emax);
  g.n_energies = get(tree, "grid.n_energies", g.n_energies);
  g.tol = get(tree, "grid.tol", g.tol);
  g.jobs = get(tree, "grid.jobs", g.jobs);
  if (const auto sp = tree.get_optional<std::string>("grid.spacing")) g.spacing = spacing_from_string(*sp);

  if (const auto f = tree.get_optional<std::string>("output.format")) cfg.output.format = format_from_string(*f);
  cfg.output.path = get<std::string>(tree, "output.path", cfg.output.path);

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string canonical_text(const RunConfig& cfg) {
  const auto& p = cfg.potential;
  std::string out = fmt::format("[potential]\nmodel = {}\n", to_string(p.model));
  switch (p.model) {
    case Model::ScarfIIcd:
      out += fmt::format("c = {}\nd = {}\n", num(p.c), num(p.d));
      break;
    case Model::ScarfII:
      out += fmt::format("v1 = {}\nv2 = {}\n", num(p.v1), num(p.v2));
      break;
    case Model::Profile:
      out += fmt::format("profile = {}\n", to_string(p.profile));
      [[fallthrough]];
    default:
      out += fmt::format("v1 = {}\nv2 = {}\nhalf_width = {}\n", num(p.v1), num(p.v2), num(p.half_width));
  }
  const auto& s = cfg.solver;
  out += fmt::format("\n[solver]\nmatch_radius = {}\nstep = {}\nrel_tol = {}\nabs_tol = {}\nmethod = {}\nsupport_tol = {}\n",
                     num(s.match_radius), num(s.step), num(s.rel_tol), num(s.abs_tol), to_string(s.method),
                     num(s.support_tol));
  const auto& g = cfg.grid;
  out += fmt::format("\n[grid]\nemin = {}\nemax = {}\nn_energies = {}\nspacing = {}\ntol = {}\njobs = {}\n", num(g.emin),
                     num(g.emax), g.n_energies, to_string(g.spacing), num(g.tol), g.jobs);
  out += fmt::format("\n[output]\nformat = {}\n", to_string(cfg.output.format));
  if (!cfg.output.path.empty()) out += fmt::format("path = {}\n", cfg.output.path);
  return out;
}

std::string text_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

std::string config_hash(const RunConfig& cfg, std::string_view extra) {
  // Worker count and destination do not change results.
  RunConfig key = cfg;
  key.grid.jobs = 1;
  key.output.path.clear();
  return text_hash(canonical_text(key) + std::string(extra));
}

}  // namespace ptscat
