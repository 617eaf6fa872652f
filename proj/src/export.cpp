#include "ptscat/export.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "ptscat/error.hpp"

namespace ptscat {

namespace {

using nlohmann::json;

std::string num(double v) { return fmt::format("{:.17g}", v); }

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json complex(cplx z) { return json::array({real(z.real()), real(z.imag())}); }

json provenance(const Provenance& p) {
  return {{"config_hash", p.config_hash}, {"tool_version", p.tool_version}};
}

std::string csv_preamble(const Provenance& p) {
  return fmt::format("# config_hash={}\n# tool_version={}\n", p.config_hash, p.tool_version);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Provenance make_provenance(const std::string& config_hash) { return {config_hash, PTSCAT_VERSION}; }

std::string transparency_csv(const TransparencyReport& rep, const Provenance& prov) {
  std::string out = csv_preamble(prov);
  out += "E,re_r_left,im_r_left,re_r_right,im_r_right,re_t,im_t,abs_s_plus,abs_s_minus,beta,detS_abs,unimodular,near_pole\n";
  for (const auto& r : rep.grid)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r.E), num(r.r_left.real()), num(r.r_left.imag()),
                       num(r.r_right.real()), num(r.r_right.imag()), num(r.t.real()), num(r.t.imag()),
                       num(r.abs_s_plus), num(r.abs_s_minus), num(r.beta), num(r.detS_abs), r.unimodular ? 1 : 0,
                       r.near_pole ? 1 : 0);
  return out;
}

std::string scatter_csv(const ScatteringData& d, const SMatrixAnalysis& a, const Provenance& prov) {
  std::string out = csv_preamble(prov);
  out += "quantity,re,im,abs\n";
  auto row = [&](const char* name, cplx z) {
    out += fmt::format("{},{},{},{}\n", name, num(z.real()), num(z.imag()), num(std::abs(z)));
  };
  row("k", d.k);
  row("energy", d.energy);
  row("r_left", d.r_left);
  row("r_right", d.r_right);
  row("t", d.t);
  row("t_right", d.t_right);
  row("s_plus", a.s_plus);
  row("s_minus", a.s_minus);
  row("det_s", a.det_s);
  row("beta", a.beta);
  return out;
}

std::string spectral_csv(const SpectralReport& rep, const Provenance& prov) {
  std::string out = csv_preamble(prov);
  out += "kind,re_E,im_E\n";
  for (double e : rep.bound_states) out += fmt::format("bound_state,{},0\n", num(e));
  for (double e : rep.singularities) out += fmt::format("singularity,{},0\n", num(e));
  for (const auto& [a, b] : rep.complex_poles) {
    out += fmt::format("complex_pole,{},{}\n", num(a.real()), num(a.imag()));
    out += fmt::format("complex_pole,{},{}\n", num(b.real()), num(b.imag()));
  }
  if (rep.ep_estimate) out += fmt::format("ep_estimate,{},0\n", num(rep.ep_estimate->v_alpha));
  return out;
}

std::string sweep_csv(const SweepGrid& grid) {
  grid.validate();
  std::string out = csv_preamble(grid.provenance);
  std::vector<std::string> header;
  for (const auto& a : grid.axes) header.push_back(a.name);
  for (const auto& f : grid.fields) header.push_back(f);
  out += fmt::format("{}\n", fmt::join(header, ","));
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    std::vector<std::string> row;
    std::size_t rest = i;
    std::vector<double> coords(grid.axes.size());
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      const auto n = grid.axes[a].values.size();
      coords[a] = grid.axes[a].values[rest % n];
      rest /= n;
    }
    for (double c : coords) row.push_back(num(c));
    for (double v : grid.cells[i]) row.push_back(num(v));
    out += fmt::format("{}\n", fmt::join(row, ","));
  }
  return out;
}

std::string vbeta_csv(const VbetaResult& res, const Provenance& prov) {
  std::string out = csv_preamble(prov);
  out += "lo,hi\n";
  for (const auto& b : res.brackets) out += fmt::format("{},{}\n", num(b.lo), num(b.hi));
  return out;
}

std::string transparency_json(const TransparencyReport& rep, const Provenance& prov) {
  json grid = json::array();
  for (const auto& r : rep.grid)
    grid.push_back({{"E", real(r.E)},
                    {"r_left", complex(r.r_left)},
                    {"r_right", complex(r.r_right)},
                    {"t", complex(r.t)},
                    {"abs_s_plus", real(r.abs_s_plus)},
                    {"abs_s_minus", real(r.abs_s_minus)},
                    {"beta", real(r.beta)},
                    {"detS_abs", real(r.detS_abs)},
                    {"unimodular", r.unimodular},
                    {"near_pole", r.near_pole}});
  json intervals = json::array();
  for (const auto& v : rep.violation_intervals) intervals.push_back({real(v.lo), real(v.hi)});
  json j{{"provenance", provenance(prov)},
         {"transparent", rep.transparent},
         {"violation_intervals", intervals},
         {"crossover_E_s", rep.crossover_E_s ? real(*rep.crossover_E_s) : json(nullptr)},
         {"near_pole_energies", rep.near_pole_energies},
         {"warnings", rep.warnings},
         {"grid", grid}};
  return dump(j);
}

std::string scatter_json(const ScatteringData& d, const SMatrixAnalysis& a, const Provenance& prov) {
  json j{{"provenance", provenance(prov)},
         {"k", complex(d.k)},
         {"energy", complex(d.energy)},
         {"r_left", complex(d.r_left)},
         {"r_right", complex(d.r_right)},
         {"t", complex(d.t)},
         {"t_right", complex(d.t_right)},
         {"R_left", real(d.R_left())},
         {"R_right", real(d.R_right())},
         {"T", real(d.T())},
         {"near_pole", d.near_pole},
         {"s_plus", complex(a.s_plus)},
         {"s_minus", complex(a.s_minus)},
         {"beta", real(a.beta)},
         {"det_s", complex(a.det_s)},
         {"unimodular", a.unimodular}};
  return dump(j);
}

std::string spectral_json(const SpectralReport& rep, const Provenance& prov) {
  json poles = json::array();
  for (const auto& [a, b] : rep.complex_poles) poles.push_back({complex(a), complex(b)});
  json ep = nullptr;
  if (rep.ep_estimate)
    ep = {{"v_alpha", real(rep.ep_estimate->v_alpha)},
          {"bracket", {real(rep.ep_estimate->lo), real(rep.ep_estimate->hi)}},
          {"count_lo", rep.ep_estimate->count_lo}};
  json j{{"provenance", provenance(prov)},
         {"bound_states", rep.bound_states},
         {"singularities", rep.singularities},
         {"complex_poles", poles},
         {"ep_estimate", ep},
         {"warnings", rep.warnings}};
  return dump(j);
}

std::string sweep_json(const SweepGrid& grid) {
  grid.validate();
  json axes = json::array();
  for (const auto& a : grid.axes) {
    json values = json::array();
    for (double v : a.values) values.push_back(real(v));
    axes.push_back({{"name", a.name}, {"values", values}});
  }
  json cells = json::array();
  for (const auto& c : grid.cells) {
    json row = json::array();
    for (double v : c) row.push_back(real(v));
    cells.push_back(row);
  }
  json j{{"provenance", provenance(grid.provenance)}, {"axes", axes}, {"fields", grid.fields}, {"cells", cells}};
  return dump(j);
}

std::string vbeta_json(const VbetaResult& res, const Provenance& prov) {
  json brackets = json::array();
  for (const auto& b : res.brackets) brackets.push_back({real(b.lo), real(b.hi)});
  json j{{"provenance", provenance(prov)}, {"brackets", brackets}, {"warnings", res.warnings}};
  return dump(j);
}

SweepGrid sweep_from_json(std::string_view text) {
  auto value = [](const json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  try {
    const json j = json::parse(text);
    SweepGrid g;
    g.provenance = {j.at("provenance").at("config_hash").get<std::string>(),
                    j.at("provenance").at("tool_version").get<std::string>()};
    for (const auto& a : j.at("axes")) {
      SweepAxis axis{a.at("name").get<std::string>(), {}};
      for (const auto& v : a.at("values")) axis.values.push_back(value(v));
      g.axes.push_back(std::move(axis));
    }
    g.fields = j.at("fields").get<std::vector<std::string>>();
    for (const auto& c : j.at("cells")) {
      std::vector<double> row;
      for (const auto& v : c) row.push_back(value(v));
      g.cells.push_back(std::move(row));
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed sweep JSON: ") + e.what());
  }
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ptscat
