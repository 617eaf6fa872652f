#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ptscat/config.hpp"
#include "ptscat/error.hpp"
#include "ptscat/export.hpp"

using namespace ptscat;

namespace {

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "ptscat_io_tests";
  std::filesystem::create_directories(p);
  return p;
}

std::string first_data_line(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.starts_with("#")) return line;
  return {};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PTSCAT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"(
[potential]
model = rectangular
v1 = 5
v2 = 2.4
half_width = 2

[solver]
method = rk4
step = 0.005

[grid]
emin = 0.01
emax = 5
n_energies = 11
spacing = log
jobs = 3

[output]
format = json
)");
  CHECK(cfg.potential == PotentialSpec::rectangular(5.0, 2.4, 2.0));
  CHECK(cfg.solver.method == Method::FixedRk4);
  CHECK(cfg.solver.step == 0.005);
  CHECK(cfg.grid.jobs == 3u);
  CHECK(cfg.output.format == Format::Json);
  const auto e = cfg.energies();
  REQUIRE(e.size() == 11);
  CHECK(e.front() == 0.01);
  CHECK(e.back() == 5.0);
  CHECK(e[5] == doctest::Approx(std::sqrt(0.05)));

  const auto cd = parse_config("[potential]\nmodel = scarf2-cd\nc = 0.4\nd = 0.3\n");
  CHECK(cd.potential.strength_v1() == doctest::Approx(1.19));

  const auto defaults = parse_config("");
  CHECK(defaults.potential == PotentialSpec::scarf(1.0, 0.5));
  CHECK(defaults.energies().size() == 200);

  CHECK_THROWS_AS(parse_config("[potential]\ncolour = red\n"), DomainError);
  CHECK_THROWS_AS(parse_config("[plot]\nx = 1\n"), DomainError);
  CHECK_THROWS_AS(parse_config("[potential]\nv1 = abc\n"), DomainError);
  CHECK_THROWS_AS(parse_config("[grid]\nemin = 2\nemax = 1\n"), DomainError);
  CHECK_THROWS_AS(parse_config("[potential]\nmodel = rectangular\nhalf_width = -1\n"), DomainError);
  CHECK_THROWS_AS(load_config(scratch_dir() / "missing.ini"), IoError);
}

TEST_CASE("canonical text and hashing") {
  auto cfg = parse_config("[potential]\nmodel = profile\nprofile = triangular\nv1 = 0.1\nv2 = 0.3\nhalf_width = 1.5\n");
  const auto text = canonical_text(cfg);
  const auto again = parse_config(text);
  CHECK(canonical_text(again) == text);
  CHECK(again.potential == cfg.potential);

  const auto h = config_hash(cfg);
  CHECK(h.size() == 16);
  CHECK(text_hash("") == "cbf29ce484222325");
  auto other = cfg;
  other.grid.jobs = 8;
  other.output.path = "elsewhere.csv";
  CHECK(config_hash(other) == h);
  other.potential.v2 = 0.30000000000000004;
  CHECK(config_hash(other) != h);
  CHECK(config_hash(cfg, "sweep") != h);

  CHECK(format_from_string("json") == Format::Json);
  CHECK(method_from_string(to_string(Method::AdaptiveRk)) == Method::AdaptiveRk);
  CHECK(spacing_from_string("log") == Spacing::Log);
  CHECK_THROWS_AS(format_from_string("xml"), DomainError);
}

TEST_CASE("sweep grid JSON round trip") {
  SweepGrid g{{{"c", {0.1, 1.0 / 3.0}}, {"d", {2.0 / 7.0, 0.2}}},
              {"transparent", "B0"},
              {{1.0, 0.1 + 0.2}, {0.0, 5e-324}, {1.0, -1.0 / 3.0}, {0.0, 1e300}},
              {"0123456789abcdef", "0.1.0"}};
  const auto text = sweep_json(g);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("axes").size() == 2);
  CHECK(j.at("cells").size() == 4);
  CHECK(j.at("provenance").at("config_hash") == "0123456789abcdef");
  const auto back = sweep_from_json(text);
  CHECK(back == g);
  CHECK(sweep_json(back) == text);

  g.cells[1][1] = INFINITY;
  CHECK(std::isnan(sweep_from_json(sweep_json(g)).cells[1][1]));
  CHECK_THROWS_AS(sweep_from_json("{\"axes\": 3}"), DomainError);
  g.cells.pop_back();
  CHECK_THROWS_AS(sweep_json(g), DomainError);
}

TEST_CASE("CSV schema and determinism") {
  const auto spec = PotentialSpec::rectangular(5.0, 2.4, 2.0);
  const auto energies = linear_grid(0.05, 1.0, 9);
  const auto prov = make_provenance("feedfacecafebeef");
  const auto a = transparency_csv(transparency_scan(spec, energies), prov);
  ScanOptions par;
  par.jobs = 3;
  const auto b = transparency_csv(transparency_scan(spec, energies, {}, par), prov);
  CHECK(a == b);
  CHECK(a.starts_with("# config_hash=feedfacecafebeef\n# tool_version="));
  CHECK(first_data_line(a) ==
        "E,re_r_left,im_r_left,re_r_right,im_r_right,re_t,im_t,abs_s_plus,abs_s_minus,beta,detS_abs,unimodular,near_pole");
  std::istringstream in(a);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) rows += line.starts_with("#") ? 0 : 1;
  CHECK(rows == 10);

  const auto j = nlohmann::json::parse(transparency_json(transparency_scan(spec, energies), prov));
  CHECK(j.at("grid").size() == 9);
  CHECK(j.at("grid")[0].at("t").size() == 2);
  CHECK(j.at("provenance").at("tool_version") == PTSCAT_VERSION);

  SweepGrid g{{{"c", {0.1, 0.2}}, {"d", {0.3}}}, {"B0"}, {{1.5}, {2.5}}, prov};
  CHECK(first_data_line(sweep_csv(g)) == "c,d,B0");
  CHECK(sweep_csv(g).ends_with("0.10000000000000001,0.29999999999999999,1.5\n"
                               "0.20000000000000001,0.29999999999999999,2.5\n"));
}

TEST_CASE("files") {
  const auto p = scratch_dir() / "out.txt";
  write_file(p, "hello\n");
  CHECK(read_file(p) == "hello\n");
  try {
    write_file(scratch_dir() / "no" / "such" / "dir.txt", "x");
    FAIL("expected an I/O error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("no/such/dir.txt") != std::string::npos);
  }
  CHECK_THROWS_AS(read_file(scratch_dir() / "absent.txt"), IoError);
}

TEST_CASE("command-line exit codes and reproducible output") {
  const auto dir = scratch_dir();
  CHECK(run_cli("scatter --model rectangular --v1 5 --v2 2.2 --half-width 2 --energy 1") == 0);
  CHECK(run_cli("scatter --model lorentzian --energy 1") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("transparency --emin 2 --emax 1") == 1);
  CHECK(run_cli("transparency --n-energies 5 --out " + (dir / "no/such/file.csv").string()) == 1);
  // a coarse fixed step on a very deep well overflows
  const auto stiff = dir / "stiff.ini";
  write_file(stiff, "[potential]\nmodel = rectangular\nv1 = 1e6\nv2 = 0\nhalf_width = 100\n"
                    "[solver]\nmethod = rk4\nstep = 0.5\n");
  CHECK(run_cli("scatter --config " + stiff.string() + " --energy 1") == 2);

  const auto ini = dir / "run.ini";
  write_file(ini, "[potential]\nmodel = rectangular\nv1 = 5\nv2 = 2.4\nhalf_width = 2\n[grid]\nn_energies = 12\n");
  const auto out1 = dir / "a.json", out2 = dir / "b.json";
  CHECK(run_cli("transparency --config " + ini.string() + " --format json --out " + out1.string()) == 0);
  CHECK(run_cli("transparency --config " + ini.string() + " --format json --jobs 4 --out " + out2.string()) == 0);
  CHECK(read_file(out1) == read_file(out2));
  CHECK(nlohmann::json::parse(read_file(out1)).at("grid").size() == 12);
}

}  // TEST_SUITE
