#include <cmath>

#include "doctest.h"
#include "ptscat/error.hpp"
#include "ptscat/scarf.hpp"
#include "ptscat/sweep.hpp"

using namespace ptscat;

TEST_SUITE("sweep") {

TEST_CASE("V_beta of the rectangular well") {
  const Family fam{PotentialSpec::rectangular(5.0, 2.3, 2.0), Family::Free::V2};
  VbetaOptions opt;
  opt.resolution = 0.01;
  opt.coarse_points = 2;
  opt.scan.jobs = 4;
  const auto res = vbeta_search(fam, 2.30, 2.40, linear_grid(0.01, 5.0, 200), {}, opt);
  REQUIRE(res.brackets.size() == 1);
  CHECK(res.brackets[0].lo >= 2.30);
  CHECK(res.brackets[0].hi <= 2.40);
  CHECK(res.brackets[0].hi - res.brackets[0].lo <= 0.01);
  CHECK(res.warnings.empty());
}

TEST_CASE("numeric transparency boundary follows the analytic contour") {
  const auto energies = log_grid(1e-4, 5.0, 48);
  for (double c : {0.5, 0.25}) {
    const Family fam{PotentialSpec::scarf_cd(c, 0.1), Family::Free::D};
    VbetaOptions opt;
    opt.scan.jobs = 4;
    opt.coarse_points = 3;
    const auto res = vbeta_search(fam, 0.1, 0.4, energies, {}, opt);
    REQUIRE(res.brackets.size() == 1);
    const double mid = 0.5 * (res.brackets[0].lo + res.brackets[0].hi);
    CHECK(mid == doctest::Approx(transparency_contour(c)).epsilon(0.02));
    CHECK(res.brackets[0].hi - res.brackets[0].lo <= 1e-3);
  }
}

TEST_CASE("search preconditions") {
  const Family fam{PotentialSpec::rectangular(5.0, 2.3, 2.0), Family::Free::V2};
  const auto g = linear_grid(0.01, 1.0, 40);
  CHECK_THROWS_AS(vbeta_search(fam, 2.4, 2.5, g), DomainError);
  CHECK_THROWS_AS(vbeta_search(fam, 2.4, 2.3, g), DomainError);
  const Family wrong{PotentialSpec::scarf(1.0, 0.5), Family::Free::D};
  CHECK_THROWS_AS(wrong.at(0.2), DomainError);
  const Family ok{PotentialSpec::scarf_cd(0.5, 0.1), Family::Free::D};
  CHECK(ok.at(0.2) == PotentialSpec::scarf_cd(0.5, 0.2));
}

TEST_CASE("plane scan") {
  PlaneScanOptions opt;
  opt.spot_checks = 24;
  opt.jobs = 4;
  const auto res = plane_scan(0.0, 1.0, 0.0, 0.4, opt);
  const auto& g = res.grid;
  CHECK_NOTHROW(g.validate());
  CHECK(g.cell_count() == 64u * 64u);
  CHECK(res.max_boundary_offset <= 1.0);
  CHECK(res.spot_checked == 24);
  CHECK(res.disagreements == 0);

  const double dmax = transparency_contour(0.5);
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      const auto& cell = g.cells[i * 64 + j];
      const double c = g.axes[0].values[i], d = g.axes[1].values[j];
      if (d > dmax) CHECK(cell[0] == 0.0);
      CHECK(cell[1] == doctest::Approx(scarf_beta_broken(c, d, 0.0)));
      CHECK((cell[0] == 1.0) == (d <= transparency_contour(c) + 1e-12));
    }
  }
  int checked = 0;
  for (const auto& cell : g.cells) checked += cell[3] == 1.0 ? 1 : 0;
  CHECK(checked == 24);
  for (int i = 0; i <= 100; ++i) CHECK(scarf_beta_broken(i / 100.0, 0.0, 0.0) <= 2.0);

  PlaneScanOptions coarse;
  coarse.nc = 8;
  CHECK_THROWS_AS(plane_scan(0.0, 1.0, 0.0, 0.4, coarse), DomainError);
}

TEST_CASE("grid helpers") {
  const auto g = log_grid(1e-3, 10.0, 5);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 10.0);
  CHECK(g[2] == doctest::Approx(0.1));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), DomainError);

  SweepGrid s{{{"a", {1.0, 2.0}}, {"b", {3.0}}}, {"x"}, {{1.0}}, {}};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.cells.push_back({2.0});
  CHECK_NOTHROW(s.validate());
}

}  // TEST_SUITE
