#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracle_values.hpp"
#include "radiant/harnack.hpp"

using namespace radiant;

TEST_SUITE("harnack") {

TEST_CASE("log grids") {
  const auto g = log_grid(1.0, 1000.0, 4);
  REQUIRE(g.size() == 13);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 1000.0);
  CHECK(g[4] == doctest::Approx(10.0));
}

TEST_CASE("linear family: ratios scale with lambda") {
  const auto lin = Nonlinearity::separable(RadialWeight::constant(), Psi::linear());
  const std::vector<double> grid{1.0, 10.0};
  const auto rep = harnack_scan(Space::euclidean(3), lin, 1.0, {0.0, 0.5}, grid);
  REQUIRE(rep.rows.size() == 2);
  // u = lambda sinh(r) / (r sinh 1): sup at r = 0.5, inf at r = 0
  const double sup1 = std::sinh(0.5) / (0.5 * std::sinh(1.0));
  const double inf1 = 1.0 / std::sinh(1.0);
  CHECK(rep.rows[0].sup == doctest::Approx(sup1).epsilon(1e-8));
  CHECK(rep.rows[0].inf == doctest::Approx(inf1).epsilon(1e-8));
  CHECK(rep.rows[1].ratio == doctest::Approx(10.0 * sup1 / (1.0 + 10.0 * inf1)).epsilon(1e-8));
  CHECK(rep.rows[0].monotone);
}

TEST_CASE("zero nonlinearity: constant solutions") {
  const std::vector<double> grid{1.0, 10.0, 100.0};
  const auto rep = harnack_scan(Space::damek_ricci(2, 1), Nonlinearity::separable(RadialWeight::constant(), Psi::zero()),
                                2.0, {0.5, 1.0}, grid);
  for (const auto& row : rep.rows) CHECK(row.ratio == doctest::Approx(row.lambda / (1.0 + row.lambda)).epsilon(1e-12));
  CHECK(rep.C_estimate < 1.0);
}

TEST_CASE("sublinear family stabilises") {
  const auto nl = Nonlinearity::separable(RadialWeight::exponential(1.0), Psi::sqrt());
  const auto rep = harnack_scan(Space::damek_ricci(2, 1), nl, 4.0, {0.0, 2.0}, log_grid(1.0, 1000.0, 4));
  CHECK(rep.failed_rows == 0);
  CHECK(std::isfinite(rep.C_estimate));
  CHECK(rep.stabilized);
}

TEST_CASE("scan requires the sublinear flag") {
  const auto sup = Nonlinearity::separable(RadialWeight::constant(), Psi::power(2.0));
  const std::vector<double> grid{1.0};
  CHECK_THROWS_AS(harnack_scan(Space::euclidean(3), sup, 1.0, {0.0, 0.5}, grid), Error);
}

TEST_CASE("Newtonian potential bound") {
  // density 1 on the unit ball of R^3: (1 - rho^2/3) / 2, largest at the centre
  CHECK(newtonian_potential_sup(3, 1.0, [](double) { return 1.0; }) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("3-G Monte Carlo: reference value and reproducibility") {
  const double x[3] = {0.0, 0.0, 0.0};
  const double y[3] = {0.5, 0.0, 0.0};
  auto one = [](double) { return 1.0; };
  const ThreeGResult a = three_g_ratio(3, 1.0, one, x, y, 42, 100000);
  const ThreeGResult b = three_g_ratio(3, 1.0, one, x, y, 42, 100000);
  CHECK(std::memcmp(&a.lhs, &b.lhs, sizeof(double)) == 0);
  CHECK(std::fabs(a.lhs - oracle::three_g_lhs) < 4.0 * a.std_error);
  CHECK(a.gamma == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(a.rhs_factor == doctest::Approx(0.5 / (4.0 * 3.141592653589793)).epsilon(1e-12));
  const ThreeGResult c = three_g_ratio(3, 1.0, one, x, y, 7, 100000);
  CHECK(c.lhs != a.lhs);
}

}
