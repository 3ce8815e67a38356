#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "radiant/green.hpp"

using namespace radiant;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE("green") {

TEST_CASE("whole-space Green function against reference values") {
  CHECK(green_whole(Space::euclidean(3), 0.5) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-13));
  CHECK(green_whole(Space::euclidean(5), 2.0) == doctest::Approx(laplace_constant(5) / 8.0).epsilon(1e-13));
  // hyperbolic closed form (coth(r/2) - 1) / (8 pi)
  CHECK(green_whole(Space::damek_ricci(2, 0), 1.0) == doctest::Approx(oracle::G_dr20_r1).epsilon(1e-12));
  CHECK(green_whole(Space::damek_ricci(2, 1), 0.5) == doctest::Approx(oracle::G_dr21_r0p5).epsilon(1e-10));
  CHECK(green_whole(Space::damek_ricci(2, 1), 1.0) == doctest::Approx(oracle::G_dr21_r1).epsilon(1e-10));
  CHECK(green_whole(Space::damek_ricci(2, 1), 3.0) == doctest::Approx(oracle::G_dr21_r3).epsilon(1e-10));
  CHECK(green_whole(Space::damek_ricci(4, 3), 2.0) == doctest::Approx(oracle::G_dr43_r2).epsilon(1e-10));
  CHECK(green_whole(Space::damek_ricci(8, 7), 5.0) == doctest::Approx(oracle::G_dr87_r5).epsilon(1e-10));
}

TEST_CASE("ball Green function and the inverse density integral") {
  CHECK(green_ball(Space::euclidean(3), 1.0, 0.5) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-13));
  CHECK(green_ball(Space::damek_ricci(2, 1), 2.0, 0.5) == doctest::Approx(oracle::GB_dr21_R2_r0p5).epsilon(1e-10));
  CHECK(green_ball(Space::damek_ricci(2, 1), 2.0, 2.0 - 1e-9) < 1e-9);
  CHECK_THROWS_AS(green_ball(Space::damek_ricci(2, 1), 2.0, 2.0), Error);
  CHECK(inverse_density_integral(Space::damek_ricci(2, 1), 1.0, 3.0) ==
        doctest::Approx(oracle::invA_dr21_1_3).epsilon(1e-11));
  CHECK(density_tail_ratio(Space::euclidean(5), 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(density_tail_ratio(Space::damek_ricci(4, 3), 30.0) == doctest::Approx(1.0 / 5.0).epsilon(1e-8));
}

TEST_CASE("Yukawa Green functions") {
  CHECK(yukawa_green(3, 1.0, 1.0) == doctest::Approx(oracle::yukawa_3_1_r1).epsilon(1e-13));
  CHECK(yukawa_green(4, 1.0, 0.5) == doctest::Approx(oracle::yukawa_4_1_r0p5).epsilon(1e-12));
  CHECK(yukawa_green(5, 2.0, 1.5) == doctest::Approx(oracle::yukawa_5_2_r1p5).epsilon(1e-12));
  CHECK(yukawa_green_subordination(3, 1.0) == doctest::Approx(oracle::yukawa_3_1_r1).epsilon(1e-9));
  CHECK(yukawa_green_subordination(4, 0.5) == doctest::Approx(oracle::yukawa_4_1_r0p5).epsilon(1e-9));
  // near the pole g_{n,1} ~ laplace_constant(n) r^{2-n}
  CHECK(yukawa_green(6, 1.0, 1e-4) * 1e-16 == doctest::Approx(laplace_constant(6)).epsilon(1e-6));
}

TEST_CASE("image-method ball Green function") {
  const double x[3] = {0.0, 0.0, 0.0};
  const double y[3] = {0.0, 0.5, 0.0};
  CHECK(euclid_ball_green(3, 1.0, x, y) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-13));
  const double a[3] = {0.3, 0.1, -0.2};
  const double b[3] = {-0.4, 0.2, 0.1};
  CHECK(euclid_ball_green(3, 1.0, a, b) == doctest::Approx(euclid_ball_green(3, 1.0, b, a)).epsilon(1e-14));
  const double edge[3] = {0.6 * (1 - 1e-9), 0.8 * (1 - 1e-9), 0.0};
  CHECK(std::fabs(euclid_ball_green(3, 1.0, a, edge)) < 1e-8);
}

TEST_CASE("ball operator on closed-form potentials") {
  const RadialGrid grid = RadialGrid::uniform(0.0, 1.0, 101);
  const BallGreenOperator op(Space::euclidean(3), 1.0, grid);
  const std::vector<double> one(101, 1.0);
  const auto v = op.apply(one);
  const auto w = op.apply([](double) { return 1.0; });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double exact = (1.0 - grid[i] * grid[i]) / 6.0;
    CHECK(v[i] == doctest::Approx(exact).epsilon(1e-12));
    CHECK(w[i] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("ball operator inverts the radial Laplacian on Damek-Ricci spaces") {
  const Space s = Space::damek_ricci(4, 3);
  const RadialGrid grid = RadialGrid::uniform(0.0, 3.0, 301);
  const BallGreenOperator op(s, 3.0, grid);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(grid[i]) + 2.0;
  const auto u = op.apply(f);
  CHECK(std::fabs(u.back()) < 1e-14);
  const auto lap = radial_laplacian(s, RadialFunction(grid, u), 4);
  for (std::size_t i = 2; i + 2 < f.size(); ++i) CHECK(lap[i] == doctest::Approx(-f[i]).epsilon(1e-6));
}

TEST_CASE("nodal matrix, apply and the shifted solve agree") {
  const Space s = Space::damek_ricci(2, 1);
  const RadialGrid grid = RadialGrid::uniform(0.0, 2.0, 41);
  const BallGreenOperator op(s, 2.0, grid);
  const Eigen::MatrixXd M = op.matrix();
  std::vector<double> f(41), q(41), b(41);
  for (int i = 0; i < 41; ++i) {
    f[i] = std::exp(-grid[i]);
    q[i] = 1.0 + std::sin(3.0 * grid[i]) * 0.5;
    b[i] = 1.0 + grid[i];
  }
  const auto af = op.apply(f);
  const Eigen::VectorXd mf = M * Eigen::Map<const Eigen::VectorXd>(f.data(), 41);
  for (int i = 0; i < 41; ++i) CHECK(af[i] == doctest::Approx(mf[i]).epsilon(1e-13));

  const auto u = op.solve_shifted(q, b);
  std::vector<double> qu(41);
  for (int i = 0; i < 41; ++i) qu[i] = q[i] * u[i];
  const auto g = op.apply(qu);
  for (int i = 0; i < 41; ++i) CHECK(u[i] + g[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("log-scaled operator survives exponential volume growth") {
  // A(R) ~ e^{2QR} = e^{1200}; the plain-scale running sums would overflow
  const Space s = Space::damek_ricci(8, 7);
  const RadialGrid grid = RadialGrid::uniform(0.0, 80.0, 801);
  const BallGreenOperator op(s, 80.0, grid);
  const auto u = op.apply([](double) { return 1.0; });
  for (double v : u) CHECK(std::isfinite(v));
  // away from the origin and the boundary u'' + Q u' = -1 gives slope -1/Q
  CHECK((u[200] - u[400]) / 20.0 == doctest::Approx(1.0 / s.Q()).epsilon(1e-6));
}

TEST_CASE("whole-space potentials") {
  RadialSource exp3{[](double r) { return std::exp(-3.0 * r); }, TailModel::exponential(3.0)};
  CHECK(converged(green_potential_whole(Space::damek_ricci(2, 1), exp3, 10.0, {1e-10, 1e-10}).verdict));
  RadialSource one{[](double) { return 1.0; }, TailModel::unknown()};
  CHECK(diverged(green_potential_whole(Space::damek_ricci(2, 1), one, 10.0, {1e-10, 1e-10}).verdict));
  // Euclidean d = 3: (G f)(0) = int_0^inf r f(r) dr = 1/2 for f = (1+r)^{-3}
  RadialSource p3{[](double r) { return std::pow(1.0 + r, -3.0); }, TailModel::power(-3.0)};
  auto res = green_potential_whole(Space::euclidean(3), p3, 10.0, {1e-10, 1e-10});
  REQUIRE(converged(res.verdict));
  CHECK(std::get<Converges>(res.verdict).value == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("two-sided estimate samplers") {
  const auto large = verify_green_estimates(Space::damek_ricci(2, 1), GreenRegime::LargeR,
                                            RadialGrid::uniform(1.0, 15.0, 57));
  CHECK(large.ratio_min > 0.0);
  CHECK(large.spread() < 10.0);
  const auto small = verify_green_estimates(Space::damek_ricci(2, 1), GreenRegime::SmallR,
                                            RadialGrid::uniform(0.01, 1.0, 100));
  CHECK(small.spread() < 10.0);
  CHECK_THROWS_AS(verify_green_estimates(Space::euclidean(3), GreenRegime::LargeR, RadialGrid::uniform(1, 2, 3)),
                  Error);
}

}
