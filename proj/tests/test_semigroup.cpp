#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qharm/error.hpp"
#include "qharm/semigroup.hpp"

using namespace qharm;

TEST_SUITE("semigroup") {
  TEST_CASE("ultracontractivity series spot value") {
    // e^{-2t} = 1/2: sum m^2 / 2^m = 6.
    const double t = std::log(2.0) / 2.0;
    double partial = 0.0;
    for (int m = 1; m <= 200; ++m) partial += m * m * std::pow(0.5, m);
    CHECK(partial == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(ultra_series(t, LengthFunction::poisson(), false) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(ultra_closed_form(t) == doctest::Approx(6.0).epsilon(1e-13));
  }

  TEST_CASE("series matches the closed form") {
    for (double t : log_grid(0.05, 5.0, 50)) {
      const auto r = ultra_series_detail(t, LengthFunction::poisson());
      CHECK(r.certified);
      CHECK(std::abs(r.value() - ultra_closed_form(t)) / ultra_closed_form(t) < 1e-10);
    }
    const double t = 1e-3;
    CHECK(t * t * t * ultra_series(t, LengthFunction::poisson()) >= 0.2495);
    CHECK(t * t * t * ultra_series(t, LengthFunction::poisson()) <= 0.2505);
  }

  TEST_CASE("length functions") {
    CHECK(LengthFunction::heat(GroupDescriptor::free_orthogonal(2))(3) == 9.0);
    CHECK(LengthFunction::heat(GroupDescriptor::free_orthogonal(4))(3) == 3.0);
    CHECK(LengthFunction::heat(GroupDescriptor::free_permutation(7))(3) == 3.0);
    CHECK(LengthFunction::poisson()(5) == 5.0);
    const auto table = LengthFunction::parse("0,1,4", GroupDescriptor::su2());
    CHECK(table.extent() == 3);
    CHECK(table(2) == 4.0);
    CHECK_THROWS_AS(LengthFunction::parse("cubic", GroupDescriptor::su2()), InvalidArgument);
    CHECK_THROWS_AS(LengthFunction::heat(GroupDescriptor::dual_zd(2)), UnsupportedGroup);
  }

  TEST_CASE("semigroup multiplier") {
    const auto g = GroupDescriptor::free_orthogonal(3);
    CentralElement f{g, {{0, {1.0, 0.0}}, {2, {1.0, 0.0}}}};
    const auto out = to_central(apply_semigroup(to_fourier(f), LengthFunction::poisson(), 0.5));
    CHECK(std::abs(out.coeffs.at(2) - std::exp(-1.0)) < 1e-14);
    CHECK(std::abs(out.coeffs.at(0) - 1.0) < 1e-14);
  }

  TEST_CASE("small-t scans") {
    const auto grid = log_grid(1e-3, 10.0, 60);
    CHECK(grid.size() == 60);
    CHECK(grid.front() == doctest::Approx(1e-3));
    CHECK(grid.back() == doctest::Approx(10.0));

    const auto b = ultra_sup_scan(3.0, LengthFunction::poisson(), grid);
    CHECK(b.verdict == Verdict::Bounded);
    CHECK(b.extremal_value >= 0.2495);
    const auto d = ultra_sup_scan(2.5, LengthFunction::poisson(), grid);
    CHECK(d.verdict == Verdict::Divergent);
    CHECK(d.slope == doctest::Approx(-0.5).epsilon(0.02));
    const auto h = ultra_sup_scan(3.0, LengthFunction::heat(GroupDescriptor::free_orthogonal(2)), grid);
    CHECK(h.verdict == Verdict::Bounded);
    CHECK(h.values.front() < 0.01);
    CHECK_THROWS_AS(ultra_sup_scan(3.0, LengthFunction::poisson(), log_grid(0.1, 10.0, 60)), InvalidArgument);
  }

  TEST_CASE("C_w sums") {
    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    const auto r = cw_sum(GroupDescriptor::free_orthogonal(2), CwWeight::log_power(2.0), 1'000'000);
    CHECK(r.certified);
    CHECK(r.tail_bound <= 1e-6 * 1.01);
    CHECK(std::abs(r.partial - zeta2) <= r.tail_bound);

    const double t = 0.3;
    CHECK(cw_sum_rd(1.0, CwWeight::linear(t), 100000).value() ==
          doctest::Approx(ultra_series(t, LengthFunction::poisson())).epsilon(1e-12));

    CHECK(cw_sum(GroupDescriptor::dual_zd(1), CwWeight::log_power(0.5), 100000).divergent);
    // s_0 = 1 and s_k = 2 afterwards, so the s = 1 sum is 2 zeta(2) - 1.
    const auto z1 = cw_sum(GroupDescriptor::dual_zd(1), CwWeight::log_power(1.0), 1'000'000);
    CHECK_FALSE(z1.divergent);
    CHECK(std::abs(z1.partial - (2 * zeta2 - 1)) <= z1.tail_bound * 1.01);

    CHECK(cw_sum(GroupDescriptor::free_orthogonal(3), CwWeight::log_power(5.0), 1000).divergent);
    CHECK(cw_sum(GroupDescriptor::free_orthogonal(3), CwWeight::linear(2.0), 1000).certified);
  }

  TEST_CASE("polynomial-growth scans") {
    const auto grid = log_grid(1e-3, 10.0, 60);
    CHECK(poly_ultra_sup(GroupDescriptor::free_orthogonal(2), 1.5, grid).verdict == Verdict::Bounded);
    CHECK(poly_ultra_sup(GroupDescriptor::free_orthogonal(2), 1.3, grid).verdict == Verdict::Divergent);
    CHECK(poly_ultra_sup(GroupDescriptor::dual_zd(1), 0.5, grid).verdict == Verdict::Bounded);
    CHECK_THROWS_AS(poly_ultra_sup(GroupDescriptor::free_orthogonal(3), 1.5, grid), NotPolynomialGrowth);
  }
}
