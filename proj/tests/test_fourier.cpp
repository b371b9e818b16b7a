#include <doctest.h>

#include <cmath>
#include <random>

#include "qharm/error.hpp"
#include "qharm/fourier.hpp"

using namespace qharm;

namespace {

const auto o3 = GroupDescriptor::free_orthogonal(3);

Eigen::MatrixXcd random_matrix(int n, std::mt19937_64& rng, bool rank_one) {
  std::normal_distribution<double> nd;
  if (rank_one) {
    Eigen::VectorXcd u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = {nd(rng), nd(rng)};
      v[i] = {nd(rng), nd(rng)};
    }
    return u * v.adjoint();
  }
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {nd(rng), nd(rng)};
  return m;
}

// Schatten p-norm from the eigenvalues of A^*A, independent of the SVD route.
double schatten(const Eigen::MatrixXcd& a, double p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) s += std::pow(std::sqrt(std::max(0.0, es.eigenvalues()[i])), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

TEST_SUITE("fourier") {
  TEST_CASE("scalar block norms") {
    FourierCoefficients c(o3);
    c.set(Degree{1}, ScalarBlock{3, {2.0, 0.0}});
    CHECK(dual_lp_norm(c, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(dual_lp_norm(c, kInfinity) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dual_lp_norm(c, 1.0) == doctest::Approx(18.0).epsilon(1e-14));
  }

  TEST_CASE("block validation") {
    FourierCoefficients c(o3);
    CHECK_THROWS_AS(c.set(Degree{1}, ScalarBlock{4, {1.0, 0.0}}), InvalidArgument);
    CHECK_THROWS_AS(c.set(Degree{1}, DenseBlock{Eigen::MatrixXcd::Zero(2, 2)}), InvalidArgument);
    CHECK_THROWS_AS(c.set(Lattice{{1}}, ScalarBlock{1, {1.0, 0.0}}), LabelMismatch);
    CHECK_THROWS_AS(dual_lp_norm(c, 0.5), InvalidArgument);
  }

  TEST_CASE("dense blocks agree with an eigenvalue-based Schatten oracle") {
    std::mt19937_64 rng(3);
    FourierCoefficients c(o3);
    const auto a1 = random_matrix(3, rng, false);
    const auto a2 = random_matrix(8, rng, false);
    c.set(Degree{1}, DenseBlock{a1});
    c.set(Degree{2}, DenseBlock{a2});
    for (double p : {1.0, 4.0 / 3.0, 2.0, 3.0}) {
      const double expected = std::pow(3.0 * std::pow(schatten(a1, p), p) + 8.0 * std::pow(schatten(a2, p), p), 1.0 / p);
      CHECK(dual_lp_norm(c, p) == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(plancherel_l2_norm(c) == doctest::Approx(dual_lp_norm(c, 2.0)).epsilon(1e-12));
  }

  TEST_CASE("Hoelder inequality for the dual pairing") {
    std::mt19937_64 rng(11);
    const auto g = GroupDescriptor::free_orthogonal(2);
    for (int trial = 0; trial < 50; ++trial) {
      FourierCoefficients a(g), b(g);
      for (int k = 1; k <= 3; ++k) {
        a.set(Degree{k}, DenseBlock{random_matrix(k + 1, rng, true)});
        b.set(Degree{k}, DenseBlock{random_matrix(k + 1, rng, true)});
      }
      for (double p : {1.25, 1.5, 2.0, 3.0}) {
        const double lhs = std::abs(dual_pairing(a, b));
        CHECK(lhs <= dual_lp_norm(a, p) * dual_lp_norm(b, conjugate_exponent(p)) * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("Plancherel norm of central elements") {
    CentralElement chi2{o3, {{2, {1.0, 0.0}}}};
    CHECK(plancherel_l2_norm(chi2) == doctest::Approx(1.0));
    CHECK(plancherel_l2_norm(to_fourier(chi2)) == doctest::Approx(1.0).epsilon(1e-14));
    CentralElement f{o3, {{0, {1.0, 0.0}}, {1, {0.5, 0.0}}}};
    CHECK(plancherel_l2_norm(to_fourier(f)) == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
    const auto back = to_central(to_fourier(f));
    CHECK(std::abs(back.coeffs.at(1) - std::complex<double>(0.5)) < 1e-15);
  }

  TEST_CASE("dimensions whose square overflows a double") {
    const auto g = GroupDescriptor::free_orthogonal(50);
    CentralElement f{g, {{110, {1.0, 0.0}}}};
    const auto c = to_fourier(f);
    const double log_n = log_big(dimension(g, 110));
    CHECK(std::isinf(std::exp(2.0 * log_n)));
    CHECK(plancherel_l2_norm(c) == doctest::Approx(1.0).epsilon(1e-10));
    // ||f^||_p^p = n^2 * n^{-p}: log-norm (2/p - 1) log n.
    CHECK(std::log(dual_lp_norm(c, 1.5)) == doctest::Approx((2.0 / 1.5 - 1.0) * log_n).epsilon(1e-10));
  }

  TEST_CASE("multipliers") {
    CentralElement f{o3, {{0, {1.0, 0.0}}, {1, {2.0, 0.0}}, {3, {-1.0, 0.5}}}};
    const auto c = to_fourier(f);
    const auto same = to_central(apply_multiplier(c, WeightSpec::plain_power(0.0)));
    for (const auto& [k, a] : f.coeffs) CHECK(std::abs(same.coeffs.at(k) - a) < 1e-14);

    const auto sob = to_central(apply_multiplier(c, WeightSpec::sobolev(3.0, 4.0 / 3.0)));
    for (const auto& [k, a] : f.coeffs) CHECK(std::abs(sob.coeffs.at(k) - a * std::pow(1.0 + k, -0.75)) < 1e-13);

    const RadialWeight w1 = [](int k) { return 1.0 / (2.0 + k); };
    const RadialWeight w2 = [](int k) { return std::exp(-0.3 * k); };
    const auto twice = to_central(apply_multiplier(apply_multiplier(c, w1), w2));
    const auto once = to_central(apply_multiplier(c, RadialWeight([&](int k) { return w1(k) * w2(k); })));
    for (const auto& [k, a] : once.coeffs) CHECK(std::abs(twice.coeffs.at(k) - a) < 1e-14);

    CHECK(WeightSpec::sharp_hy(1.0, 1.5).exponent() == doctest::Approx(-1.0));
    CHECK(WeightSpec::hardy_littlewood(1.0, 1.5).exponent() == doctest::Approx(-1.0));
    CHECK(WeightSpec::rapid_decay(2.0)(1) == doctest::Approx(0.25));
  }

  TEST_CASE("sphere projection") {
    CentralElement f{o3, {{0, {1.0, 0.0}}, {1, {2.0, 0.0}}}};
    const auto p1 = to_central(project_sphere(to_fourier(f), 1));
    REQUIRE(p1.coeffs.size() == 1);
    CHECK(std::abs(p1.coeffs.at(1) - std::complex<double>(2.0)) < 1e-14);
  }

  TEST_CASE("mixed norm") {
    CentralElement f{o3, {{0, {1.0, 0.0}}, {1, {1.0, 0.0}}}};
    const auto c = to_fourier(f);
    CHECK(mixed_norm(c, 4.0, [](int k) { return std::pow(1.0 + k, -2.0); }) ==
          doctest::Approx(std::pow(1.0 + 0.25, 0.25)).epsilon(1e-14));
    CHECK(mixed_norm(c, 2.0, [](int) { return 1.0; }) == doctest::Approx(plancherel_l2_norm(c)).epsilon(1e-14));
    const auto single = project_sphere(c, 1);
    const RadialWeight w = [](int k) { return 3.0 + k; };
    CHECK(mixed_norm(single, 3.0, w) == doctest::Approx(std::pow(4.0, 1.0 / 3.0) * plancherel_l2_norm(single)));
    CHECK(mixed_norm(c, kInfinity, [](int k) { return 1.0 / (1.0 + k); }) == doctest::Approx(1.0));
  }

  TEST_CASE("weighted Schatten norm") {
    std::mt19937_64 rng(5);
    const auto g = GroupDescriptor::free_orthogonal(2);
    FourierCoefficients c(g);
    c.set(Degree{2}, DenseBlock{random_matrix(3, rng, false)});
    c.set(Degree{4}, ScalarBlock{5, {0.7, -0.2}});
    CHECK(schatten_weighted_norm(c, 2.0, 1.7) == doctest::Approx(plancherel_l2_norm(c)).epsilon(1e-12));

    FourierCoefficients s(g);
    s.set(Degree{3}, ScalarBlock{4, {0.5, 0.0}});
    const double pp = 3.0, beta = 1.0;
    const double closed = std::pow(std::pow(4.0, pp / 2 + 1) * std::pow(4.0, -beta * (pp - 2)) * std::pow(0.5, pp), 1 / pp);
    CHECK(schatten_weighted_norm(s, pp, beta) == doctest::Approx(closed).epsilon(1e-12));

    for (int trial = 0; trial < 30; ++trial) {
      FourierCoefficients r(g);
      for (int k = 0; k <= 4; ++k) r.set(Degree{k}, DenseBlock{random_matrix(k + 1, rng, false)});
      for (double p2 : {2.5, 3.0, 4.0}) {
        const double b = 0.8;
        const double mixed = mixed_norm(r, p2, [&](int k) { return std::pow(1.0 + k, -b * (p2 - 2)); });
        CHECK(schatten_weighted_norm(r, p2, b) <= mixed * (1 + 1e-12));
      }
    }
    CHECK_THROWS_AS(schatten_weighted_norm(s, 1.5, 1.0), InvalidArgument);
  }

  TEST_CASE("interpolated weight exponents") {
    for (double p : {1.1, 1.25, 4.0 / 3.0, 1.5, 1.8})
      for (double beta : {0.5, 1.0, 2.0}) {
        const double pp = conjugate_exponent(p);
        CHECK(interp_weight_combine(-(beta + 1) * (2 - p), p, -beta * (pp - 2), pp, 0.5, 2.0) ==
              doctest::Approx(-(2 * beta + 1) * (2 / p - 1)).epsilon(1e-13));
      }
    for (double th : {0.2, 0.5, 0.9}) {
      CHECK(interp_weight_combine(-1.5, 1.5, -1.5, 1.5, th, 1.5) == doctest::Approx(-1.5));
      CHECK(interp_weight_combine(-1.0, 2.0, 3.0, 2.0, th, 2.0) == doctest::Approx((1 - th) * -1.0 + th * 3.0));
    }
    CHECK_THROWS_AS(interp_weight_combine(1, 2, 1, 2, 1.0, 2), InvalidArgument);
    CHECK_THROWS_AS(interp_weight_combine(1, 2, 1, 4, 0.5, 2), InvalidArgument);
  }
}
