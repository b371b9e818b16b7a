#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "qharm/error.hpp"
#include "qharm/freegroup.hpp"

using namespace qharm;

namespace {

GroupElementCoeffs generators_sum(int n) {
  GroupElementCoeffs f{n, {}};
  for (int g = 1; g <= n; ++g) {
    f.terms[make_word({g})] = 1.0;
    f.terms[make_word({-g})] = 1.0;
  }
  return f;
}

// Compression of right convolution by f to the ball, built from word arithmetic alone.
double dense_compressed_norm(const GroupElementCoeffs& f, int m) {
  const auto ball = enumerate_ball(f.N, m);
  std::map<Word, int> index;
  for (std::size_t i = 0; i < ball.size(); ++i) index[ball[i]] = static_cast<int>(i);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(ball.size(), ball.size());
  for (std::size_t y = 0; y < ball.size(); ++y)
    for (const auto& [g, c] : f.terms) {
      const auto it = index.find(multiply(ball[y], g));
      if (it != index.end()) a(y, it->second) += c;
    }
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()[0];
}

// Largest eigenvalue of the radial Jacobi matrix of sigma_1 on a ball of radius m.
double radial_jacobi_norm(int n, int m) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int k = 0; k < m; ++k) j(k, k + 1) = j(k + 1, k) = k == 0 ? std::sqrt(2.0 * n) : std::sqrt(2.0 * n - 1);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(j).eigenvalues().maxCoeff();
}

}  // namespace

TEST_SUITE("freegroup") {
  TEST_CASE("ball enumeration") {
    CHECK(ball_cardinality(2, 1) == 5);
    CHECK(ball_cardinality(2, 2) == 17);
    CHECK(ball_cardinality(3, 2) == 37);
    const auto b = enumerate_ball(2, 1);
    REQUIRE(b.size() == 5);
    CHECK(format_word(b[0]) == "1");
    CHECK(format_word(b[1]) == "a");
    CHECK(format_word(b[2]) == "A");
    CHECK(format_word(b[3]) == "b");
    CHECK(format_word(b[4]) == "B");
    const CayleyBall ball(2, 4);
    CHECK(ball.size() == 161);
    for (int i = 0; i < ball.size(); ++i) CHECK(ball.index_of(ball.word(i)) == i);
    CHECK_THROWS_AS(CayleyBall(3, 20), SizeGuardExceeded);
  }

  TEST_CASE("unitaries have norm one") {
    GroupElementCoeffs f{2, {{make_word({1}), 1.0}}};
    for (int m = 3; m <= 6; ++m) CHECK(truncated_operator_norm(f, m) == doctest::Approx(1.0).epsilon(1e-8));
  }

  TEST_CASE("power iteration matches dense SVD on small balls") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 8; ++trial) {
      GroupElementCoeffs f{2, {}};
      for (const auto& w : enumerate_ball(2, 2))
        if (rng() % 3 == 0) f.terms[w] = {nd(rng), nd(rng)};
      if (f.terms.empty()) continue;
      const int m = 4;
      CHECK(truncated_operator_norm(f, m, {1e-11, 100000, 100}) ==
            doctest::Approx(dense_compressed_norm(f, m)).epsilon(1e-7));
    }
  }

  TEST_CASE("radial Jacobi oracle for the generator sum") {
    for (int n : {2, 3})
      for (int m = 3; m <= 8; ++m)
        CHECK(truncated_operator_norm(generators_sum(n), m, {1e-12, 100000, 100}) ==
              doctest::Approx(radial_jacobi_norm(n, m)).epsilon(1e-7));
  }

  TEST_CASE("estimates increase toward the true norm") {
    GroupElementCoeffs f{2, {{make_word({1}), 1.0}, {make_word({-1}), 1.0}}};
    double prev = 0.0;
    for (int m = 3; m <= 10; ++m) {
      const double v = truncated_operator_norm(f, m);
      CHECK(v >= prev - 1e-9);
      CHECK(v <= 2.0 + 1e-9);
      prev = v;
    }
    CHECK(prev >= 1.95);
    const double ext = extrapolated_operator_norm(generators_sum(2), 6, 10);
    CHECK(std::abs(ext - 2 * std::sqrt(3.0)) / (2 * std::sqrt(3.0)) < 0.02);
  }

  TEST_CASE("Haagerup bound") {
    CHECK(haagerup_upper_bound(GroupElementCoeffs{2, {{Word{}, 1.0}}}) == doctest::Approx(1.0));
    GroupElementCoeffs f{2, {{make_word({1}), 1.0}, {make_word({-1}), 1.0}}};
    CHECK(haagerup_upper_bound(f) == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(coefficient_l2_norm(f) == doctest::Approx(std::sqrt(2.0)));
    CHECK(support_radius(f) == 1);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    const auto words = enumerate_ball(2, 4);
    for (int trial = 0; trial < 100; ++trial) {
      GroupElementCoeffs r{2, {}};
      const int radius = 1 + static_cast<int>(rng() % 4);
      for (const auto& w : words)
        if (static_cast<int>(w.letters.size()) <= radius && rng() % 4 == 0) r.terms[w] = {nd(rng), nd(rng)};
      if (r.terms.empty()) r.terms[Word{}] = 1.0;
      CHECK(truncated_operator_norm(r, support_radius(r) + 2) <= haagerup_upper_bound(r) * (1 + 1e-9));
    }
  }

  TEST_CASE("radial elements") {
    const auto e = radial_equivalence_report(2, {1.0}, 4);
    CHECK(e.lhs == doctest::Approx(1.0));
    CHECK(e.rhs == doctest::Approx(1.0));
    const auto s1 = radial_equivalence_report(2, {0.0, 1.0}, 10);
    CHECK(s1.rhs == doctest::Approx(2.0));
    CHECK(s1.lhs <= std::sqrt(3.0) + 1e-9);
    CHECK(s1.lhs >= 0.95 * std::sqrt(3.0));

    std::vector<double> geo;
    for (int k = 0; k <= 6; ++k) geo.push_back(std::pow(2.0, -k));
    const double r7 = radial_equivalence_report(2, geo, 8).ratio;
    const double r9 = radial_equivalence_report(2, geo, 9).ratio;
    CHECK(r9 >= 0.4);
    CHECK(r9 <= 1.0);
    CHECK(std::abs(r9 - r7) / r7 <= 0.1);

    const auto g = radial_element(2, {0.0, 2.0});
    CHECK(g.terms.size() == 4);
    CHECK(std::abs(g.terms.at(make_word({2})) - std::complex<double>(1.0)) < 1e-15);
    CHECK_THROWS_AS(radial_equivalence_report(2, {1.0, -1.0}, 5), InvalidArgument);
  }
}
