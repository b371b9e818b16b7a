#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>

#include "qharm/error.hpp"
#include "qharm/fourier.hpp"
#include "qharm/repdata.hpp"

using namespace qharm;

namespace {

// Every reduced word of length exactly k over n generators, built letter by letter.
std::set<Word> brute_sphere(int n, int k) {
  std::set<Word> out;
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == k) {
      out.insert(Word{cur});
      return;
    }
    for (int g = 1; g <= n; ++g)
      for (int l : {g, -g}) {
        if (!cur.empty() && cur.back() == -l) continue;
        cur.push_back(l);
        rec();
        cur.pop_back();
      }
  };
  rec();
  return out;
}

long long brute_lattice_sphere(int d, int k) {
  long long count = 0;
  std::vector<int> v(d, -k);
  while (true) {
    int norm = 0;
    for (int x : v) norm += std::abs(x);
    if (norm == k) ++count;
    int i = 0;
    while (i < d && v[i] == k) v[i++] = -k;
    if (i == d) break;
    ++v[i];
  }
  return count;
}

}  // namespace

TEST_SUITE("repdata") {
  TEST_CASE("selectors round-trip and parameter bounds are enforced") {
    for (const char* s : {"oplus:3", "splus:5", "fdual:2", "zd:2", "su2", "so3"})
      CHECK(GroupDescriptor::parse(s).selector() == s);
    CHECK_THROWS_AS(GroupDescriptor::parse("oplus:1"), InvalidArgument);
    CHECK_THROWS_AS(GroupDescriptor::parse("splus:3"), InvalidArgument);
    CHECK_THROWS_AS(GroupDescriptor::parse("fdual:1"), InvalidArgument);
    CHECK_THROWS_AS(GroupDescriptor::parse("zd:0"), InvalidArgument);
    CHECK_THROWS_AS(GroupDescriptor::parse("oplus:x"), InvalidArgument);
    CHECK_THROWS_AS(GroupDescriptor::parse("u3"), InvalidArgument);
  }

  TEST_CASE("dimensions follow the documented recurrences") {
    const auto o3 = GroupDescriptor::free_orthogonal(3);
    const std::vector<int> expected{1, 3, 8, 21, 55};
    for (int k = 0; k <= 4; ++k) CHECK(dimension(o3, k) == expected[k]);
    for (int k = 0; k <= 30; ++k) {
      CHECK(dimension(GroupDescriptor::free_orthogonal(2), k) == k + 1);
      CHECK(dimension(GroupDescriptor::su2(), k) == k + 1);
      CHECK(dimension(GroupDescriptor::free_permutation(4), k) == 2 * k + 1);
      CHECK(dimension(GroupDescriptor::so3(), k) == 2 * k + 1);
    }
    const auto w = parse_word("a b A", 2);
    CHECK(dimension(GroupDescriptor::dual_free_group(2), IrrLabel{w}) == 1);
    CHECK(dimension(GroupDescriptor::dual_zd(2), IrrLabel{Lattice{{3, -2}}}) == 1);
  }

  TEST_CASE("S_N^+ dimensions agree with O_{sqrt N}^+ even degrees") {
    // n_k(S_{M^2}^+) = n_{2k}(O_M^+).
    for (int m : {2, 3}) {
      const auto s = GroupDescriptor::free_permutation(m * m);
      const auto o = GroupDescriptor::free_orthogonal(m);
      for (int k = 0; k <= 15; ++k) CHECK(dimension(s, k) == dimension(o, 2 * k));
    }
  }

  TEST_CASE("dimension consistency holds exactly for a, b <= 20") {
    for (const char* sel : {"oplus:2", "oplus:3", "oplus:4", "oplus:5", "splus:4", "splus:5", "splus:6"}) {
      const auto g = GroupDescriptor::parse(sel);
      for (int a = 0; a <= 20; ++a)
        for (int b = 0; b <= 20; ++b) {
          BigInt total = 0;
          for (const auto& [c, mult] : fusion_decompose(g, Degree{a}, Degree{b})) total += dimension(g, c) * mult;
          REQUIRE(total == dimension(g, a) * dimension(g, b));
          CHECK(fusion_multiplicity(g, Degree{a}, Degree{b}, Degree{(a + b) / 2}) ==
                fusion_multiplicity(g, Degree{b}, Degree{a}, Degree{(a + b) / 2}));
        }
    }
  }

  TEST_CASE("fusion rules on small inputs") {
    auto degrees = [](const std::vector<std::pair<IrrLabel, int>>& terms) {
      std::vector<int> out;
      for (const auto& [c, m] : terms) {
        CHECK(m == 1);
        out.push_back(std::get<Degree>(c).k);
      }
      return out;
    };
    CHECK(degrees(fusion_decompose(GroupDescriptor::free_orthogonal(3), Degree{2}, Degree{3})) ==
          std::vector<int>{1, 3, 5});
    CHECK(degrees(fusion_decompose(GroupDescriptor::free_permutation(5), Degree{1}, Degree{1})) ==
          std::vector<int>{0, 1, 2});
    CHECK(degrees(fusion_decompose(GroupDescriptor::su2(), Degree{1}, Degree{1})) == std::vector<int>{0, 2});
    CHECK(degrees(fusion_decompose(GroupDescriptor::so3(), Degree{1}, Degree{2})) == std::vector<int>{1, 2, 3});

    const auto f2 = GroupDescriptor::dual_free_group(2);
    const auto g1 = parse_word("a", 2);
    const auto terms = fusion_decompose(f2, g1, inverse(g1));
    REQUIRE(terms.size() == 1);
    CHECK(std::get<Word>(terms[0].first).letters.empty());
    CHECK(fusion_multiplicity(f2, parse_word("a b", 2), parse_word("B a", 2), parse_word("a a", 2)) == 1);
    CHECK(fusion_multiplicity(f2, parse_word("a b", 2), parse_word("B a", 2), parse_word("a", 2)) == 0);

    const auto z2 = GroupDescriptor::dual_zd(2);
    CHECK(fusion_multiplicity(z2, Lattice{{1, 2}}, Lattice{{-3, 1}}, Lattice{{-2, 3}}) == 1);
  }

  TEST_CASE("words are kept reduced") {
    CHECK(make_word({1, 2, -2, -1, 2}).letters == std::vector<int>{2});
    const auto w = parse_word("a b A", 2);
    CHECK(format_word(w) == "a b A");
    CHECK(format_word(multiply(w, inverse(w))) == "1");
    CHECK(length(GroupDescriptor::dual_free_group(2), w) == 3);
    CHECK(length(GroupDescriptor::free_orthogonal(5), Degree{7}) == 7);
    CHECK(length(GroupDescriptor::dual_zd(2), Lattice{{3, -2}}) == 5);
    CHECK_THROWS_AS(parse_word("a c", 2), InvalidArgument);
    CHECK_THROWS_AS(check_label(GroupDescriptor::dual_zd(2), Lattice{{1}}), LabelMismatch);
    CHECK_THROWS_AS(check_label(GroupDescriptor::su2(), Word{}), LabelMismatch);
  }

  TEST_CASE("sphere sizes match exhaustive enumeration") {
    for (int n : {2, 3})
      for (int k = 0; k <= 5; ++k)
        CHECK(sphere_size(GroupDescriptor::dual_free_group(n), k) == brute_sphere(n, k).size());
    const std::vector<int> f2{1, 4, 12, 36};
    for (int k = 0; k <= 3; ++k) CHECK(sphere_size(GroupDescriptor::dual_free_group(2), k) == f2[k]);
    for (int d = 1; d <= 3; ++d)
      for (int k = 0; k <= 6; ++k)
        CHECK(sphere_size(GroupDescriptor::dual_zd(d), k) == brute_lattice_sphere(d, k));
    for (int k = 0; k <= 20; ++k) {
      CHECK(sphere_size(GroupDescriptor::free_orthogonal(2), k) == (k + 1) * (k + 1));
      CHECK(ball_size(GroupDescriptor::dual_zd(2), k) == 2 * k * k + 2 * k + 1);
    }
    for (const char* sel : {"oplus:3", "splus:5", "fdual:3", "zd:3", "so3"}) {
      const auto g = GroupDescriptor::parse(sel);
      for (int k = 1; k <= 10; ++k) CHECK(ball_size(g, k) - ball_size(g, k - 1) == sphere_size(g, k));
    }
  }

  TEST_CASE("streaming growth sequence matches exact sphere sizes") {
    for (const char* sel : {"oplus:2", "oplus:4", "splus:6", "fdual:2", "zd:2", "su2"}) {
      const auto g = GroupDescriptor::parse(sel);
      GrowthSequence seq(g);
      for (int k = 0; k <= 40; ++k) {
        REQUIRE(seq.degree() == k);
        const double exact = log_big(sphere_size(g, k));
        CHECK(seq.log_sphere() == doctest::Approx(exact).epsilon(1e-12));
        seq.advance();
      }
    }
  }

  TEST_CASE("growth order estimate") {
    CHECK(std::abs(growth_order_estimate(GroupDescriptor::free_orthogonal(2), 200) - 3.0) <= 0.1);
    CHECK(std::abs(growth_order_estimate(GroupDescriptor::dual_zd(1), 200) - 1.0) <= 0.05);
    CHECK(std::abs(growth_order_estimate(GroupDescriptor::dual_zd(2), 200) - 2.0) <= 0.1);
    CHECK_THROWS_AS(growth_order_estimate(GroupDescriptor::free_orthogonal(3), 200), NotPolynomialGrowth);
    CHECK(GroupDescriptor::free_permutation(4).growth_order() == 3);
    CHECK(GroupDescriptor::dual_zd(4).growth_order() == 4);
  }

  TEST_CASE("central product matches pointwise products of SU(2) characters") {
    // chi_k(theta) = sin((k+1)theta)/sin(theta); the product of class functions is pointwise.
    const auto su2 = GroupDescriptor::su2();
    ExactCentralElement x{su2, {{0, BigRational(1, 2)}, {2, BigRational(3)}, {3, BigRational(-1, 3)}}};
    ExactCentralElement y{su2, {{1, BigRational(2)}, {4, BigRational(5, 7)}}};
    const auto xy = central_product(x, y);
    auto eval = [](const ExactCentralElement& f, double th) {
      double s = 0.0;
      for (const auto& [k, a] : f.coeffs) s += static_cast<double>(a) * std::sin((k + 1) * th) / std::sin(th);
      return s;
    };
    for (double th : {0.3, 1.1, 2.0, 2.9}) CHECK(eval(xy, th) == doctest::Approx(eval(x, th) * eval(y, th)));

    // O_3^+: chi_2 * chi_2 = chi_0 + chi_2 + chi_4 exactly.
    const auto o3 = GroupDescriptor::free_orthogonal(3);
    const auto sq = central_product(ExactCentralElement{o3, {{2, BigRational(1)}}}, ExactCentralElement{o3, {{2, BigRational(1)}}});
    REQUIRE(sq.coeffs.size() == 3);
    for (int k : {0, 2, 4}) CHECK(sq.coeffs.at(k) == 1);
  }

  TEST_CASE("SO(3) central product matches pointwise characters") {
    const auto so3 = GroupDescriptor::so3();
    CentralElement x{so3, {{1, {1.0, 0.0}}, {2, {0.5, 0.0}}}};
    CentralElement y{so3, {{2, {2.0, 0.0}}, {3, {-1.0, 0.0}}}};
    const auto xy = central_product(x, y);
    auto eval = [](const CentralElement& f, double th) {
      double s = 0.0;
      for (const auto& [k, a] : f.coeffs) s += a.real() * std::sin((k + 0.5) * th) / std::sin(0.5 * th);
      return s;
    };
    for (double th : {0.4, 1.3, 2.7}) CHECK(eval(xy, th) == doctest::Approx(eval(x, th) * eval(y, th)));
  }

  TEST_CASE("group algebra product on the free group dual") {
    const auto f2 = GroupDescriptor::dual_free_group(2);
    std::map<IrrLabel, std::complex<double>> x{{parse_word("a", 2), 1.0}, {parse_word("b", 2), 2.0}};
    std::map<IrrLabel, std::complex<double>> y{{parse_word("A", 2), 3.0}};
    const auto xy = group_algebra_product(f2, x, y);
    REQUIRE(xy.size() == 2);
    CHECK(xy.at(IrrLabel{parse_word("1", 2)}) == std::complex<double>(3.0));
    CHECK(xy.at(IrrLabel{parse_word("b A", 2)}) == std::complex<double>(6.0));
  }
}
