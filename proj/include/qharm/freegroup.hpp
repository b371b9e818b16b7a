#pragma once

// Operator norms in the reduced group C*-algebra of the free group F_N:
// compressions of the left regular representation to Cayley balls, the
// Haagerup sphere bound, and radial elements sum_k a_k sigma_k / sqrt(s_k).

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qharm/repdata.hpp"

namespace qharm {

/// Finitely supported f on F_N, standing for lambda(f) = sum f(g) lambda_g.
struct GroupElementCoeffs {
  int N = 2;
  std::map<Word, std::complex<double>> terms;
};

/// Largest radius present in the support (0 for the empty element).
int support_radius(const GroupElementCoeffs& f);

/// |B_m| = 1 + sum_{k=1}^m 2N(2N-1)^{k-1}, saturating at UINT64_MAX.
std::uint64_t ball_cardinality(int n, int m);

/// Breadth-first enumeration of the ball B_m with letters ordered
/// g1 < g1^-1 < g2 < ...; stored as a tree of parent links.
class CayleyBall {
 public:
  static constexpr std::uint64_t kSizeGuard = 5'000'000;

  CayleyBall(int n, int radius);

  int rank() const noexcept { return n_; }
  int radius() const noexcept { return radius_; }
  int size() const noexcept { return static_cast<int>(parent_.size()); }

  /// Node reached from `node` by right multiplication with `letter`, or -1
  /// when that element lies outside the ball.
  int step(int node, int letter) const { return next_[static_cast<std::size_t>(node) * 2 * n_ + letter_slot(letter)]; }
  /// -1 if the word is not in the ball.
  int index_of(const Word& w) const;
  Word word(int node) const;
  int length_of(int node) const { return depth_[node]; }

  int letter_slot(int letter) const noexcept { return (letter > 0 ? letter - 1 : -letter - 1) * 2 + (letter < 0); }

 private:
  int n_;
  int radius_;
  std::vector<int> parent_;
  std::vector<int> last_;
  std::vector<int> depth_;
  std::vector<int> next_;
};

/// Words of B_m in enumeration order.
std::vector<Word> enumerate_ball(int n, int m);

struct PowerIterationOptions {
  double tol = 1e-8;
  int max_iterations = 10'000;
  /// Iterations without relative progress above tol before a restart from a
  /// perturbed start vector.
  int stall_window = 100;
};

/// Lower estimate of ||lambda(f)||: the largest singular value of the
/// compression of lambda(f) to l^2(B_m), by power iteration on T*T started
/// at the indicator of e. Requires support radius + 2 <= m.
double truncated_operator_norm(const GroupElementCoeffs& f, int m,
                               const PowerIterationOptions& options = {});

/// Fits est(m) = L - C/(m+2)^2 over m in [m_lo, m_hi] and returns L.
double extrapolated_operator_norm(const GroupElementCoeffs& f, int m_lo, int m_hi,
                                  const PowerIterationOptions& options = {});

/// sum_k (1+k) (sum_{|g|=k} |f(g)|^2)^{1/2}.
double haagerup_upper_bound(const GroupElementCoeffs& f);

double coefficient_l2_norm(const GroupElementCoeffs& f);

/// sum_k a_k sigma_k / sqrt(s_k), with sigma_k the sum of all words of length k.
GroupElementCoeffs radial_element(int n, const std::vector<double>& a);

struct RadialReport {
  double lhs;
  double rhs;
  double ratio;
  int m;
};

/// lhs = truncated norm of radial_element(n, a) at radius m; rhs = sum (k+1) a_k.
RadialReport radial_equivalence_report(int n, const std::vector<double>& a, int m,
                                       const PowerIterationOptions& options = {});

}  // namespace qharm
