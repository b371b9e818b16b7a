#include "qharm/freegroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qharm/fit.hpp"

namespace qharm {

namespace {

// Support words arranged as a trie so that right multiplication y -> y g
// shares prefixes between words.
struct Trie {
  struct Node {
    std::complex<double> coeff = 0.0;
    bool terminal = false;
    std::vector<std::pair<int, int>> children;  // (letter, node)
  };
  std::vector<Node> nodes{Node{}};

  void insert(const Word& w, std::complex<double> c) {
    int cur = 0;
    for (int letter : w.letters) {
      int found = -1;
      for (const auto& [l, child] : nodes[cur].children)
        if (l == letter) found = child;
      if (found < 0) {
        found = static_cast<int>(nodes.size());
        nodes[cur].children.emplace_back(letter, found);
        nodes.emplace_back();
      }
      cur = found;
    }
    nodes[cur].coeff += c;
    nodes[cur].terminal = true;
  }
};

// (S v)(y) = sum_g c(g) v(y g) on the ball; unitarily equivalent (via
// g -> g^-1) to the compression of lambda(f).
class BallOperator {
 public:
  BallOperator(const CayleyBall& ball, const Trie& trie) : ball_(ball), trie_(trie) {}

  void apply(const std::vector<std::complex<double>>& v, std::vector<std::complex<double>>& out) const {
    for (int y = 0; y < ball_.size(); ++y) out[y] = visit(y, 0, v);
  }

 private:
  std::complex<double> visit(int node, int t, const std::vector<std::complex<double>>& v) const {
    const auto& tn = trie_.nodes[t];
    std::complex<double> sum = tn.terminal ? tn.coeff * v[node] : 0.0;
    for (const auto& [letter, child] : tn.children) {
      const int next = ball_.step(node, letter);
      if (next >= 0) sum += visit(next, child, v);
    }
    return sum;
  }

  const CayleyBall& ball_;
  const Trie& trie_;
};

double norm2(const std::vector<std::complex<double>>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void normalize(std::vector<std::complex<double>>& v) {
  const double n = norm2(v);
  for (auto& x : v) x /= n;
}

std::vector<std::complex<double>> perturbed_start(int size) {
  std::mt19937_64 rng(0x51ed5eedULL);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> v(size);
  for (auto& x : v) x = 1e-3 * u(rng);
  v[0] += 1.0;
  normalize(v);
  return v;
}

}  // namespace

int support_radius(const GroupElementCoeffs& f) {
  int r = 0;
  for (const auto& [w, c] : f.terms) r = std::max(r, static_cast<int>(w.letters.size()));
  return r;
}

std::uint64_t ball_cardinality(int n, int m) {
  if (n < 1 || m < 0) throw InvalidArgument("ball_cardinality: need N >= 1 and m >= 0");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1, sphere = 2ULL * n;
  for (int k = 1; k <= m; ++k) {
    if (total > kMax - sphere) return kMax;
    total += sphere;
    if (sphere > kMax / (2ULL * n - 1)) sphere = kMax;
    else sphere *= 2ULL * n - 1;
  }
  return total;
}

CayleyBall::CayleyBall(int n, int radius) : n_(n), radius_(radius) {
  if (n < 2) throw InvalidArgument("CayleyBall: rank must be >= 2");
  if (radius < 0) throw InvalidArgument("CayleyBall: radius must be >= 0");
  const std::uint64_t size = ball_cardinality(n, radius);
  if (size > kSizeGuard) throw SizeGuardExceeded(size, kSizeGuard);

  const int width = 2 * n;
  parent_.reserve(size);
  last_.reserve(size);
  depth_.reserve(size);
  next_.assign(size * width, -1);
  parent_.push_back(-1);
  last_.push_back(0);
  depth_.push_back(0);

  for (int node = 0; node < static_cast<int>(parent_.size()); ++node) {
    for (int slot = 0; slot < width; ++slot) {
      const int letter = (slot / 2 + 1) * (slot % 2 == 0 ? 1 : -1);
      int& target = next_[static_cast<std::size_t>(node) * width + slot];
      if (node != 0 && letter == -last_[node]) {
        target = parent_[node];
      } else if (depth_[node] < radius) {
        target = static_cast<int>(parent_.size());
        parent_.push_back(node);
        last_.push_back(letter);
        depth_.push_back(depth_[node] + 1);
      }
    }
  }
}

int CayleyBall::index_of(const Word& w) const {
  int node = 0;
  for (int letter : w.letters) {
    if (letter == 0 || std::abs(letter) > n_) return -1;
    node = step(node, letter);
    if (node < 0) return -1;
  }
  return node;
}

Word CayleyBall::word(int node) const {
  std::vector<int> letters(depth_[node]);
  for (int i = depth_[node] - 1; i >= 0; --i) {
    letters[i] = last_[node];
    node = parent_[node];
  }
  return Word{std::move(letters)};
}

std::vector<Word> enumerate_ball(int n, int m) {
  const CayleyBall ball(n, m);
  std::vector<Word> out;
  out.reserve(ball.size());
  for (int i = 0; i < ball.size(); ++i) out.push_back(ball.word(i));
  return out;
}

double truncated_operator_norm(const GroupElementCoeffs& f, int m, const PowerIterationOptions& options) {
  for (const auto& [w, c] : f.terms)
    for (int l : w.letters)
      if (l == 0 || std::abs(l) > f.N) throw LabelMismatch("word letter outside F_" + std::to_string(f.N));
  if (support_radius(f) + 2 > m)
    throw InvalidArgument("truncated_operator_norm: need support radius + 2 <= m");
  if (!(options.tol > 0.0)) throw InvalidArgument("truncated_operator_norm: tol must be positive");

  Trie forward, adjoint;
  bool any = false;
  for (const auto& [w, c] : f.terms) {
    if (c == 0.0) continue;
    any = true;
    forward.insert(w, c);
    adjoint.insert(inverse(w), std::conj(c));
  }
  if (!any) return 0.0;

  const CayleyBall ball(f.N, m);
  const BallOperator S(ball, forward), S_star(ball, adjoint);
  const int size = ball.size();

  std::vector<std::complex<double>> x(size, 0.0), y(size), z(size);
  x[0] = 1.0;
  double previous = 0.0, best = 0.0;
  int since_progress = 0;
  bool restarted = false;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    S.apply(x, y);
    const double sigma = norm2(y);
    S_star.apply(y, z);
    const double zn = norm2(z);
    if (zn == 0.0) {
      if (restarted) return sigma;
      x = perturbed_start(size);
      restarted = true;
      continue;
    }
    if (iter > 0 && std::abs(sigma - previous) <= options.tol * sigma) return sigma;

    if (sigma > best * (1.0 + options.tol)) {
      best = sigma;
      since_progress = 0;
    } else if (++since_progress >= options.stall_window && !restarted) {
      x = perturbed_start(size);
      restarted = true;
      since_progress = 0;
      previous = sigma;
      continue;
    }
    previous = sigma;
    for (int i = 0; i < size; ++i) x[i] = z[i] / zn;
  }
  S.apply(x, y);
  throw NonConvergence(previous, norm2(y));
}

double extrapolated_operator_norm(const GroupElementCoeffs& f, int m_lo, int m_hi,
                                  const PowerIterationOptions& options) {
  if (m_hi - m_lo < 2) throw InvalidArgument("extrapolated_operator_norm: need at least three radii");
  std::vector<double> x, y;
  for (int m = m_lo; m <= m_hi; ++m) {
    x.push_back(1.0 / ((m + 2.0) * (m + 2.0)));
    y.push_back(truncated_operator_norm(f, m, options));
  }
  const double slope = least_squares_slope(x, y);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  return my - slope * mx;
}

double haagerup_upper_bound(const GroupElementCoeffs& f) {
  std::map<int, double> spheres;
  for (const auto& [w, c] : f.terms) spheres[static_cast<int>(w.letters.size())] += std::norm(c);
  double total = 0.0;
  for (const auto& [k, s] : spheres) total += (1.0 + k) * std::sqrt(s);
  return total;
}

double coefficient_l2_norm(const GroupElementCoeffs& f) {
  double total = 0.0;
  for (const auto& [w, c] : f.terms) total += std::norm(c);
  return std::sqrt(total);
}

GroupElementCoeffs radial_element(int n, const std::vector<double>& a) {
  GroupElementCoeffs f{n, {}};
  if (a.empty()) return f;
  const int K = static_cast<int>(a.size()) - 1;
  const CayleyBall ball(n, K);
  for (int i = 0; i < ball.size(); ++i) {
    const int k = ball.length_of(i);
    if (a[k] == 0.0) continue;
    const double s_k = k == 0 ? 1.0 : 2.0 * n * std::pow(2.0 * n - 1.0, k - 1);
    f.terms.emplace(ball.word(i), a[k] / std::sqrt(s_k));
  }
  return f;
}

RadialReport radial_equivalence_report(int n, const std::vector<double>& a, int m,
                                       const PowerIterationOptions& options) {
  for (double ak : a)
    if (!(ak >= 0.0)) throw InvalidArgument("radial_equivalence_report: coefficients must be >= 0");
  if (static_cast<int>(a.size()) - 1 + 2 > m)
    throw InvalidArgument("radial_equivalence_report: need K + 2 <= m");
  const std::uint64_t size = ball_cardinality(n, m);
  if (size > CayleyBall::kSizeGuard) throw SizeGuardExceeded(size, CayleyBall::kSizeGuard);

  double rhs = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) rhs += (k + 1.0) * a[k];
  const double lhs = truncated_operator_norm(radial_element(n, a), m, options);
  return {lhs, rhs, rhs > 0.0 ? lhs / rhs : 0.0, m};
}

}  // namespace qharm
