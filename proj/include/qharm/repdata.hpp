#pragma once

// Representation data of the supported compact matrix quantum groups:
// irreducible labels, dimensions, lengths, fusion rules and the growth
// sequences s_k (sphere) and b_k (ball).
//
// Every descriptor is of Kac type. Degree-labelled groups (O_N^+, S_N^+,
// SU(2), SO(3)) have Irr = {0, 1, 2, ...} and self-conjugate labels. Duals
// of Z^d and F_N have one-dimensional irreducibles indexed by group elements.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qharm/error.hpp"

namespace qharm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class GroupKind { DualZd, DualFreeGroup, FreeOrthogonal, FreePermutation, SU2, SO3 };

class GroupDescriptor {
 public:
  static GroupDescriptor dual_zd(int d);
  static GroupDescriptor dual_free_group(int n);
  static GroupDescriptor free_orthogonal(int n);
  static GroupDescriptor free_permutation(int n);
  static GroupDescriptor su2();
  static GroupDescriptor so3();

  /// Parses "oplus:3", "splus:5", "fdual:2", "zd:2", "su2", "so3".
  static GroupDescriptor parse(std::string_view selector);

  GroupKind kind() const noexcept { return kind_; }
  /// d for DualZd, N otherwise; 0 for SU2/SO3.
  int param() const noexcept { return param_; }

  std::string selector() const;

  /// Irr(G) = {0,1,2,...} with |k| = k.
  bool has_degree_labels() const noexcept;
  /// SU(2)-type fusion (O_N^+, SU2) as opposed to SO(3)-type (S_N^+, SO3).
  bool has_su2_fusion() const noexcept;
  /// b_k grows polynomially: Z^d, O_2^+, S_4^+, SU2, SO3.
  bool has_polynomial_growth() const noexcept;
  /// Polynomial growth order gamma with b_k ~ (1+k)^gamma. Throws
  /// NotPolynomialGrowth for exponentially growing duals.
  int growth_order() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  GroupDescriptor(GroupKind kind, int param) : kind_(kind), param_(param) {}

  GroupKind kind_;
  int param_;
};

// ---------------------------------------------------------------------------
// Irreducible labels

struct Degree {
  int k = 0;
  friend auto operator<=>(const Degree&, const Degree&) = default;
};

/// Reduced word in the free group. Letter +i is g_i, -i is g_i^{-1}
/// (i = 1..N). Construct through make_word to guarantee reduction.
struct Word {
  std::vector<int> letters;
  friend auto operator<=>(const Word&, const Word&) = default;
};

struct Lattice {
  std::vector<long long> v;
  friend auto operator<=>(const Lattice&, const Lattice&) = default;
};

using IrrLabel = std::variant<Degree, Word, Lattice>;

/// Freely reduces the letter sequence.
Word make_word(std::vector<int> letters);
Word inverse(const Word& w);
Word multiply(const Word& a, const Word& b);

/// Letters a, b, c, ... are generators; capitals are inverses. Whitespace
/// between letters is optional. "1" (or "") is the identity.
Word parse_word(std::string_view text, int n_generators);
std::string format_word(const Word& w);

std::string format_label(const IrrLabel& label);

// ---------------------------------------------------------------------------
// Dimensions, lengths, fusion

BigInt dimension(const GroupDescriptor& group, const IrrLabel& label);
/// Degree-labelled groups only.
BigInt dimension(const GroupDescriptor& group, int k);
/// n_0..n_kmax in one pass.
std::vector<BigInt> dimensions(const GroupDescriptor& group, int kmax);

int length(const GroupDescriptor& group, const IrrLabel& label);

/// a (x) b as a list of (irreducible, multiplicity), ordered by label.
std::vector<std::pair<IrrLabel, int>> fusion_decompose(const GroupDescriptor& group,
                                                       const IrrLabel& a, const IrrLabel& b);
/// N(a, b, c).
int fusion_multiplicity(const GroupDescriptor& group, const IrrLabel& a, const IrrLabel& b,
                        const IrrLabel& c);

/// Throws LabelMismatch unless the label variant matches the group.
void check_label(const GroupDescriptor& group, const IrrLabel& label);

// ---------------------------------------------------------------------------
// Growth

BigInt sphere_size(const GroupDescriptor& group, int k);
BigInt ball_size(const GroupDescriptor& group, int k);

/// Streams log n_k and s_k in double precision for k = 0, 1, 2, ...
/// without overflow (ratios n_{k+1}/n_k are propagated instead of n_k).
/// DualZd reports the lattice sphere count; group duals report n_k = 1.
class GrowthSequence {
 public:
  explicit GrowthSequence(const GroupDescriptor& group);

  int degree() const noexcept { return k_; }
  double log_sphere() const noexcept { return log_sphere_; }
  double sphere() const;
  /// Degree-labelled groups: log n_k. Group duals: 0.
  double log_dimension() const noexcept { return log_dim_; }
  /// Upper bound on s_{j+1}/s_j valid for all j >= degree(); finite for
  /// every supported group (nonincreasing ratio sequences).
  double sphere_ratio_bound() const;
  void advance();

 private:
  void update_sphere();

  GroupDescriptor group_;
  int k_ = 0;
  double log_dim_ = 0.0;
  double ratio_ = 0.0;  // n_{k+1}/n_k for exponential degree groups
  double log_sphere_ = 0.0;
};

/// Least-squares slope of log b_k against log(1+k) over k in [kmax/2, kmax].
double growth_order_estimate(const GroupDescriptor& group, int kmax);

/// Polynomial bounds a(1+k)^g <= s_k <= A(1+k)^g for k >= 1 (g = gamma - 1).
struct SpherePowerBound {
  double exponent;
  double lower;
  double upper;
};
SpherePowerBound sphere_power_bound(const GroupDescriptor& group);

// ---------------------------------------------------------------------------
// Character-basis expansions and their fusion product

template <class Scalar>
struct CharacterExpansion {
  GroupDescriptor group;
  std::map<int, Scalar> coeffs;  // degree k -> coefficient of chi_k
};

using CentralElement = CharacterExpansion<std::complex<double>>;
using ExactCentralElement = CharacterExpansion<BigRational>;

namespace detail {
void require_degree_group(const GroupDescriptor& group, const char* what);
}  // namespace detail

/// Product of central elements: the coefficient of chi_c is
/// sum_{a,b} x_a y_b N(a, b, c). Exact when Scalar is exact.
template <class Scalar>
CharacterExpansion<Scalar> central_product(const CharacterExpansion<Scalar>& x,
                                           const CharacterExpansion<Scalar>& y) {
  if (!(x.group == y.group)) throw InvalidArgument("central_product: group mismatch");
  detail::require_degree_group(x.group, "central_product");
  if (x.coeffs.empty() || y.coeffs.empty()) return {x.group, {}};

  const int dx = x.coeffs.rbegin()->first;
  const int dy = y.coeffs.rbegin()->first;
  std::vector<Scalar> out(dx + dy + 1, Scalar(0));
  std::vector<bool> used(dx + dy + 1, false);

  const int step = x.group.has_su2_fusion() ? 2 : 1;
  for (const auto& [i, ai] : x.coeffs) {
    for (const auto& [j, bj] : y.coeffs) {
      const Scalar prod = ai * bj;
      for (int c = (i > j ? i - j : j - i); c <= i + j; c += step) {
        out[c] += prod;
        used[c] = true;
      }
    }
  }
  CharacterExpansion<Scalar> result{x.group, {}};
  for (int c = 0; c <= dx + dy; ++c)
    if (used[c]) result.coeffs.emplace(c, out[c]);
  return result;
}

/// Group-algebra (convolution) product on any supported group, expressed
/// through fusion_decompose. The code path used for Z^d and F_N duals.
std::map<IrrLabel, std::complex<double>> group_algebra_product(
    const GroupDescriptor& group, const std::map<IrrLabel, std::complex<double>>& x,
    const std::map<IrrLabel, std::complex<double>>& y);

}  // namespace qharm
