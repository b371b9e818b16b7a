#pragma once

// Fourier coefficients on the discrete dual, the noncommutative l^p norms
// sum_a n_a tr(|A_a|^p), length-radial multipliers, and the exponent
// arithmetic of complex interpolation between weighted l^p spaces.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <variant>

#include "qharm/repdata.hpp"

namespace qharm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr int kMaxDenseDim = 64;

/// value * Id_dim. Used for central elements and huge n_alpha.
struct ScalarBlock {
  BigInt dim;
  std::complex<double> value;
};

struct DenseBlock {
  Eigen::MatrixXcd entries;
};

using Block = std::variant<ScalarBlock, DenseBlock>;

BigInt block_dim(const Block& block);

/// Finite family (f^(alpha))_alpha with block sizes checked against n_alpha.
class FourierCoefficients {
 public:
  explicit FourierCoefficients(GroupDescriptor group) : group_(group) {}

  const GroupDescriptor& group() const noexcept { return group_; }
  const std::map<IrrLabel, Block>& support() const noexcept { return support_; }

  /// Inserts or replaces the block at `label`.
  void set(const IrrLabel& label, Block block);
  bool empty() const noexcept { return support_.empty(); }

 private:
  GroupDescriptor group_;
  std::map<IrrLabel, Block> support_;
};

/// chi_k  <->  block (a_k / n_k) Id_{n_k}.
FourierCoefficients to_fourier(const CentralElement& f);
/// Inverse of to_fourier. Throws InvalidArgument if a block is not scalar.
CentralElement to_central(const FourierCoefficients& coeffs);

/// Radial weights w(k) = (1+k)^e for the named families.
class WeightSpec {
 public:
  enum class Family { Sobolev, SharpHY, HardyLittlewood, RapidDecay, PlainPower };

  /// (1+k)^{-s(2/p-1)/2}; squared inside HS sums this is (1+k)^{-s(2/p-1)}.
  static WeightSpec sobolev(double s, double p);
  /// (1+k)^{-beta(p'-2)}.
  static WeightSpec sharp_hy(double beta, double p);
  /// (1+k)^{-(beta+1)(2-p)}.
  static WeightSpec hardy_littlewood(double beta, double p);
  /// (1+k)^{-s}.
  static WeightSpec rapid_decay(double s);
  static WeightSpec plain_power(double e);

  Family family() const noexcept { return family_; }
  double exponent() const noexcept { return exponent_; }
  double operator()(int k) const;

 private:
  WeightSpec(Family family, double exponent) : family_(family), exponent_(exponent) {}

  Family family_;
  double exponent_;
};

using RadialWeight = std::function<double(int)>;

/// Conjugate exponent p' with 1/p + 1/p' = 1 (p = 1 gives infinity).
double conjugate_exponent(double p);

double dual_lp_norm(const FourierCoefficients& coeffs, double p);
double plancherel_l2_norm(const FourierCoefficients& coeffs);
double plancherel_l2_norm(const CentralElement& f);

/// Dual pairing sum_a n_a tr(B_a A_a).
std::complex<double> dual_pairing(const FourierCoefficients& a, const FourierCoefficients& b);

FourierCoefficients apply_multiplier(const FourierCoefficients& coeffs, const WeightSpec& weight);
FourierCoefficients apply_multiplier(const FourierCoefficients& coeffs, const RadialWeight& weight);

/// Restriction to the sphere {alpha : |alpha| = k}.
FourierCoefficients project_sphere(const FourierCoefficients& coeffs, int k);

/// (sum_k w(k) (sum_{|a|=k} n_a ||f^(a)||_HS^2)^{q/2})^{1/q}. For q = inf the
/// weight multiplies the sphere norm directly: sup_k w(k) (inner_k)^{1/2}.
double mixed_norm(const FourierCoefficients& coeffs, double q, const RadialWeight& weight);

/// (sum_a n_a^{p'/2-1} (1+|a|)^{-beta(p'-2)} n_a ||f^(a)||_{S^{p'}}^{p'})^{1/p'}, p' >= 2.
double schatten_weighted_norm(const FourierCoefficients& coeffs, double p_prime, double beta);

/// Exponent e of mu = mu0^{p(1-theta)/p0} mu1^{p theta/p1} for power
/// weights mu_i(k) = (1+k)^{e_i}. Requires (1-theta)/p0 + theta/p1 = 1/p.
double interp_weight_combine(double mu0_exp, double p0, double mu1_exp, double p1, double theta,
                             double p_target);

/// Natural log of a positive big integer, usable beyond the double range.
double log_big(const BigInt& n);

}  // namespace qharm
