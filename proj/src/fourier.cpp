#include "qharm/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace qharm {

namespace {

// Natural log of n_alpha * tr(|A|^p) for a block of size n.
// Returns -inf for the zero block.
double log_weighted_trace(const Block& block, double p) {
  if (const auto* s = std::get_if<ScalarBlock>(&block)) {
    const double mag = std::abs(s->value);
    if (mag == 0.0) return -kInfinity;
    return 2.0 * log_big(s->dim) + p * std::log(mag);
  }
  const auto& m = std::get<DenseBlock>(block).entries;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  double total = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) total += std::pow(sv[i], p);
  if (total == 0.0) return -kInfinity;
  return std::log(static_cast<double>(m.rows())) + std::log(total);
}

double operator_norm(const Block& block) {
  if (const auto* s = std::get_if<ScalarBlock>(&block)) return std::abs(s->value);
  const auto& m = std::get<DenseBlock>(block).entries;
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()[0];
}

// n_alpha ||A||_HS^2.
double weighted_hs_squared(const Block& block) {
  if (const auto* s = std::get_if<ScalarBlock>(&block)) {
    const double mag = std::abs(s->value);
    if (mag == 0.0) return 0.0;
    return std::exp(2.0 * log_big(s->dim) + 2.0 * std::log(mag));
  }
  const auto& m = std::get<DenseBlock>(block).entries;
  return static_cast<double>(m.rows()) * m.squaredNorm();
}

Block scaled(const Block& block, double factor) {
  if (const auto* s = std::get_if<ScalarBlock>(&block)) return ScalarBlock{s->dim, s->value * factor};
  return DenseBlock{std::get<DenseBlock>(block).entries * factor};
}

Eigen::MatrixXcd as_dense(const Block& block) {
  if (const auto* d = std::get_if<DenseBlock>(&block)) return d->entries;
  const auto& s = std::get<ScalarBlock>(block);
  const auto n = static_cast<Eigen::Index>(s.dim);
  return Eigen::MatrixXcd::Identity(n, n) * s.value;
}

std::map<int, double> sphere_hs_sums(const FourierCoefficients& coeffs) {
  std::map<int, double> inner;
  for (const auto& [label, block] : coeffs.support())
    inner[length(coeffs.group(), label)] += weighted_hs_squared(block);
  return inner;
}

}  // namespace

double log_big(const BigInt& n) {
  if (n <= 0) throw InvalidArgument("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(n);
  if (bits < 1000) return std::log(static_cast<double>(n));
  const auto shift = bits - 60;
  const BigInt top = n >> shift;
  return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

BigInt block_dim(const Block& block) {
  if (const auto* s = std::get_if<ScalarBlock>(&block)) return s->dim;
  return static_cast<long long>(std::get<DenseBlock>(block).entries.rows());
}

void FourierCoefficients::set(const IrrLabel& label, Block block) {
  const BigInt n = dimension(group_, label);
  if (const auto* d = std::get_if<DenseBlock>(&block)) {
    if (d->entries.rows() != d->entries.cols())
      throw InvalidArgument("dense block must be square");
    if (d->entries.rows() > kMaxDenseDim)
      throw InvalidArgument("dense block exceeds the " + std::to_string(kMaxDenseDim) +
                            "-dimensional guard");
  }
  if (block_dim(block) != n)
    throw InvalidArgument("block size does not match n_alpha at label " + format_label(label));
  support_.insert_or_assign(label, std::move(block));
}

FourierCoefficients to_fourier(const CentralElement& f) {
  detail::require_degree_group(f.group, "to_fourier");
  FourierCoefficients out(f.group);
  if (f.coeffs.empty()) return out;
  const auto dims = dimensions(f.group, f.coeffs.rbegin()->first);
  for (const auto& [k, a] : f.coeffs)
    out.set(Degree{k}, ScalarBlock{dims[k], a * std::exp(-log_big(dims[k]))});
  return out;
}

CentralElement to_central(const FourierCoefficients& coeffs) {
  detail::require_degree_group(coeffs.group(), "to_central");
  CentralElement out{coeffs.group(), {}};
  for (const auto& [label, block] : coeffs.support()) {
    const auto* s = std::get_if<ScalarBlock>(&block);
    if (!s) throw InvalidArgument("to_central: block at " + format_label(label) + " is not scalar");
    out.coeffs[std::get<Degree>(label).k] = s->value * std::exp(log_big(s->dim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weights

double conjugate_exponent(double p) {
  if (p < 1.0) throw InvalidArgument("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

WeightSpec WeightSpec::sobolev(double s, double p) {
  return {Family::Sobolev, -s * (2.0 / p - 1.0) / 2.0};
}

WeightSpec WeightSpec::sharp_hy(double beta, double p) {
  return {Family::SharpHY, -beta * (conjugate_exponent(p) - 2.0)};
}

WeightSpec WeightSpec::hardy_littlewood(double beta, double p) {
  return {Family::HardyLittlewood, -(beta + 1.0) * (2.0 - p)};
}

WeightSpec WeightSpec::rapid_decay(double s) { return {Family::RapidDecay, -s}; }

WeightSpec WeightSpec::plain_power(double e) { return {Family::PlainPower, e}; }

double WeightSpec::operator()(int k) const { return std::pow(1.0 + k, exponent_); }

// ---------------------------------------------------------------------------
// Norms

double dual_lp_norm(const FourierCoefficients& coeffs, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("dual_lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& [label, block] : coeffs.support()) best = std::max(best, operator_norm(block));
    return best;
  }
  double total = 0.0;
  for (const auto& [label, block] : coeffs.support()) {
    const double lt = log_weighted_trace(block, p);
    if (lt > -kInfinity) total += std::exp(lt);
  }
  return std::pow(total, 1.0 / p);
}

double plancherel_l2_norm(const FourierCoefficients& coeffs) {
  double total = 0.0;
  for (const auto& [label, block] : coeffs.support()) total += weighted_hs_squared(block);
  return std::sqrt(total);
}

double plancherel_l2_norm(const CentralElement& f) {
  double total = 0.0;
  for (const auto& [k, a] : f.coeffs) total += std::norm(a);
  return std::sqrt(total);
}

std::complex<double> dual_pairing(const FourierCoefficients& a, const FourierCoefficients& b) {
  if (!(a.group() == b.group())) throw InvalidArgument("dual_pairing: group mismatch");
  std::complex<double> total = 0.0;
  for (const auto& [label, block_a] : a.support()) {
    const auto it = b.support().find(label);
    if (it == b.support().end()) continue;
    const auto* sa = std::get_if<ScalarBlock>(&block_a);
    const auto* sb = std::get_if<ScalarBlock>(&it->second);
    if (sa && sb) {
      total += std::exp(2.0 * log_big(sa->dim)) * sa->value * sb->value;
      continue;
    }
    const Eigen::MatrixXcd ma = as_dense(block_a);
    const Eigen::MatrixXcd mb = as_dense(it->second);
    total += static_cast<double>(ma.rows()) * (mb * ma).trace();
  }
  return total;
}

FourierCoefficients apply_multiplier(const FourierCoefficients& coeffs, const WeightSpec& weight) {
  return apply_multiplier(coeffs, RadialWeight([&weight](int k) { return weight(k); }));
}

FourierCoefficients apply_multiplier(const FourierCoefficients& coeffs, const RadialWeight& weight) {
  FourierCoefficients out(coeffs.group());
  for (const auto& [label, block] : coeffs.support())
    out.set(label, scaled(block, weight(length(coeffs.group(), label))));
  return out;
}

FourierCoefficients project_sphere(const FourierCoefficients& coeffs, int k) {
  FourierCoefficients out(coeffs.group());
  for (const auto& [label, block] : coeffs.support())
    if (length(coeffs.group(), label) == k) out.set(label, block);
  return out;
}

double mixed_norm(const FourierCoefficients& coeffs, double q, const RadialWeight& weight) {
  if (!(q >= 1.0)) throw InvalidArgument("mixed_norm: outer exponent must be >= 1");
  const auto inner = sphere_hs_sums(coeffs);
  if (std::isinf(q)) {
    double best = 0.0;
    for (const auto& [k, s] : inner) best = std::max(best, weight(k) * std::sqrt(s));
    return best;
  }
  double total = 0.0;
  for (const auto& [k, s] : inner) total += weight(k) * std::pow(s, q / 2.0);
  return std::pow(total, 1.0 / q);
}

double schatten_weighted_norm(const FourierCoefficients& coeffs, double p_prime, double beta) {
  if (!(p_prime >= 2.0) || std::isinf(p_prime))
    throw InvalidArgument("schatten_weighted_norm: p' must be finite and >= 2");
  double total = 0.0;
  for (const auto& [label, block] : coeffs.support()) {
    const double lt = log_weighted_trace(block, p_prime);
    if (lt == -kInfinity) continue;
    const double log_n = log_big(block_dim(block));
    const int k = length(coeffs.group(), label);
    total += std::exp((p_prime / 2.0 - 1.0) * log_n - beta * (p_prime - 2.0) * std::log1p(k) + lt);
  }
  return std::pow(total, 1.0 / p_prime);
}

double interp_weight_combine(double mu0_exp, double p0, double mu1_exp, double p1, double theta,
                             double p_target) {
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("interp_weight_combine: theta must lie in (0,1)");
  const double lhs = (1.0 - theta) / p0 + theta / p1;
  if (std::abs(lhs - 1.0 / p_target) > 1e-12)
    throw InvalidArgument("interp_weight_combine: (1-theta)/p0 + theta/p1 != 1/p");
  double e = mu0_exp * p_target * (1.0 - theta) / p0;
  if (!std::isinf(p1)) e += mu1_exp * p_target * theta / p1;
  return e;
}

}  // namespace qharm
