#include "qharm/repdata.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qharm/fit.hpp"

namespace qharm {

namespace {

// Dimension recurrence n_{k+1} = M n_k - n_{k-1}, n_0 = 1, n_1 = first.
struct DimensionRecurrence {
  int multiplier;
  int first;
};

DimensionRecurrence recurrence_for(const GroupDescriptor& g) {
  switch (g.kind()) {
    case GroupKind::FreeOrthogonal:
      return {g.param(), g.param()};
    case GroupKind::FreePermutation:
      return {g.param() - 2, g.param() - 1};
    case GroupKind::SU2:
      return {2, 2};
    case GroupKind::SO3:
      return {2, 3};
    default:
      throw UnsupportedGroup("group " + g.selector() + " has no degree labels");
  }
}

BigInt binomial(long long n, long long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  BigInt out = 1;
  for (long long i = 1; i <= r; ++i) {
    out *= (n - r + i);
    out /= i;
  }
  return out;
}

double binomial_d(long long n, long long r) {
  if (r < 0 || n < 0 || r > n) return 0.0;
  double out = 1.0;
  for (long long i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
  return out;
}

// Number of points of Z^d with l1 norm k: sum_i 2^i C(d,i) C(k-1,i-1).
BigInt lattice_sphere(int d, int k) {
  if (k == 0) return 1;
  BigInt total = 0;
  for (int i = 1; i <= std::min(d, k); ++i)
    total += (BigInt(1) << i) * binomial(d, i) * binomial(k - 1, i - 1);
  return total;
}

double lattice_sphere_d(int d, long long k) {
  if (k == 0) return 1.0;
  double total = 0.0;
  for (int i = 1; i <= std::min<long long>(d, k); ++i)
    total += std::ldexp(1.0, i) * binomial_d(d, i) * binomial_d(k - 1, i - 1);
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupDescriptor

GroupDescriptor GroupDescriptor::dual_zd(int d) {
  if (d < 1) throw InvalidArgument("zd: dimension must be positive");
  return {GroupKind::DualZd, d};
}

GroupDescriptor GroupDescriptor::dual_free_group(int n) {
  if (n < 2) throw InvalidArgument("fdual: rank must be >= 2");
  return {GroupKind::DualFreeGroup, n};
}

GroupDescriptor GroupDescriptor::free_orthogonal(int n) {
  if (n < 2) throw InvalidArgument("oplus: N must be >= 2");
  return {GroupKind::FreeOrthogonal, n};
}

GroupDescriptor GroupDescriptor::free_permutation(int n) {
  if (n < 4) throw InvalidArgument("splus: N must be >= 4");
  return {GroupKind::FreePermutation, n};
}

GroupDescriptor GroupDescriptor::su2() { return {GroupKind::SU2, 0}; }
GroupDescriptor GroupDescriptor::so3() { return {GroupKind::SO3, 0}; }

GroupDescriptor GroupDescriptor::parse(std::string_view selector) {
  if (selector == "su2") return su2();
  if (selector == "so3") return so3();
  const auto colon = selector.find(':');
  if (colon == std::string_view::npos)
    throw InvalidArgument("unknown group selector '" + std::string(selector) + "'");
  const auto name = selector.substr(0, colon);
  const auto arg = selector.substr(colon + 1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (ec != std::errc() || ptr != arg.data() + arg.size() || arg.empty())
    throw InvalidArgument("bad group parameter in '" + std::string(selector) + "'");
  if (name == "oplus") return free_orthogonal(value);
  if (name == "splus") return free_permutation(value);
  if (name == "fdual") return dual_free_group(value);
  if (name == "zd") return dual_zd(value);
  throw InvalidArgument("unknown group selector '" + std::string(selector) + "'");
}

std::string GroupDescriptor::selector() const {
  switch (kind_) {
    case GroupKind::DualZd:
      return "zd:" + std::to_string(param_);
    case GroupKind::DualFreeGroup:
      return "fdual:" + std::to_string(param_);
    case GroupKind::FreeOrthogonal:
      return "oplus:" + std::to_string(param_);
    case GroupKind::FreePermutation:
      return "splus:" + std::to_string(param_);
    case GroupKind::SU2:
      return "su2";
    case GroupKind::SO3:
      return "so3";
  }
  return {};
}

bool GroupDescriptor::has_degree_labels() const noexcept {
  return kind_ != GroupKind::DualZd && kind_ != GroupKind::DualFreeGroup;
}

bool GroupDescriptor::has_su2_fusion() const noexcept {
  return kind_ == GroupKind::FreeOrthogonal || kind_ == GroupKind::SU2;
}

bool GroupDescriptor::has_polynomial_growth() const noexcept {
  switch (kind_) {
    case GroupKind::DualZd:
    case GroupKind::SU2:
    case GroupKind::SO3:
      return true;
    case GroupKind::FreeOrthogonal:
      return param_ == 2;
    case GroupKind::FreePermutation:
      return param_ == 4;
    case GroupKind::DualFreeGroup:
      return false;
  }
  return false;
}

int GroupDescriptor::growth_order() const {
  if (!has_polynomial_growth())
    throw NotPolynomialGrowth(selector() + " is not of polynomial growth");
  return kind_ == GroupKind::DualZd ? param_ : 3;
}

// ---------------------------------------------------------------------------
// Words and labels

Word make_word(std::vector<int> letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (l == 0) throw InvalidArgument("word letter 0 is not a generator");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word{std::move(out)};
}

Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

Word multiply(const Word& a, const Word& b) {
  std::vector<int> letters = a.letters;
  letters.insert(letters.end(), b.letters.begin(), b.letters.end());
  return make_word(std::move(letters));
}

Word parse_word(std::string_view text, int n_generators) {
  std::vector<int> letters;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '1') continue;
    int index = 0;
    int sign = 1;
    if (c >= 'a' && c <= 'z') {
      index = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      index = c - 'A' + 1;
      sign = -1;
    } else {
      throw InvalidArgument(std::string("bad word letter '") + c + "'");
    }
    if (index > n_generators)
      throw InvalidArgument(std::string("word letter '") + c + "' exceeds rank " +
                            std::to_string(n_generators));
    letters.push_back(sign * index);
  }
  return make_word(std::move(letters));
}

std::string format_word(const Word& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    const int l = w.letters[i];
    out += static_cast<char>((l > 0 ? 'a' : 'A') + std::abs(l) - 1);
  }
  return out;
}

std::string format_label(const IrrLabel& label) {
  if (const auto* d = std::get_if<Degree>(&label)) return std::to_string(d->k);
  if (const auto* w = std::get_if<Word>(&label)) return format_word(*w);
  const auto& v = std::get<Lattice>(label).v;
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

void check_label(const GroupDescriptor& group, const IrrLabel& label) {
  if (group.has_degree_labels()) {
    const auto* d = std::get_if<Degree>(&label);
    if (!d) throw LabelMismatch("expected a degree label for " + group.selector());
    if (d->k < 0) throw LabelMismatch("negative degree label");
    return;
  }
  if (group.kind() == GroupKind::DualFreeGroup) {
    const auto* w = std::get_if<Word>(&label);
    if (!w) throw LabelMismatch("expected a word label for " + group.selector());
    for (std::size_t i = 0; i < w->letters.size(); ++i) {
      const int l = w->letters[i];
      if (l == 0 || std::abs(l) > group.param())
        throw LabelMismatch("word letter outside the generating set");
      if (i > 0 && w->letters[i - 1] == -l) throw LabelMismatch("word is not reduced");
    }
    return;
  }
  const auto* v = std::get_if<Lattice>(&label);
  if (!v) throw LabelMismatch("expected a lattice label for " + group.selector());
  if (static_cast<int>(v->v.size()) != group.param())
    throw LabelMismatch("lattice label has wrong dimension");
}

namespace detail {
void require_degree_group(const GroupDescriptor& group, const char* what) {
  if (!group.has_degree_labels())
    throw UnsupportedGroup(std::string(what) + ": " + group.selector() +
                           " has no degree labels; use group_algebra_product");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Dimensions and lengths

std::vector<BigInt> dimensions(const GroupDescriptor& group, int kmax) {
  if (kmax < 0) throw InvalidArgument("dimensions: kmax must be non-negative");
  const auto rec = recurrence_for(group);
  std::vector<BigInt> n(kmax + 1);
  n[0] = 1;
  if (kmax >= 1) n[1] = rec.first;
  for (int k = 1; k < kmax; ++k) n[k + 1] = BigInt(rec.multiplier) * n[k] - n[k - 1];
  return n;
}

BigInt dimension(const GroupDescriptor& group, int k) {
  if (k < 0) throw LabelMismatch("negative degree label");
  return dimensions(group, k).back();
}

BigInt dimension(const GroupDescriptor& group, const IrrLabel& label) {
  check_label(group, label);
  if (!group.has_degree_labels()) return 1;
  return dimension(group, std::get<Degree>(label).k);
}

int length(const GroupDescriptor& group, const IrrLabel& label) {
  check_label(group, label);
  if (const auto* d = std::get_if<Degree>(&label)) return d->k;
  if (const auto* w = std::get_if<Word>(&label)) return static_cast<int>(w->letters.size());
  long long total = 0;
  for (long long x : std::get<Lattice>(label).v) total += std::llabs(x);
  return static_cast<int>(total);
}

// ---------------------------------------------------------------------------
// Fusion

std::vector<std::pair<IrrLabel, int>> fusion_decompose(const GroupDescriptor& group,
                                                       const IrrLabel& a, const IrrLabel& b) {
  check_label(group, a);
  check_label(group, b);
  std::vector<std::pair<IrrLabel, int>> out;
  if (group.has_degree_labels()) {
    const int i = std::get<Degree>(a).k;
    const int j = std::get<Degree>(b).k;
    const int step = group.has_su2_fusion() ? 2 : 1;
    for (int c = std::abs(i - j); c <= i + j; c += step) out.emplace_back(Degree{c}, 1);
    return out;
  }
  if (group.kind() == GroupKind::DualFreeGroup) {
    out.emplace_back(multiply(std::get<Word>(a), std::get<Word>(b)), 1);
    return out;
  }
  Lattice sum = std::get<Lattice>(a);
  const auto& other = std::get<Lattice>(b).v;
  for (std::size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += other[i];
  out.emplace_back(std::move(sum), 1);
  return out;
}

int fusion_multiplicity(const GroupDescriptor& group, const IrrLabel& a, const IrrLabel& b,
                        const IrrLabel& c) {
  check_label(group, c);
  for (const auto& [label, mult] : fusion_decompose(group, a, b))
    if (label == c) return mult;
  return 0;
}

std::map<IrrLabel, std::complex<double>> group_algebra_product(
    const GroupDescriptor& group, const std::map<IrrLabel, std::complex<double>>& x,
    const std::map<IrrLabel, std::complex<double>>& y) {
  std::map<IrrLabel, std::complex<double>> out;
  for (const auto& [a, xa] : x)
    for (const auto& [b, yb] : y)
      for (const auto& [c, mult] : fusion_decompose(group, a, b))
        out[c] += xa * yb * static_cast<double>(mult);
  return out;
}

// ---------------------------------------------------------------------------
// Growth

BigInt sphere_size(const GroupDescriptor& group, int k) {
  if (k < 0) throw InvalidArgument("sphere_size: k must be non-negative");
  switch (group.kind()) {
    case GroupKind::DualZd:
      return lattice_sphere(group.param(), k);
    case GroupKind::DualFreeGroup: {
      if (k == 0) return 1;
      const int n = group.param();
      return BigInt(2 * n) * boost::multiprecision::pow(BigInt(2 * n - 1), k - 1);
    }
    default: {
      const BigInt n = dimension(group, k);
      return n * n;
    }
  }
}

BigInt ball_size(const GroupDescriptor& group, int k) {
  if (k < 0) throw InvalidArgument("ball_size: k must be non-negative");
  BigInt total = 0;
  if (group.has_degree_labels()) {
    for (const auto& n : dimensions(group, k)) total += n * n;
    return total;
  }
  for (int j = 0; j <= k; ++j) total += sphere_size(group, j);
  return total;
}

GrowthSequence::GrowthSequence(const GroupDescriptor& group) : group_(group) {
  if (group_.has_degree_labels()) ratio_ = recurrence_for(group_).first;
  update_sphere();
}

double GrowthSequence::sphere() const { return std::exp(log_sphere_); }

double GrowthSequence::sphere_ratio_bound() const {
  switch (group_.kind()) {
    case GroupKind::DualZd: {
      const int d = group_.param();
      return lattice_sphere_d(d, k_ + 1) / lattice_sphere_d(d, k_);
    }
    case GroupKind::DualFreeGroup:
      return k_ == 0 ? 2.0 * group_.param() : 2.0 * group_.param() - 1.0;
    default:
      // n_{j+1}/n_j is nonincreasing in j for every dimension recurrence here.
      return ratio_ * ratio_;
  }
}

void GrowthSequence::advance() {
  if (group_.has_degree_labels()) {
    const auto rec = recurrence_for(group_);
    if (rec.multiplier == 2) {
      // Polynomial cases: n_k = k+1 (SU(2) pattern) or 2k+1 (SO(3) pattern).
      const double step = rec.first == 2 ? 1.0 : 2.0;
      const double next = step * (k_ + 1) + 1.0;
      log_dim_ = std::log(next);
      ratio_ = (next + step) / next;
    } else {
      log_dim_ += std::log(ratio_);
      ratio_ = rec.multiplier - 1.0 / ratio_;
    }
  }
  ++k_;
  update_sphere();
}

void GrowthSequence::update_sphere() {
  switch (group_.kind()) {
    case GroupKind::DualZd:
      log_sphere_ = std::log(lattice_sphere_d(group_.param(), k_));
      break;
    case GroupKind::DualFreeGroup: {
      const double n = group_.param();
      log_sphere_ = k_ == 0 ? 0.0 : std::log(2.0 * n) + (k_ - 1) * std::log(2.0 * n - 1.0);
      break;
    }
    default:
      log_sphere_ = 2.0 * log_dim_;
  }
}

double growth_order_estimate(const GroupDescriptor& group, int kmax) {
  if (kmax < 8) throw InvalidArgument("growth_order_estimate: kmax must be >= 8");
  if (!group.has_polynomial_growth())
    throw NotPolynomialGrowth(group.selector() + " is not polynomial growth");
  std::vector<double> x, y;
  GrowthSequence seq(group);
  double ball = 0.0;
  for (int k = 0; k <= kmax; ++k, seq.advance()) {
    ball += seq.sphere();
    if (k >= kmax / 2) {
      x.push_back(std::log(1.0 + k));
      y.push_back(std::log(ball));
    }
  }
  return least_squares_slope(x, y);
}

SpherePowerBound sphere_power_bound(const GroupDescriptor& group) {
  if (!group.has_polynomial_growth())
    throw NotPolynomialGrowth(group.selector() + " is not polynomial growth");
  if (group.kind() == GroupKind::DualZd) {
    const int d = group.param();
    double factorial = 1.0;
    for (int i = 2; i < d; ++i) factorial *= i;
    return {static_cast<double>(d - 1), 1.0 / factorial, std::ldexp(1.0, d)};
  }
  if (group.has_su2_fusion()) return {2.0, 1.0, 1.0};  // (1+k)^2
  return {2.0, 1.0, 4.0};                                // (2k+1)^2
}

}  // namespace qharm
