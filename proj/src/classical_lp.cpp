#include "qharm/classical_lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace qharm {

namespace {

constexpr int kGaussPoints = 32;

struct GaussLegendre {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Roots of P_n by Newton from the Chebyshev initial guess.
GaussLegendre make_gauss_legendre() {
  GaussLegendre gl;
  const int n = kGaussPoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre gl = make_gauss_legendre();
  return gl;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const auto& gl = gauss_legendre();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) sum += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return sum * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double abs_per_width, const QuadratureOptions& opt, int depth) {
  const double m = 0.5 * (a + b);
  const double left = panel(f, a, m);
  const double right = panel(f, m, b);
  const double refined = left + right;
  const double diff = std::abs(refined - whole);
  if (diff <= std::max(opt.rel_tol * std::abs(refined), abs_per_width * (b - a)) ||
      depth >= opt.max_depth)
    return refined;
  return adapt(f, a, m, left, abs_per_width, opt, depth + 1) +
         adapt(f, m, b, right, abs_per_width, opt, depth + 1);
}

double golden_section_max(const std::function<double(double)>& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 80 && b - a > 1e-14; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max({fc, fd, f(a), f(b)});
}

}  // namespace

WeylTarget classical_model(const GroupDescriptor& group) {
  switch (group.kind()) {
    case GroupKind::FreeOrthogonal:
    case GroupKind::SU2:
      return WeylTarget::SU2;
    case GroupKind::FreePermutation:
    case GroupKind::SO3:
      return WeylTarget::SO3;
    default:
      throw UnsupportedGroup("no classical model for " + group.selector());
  }
}

double su2_character(int k, double theta) { return classical_character(WeylTarget::SU2, k, theta); }

double so3_character(int k, double theta) { return classical_character(WeylTarget::SO3, k, theta); }

double classical_character(WeylTarget target, int k, double theta) {
  if (k < 0) throw InvalidArgument("character degree must be >= 0");
  const double x = std::cos(theta);
  double prev = 1.0;
  double cur = target == WeylTarget::SU2 ? 2.0 * x : 2.0 * x + 1.0;
  if (k == 0) return prev;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double weyl_density(WeylTarget target, double theta) {
  const double s = target == WeylTarget::SU2 ? std::sin(theta) : std::sin(0.5 * theta);
  return 2.0 / std::numbers::pi * s * s;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options) {
  if (!(b > a)) throw InvalidArgument("integrate: empty interval");
  const int panels = std::max(1, options.initial_panels);
  const double width = (b - a) / panels;
  const double abs_per_width = options.abs_tol / (b - a);
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = i + 1 == panels ? b : lo + width;
    total += adapt(f, lo, hi, panel(f, lo, hi), abs_per_width, options, 0);
  }
  return total;
}

double weyl_integral(WeylTarget target, const std::function<double(double)>& f,
                     const QuadratureOptions& options) {
  return integrate([&](double t) { return f(t) * weyl_density(target, t); }, 0.0,
                   std::numbers::pi, options);
}

std::complex<double> class_function_value(WeylTarget target, const CentralElement& f, double theta) {
  if (f.coeffs.empty()) return 0.0;
  const int kmax = f.coeffs.rbegin()->first;
  const double x = std::cos(theta);
  double prev = 1.0;
  double cur = target == WeylTarget::SU2 ? 2.0 * x : 2.0 * x + 1.0;
  std::complex<double> sum = 0.0;
  auto it = f.coeffs.begin();
  for (int k = 0; k <= kmax; ++k) {
    const double chi = k == 0 ? 1.0 : cur;
    if (it != f.coeffs.end() && it->first == k) {
      sum += it->second * chi;
      ++it;
    }
    if (k >= 1) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return sum;
}

double central_lp_norm(const GroupDescriptor& group, const CentralElement& f, double p) {
  const WeylTarget target = classical_model(group);
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidArgument("central_lp_norm: p must lie in [1, inf)");
  if (f.coeffs.empty()) return 0.0;
  QuadratureOptions opt;
  opt.initial_panels = 8 + 2 * f.coeffs.rbegin()->first;
  const double integral = weyl_integral(
      target, [&](double t) { return std::pow(std::abs(class_function_value(target, f, t)), p); },
      opt);
  return std::pow(std::max(integral, 0.0), 1.0 / p);
}

double central_linf_norm(const GroupDescriptor& group, const CentralElement& f) {
  const WeylTarget target = classical_model(group);
  if (f.coeffs.empty()) return 0.0;
  constexpr int kGrid = 4096;
  constexpr int kRefine = 8;
  const double h = std::numbers::pi / (kGrid - 1);
  auto mag = [&](double t) { return std::abs(class_function_value(target, f, t)); };

  std::vector<double> values(kGrid);
  for (int i = 0; i < kGrid; ++i) values[i] = mag(i * h);
  std::vector<int> order(kGrid);
  for (int i = 0; i < kGrid; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + kRefine, order.end(),
                    [&](int a, int b) { return values[a] > values[b] || (values[a] == values[b] && a < b); });

  double best = values[order[0]];
  for (int r = 0; r < kRefine; ++r) {
    const int i = order[r];
    const double lo = std::max(0.0, (i - 1) * h);
    const double hi = std::min(std::numbers::pi, (i + 1) * h);
    best = std::max(best, golden_section_max(mag, lo, hi));
  }
  return best;
}

}  // namespace qharm
