#include "qharm/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qharm/classical_lp.hpp"
#include "qharm/fit.hpp"

namespace qharm {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  // 53 random bits; identical across standard libraries.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_p_range(double p, bool allow_one, const char* what) {
  if (!(p <= 2.0) || (allow_one ? !(p >= 1.0) : !(p > 1.0)))
    throw InvalidArgument(std::string(what) + ": p must lie in " + (allow_one ? "[1, 2]" : "(1, 2]"));
}

VerifyReport single(const std::string& id, double lhs, double rhs) {
  VerifyReport r;
  r.id = id;
  r.instances.push_back({0.0, lhs, rhs, rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 0.0)});
  r.max_ratio = r.instances.back().ratio;
  return r;
}

void require_poly_degree_group(const GroupDescriptor& group, const char* what) {
  if (!group.has_degree_labels())
    throw UnsupportedGroup(std::string(what) + ": needs a degree-labelled group, got " + group.selector());
  if (!group.has_polynomial_growth())
    throw NotPolynomialGrowth(std::string(what) + ": " + group.selector() + " is not of polynomial growth");
}

double big_to_double(const BigInt& n) { return std::exp(log_big(n)); }

}  // namespace

double central_norm(const GroupDescriptor& group, const CentralElement& f, double p) {
  if (p == 2.0) return plancherel_l2_norm(f);
  if (!group.has_degree_labels())
    throw UnsupportedGroup("L^p norm with p != 2 is not computable on " + group.selector());
  return central_lp_norm(group, f, p);
}

VerifyReport check_hausdorff_young(const GroupDescriptor& group, const CentralElement& f, double p) {
  require_p_range(p, true, "check_hausdorff_young");
  const double lhs = dual_lp_norm(to_fourier(f), conjugate_exponent(p));
  const double rhs = central_norm(group, f, p);
  auto r = single("hausdorff_young", lhs, rhs);
  r.params["group"] = group.selector();
  r.params["p"] = p;
  r.verdict = lhs <= rhs * (1.0 + kHyTolerance) ? Verdict::Holds : Verdict::Violated;
  return r;
}

VerifyReport check_sharpened_hy(const GroupDescriptor& group, const CentralElement& f, double p, double beta) {
  require_p_range(p, false, "check_sharpened_hy");
  const double q = conjugate_exponent(p);
  const double e = -beta * (q - 2.0);
  const double lhs = mixed_norm(to_fourier(f), q, [e](int k) { return std::pow(1.0 + k, e); });
  const double rhs = central_norm(group, f, p);
  auto r = single("sharpened_hy", lhs, rhs);
  r.params["group"] = group.selector();
  r.params["p"] = p;
  r.params["beta"] = beta;
  return r;
}

VerifyReport check_sobolev(const GroupDescriptor& group, const CentralElement& f, double p, double s) {
  require_p_range(p, false, "check_sobolev");
  if (!(s >= 0.0)) throw InvalidArgument("check_sobolev: s must be >= 0");
  const double e = -s * (2.0 / p - 1.0);
  const double lhs = mixed_norm(to_fourier(f), 2.0, [e](int k) { return std::pow(1.0 + k, e); });
  const double rhs = central_norm(group, f, p);
  auto r = single("sobolev", lhs, rhs);
  r.params["group"] = group.selector();
  r.params["p"] = p;
  r.params["s"] = s;
  return r;
}

CentralElement random_central(const GroupDescriptor& group, int max_degree, std::mt19937_64& rng) {
  detail::require_degree_group(group, "random_central");
  if (max_degree < 0) throw InvalidArgument("random_central: max_degree must be >= 0");
  const int degree = static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree + 1));
  CentralElement f{group, {}};
  for (int k = 0; k <= degree; ++k) {
    const double re = 2.0 * unit_uniform(rng) - 1.0;
    const double im = 2.0 * unit_uniform(rng) - 1.0;
    f.coeffs[k] = {re, im};
  }
  return f;
}

VerifyReport hy_battery(const GroupDescriptor& group, double p, int trials, std::uint64_t seed, int max_degree) {
  if (trials < 1) throw InvalidArgument("hy_battery: trials must be >= 1");
  std::mt19937_64 rng(seed);
  VerifyReport report;
  report.id = "hausdorff_young_battery";
  report.params["group"] = group.selector();
  report.params["p"] = p;
  report.params["trials"] = trials;
  report.params["seed"] = seed;
  report.params["max_degree"] = max_degree;
  report.params["tolerance"] = kHyTolerance;
  bool ok = true;
  for (int i = 0; i < trials; ++i) {
    const auto one = check_hausdorff_young(group, random_central(group, max_degree, rng), p);
    auto inst = one.instances.front();
    inst.parameter = i;
    report.instances.push_back(inst);
    report.max_ratio = std::max(report.max_ratio, inst.ratio);
    ok = ok && one.verdict == Verdict::Holds;
  }
  report.verdict = ok ? Verdict::Holds : Verdict::Violated;
  return report;
}

std::string to_string(GradedFamily family) {
  switch (family) {
    case GradedFamily::Xi:
      return "xi";
    case GradedFamily::CharacterSum:
      return "charsum";
    case GradedFamily::SingleSphere:
      return "sphere";
    case GradedFamily::Geometric:
      return "geometric";
  }
  return "";
}

GradedFamily parse_graded_family(const std::string& name) {
  for (auto f : {GradedFamily::Xi, GradedFamily::CharacterSum, GradedFamily::SingleSphere, GradedFamily::Geometric})
    if (to_string(f) == name) return f;
  throw InvalidArgument("unknown graded family '" + name + "' (xi, charsum, sphere, geometric)");
}

CentralElement graded_element(const GroupDescriptor& group, GradedFamily family, int m) {
  detail::require_degree_group(group, "graded_element");
  if (m < 0) throw InvalidArgument("graded_element: m must be >= 0");
  CentralElement f{group, {}};
  switch (family) {
    case GradedFamily::Xi: {
      const auto dims = dimensions(group, m);
      const double half_log_ball = 0.5 * log_big(ball_size(group, m));
      for (int k = 0; k <= m; ++k) f.coeffs[k] = std::exp(log_big(dims[k]) - half_log_ball);
      break;
    }
    case GradedFamily::CharacterSum:
      for (int k = 0; k <= m; ++k) f.coeffs[k] = 1.0;
      break;
    case GradedFamily::SingleSphere:
      f.coeffs[m] = 1.0;
      break;
    case GradedFamily::Geometric:
      for (int k = 0; k <= m; ++k) f.coeffs[k] = std::ldexp(1.0, -k);
      break;
  }
  return f;
}

VerifyReport graded_trend(GradedCheck check, const GroupDescriptor& group, GradedFamily family, double p,
                          double param, int m_max, int m_min) {
  if (m_min < 1 || m_max < m_min + 2) throw InvalidArgument("graded_trend: need 1 <= m_min and m_max >= m_min + 2");
  VerifyReport report;
  report.id = check == GradedCheck::SharpenedHY ? "sharpened_hy_trend" : "sobolev_trend";
  report.params["group"] = group.selector();
  report.params["family"] = to_string(family);
  report.params["p"] = p;
  report.params[check == GradedCheck::SharpenedHY ? "beta" : "s"] = param;
  report.params["m_min"] = m_min;
  report.params["m_max"] = m_max;
  report.params["slope_threshold"] = kTrendSlope;

  std::vector<double> lm, lr;
  for (int m = m_min; m <= m_max; ++m) {
    const auto f = graded_element(group, family, m);
    const auto one = check == GradedCheck::SharpenedHY ? check_sharpened_hy(group, f, p, param)
                                                       : check_sobolev(group, f, p, param);
    auto inst = one.instances.front();
    inst.parameter = m;
    report.instances.push_back(inst);
    report.max_ratio = std::max(report.max_ratio, inst.ratio);
    if (2 * m >= m_max) {
      lm.push_back(std::log(static_cast<double>(m)));
      lr.push_back(std::log(inst.ratio));
    }
  }
  report.slope = least_squares_slope(lm, lr);
  report.verdict = report.slope <= kTrendSlope ? Verdict::Bounded : Verdict::Divergent;
  return report;
}

// ---------------------------------------------------------------------------
// Sharpness through the xi_m test vectors

CentralElement weighted_xi(const GroupDescriptor& group, double s, int m) {
  auto f = graded_element(group, GradedFamily::Xi, m);
  for (auto& [k, a] : f.coeffs) a *= std::pow(1.0 + k, -s);
  return f;
}

double xi_l4_square(const GroupDescriptor& group, double s, int m) {
  require_poly_degree_group(group, "xi_l4_square");
  const auto f = weighted_xi(group, s, m);
  return plancherel_l2_norm(central_product(f, f));
}

double xi_l4_square_quadrature(const GroupDescriptor& group, double s, int m) {
  require_poly_degree_group(group, "xi_l4_square_quadrature");
  const double l4 = central_lp_norm(group, weighted_xi(group, s, m), 4.0);
  return l4 * l4;
}

double sharpness_lower_bound(const GroupDescriptor& group, double s, int m) {
  require_poly_degree_group(group, "sharpness_lower_bound");
  const auto dims = dimensions(group, m);
  std::vector<double> sphere(m + 1), ball(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double n = big_to_double(dims[k]);
    sphere[k] = n * n;
    ball[k] = sphere[k] + (k > 0 ? ball[k - 1] : 0.0);
  }
  double sum = 0.0;
  for (int k = 0; k <= m; ++k) sum += ball[m - k] * ball[m - k] * sphere[k];
  const double w = std::pow(1.0 + m, -s);
  return w * w / ball[m] * std::sqrt(sum);
}

ScanReport sharpness_scan(const GroupDescriptor& group, double s, int m_max, const SharpnessThresholds& thresholds) {
  require_poly_degree_group(group, "sharpness_scan");
  if (m_max < 4) throw InvalidArgument("sharpness_scan: m_max must be >= 4");
  ScanReport report;
  report.id = "l4_sharpness";
  report.parameter = "m";
  report.params["group"] = group.selector();
  report.params["s"] = s;
  report.params["m_max"] = m_max;
  report.params["gamma"] = group.growth_order();
  report.params["divergent_slope"] = thresholds.divergent_slope;
  report.params["bounded_slope"] = thresholds.bounded_slope;

  std::vector<double> q, quad_gap, fit_x, fit_y, q_x, q_y;
  double max_gap = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double lower = sharpness_lower_bound(group, s, m);
    const double qm = xi_l4_square(group, s, m);
    report.grid.push_back(m);
    report.values.push_back(lower);
    report.certified_tail.push_back(0.0);
    q.push_back(qm);
    double gap = 0.0;
    if (m <= thresholds.quadrature_check_max) {
      gap = std::abs(qm - xi_l4_square_quadrature(group, s, m)) / qm;
      max_gap = std::max(max_gap, gap);
    }
    quad_gap.push_back(gap);
    if (2 * m >= m_max) {
      fit_x.push_back(std::log1p(m));
      fit_y.push_back(std::log(lower));
      q_y.push_back(std::log(qm));
    }
  }
  report.extra_columns.emplace_back("q", std::move(q));
  report.extra_columns.emplace_back("quadrature_rel_gap", std::move(quad_gap));
  report.slope = least_squares_slope(fit_x, fit_y);
  report.params["q_slope"] = least_squares_slope(fit_x, q_y);
  report.params["max_quadrature_rel_gap"] = max_gap;
  report.extremal_parameter = m_max;
  report.extremal_value = report.values.back();
  if (report.slope >= thresholds.divergent_slope)
    report.verdict = Verdict::Divergent;
  else if (report.slope <= thresholds.bounded_slope)
    report.verdict = Verdict::Bounded;
  else
    report.verdict = Verdict::Inconclusive;
  return report;
}

// ---------------------------------------------------------------------------
// Rapid-decay degree

RdDegreeReport rd_degree_scan(const GroupDescriptor& group, const std::vector<double>& s_grid, int kmax) {
  RdDegreeReport report;
  report.group = group.selector();
  report.kmax = kmax;
  const bool polynomial = group.has_polynomial_growth();
  if (polynomial) {
    report.route = "polynomial";
    report.threshold = group.growth_order() / 2.0;
  } else if (group.kind() == GroupKind::FreeOrthogonal || group.kind() == GroupKind::FreePermutation ||
             group.kind() == GroupKind::DualFreeGroup) {
    report.route = "rapid-decay";
    report.beta = 1.0;
    report.threshold = 1.5;
  } else {
    throw UnsupportedGroup("rd_degree_scan: unsupported group " + group.selector());
  }
  for (double s : s_grid) {
    const auto w = CwWeight::log_power(s);
    const auto r = polynomial ? cw_sum(group, w, kmax) : cw_sum_rd(report.beta, w, kmax);
    const Verdict v = r.divergent ? Verdict::Diverges : (r.certified ? Verdict::Converges : Verdict::Inconclusive);
    report.entries.push_back({s, r.partial, r.tail_bound, v});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Exponent algebra

ExponentRow exponent_algebra_row(const std::string& kind, const nlohmann::ordered_json& params) {
  ExponentRow row;
  row.params = params;
  row.degenerate = false;
  const double tol = kExponentTolerance;
  const double p = params.at("p").get<double>();
  if (!(p > 1.0 && p <= 2.0)) throw InvalidArgument("exponent_algebra_row: p must lie in (1, 2]");
  const double q = conjugate_exponent(p);

  if (kind == "lp_ultra" || kind == "lp_dual_ultra") {
    const double s = params.at("s").get<double>();
    double threshold;
    if (kind == "lp_ultra") {
      row.lhs = s / p - 2.0 / q + 1.0 - 3.0 * (2.0 / p - 1.0);
      row.rhs = (s - 4.0 + 2.0 * p) / p;
      threshold = 4.0 - 2.0 * p;
    } else {
      row.lhs = -2.0 + 4.0 / p + s / q - 3.0 * (2.0 / p - 1.0);
      row.rhs = (s - (q - 2.0)) / q;
      threshold = q - 2.0;
    }
    row.params["threshold"] = threshold;
    row.residual = std::abs(row.lhs - row.rhs);
    row.equivalence_ok = (row.lhs >= -tol) == (s >= threshold - tol);
  } else if (kind == "hy_interpolation") {
    const double beta = params.at("beta").get<double>();
    const double mu0 = -(beta + 1.0) * (2.0 - p);
    const double mu1 = -beta * (q - 2.0);
    row.lhs = interp_weight_combine(mu0, p, mu1, q, 0.5, 2.0);
    row.rhs = -(2.0 * beta + 1.0) * (2.0 / p - 1.0);
    row.residual = std::abs(row.lhs - row.rhs);
    row.equivalence_ok = true;
  } else if (kind == "sobolev_interpolation") {
    const double p0 = params.at("p0").get<double>();
    const double s = params.at("s").get<double>();
    const double gamma = params.at("gamma").get<double>();
    if (p == p0) {
      row.lhs = row.rhs = row.residual = 0.0;
      row.degenerate = true;
      row.equivalence_ok = true;
      return row;
    }
    // theta / p0 + (1 - theta) / p = 3/4
    const double theta = (0.75 - 1.0 / p) / (1.0 / p0 - 1.0 / p);
    if (!(theta > 0.0 && theta < 1.0))
      throw InvalidArgument("exponent_algebra_row: sobolev_interpolation needs theta in (0,1); got " + std::to_string(theta));
    const double r = gamma * (2.0 / p0 - 1.0) / (s * (2.0 / p - 1.0));
    const double a = 1.0 / p - 0.5;
    const double line1 = s * a * (r * theta + 1.0 - theta);
    const double line2 = (s - gamma) * a * (1.0 - theta) + gamma * ((1.0 / p0 - 0.5) * theta + a * (1.0 - theta));
    const double line3 = (s - gamma) * a * (1.0 - theta) + gamma / 4.0;
    row.params["theta"] = theta;
    row.lhs = line1;
    row.rhs = line3;
    row.residual = std::max({std::abs(line1 - line2), std::abs(line2 - line3), std::abs(line1 - line3)});
    row.equivalence_ok = (line3 >= gamma / 4.0 - tol) == (s >= gamma - tol);
  } else {
    throw InvalidArgument("unknown exponent identity '" + kind + "' (lp_ultra, lp_dual_ultra, hy_interpolation, sobolev_interpolation)");
  }
  return row;
}

ExponentReport exponent_algebra_check(const std::string& kind) {
  ExponentReport report;
  report.kind = kind;
  const std::vector<double> ps = {1.1, 1.25, 4.0 / 3.0, 1.5, 1.75, 2.0};
  auto add = [&](nlohmann::ordered_json params) {
    auto row = exponent_algebra_row(kind, params);
    report.max_residual = std::max(report.max_residual, row.residual);
    report.ok = report.ok && row.equivalence_ok && row.residual < kExponentTolerance;
    report.rows.push_back(std::move(row));
  };
  if (kind == "lp_ultra" || kind == "lp_dual_ultra") {
    for (double p : ps) {
      const double q = conjugate_exponent(p);
      const double threshold = kind == "lp_ultra" ? 4.0 - 2.0 * p : q - 2.0;
      for (double ds : {-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0}) add({{"p", p}, {"s", threshold + ds}});
    }
  } else if (kind == "hy_interpolation") {
    for (double p : ps)
      for (double beta : {0.0, 0.5, 1.0, 2.0, 3.0}) add({{"p", p}, {"beta", beta}});
  } else if (kind == "sobolev_interpolation") {
    for (double gamma : {1.0, 2.0, 3.0})
      for (double p0 : {1.1, 1.2, 1.3})
        for (double p : {1.4, 1.6, 1.8})
          for (double s : {0.5, 1.0, 2.0, 3.0, 4.0}) add({{"p", p}, {"p0", p0}, {"s", s}, {"gamma", gamma}});
  } else {
    throw InvalidArgument("unknown exponent identity '" + kind + "' (lp_ultra, lp_dual_ultra, hy_interpolation, sobolev_interpolation)");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Ultracontractivity

ScanReport ultracontractivity_decision(const GroupDescriptor& group, double s) {
  LengthFunction l = LengthFunction::poisson();
  switch (group.kind()) {
    case GroupKind::DualFreeGroup:
      break;
    case GroupKind::FreeOrthogonal:
      if (group.param() < 3) throw UnsupportedGroup("ultracontractivity_decision: O_N^+ needs N >= 3");
      l = LengthFunction::heat(group);
      break;
    case GroupKind::FreePermutation:
      if (group.param() < 5) throw UnsupportedGroup("ultracontractivity_decision: S_N^+ needs N >= 5");
      l = LengthFunction::heat(group);
      break;
    default:
      throw UnsupportedGroup("ultracontractivity_decision: unsupported group " + group.selector());
  }
  const auto grid = log_grid(1e-3, 10.0, 60);
  auto report = ultra_sup_scan(s, l, grid);
  report.id = "ultracontractivity";
  report.params["group"] = group.selector();
  std::vector<double> rd_sum;
  for (double t : grid) rd_sum.push_back(cw_sum_rd(1.0, CwWeight::linear(t), 50'000'000).value());
  report.extra_columns.emplace_back("rd_sum", std::move(rd_sum));
  return report;
}

}  // namespace qharm
