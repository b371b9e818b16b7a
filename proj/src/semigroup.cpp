#include "qharm/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "qharm/fit.hpp"

namespace qharm {

namespace {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// Limit of s_{k+1}/s_k for exponentially growing duals.
double asymptotic_sphere_ratio(const GroupDescriptor& group) {
  switch (group.kind()) {
    case GroupKind::DualFreeGroup:
      return 2.0 * group.param() - 1.0;
    case GroupKind::FreeOrthogonal:
    case GroupKind::FreePermutation: {
      const double m = group.kind() == GroupKind::FreeOrthogonal ? group.param() : group.param() - 2.0;
      const double rho = (m + std::sqrt(std::max(0.0, m * m - 4.0))) / 2.0;
      return rho * rho;
    }
    default:
      return 1.0;
  }
}

// Source of log(sphere weight) and a bound on the next ratios.
struct SphereSource {
  std::function<double()> log_weight;
  std::function<double()> ratio_bound;  // bounds weight_{j+1}/weight_j for j >= current
  std::function<void()> advance;
};

struct TailModel {
  bool polynomial;
  double exponent;  // weight_k <= upper (1+k)^exponent
  double upper;
  double asymptotic_ratio;
};

SeriesResult sum_weighted(SphereSource src, const TailModel& model, const CwWeight& w, int kmax) {
  if (kmax < 0) throw InvalidArgument("series: kmax must be >= 0");
  SeriesResult out;
  double last_term = 0.0, last_ratio = kUnbounded;
  for (int k = 0; k <= kmax; ++k) {
    const double term = std::exp(src.log_weight() - 2.0 * w(k));
    out.partial += term;
    out.terms = k + 1;
    last_term = term;
    if (!std::isfinite(out.partial)) {
      out.divergent = true;
      out.tail_bound = kUnbounded;
      return out;
    }
    if (w.kind() == CwWeight::Kind::Linear) {
      last_ratio = src.ratio_bound() * std::exp(-2.0 * w.param());
      if (last_ratio < 1.0) {
        const double tail = term * last_ratio / (1.0 - last_ratio);
        if (tail <= kSeriesRelativeStop * out.partial) {
          out.tail_bound = tail;
          out.certified = true;
          return out;
        }
      }
    }
    if (k < kmax) src.advance();
  }

  switch (w.kind()) {
    case CwWeight::Kind::Linear:
      if (last_ratio < 1.0) {
        out.tail_bound = last_term * last_ratio / (1.0 - last_ratio);
        out.certified = true;
      } else if (model.asymptotic_ratio * std::exp(-2.0 * w.param()) >= 1.0) {
        out.divergent = true;
        out.tail_bound = kUnbounded;
      } else {
        out.tail_bound = kUnbounded;
      }
      break;
    case CwWeight::Kind::LogPower: {
      if (!model.polynomial) {
        out.divergent = true;
        out.tail_bound = kUnbounded;
        break;
      }
      const double e = model.exponent - 2.0 * w.param();
      if (e >= -1.0) {
        out.divergent = true;
        out.tail_bound = kUnbounded;
      } else {
        // sum_{k>K} (1+k)^e <= int_K^inf (1+x)^e dx
        out.tail_bound = model.upper * std::pow(1.0 + kmax, e + 1.0) / (-(e + 1.0));
        out.certified = true;
      }
      break;
    }
    case CwWeight::Kind::Custom:
      out.tail_bound = kUnbounded;
      break;
  }
  return out;
}

void validate_increasing(const std::vector<double>& grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
      throw InvalidArgument(std::string(what) + ": grid values must be positive and finite");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidArgument(std::string(what) + ": grid must be strictly increasing");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Length functions

LengthFunction::LengthFunction(Kind kind, bool quadratic, std::vector<double> table)
    : kind_(kind), quadratic_(quadratic), table_(std::move(table)) {}

LengthFunction LengthFunction::poisson() { return {Kind::Poisson, false}; }

LengthFunction LengthFunction::heat(const GroupDescriptor& group) {
  switch (group.kind()) {
    case GroupKind::SU2:
    case GroupKind::SO3:
      return {Kind::Heat, true};
    case GroupKind::FreeOrthogonal:
      return {Kind::Heat, group.param() == 2};
    case GroupKind::FreePermutation:
      return {Kind::Heat, group.param() == 4};
    case GroupKind::DualFreeGroup:
      return {Kind::Heat, false};
    default:
      throw UnsupportedGroup("no length-radial heat semigroup for " + group.selector());
  }
}

LengthFunction LengthFunction::explicit_table(std::vector<double> table) {
  if (table.empty()) throw InvalidArgument("explicit length table is empty");
  if (table[0] < 0.0) throw InvalidArgument("explicit length table must start >= 0");
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i] < table[i - 1]) throw InvalidArgument("explicit length table must be nondecreasing");
  return {Kind::Explicit, false, std::move(table)};
}

LengthFunction LengthFunction::parse(const std::string& text, const GroupDescriptor& group) {
  if (text == "poisson") return poisson();
  if (text == "heat") return heat(group);
  std::vector<double> table;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      table.push_back(std::stod(item, &used));
      if (used != item.size()) throw InvalidArgument("");
    } catch (const std::exception&) {
      throw InvalidArgument("unknown length function '" + text + "'");
    }
  }
  return explicit_table(std::move(table));
}

std::size_t LengthFunction::extent() const noexcept {
  return kind_ == Kind::Explicit ? table_.size() : std::numeric_limits<std::size_t>::max();
}

std::string LengthFunction::name() const {
  switch (kind_) {
    case Kind::Poisson:
      return "poisson";
    case Kind::Heat:
      return quadratic_ ? "heat(k^2)" : "heat(k)";
    case Kind::Explicit:
      return "explicit";
  }
  return "";
}

double LengthFunction::operator()(int k) const {
  if (k < 0) throw InvalidArgument("length function evaluated at negative k");
  if (kind_ == Kind::Explicit) {
    if (static_cast<std::size_t>(k) >= table_.size())
      throw InvalidArgument("explicit length table has no value at k = " + std::to_string(k));
    return table_[k];
  }
  return quadratic_ ? static_cast<double>(k) * k : static_cast<double>(k);
}

FourierCoefficients apply_semigroup(const FourierCoefficients& coeffs, const LengthFunction& l, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("apply_semigroup: t must be >= 0");
  return apply_multiplier(coeffs, RadialWeight([&](int k) { return std::exp(-t * l(k)); }));
}

// ---------------------------------------------------------------------------
// Ultracontractivity series

double ultra_closed_form(double t) {
  if (!(t > 0.0)) throw InvalidArgument("ultra_closed_form: t must be > 0");
  const double x = std::exp(-2.0 * t);
  const double one_minus_x = -std::expm1(-2.0 * t);
  return x * (1.0 + x) / (one_minus_x * one_minus_x * one_minus_x);
}

SeriesResult ultra_series_detail(double t, const LengthFunction& l, int max_terms) {
  if (!(t > 0.0)) throw InvalidArgument("ultra_series: t must be > 0");
  SeriesResult out;
  auto term = [&](int k) { return (1.0 + k) * (1.0 + k) * std::exp(-2.0 * t * (1.0 + l(k))); };

  if (l.kind() == LengthFunction::Kind::Explicit) {
    const int n = static_cast<int>(std::min<std::size_t>(l.extent(), max_terms));
    for (int k = 0; k < n; ++k) out.partial += term(k);
    out.terms = n;
    out.tail_bound = kUnbounded;
    return out;
  }

  // l(j+1) - l(j) >= 1, so a_{j+1}/a_j <= ((j+2)/(j+1))^2 e^{-2t}.
  const double decay = std::exp(-2.0 * t);
  for (int k = 0; k < max_terms; ++k) {
    out.partial += term(k);
    out.terms = k + 1;
    const double r = std::pow((k + 3.0) / (k + 2.0), 2) * decay;
    if (r < 1.0) {
      const double tail = term(k + 1) / (1.0 - r);
      if (tail <= kSeriesRelativeStop * out.partial) {
        out.tail_bound = tail;
        out.certified = true;
        return out;
      }
    }
  }
  out.tail_bound = kUnbounded;
  return out;
}

double ultra_series(double t, const LengthFunction& l, bool closed_form_allowed) {
  if (!(t > 0.0)) throw InvalidArgument("ultra_series: t must be > 0");
  if (closed_form_allowed && l.kind() == LengthFunction::Kind::Poisson) return ultra_closed_form(t);
  return ultra_series_detail(t, l).partial;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded:
      return "bounded";
    case Verdict::Divergent:
      return "divergent";
    case Verdict::Inconclusive:
      return "inconclusive";
    case Verdict::Converges:
      return "converges";
    case Verdict::Diverges:
      return "diverges";
    case Verdict::Holds:
      return "holds";
    case Verdict::Violated:
      return "violated";
  }
  return "";
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw InvalidArgument("log_grid: need 0 < lo < hi, >= 2 points");
  std::vector<double> grid(points);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) grid[i] = std::exp(a + (b - a) * i / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void classify_small_t(ScanReport& report, const ScanThresholds& thresholds) {
  const auto& t = report.grid;
  const auto& v = report.values;
  if (t.size() != v.size() || t.empty()) throw InvalidArgument("classify_small_t: grid/value size mismatch");

  const auto top = std::max_element(v.begin(), v.end());
  report.extremal_parameter = t[top - v.begin()];
  report.extremal_value = *top;

  std::vector<double> dt, dv;
  for (std::size_t i = 0; i < t.size() && t[i] <= t.front() * 10.0 * (1.0 + 1e-12); ++i) {
    dt.push_back(t[i]);
    dv.push_back(v[i]);
  }
  if (dt.size() < 3 || *std::min_element(dv.begin(), dv.end()) <= 0.0) {
    report.verdict = Verdict::Inconclusive;
    report.slope = 0.0;
    return;
  }
  report.slope = loglog_slope(dt, dv);
  const double rise = *std::max_element(dv.begin(), dv.end()) / dv.back();
  if (report.slope >= thresholds.slope && rise < thresholds.rise_ratio)
    report.verdict = Verdict::Bounded;
  else if (report.slope < thresholds.slope)
    report.verdict = Verdict::Divergent;
  else
    report.verdict = Verdict::Inconclusive;
}

ScanReport ultra_sup_scan(double s, const LengthFunction& l, const std::vector<double>& t_grid,
                          const ScanThresholds& thresholds) {
  validate_increasing(t_grid, "ultra_sup_scan");
  if (t_grid.size() < 40) throw InvalidArgument("ultra_sup_scan: grid needs at least 40 points");
  const double lo = t_grid.front(), hi = t_grid.back();
  if (hi / lo < 1e4 * (1.0 - 1e-9)) throw InvalidArgument("ultra_sup_scan: grid must span 4 decades");
  if (lo > 1e-3 * (1.0 + 1e-9) || hi < 10.0 * (1.0 - 1e-9))
    throw InvalidArgument("ultra_sup_scan: grid must cover [1e-3, 10]");

  ScanReport report;
  report.id = "ultra_sup";
  report.params["s"] = s;
  report.params["length"] = l.name();
  report.params["points"] = t_grid.size();
  report.params["tmin"] = lo;
  report.params["tmax"] = hi;
  report.params["slope_threshold"] = thresholds.slope;
  report.params["rise_ratio_threshold"] = thresholds.rise_ratio;
  report.grid = t_grid;
  std::vector<double> series;
  for (double t : t_grid) {
    const double scale = std::pow(t, s);
    if (l.kind() == LengthFunction::Kind::Poisson) {
      series.push_back(ultra_closed_form(t));
      report.certified_tail.push_back(0.0);
    } else {
      const auto r = ultra_series_detail(t, l);
      series.push_back(r.partial);
      report.certified_tail.push_back(scale * r.tail_bound);
    }
    report.values.push_back(scale * series.back());
  }
  report.extra_columns.emplace_back("series", std::move(series));
  classify_small_t(report, thresholds);
  return report;
}

// ---------------------------------------------------------------------------
// C_w sums

CwWeight CwWeight::log_power(double s) { return {Kind::LogPower, s}; }

CwWeight CwWeight::linear(double t) {
  if (!(t > 0.0)) throw InvalidArgument("CwWeight::linear: t must be > 0");
  return {Kind::Linear, t};
}

CwWeight CwWeight::custom(std::function<double(int)> w) {
  if (!w) throw InvalidArgument("CwWeight::custom: empty function");
  return {Kind::Custom, 0.0, std::move(w)};
}

double CwWeight::operator()(int k) const {
  switch (kind_) {
    case Kind::LogPower:
      return param_ * std::log1p(k);
    case Kind::Linear:
      return param_ * (1.0 + k);
    case Kind::Custom:
      return fn_(k);
  }
  return 0.0;
}

SeriesResult cw_sum(const GroupDescriptor& group, const CwWeight& w, int kmax) {
  auto seq = std::make_shared<GrowthSequence>(group);
  SphereSource src{[seq] { return seq->log_sphere(); }, [seq] { return seq->sphere_ratio_bound(); },
                   [seq] { seq->advance(); }};
  TailModel model{group.has_polynomial_growth(), 0.0, 0.0, asymptotic_sphere_ratio(group)};
  if (model.polynomial) {
    const auto bound = sphere_power_bound(group);
    model.exponent = bound.exponent;
    model.upper = bound.upper;
  }
  return sum_weighted(src, model, w, kmax);
}

SeriesResult cw_sum_rd(double beta, const CwWeight& w, int kmax) {
  auto k = std::make_shared<int>(0);
  SphereSource src{[k, beta] { return 2.0 * beta * std::log1p(*k); },
                   [k, beta] { return beta <= 0.0 ? 1.0 : std::pow((*k + 2.0) / (*k + 1.0), 2.0 * beta); },
                   [k] { ++*k; }};
  TailModel model{true, 2.0 * beta, 1.0, 1.0};
  return sum_weighted(src, model, w, kmax);
}

ScanReport poly_ultra_sup(const GroupDescriptor& group, double s, const std::vector<double>& t_grid,
                          int kmax, const ScanThresholds& thresholds) {
  if (!group.has_polynomial_growth())
    throw NotPolynomialGrowth(group.selector() + " is not polynomial growth");
  validate_increasing(t_grid, "poly_ultra_sup");
  if (t_grid.size() < 3) throw InvalidArgument("poly_ultra_sup: grid needs at least 3 points");

  ScanReport report;
  report.id = "poly_ultra_sup";
  report.params["group"] = group.selector();
  report.params["s"] = s;
  report.params["gamma"] = group.growth_order();
  report.params["points"] = t_grid.size();
  report.params["tmin"] = t_grid.front();
  report.params["tmax"] = t_grid.back();
  report.params["kmax"] = kmax;
  report.params["slope_threshold"] = thresholds.slope;
  report.params["rise_ratio_threshold"] = thresholds.rise_ratio;
  report.grid = t_grid;
  std::vector<double> terms;
  for (double t : t_grid) {
    const auto r = cw_sum(group, CwWeight::linear(t), kmax);
    const double scale = std::pow(t, 2.0 * s);
    report.values.push_back(scale * r.partial);
    report.certified_tail.push_back(r.certified ? scale * r.tail_bound : kUnbounded);
    terms.push_back(r.terms);
  }
  report.extra_columns.emplace_back("terms", std::move(terms));
  classify_small_t(report, thresholds);
  return report;
}

}  // namespace qharm
