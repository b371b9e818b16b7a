#pragma once

// Length-radial Markov semigroups T_t = multiplier e^{-t l(|a|)}, the
// ultracontractivity series and its closed form, the summability constant
// C_w, and t -> 0 scans that decide whether t^s * (series) stays bounded.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "qharm/fourier.hpp"
#include "qharm/repdata.hpp"

namespace qharm {

class LengthFunction {
 public:
  enum class Kind { Poisson, Heat, Explicit };

  /// l(k) = k.
  static LengthFunction poisson();
  /// l(k) = k^2 on O_2^+, S_4^+, SU2, SO3; l(k) = k on O_N^+ (N >= 3),
  /// S_N^+ (N >= 5) and free group duals.
  static LengthFunction heat(const GroupDescriptor& group);
  /// l(k) = table[k]; evaluating beyond the table throws.
  static LengthFunction explicit_table(std::vector<double> table);
  /// Parses "poisson", "heat" (needs the group) or a comma list.
  static LengthFunction parse(const std::string& text, const GroupDescriptor& group);

  Kind kind() const noexcept { return kind_; }
  bool quadratic() const noexcept { return quadratic_; }
  /// Number of defined values; unbounded for Poisson/Heat.
  std::size_t extent() const noexcept;
  std::string name() const;
  double operator()(int k) const;

 private:
  LengthFunction(Kind kind, bool quadratic, std::vector<double> table = {});

  Kind kind_;
  bool quadratic_;
  std::vector<double> table_;
};

FourierCoefficients apply_semigroup(const FourierCoefficients& coeffs, const LengthFunction& l, double t);

/// Partial sum plus an analytic bound on the neglected tail.
struct SeriesResult {
  double partial = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
  /// tail_bound is a proven bound.
  bool certified = false;
  /// The series is proven divergent (partial is then the truncated sum).
  bool divergent = false;

  double value() const noexcept { return partial + (certified ? tail_bound : 0.0); }
};

/// Relative tail size at which streaming summation stops.
inline constexpr double kSeriesRelativeStop = 1e-14;

/// sum_{k>=0} (1+k)^2 e^{-2t(1+l(k))}.
SeriesResult ultra_series_detail(double t, const LengthFunction& l, int max_terms = 50'000'000);
double ultra_series(double t, const LengthFunction& l, bool closed_form_allowed = true);
/// e^{-2t}(1-e^{-2t})^{-3}(1+e^{-2t}).
double ultra_closed_form(double t);

enum class Verdict { Bounded, Divergent, Inconclusive, Converges, Diverges, Holds, Violated };
std::string to_string(Verdict v);

struct ScanThresholds {
  /// Fitted log-log slope over the smallest decade below which a scan diverges.
  double slope = -0.05;
  /// max over the smallest decade / value at its upper end must stay below this.
  double rise_ratio = 1.5;
};

struct ScanReport {
  std::string id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::string parameter = "t";
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> certified_tail;
  std::vector<std::pair<std::string, std::vector<double>>> extra_columns;
  Verdict verdict = Verdict::Inconclusive;
  double slope = 0.0;
  double extremal_parameter = 0.0;
  double extremal_value = 0.0;
};

/// Log-spaced grid from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int points);

/// Applies the small-t decision rule to values on an increasing t grid and
/// fills verdict, slope and extremal point.
void classify_small_t(ScanReport& report, const ScanThresholds& thresholds = {});

/// t^s * ultra_series(t). Grid: >= 40 increasing points, >= 4 decades,
/// covering [1e-3, 10].
ScanReport ultra_sup_scan(double s, const LengthFunction& l, const std::vector<double>& t_grid,
                          const ScanThresholds& thresholds = {});

/// w(k) as a function of the length k.
class CwWeight {
 public:
  enum class Kind { LogPower, Linear, Custom };

  /// w(k) = s log(1+k).
  static CwWeight log_power(double s);
  /// w(k) = t(1+k).
  static CwWeight linear(double t);
  /// Arbitrary w; sums carry no tail certificate.
  static CwWeight custom(std::function<double(int)> w);

  Kind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  double operator()(int k) const;

 private:
  CwWeight(Kind kind, double param, std::function<double(int)> fn = {})
      : kind_(kind), param_(param), fn_(std::move(fn)) {}

  Kind kind_;
  double param_;
  std::function<double(int)> fn_;
};

/// C_w = sum_a e^{-2w(|a|)} n_a^2 = sum_k s_k e^{-2w(k)}, over k <= kmax
/// (earlier when a geometric tail bound is already negligible).
SeriesResult cw_sum(const GroupDescriptor& group, const CwWeight& w, int kmax);
/// sum_k (1+k)^{2 beta} e^{-2w(k)}.
SeriesResult cw_sum_rd(double beta, const CwWeight& w, int kmax);

/// t^{2s} sum_k s_k e^{-2t(1+k)} on a polynomial-growth group.
ScanReport poly_ultra_sup(const GroupDescriptor& group, double s, const std::vector<double>& t_grid,
                          int kmax = 50'000'000, const ScanThresholds& thresholds = {});

}  // namespace qharm
