#pragma once

// Inequality checkers and sharpness scans built from the other modules.
// Inequalities with unspecified constants are judged by the trend of the
// ratio lhs/rhs along graded families, never by a fixed constant.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qharm/fourier.hpp"
#include "qharm/repdata.hpp"
#include "qharm/semigroup.hpp"

namespace qharm {

struct VerifyInstance {
  double parameter;  // family index m, trial number, ...
  double lhs;
  double rhs;
  double ratio;
};

struct VerifyReport {
  std::string id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<VerifyInstance> instances;
  double max_ratio = 0.0;
  double slope = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Ratios up to 1 + kHyTolerance count as satisfying a constant-1 inequality.
inline constexpr double kHyTolerance = 1e-8;
/// Graded-family ratio trends with log-log slope <= this are bounded.
inline constexpr double kTrendSlope = 0.05;

/// L^p norm of a central element: Weyl quadrature on degree-labelled
/// groups, Plancherel at p = 2 on any group.
double central_norm(const GroupDescriptor& group, const CentralElement& f, double p);

/// lhs = ||f^||_{l^{p'}}, rhs = ||f||_{L^p}, 1 <= p <= 2.
VerifyReport check_hausdorff_young(const GroupDescriptor& group, const CentralElement& f, double p);
/// lhs = mixed norm with q = p' and weight (1+k)^{-beta(p'-2)}, 1 < p <= 2.
VerifyReport check_sharpened_hy(const GroupDescriptor& group, const CentralElement& f, double p, double beta);
/// lhs = (sum (1+k)^{-s(2/p-1)} n_a ||f^(a)||_HS^2)^{1/2}, 1 < p <= 2.
VerifyReport check_sobolev(const GroupDescriptor& group, const CentralElement& f, double p, double s);

/// Uniformly random central element of degree <= max_degree; real and
/// imaginary parts of each coefficient in [-1, 1].
CentralElement random_central(const GroupDescriptor& group, int max_degree, std::mt19937_64& rng);

/// `trials` random central elements checked against Hausdorff-Young.
VerifyReport hy_battery(const GroupDescriptor& group, double p, int trials, std::uint64_t seed,
                        int max_degree = 10);

enum class GradedFamily { Xi, CharacterSum, SingleSphere, Geometric };
std::string to_string(GradedFamily family);
GradedFamily parse_graded_family(const std::string& name);

/// xi_m = b_m^{-1/2} sum_{k<=m} n_k chi_k; sum_{k<=m} chi_k; chi_m;
/// sum_{k<=m} 2^{-k} chi_k.
CentralElement graded_element(const GroupDescriptor& group, GradedFamily family, int m);

enum class GradedCheck { SharpenedHY, Sobolev };

/// Runs the checker on f_m for m = m_min..m_max and fits the slope of
/// log ratio against log m over [m_max/2, m_max]; bounded iff <= 0.05.
VerifyReport graded_trend(GradedCheck check, const GroupDescriptor& group, GradedFamily family, double p,
                          double param, int m_max, int m_min = 1);

/// T_w(xi_m) = b_m^{-1/2} sum_{k<=m} w(k) n_k chi_k with w(k) = (1+k)^{-s}.
CentralElement weighted_xi(const GroupDescriptor& group, double s, int m);

/// ||T_w(xi_m)^2||_{L^2} through the fusion ring.
double xi_l4_square(const GroupDescriptor& group, double s, int m);
/// The same quantity as ||T_w(xi_m)||_{L^4}^2 by Weyl quadrature.
double xi_l4_square_quadrature(const GroupDescriptor& group, double s, int m);
/// Lower bound (w(m)^2 / b_m) (sum_{k<=m} b_{m-k}^2 s_k)^{1/2}.
double sharpness_lower_bound(const GroupDescriptor& group, double s, int m);

struct SharpnessThresholds {
  double divergent_slope = 0.02;
  double bounded_slope = 0.0;
  int quadrature_check_max = 40;
};

/// Scan over m = 1..m_max of the lower bound L_m (values) and Q_m (extra
/// column), with the fusion-vs-quadrature discrepancy for m <= 40. The
/// slope of log L_m against log(1+m) over [m_max/2, m_max] decides:
/// >= divergent_slope divergent, <= bounded_slope bounded.
ScanReport sharpness_scan(const GroupDescriptor& group, double s, int m_max,
                                const SharpnessThresholds& thresholds = {});

struct RdDegreeEntry {
  double s;
  double partial;
  double tail_bound;
  Verdict verdict;  // Converges, Diverges or Inconclusive
};

struct RdDegreeReport {
  std::string group;
  std::string route;  // "rapid-decay" or "polynomial"
  double beta = 0.0;
  int kmax = 0;
  double threshold = 0.0;
  std::vector<RdDegreeEntry> entries;
};

/// Convergence of sum (1+k)^{2beta-2s} (rapid-decay route, beta = 1) or
/// sum s_k (1+k)^{-2s} (polynomial route) for each s.
RdDegreeReport rd_degree_scan(const GroupDescriptor& group, const std::vector<double>& s_grid, int kmax = 10000);

struct ExponentRow {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  double lhs;
  double rhs;
  double residual;
  /// Both sides of the stated equivalence agree.
  bool equivalence_ok;
  bool degenerate;
};

struct ExponentReport {
  std::string kind;
  std::vector<ExponentRow> rows;
  double max_residual = 0.0;
  bool ok = true;
};

inline constexpr double kExponentTolerance = 1e-12;

/// Default grids:
///  lp_ultra, lp_dual_ultra: p in {1.1, 1.25, 4/3, 1.5, 1.75, 2}, s in a grid around the threshold;
///  hy_interpolation: p in the same set, beta in {0, 0.5, 1, 2, 3};
///  sobolev_interpolation: gamma in {1, 2, 3}, p0 in {1.1, 1.2, 1.3}, p in {1.4, 1.6, 1.8}, s in {0.5, 1, 2, 3, 4}.
ExponentReport exponent_algebra_check(const std::string& kind);
/// Single evaluation; params keys: p, s (lp_ultra, lp_dual_ultra), p, beta (hy_interpolation), p, p0, s, gamma (sobolev_interpolation).
ExponentRow exponent_algebra_row(const std::string& kind, const nlohmann::ordered_json& params);

/// t^s * ultra series over log_grid(1e-3, 10, 60) with the Poisson length on
/// free group duals and the heat length on O_N^+ (N >= 3), S_N^+ (N >= 5).
ScanReport ultracontractivity_decision(const GroupDescriptor& group, double s);

}  // namespace qharm
