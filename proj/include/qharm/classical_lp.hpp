#pragma once

// Lp norms of central elements through the Weyl integration formula: the
// character chi_k of O_N^+ (resp. S_N^+) is sent to the SU(2) (resp. SO(3))
// character of the same degree, and the norm becomes a 1-D integral over
// the rotation angle theta in [0, pi].

#include <complex>
#include <functional>

#include "qharm/repdata.hpp"

namespace qharm {

enum class WeylTarget { SU2, SO3 };

/// SU2 for O_N^+ and SU2; SO3 for S_N^+ and SO3. Otherwise UnsupportedGroup.
WeylTarget classical_model(const GroupDescriptor& group);

/// sin((k+1)t)/sin t, evaluated as U_k(cos t).
double su2_character(int k, double theta);
/// sin((2k+1)t/2)/sin(t/2), evaluated by the same three-term recurrence.
double so3_character(int k, double theta);
double classical_character(WeylTarget target, int k, double theta);

/// (2/pi) sin^2 t for SU2, (2/pi) sin^2(t/2) for SO3.
double weyl_density(WeylTarget target, double theta);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int initial_panels = 8;
  int max_depth = 40;
};

/// Adaptive bisection with 32-point Gauss-Legendre panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});

/// Integral of f against the Weyl measure on [0, pi].
double weyl_integral(WeylTarget target, const std::function<double(double)>& f,
                     const QuadratureOptions& options = {});

/// sum_k a_k chi~_k(theta).
std::complex<double> class_function_value(WeylTarget target, const CentralElement& f, double theta);

/// (int |f~|^p dWeyl)^{1/p}, 1 <= p < inf.
double central_lp_norm(const GroupDescriptor& group, const CentralElement& f, double p);

/// sup_theta |f~(theta)|: 4096-point grid, golden-section refinement at the
/// eight largest grid values.
double central_linf_norm(const GroupDescriptor& group, const CentralElement& f);

}  // namespace qharm
