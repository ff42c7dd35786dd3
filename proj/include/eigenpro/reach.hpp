#pragma once

#include <vector>

#include "eigenpro/common.hpp"
#include "eigenpro/eigensolver.hpp"

namespace eigenpro {

/// Spectrum of an operator H together with the coordinates a_i = <e_i, v>
/// of a target v and the gradient-descent step size.
struct SpectralProfile {
  Vector eigenvalues;   // non-increasing, positive
  Vector coefficients;  // same length
  double eta = 1.0;

  void validate() const;
};

struct ReachMembership {
  bool exact = false;      // sum (1 - eta l_i)^{2t} a_i^2 < eps^2 sum a_i^2
  bool necessary = false;  // sum_{l_i < l_1 / 2t} a_i^2 < eps^2 |v|^2
  double residual_fraction = 0.0;  // left side of `exact` over sum a_i^2
  double tail_fraction = 0.0;      // left side of `necessary` over |v|^2
};

/// Requires 0 < eta * l_1 < 2, eps > 0, t >= 1.
ReachMembership reach_membership(const SpectralProfile& profile, Index t, double eps);

/// Necessary iteration count (l_1 / (2 l_i)) log(coeff_ratio / eps) for a
/// coordinate with |<e_i, v>| / |v| = coeff_ratio. Requires l_i < l_1 / 2.
double min_iterations(double lambda_1, double lambda_i, double coeff_ratio, double eps);

/// First J eigenvalues of the heat kernel on the circle:
/// 1, e^-s, e^-s, e^-4s, e^-4s, e^-9s, ...
std::vector<double> heat_kernel_spectrum(double s, Index J);

struct HeavisideDemo {
  std::vector<double> gd_error;  // relative L2 error after each requested t
  double truncation_error = 0.0; // error of the J-harmonic partial sum
};

/// Gradient descent (eta = 1) on the odd sine harmonics j = 1, 3, ..., J of
/// the square wave, with harmonic j carrying eigenvalue e^{-j^2 s}. Errors
/// are relative to the full function, so they include the truncated tail.
HeavisideDemo heaviside_demo(double s, const std::vector<double>& t_steps, Index J);

struct SpectrumRow {
  Index index = 0;          // k + 1
  double eigenvalue = 0.0;  // lambda_{k+1}
  double ratio = 0.0;       // lambda_1 / lambda_{k+1}
};

/// lambda_1 / lambda_{k+1} for each k in k_list; k must be below es.rank()
/// (k = es.rank() is allowed and uses the tail eigenvalue).
std::vector<SpectrumRow> spectrum_report(const EigenSystem& es, const std::vector<Index>& k_list);
std::vector<SpectrumRow> spectrum_report(const Vector& eigenvalues,
                                         const std::vector<Index>& k_list);

/// Local slopes of log(lambda_i) against log(i), fitted by least squares over
/// consecutive windows of indices [a_w, b_w).
std::vector<double> loglog_slopes(const Vector& eigenvalues,
                                  const std::vector<std::pair<Index, Index>>& windows);

}  // namespace eigenpro
