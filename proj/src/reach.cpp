#include "eigenpro/reach.hpp"

#include <cmath>
#include <numbers>

#include "eigenpro/error.hpp"

namespace eigenpro {

void SpectralProfile::validate() const {
  require(eigenvalues.size() > 0, "spectral profile is empty");
  require(eigenvalues.size() == coefficients.size(),
          "spectral profile: eigenvalue and coefficient counts differ");
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    require(eigenvalues[i] > 0.0 && std::isfinite(eigenvalues[i]),
            "spectral profile: eigenvalues must be positive");
    require(i == 0 || eigenvalues[i] <= eigenvalues[i - 1],
            "spectral profile: eigenvalues must be non-increasing");
  }
  require(coefficients.allFinite(), "spectral profile: coefficients must be finite");
  const double x = eta * eigenvalues[0];
  require(x > 0.0 && x < 2.0, "step size must satisfy 0 < eta * lambda_1 < 2");
}

ReachMembership reach_membership(const SpectralProfile& p, Index t, double eps) {
  p.validate();
  require(t >= 1, "iteration count t must be at least 1");
  require(eps > 0.0, "eps must be positive");

  const double total = p.coefficients.squaredNorm();
  require(total > 0.0, "target vector is zero");
  const double threshold = p.eigenvalues[0] / (2.0 * static_cast<double>(t));
  double residual = 0.0;
  double tail = 0.0;
  for (Index i = 0; i < p.eigenvalues.size(); ++i) {
    const double a2 = p.coefficients[i] * p.coefficients[i];
    const double factor = 1.0 - p.eta * p.eigenvalues[i];
    // (1 - eta l)^{2t} via exp/log1p keeps precision for small eta l.
    const double decay =
        factor == 0.0 ? 0.0 : std::exp(2.0 * static_cast<double>(t) * std::log(std::abs(factor)));
    residual += decay * a2;
    if (p.eigenvalues[i] < threshold) tail += a2;
  }
  ReachMembership out;
  out.residual_fraction = residual / total;
  out.tail_fraction = tail / total;
  out.exact = out.residual_fraction < eps * eps;
  out.necessary = out.tail_fraction < eps * eps;
  return out;
}

double min_iterations(double lambda_1, double lambda_i, double coeff_ratio, double eps) {
  require(lambda_1 > 0.0 && lambda_i > 0.0, "eigenvalues must be positive");
  require(lambda_i < lambda_1 / 2.0, "min_iterations requires lambda_i < lambda_1 / 2");
  require(coeff_ratio > 0.0, "coefficient ratio must be positive");
  require(eps > 0.0, "eps must be positive");
  return lambda_1 / (2.0 * lambda_i) * std::log(coeff_ratio / eps);
}

std::vector<double> heat_kernel_spectrum(double s, Index J) {
  require(s > 0.0 && std::isfinite(s), "bandwidth s must be positive");
  require(J >= 1, "need at least one harmonic");
  std::vector<double> out(static_cast<std::size_t>(J));
  for (Index j = 0; j < J; ++j) {
    const double freq = static_cast<double>((j + 1) / 2);
    out[static_cast<std::size_t>(j)] = std::exp(-freq * freq * s);
  }
  return out;
}

HeavisideDemo heaviside_demo(double s, const std::vector<double>& t_steps, Index J) {
  require(s > 0.0 && std::isfinite(s), "bandwidth s must be positive");
  require(J >= 1, "need at least one harmonic");
  for (double t : t_steps) require(t >= 0.0 && std::isfinite(t), "iteration counts must be >= 0");

  // Squared coefficients (4 / (pi j))^2 are taken proportional to 1/j^2; the
  // full square wave then has squared norm sum_{j odd} 1/j^2 = pi^2 / 8.
  const double full = std::numbers::pi * std::numbers::pi / 8.0;
  double kept = 0.0;
  for (Index j = 1; j <= J; j += 2) kept += 1.0 / (static_cast<double>(j) * j);
  const double truncated = std::max(0.0, full - kept);

  HeavisideDemo out;
  out.truncation_error = std::sqrt(truncated / full);
  for (double t : t_steps) {
    double residual = truncated;
    for (Index j = 1; j <= J; j += 2) {
      const double jd = static_cast<double>(j);
      const double lambda = std::exp(-jd * jd * s);
      const double decay = lambda >= 1.0 ? (t == 0.0 ? 1.0 : 0.0)
                                         : std::exp(2.0 * t * std::log1p(-lambda));
      residual += decay / (jd * jd);
    }
    out.gd_error.push_back(std::sqrt(residual / full));
  }
  return out;
}

std::vector<SpectrumRow> spectrum_report(const Vector& values, const std::vector<Index>& k_list) {
  require(values.size() > 0 && values[0] > 0.0, "spectrum report needs a positive lambda_1");
  std::vector<SpectrumRow> rows;
  for (Index k : k_list) {
    require(k >= 0 && k < values.size(),
            "k=" + std::to_string(k) + " is out of range for " + std::to_string(values.size()) +
                " eigenvalues");
    require(values[k] > 0.0, "lambda_" + std::to_string(k + 1) + " is not positive");
    rows.push_back({k + 1, values[k], values[0] / values[k]});
  }
  return rows;
}

std::vector<SpectrumRow> spectrum_report(const EigenSystem& es, const std::vector<Index>& k_list) {
  Vector all(es.rank() + 1);
  all.head(es.rank()) = es.values;
  all[es.rank()] = es.tail;
  return spectrum_report(all, k_list);
}

std::vector<double> loglog_slopes(const Vector& values,
                                  const std::vector<std::pair<Index, Index>>& windows) {
  std::vector<double> slopes;
  for (const auto& [a, b] : windows) {
    require(a >= 0 && b <= values.size() && b - a >= 2, "invalid slope window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(b - a);
    for (Index i = a; i < b; ++i) {
      require(values[i] > 0.0, "log-log slope needs positive eigenvalues");
      const double x = std::log(static_cast<double>(i + 1));
      const double y = std::log(values[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    slopes.push_back((count * sxy - sx * sy) / (count * sxx - sx * sx));
  }
  return slopes;
}

}  // namespace eigenpro
