#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ckl/orthopoly.hpp"

namespace ckl {

/// Gauss rule exactly integrating polynomials of degree <= exactness_degree
/// against (1-t)^alpha (1+t)^beta on [-1,1].
struct QuadratureRule {
  JacobiParams params;
  std::vector<double> nodes;    // strictly increasing, in (-1,1)
  std::vector<double> weights;  // positive, sum to the total weight mass
  int exactness_degree = -1;
};

/// Golub-Welsch construction from the closed-form recurrence coefficients.
QuadratureRule gauss_jacobi_rule(int m, JacobiParams p);

/// Sum of w_i f(node_i); aborts with the node index if f is non-finite there.
double integrate_weighted(const std::function<double(double)>& f, const QuadratureRule& rule);

/// The two per-coordinate measures of the kernel integrals:
///   SphereFactor    (1+t)(1-t^2)^{kappa-1} = (1-t)^{kappa-1}(1+t)^{kappa}
///   SymmetricFactor (1-t^2)^{kappa-1}
enum class FactorKind { SphereFactor, SymmetricFactor };

struct WeightFactorForm {
  FactorKind kind = FactorKind::SphereFactor;
  double kappa = 0.0;
};

/// One tensor axis, normalized to total mass exactly 1.
struct Axis1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Tensor-product measure over [-1,1]^m with the kappa -> 0 limit handling:
/// a vanishing exponent degenerates a SphereFactor axis to a point mass at
/// t = 1 and a SymmetricFactor axis to half masses at t = +-1.
struct ProductMeasure {
  std::vector<Axis1D> axes;

  std::size_t node_count() const {
    std::size_t c = 1;
    for (const auto& a : axes) c *= a.nodes.size();
    return c;
  }

  /// Integrates f(t_1, ..., t_m) against the normalized measure. Deterministic
  /// odometer order with compensated accumulation.
  template <class F>
  double integrate(F&& f) const {
    const std::size_t m = axes.size();
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> t(m);
    for (std::size_t j = 0; j < m; ++j) t[j] = axes[j].nodes[0];
    double sum = 0.0, comp = 0.0;
    while (true) {
      double w = 1.0;
      for (std::size_t j = 0; j < m; ++j) w *= axes[j].weights[idx[j]];
      const double term = w * f(std::span<const double>(t.data(), m)) - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
      std::size_t j = 0;
      for (; j < m; ++j) {
        if (++idx[j] < axes[j].nodes.size()) {
          t[j] = axes[j].nodes[idx[j]];
          break;
        }
        idx[j] = 0;
        t[j] = axes[j].nodes[0];
      }
      if (j == m) break;
    }
    return sum;
  }
};

/// Axes sized for exact integration of polynomials of degree <= degree_cap
/// per coordinate; all axes normalized to mass 1.
ProductMeasure product_measure(std::span<const WeightFactorForm> factors, int degree_cap);

/// Product rule on S^d (d = 1 or 2) against the normalized measure
/// h_kappa^2 domega, exact for polynomials of total degree <= degree_cap.
/// kappa holds the d+1 per-coordinate exponents.
struct SphereRule {
  int dim = 0;  // sphere S^dim in R^{dim+1}
  std::vector<double> points;   // (dim+1)-strided coordinates
  std::vector<double> weights;  // sum to 1
  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * (dim + 1), static_cast<std::size_t>(dim + 1)};
  }
};

SphereRule sphere_product_rule(int d, int degree_cap, std::span<const double> kappa);

struct AdaptiveResult {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = false;
  long evaluations = 0;
};

struct AdaptiveOptions {
  double tol = 1e-9;         // absolute error target
  double rel_tol = 1e-12;    // relative error target (whichever is looser wins)
  int max_intervals = 1 << 20;
  int initial_splits = 8;
  bool endpoint_substitution = true;  // t = a + h u^2 mapping at both ends
};

/// Globally adaptive Gauss pair (G7 against G15) with bisection; integrable
/// endpoint singularities are tamed by the quadratic substitution.
AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                  const AdaptiveOptions& opt = {});

/// Same engine applied to |f|.
AdaptiveResult adaptive_absolute(const std::function<double(double)>& f, double a, double b,
                                 const AdaptiveOptions& opt = {});

}  // namespace ckl
