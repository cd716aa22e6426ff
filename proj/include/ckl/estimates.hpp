#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ckl/cesaro.hpp"
#include "ckl/kernels.hpp"
#include "ckl/quadrature.hpp"

namespace ckl {

/// Parameter bundle shared by the pointwise bound expressions.
struct BoundParams {
  int n = 1;
  CesaroOrder order;
  ReflectionWeight w;
};

/// Two-term sphere bound: the leading oscillatory envelope plus the flat tail.
/// Returned with unit constant; callers calibrate empirically.
double bound_sphere_cesaro(const BoundParams& bp, const DomainPoint& x, const DomainPoint& y);

/// Envelope for the projection kernel on the sphere.
double bound_sphere_proj(int n, const ReflectionWeight& w, const DomainPoint& x,
                         const DomainPoint& y);

/// Simplex analogues with the lifted points sqrt(x_j), sqrt(1-|x|).
double bound_simplex_cesaro(const BoundParams& bp, const DomainPoint& x, const DomainPoint& y);
double bound_simplex_proj(int n, const ReflectionWeight& w, const DomainPoint& x,
                          const DomainPoint& y);

struct MainEstimate {
  double lhs = 0.0;  // |integral|
  double rhs = 0.0;  // envelope with unit constant
};

/// The engine inequality: left side is the tensor integral of
/// P_n^{(alpha,beta)}(sum a_j t_j + x) prod phi_j(t_j) (1-t_j^2)^{kappa_j - 1},
/// right side the envelope n^{alpha-2|kappa|} prod(...)^{-kappa_j} (1+n A)^{...}.
/// With trivial smooth factors the integrand is a polynomial and the quadrature
/// is exact; smooth phi_j are handled by node inflation.
MainEstimate main_estimate_check(int n, JacobiParams p, std::span<const double> kappas,
                                 std::span<const double> a, double x,
                                 std::span<const std::function<double(double)>> phis = {});

struct IntegralValue {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = false;
};

/// Weighted L1 norm of the kernel at x: integral of |K_n(x, y)| against the
/// normalized measure of the point's domain. resolution is the initial panel
/// count per angle (at least 4n is sensible for the O(n) sign changes); the
/// composite panels are then refined adaptively and the result carries an
/// error estimate plus a convergence flag.
IntegralValue lebesgue_at_point(const BoundParams& bp, const DomainPoint& x, int resolution,
                                double tol = 1e-6);

/// T_n(t0) = integral of |K_n(s, t0)| w_{lambda,mu}(s) ds for the generalized
/// Gegenbauer expansion.
IntegralValue tn_delta(GenGegenParams g, int n, CesaroOrder order, double t0, double tol = 1e-8);

/// Jacobi-weight analogue of tn_delta; this is what the simplex vertex
/// reduction collapses to.
IntegralValue tn_delta_jacobi(JacobiParams p, int n, CesaroOrder order, double s0,
                              double tol = 1e-8);

/// Frame of the lower-bound integrals: a = lambda+mu+delta, b = lambda+mu-1,
/// N = n + (a+b)/2 + 1, tau = -pi(a+1)/2, gamma = tau + pi mu/2.
struct LowerBoundFrame {
  double lambda = 0.0;
  double mu = 0.0;
  double delta = 0.0;

  LowerBoundFrame(double lambda_, double mu_, double delta_);
  double a() const { return lambda + mu + delta; }
  double b() const { return lambda + mu - 1.0; }
  double big_n(int n) const { return n + 0.5 * (a() + b()) + 1.0; }
  double tau() const;
  double gamma() const;
};

/// The double integral behind the lower bounds: outer absolute integral over
/// y in [0,1] of the (exact) inner smoothing of P_n^{(a+1/2,b+1/2)}. At mu = 0
/// the inner integral degenerates to the normalized endpoint average.
IntegralValue lower_jacobi_integral(const LowerBoundFrame& f, int n, double tol = 1e-9);

/// Oscillatory main-term integral over [phi, pi - phi]; requires 0 < mu < 1.
IntegralValue mn_direct(const LowerBoundFrame& f, int n, double phi, double tol = 1e-8);

/// Closed-form asymptotic main term for mn_direct.
double kn_asymptotic(const LowerBoundFrame& f, int n, double phi);

/// Positive remainder integral accompanying the asymptotics; 0 < mu < 1.
IntegralValue en_remainder(const LowerBoundFrame& f, int n);

enum class GrowthHypothesis { Auto, PurePower, PowerTimesLog };

struct GrowthFit {
  double exponent = 0.0;
  bool log_factor = false;
  double residual = 0.0;  // rms residual in log coordinates of the chosen model
  int n_min = 0;
  int n_max = 0;
  bool ok = false;  // false when the fit is ill-conditioned
};

/// Least-squares slope in log-log coordinates; the log-factor model subtracts
/// log log n before fitting and the hypothesis with the smaller residual wins.
GrowthFit growth_fit(std::span<const std::pair<double, double>> points,
                     GrowthHypothesis hypothesis = GrowthHypothesis::Auto);

struct RateRow {
  double delta = 0.0;
  double exponent = 0.0;  // expected growth exponent of the operator norm
  bool log_factor = false;
};

struct RateTable {
  double sigma = 0.0;
  std::vector<RateRow> rows;
};

/// sigma_kappa and the expected three-branch rates for the requested deltas.
RateTable sigma_and_critical(const ReflectionWeight& w, std::span<const double> deltas);

}  // namespace ckl
