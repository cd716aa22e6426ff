#pragma once

#include <span>
#include <vector>

namespace ckl {

/// Exponent pair of the Jacobi weight (1-t)^alpha (1+t)^beta on [-1,1].
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;
  bool valid() const { return alpha > -1.0 && beta > -1.0; }
};

/// Parameters of the generalized Gegenbauer weight |t|^{2mu} (1-t^2)^{lambda-1/2}.
struct GenGegenParams {
  double lambda = 0.0;
  double mu = 0.0;
  bool valid() const { return lambda >= 0.0 && mu >= 0.0; }
};

/// P_n^{(alpha,beta)}(t), normalized so that P_n(1) = binom(n+alpha, n).
double jacobi_eval(int n, JacobiParams p, double t);

/// Fills out[0..n] with P_0(t), ..., P_n(t) in one recurrence pass.
void jacobi_eval_all(int n, JacobiParams p, double t, std::span<double> out);

/// P_n^{(alpha,beta)}(1) = binom(n+alpha, n).
double jacobi_eval_at_one(int n, JacobiParams p);

/// Total mass of the Jacobi weight: 2^{alpha+beta+1} B(alpha+1, beta+1).
double jacobi_weight_mass(JacobiParams p);

/// Squared L2 norm of P_n against the Jacobi weight on [-1,1].
double jacobi_l2norm(int n, JacobiParams p);

/// Gegenbauer polynomial C_n^lambda(t) with C_n^lambda(1) = binom(n+2lambda-1, n).
/// Requires lambda > 0; the lambda -> 0 degeneration is owned by the quadrature
/// limit rule, not by this routine.
double gegenbauer_eval(int n, double lambda, double t);

/// C_n^lambda(1).
double gegenbauer_at_one(int n, double lambda);

/// Pochhammer ratio (a)_n / (b)_n; switches to log-gamma for large n to avoid
/// overflow of the raw rising factorials.
double pochhammer_ratio(double a, double b, int n);

/// Generalized Gegenbauer polynomial C_n^{(lambda,mu)}(t), built from Jacobi
/// polynomials through the even/odd quadratic relation.
double gen_gegenbauer_eval(int n, GenGegenParams g, double t);

/// Total mass of the weight |t|^{2mu}(1-t^2)^{lambda-1/2}: B(mu+1/2, lambda+1/2).
double gen_gegen_weight_mass(GenGegenParams g);

/// Squared norm of C_n^{(lambda,mu)} against its weight, computed by (exact)
/// Gauss-Jacobi quadrature after the quadratic change of variable.
double gen_gegen_sq_norm(int n, GenGegenParams g);

/// Orthonormal generalized Gegenbauer polynomial (positive leading coefficient).
double gen_gegenbauer_orthonormal(int n, GenGegenParams g, double t);

/// Frame for the interior asymptotic formula of Jacobi polynomials:
/// N = n + (alpha+beta+1)/2 and tau = -pi (alpha+1/2)/2, theta in (0, pi).
struct AsymptoticFrame {
  double big_n = 0.0;
  double tau = 0.0;
  double theta = 0.0;
  static AsymptoticFrame of(int n, JacobiParams p, double theta);
  double shifted_phase(double mu) const;  // tau + pi*mu/2
};

/// Leading term pi^{-1/2} n^{-1/2} (sin t/2)^{-a-1/2} (cos t/2)^{-b-1/2} cos(N theta + tau)
/// of the interior asymptotics; valid (and enforced) for 1/n <= theta <= pi - 1/n.
double szego_main_term(int n, JacobiParams p, double theta);

/// n^{-1/2} (1 - t + n^{-2})^{-(alpha+1/2)/2} for t in [0,1]; the uniform bound
/// envelope with unit constant, callers calibrate the constant empirically.
double jacobi_upper_bound(int n, double alpha, double t);

}  // namespace ckl
