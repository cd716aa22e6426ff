#pragma once

#include <span>
#include <vector>

#include "ckl/orthopoly.hpp"

namespace ckl {

/// Summation order: either a (C,delta) mean with delta > -1, or the single
/// degree-n projection term. The projection case is a semantic sentinel, not
/// delta = -1 arithmetic.
struct CesaroOrder {
  double delta = 0.0;
  bool is_projection = false;

  static CesaroOrder projection() { return {0.0, true}; }
  static CesaroOrder of(double delta);
};

/// A_k^delta = (delta+1)(delta+2)...(delta+k) / k!.
double cesaro_coeff(double delta, int k);

/// The normalized kernel weights A_{n-k}^delta / A_n^delta for k = 0..n;
/// projection order yields the one-hot vector at k = n.
std::vector<double> cesaro_kernel_weights(int n, CesaroOrder order);

/// (A_n^delta)^{-1} sum_k A_{n-k}^delta s_k; projection returns s_n.
double cesaro_mean(std::span<const double> s, int n, CesaroOrder order);

/// (C,delta) kernel of the Jacobi expansion,
///   K_n(s,t) = sum_k  A_{n-k}^delta / A_n^delta  ~P_k(s) ~P_k(t),
/// with ~P_k orthonormal against the (unnormalized) Jacobi weight. The
/// orthonormalization constants and recurrence rows are precomputed once so
/// repeated evaluation inside tensor quadrature costs one recurrence pass.
class JacobiKernel1D {
 public:
  JacobiKernel1D(int n, CesaroOrder order, JacobiParams p);

  double operator()(double s, double t) const;
  /// K_n(1, t), fused into a single recurrence pass.
  double at_one(double t) const;

  int degree() const { return n_; }
  const JacobiParams& params() const { return p_; }

 private:
  int n_;
  JacobiParams p_;
  std::vector<double> rec_a_, rec_b_, rec_c_;  // recurrence rows, index k >= 2
  std::vector<double> pair_coeff_;             // c_k / h_k
  std::vector<double> one_coeff_;              // c_k P_k(1) / h_k
};

/// Same kernel for the generalized Gegenbauer expansion against
/// |t|^{2mu} (1-t^2)^{lambda-1/2}, evaluated through the even/odd Jacobi
/// families at u = 2t^2-1.
class GenGegenKernel1D {
 public:
  GenGegenKernel1D(int n, CesaroOrder order, GenGegenParams g);

  double operator()(double s, double t) const;

  int degree() const { return n_; }
  const GenGegenParams& params() const { return g_; }

 private:
  int n_;
  GenGegenParams g_;
  // even family: degrees m <= n/2 with params (lambda-1/2, mu-1/2)
  std::vector<double> ea_, eb_, ec_, ew_;
  // odd family: degrees m <= (n-1)/2 with params (lambda-1/2, mu+1/2)
  std::vector<double> oa_, ob_, oc_, ow_;
};

/// One-shot conveniences over the cached evaluators above.
double jacobi_cesaro_kernel(int n, CesaroOrder order, JacobiParams p, double s, double t);
double gen_gegen_cesaro_kernel(int n, CesaroOrder order, GenGegenParams g, double s, double t);

}  // namespace ckl
