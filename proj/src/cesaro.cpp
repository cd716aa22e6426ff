#include "ckl/cesaro.hpp"

#include <cmath>
#include <stdexcept>

namespace ckl {

CesaroOrder CesaroOrder::of(double delta) {
  if (!(delta > -1.0)) throw std::invalid_argument("CesaroOrder: delta must exceed -1");
  return {delta, false};
}

double cesaro_coeff(double delta, int k) {
  if (!(delta > -1.0)) throw std::invalid_argument("cesaro_coeff: delta must exceed -1");
  if (k < 0) throw std::invalid_argument("cesaro_coeff: negative index");
  double v = 1.0;
  for (int j = 1; j <= k; ++j) v *= (delta + j) / j;
  return v;
}

std::vector<double> cesaro_kernel_weights(int n, CesaroOrder order) {
  if (n < 0) throw std::invalid_argument("cesaro_kernel_weights: negative degree");
  std::vector<double> w(n + 1, 0.0);
  if (order.is_projection) {
    w[n] = 1.0;
    return w;
  }
  std::vector<double> A(n + 1);
  A[0] = 1.0;
  for (int j = 1; j <= n; ++j) A[j] = A[j - 1] * (order.delta + j) / j;
  for (int k = 0; k <= n; ++k) w[k] = A[n - k] / A[n];
  return w;
}

double cesaro_mean(std::span<const double> s, int n, CesaroOrder order) {
  if (s.size() < static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("cesaro_mean: sequence shorter than n+1");
  if (order.is_projection) return s[n];
  const auto w = cesaro_kernel_weights(n, order);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) acc += w[k] * s[k];
  return acc;
}

namespace {

// Row k >= 2 of P_k = (A t + B) P_{k-1} - C P_{k-2}; same convention as orthopoly.
void recurrence_rows(int n, JacobiParams p, std::vector<double>& A, std::vector<double>& B,
                     std::vector<double>& C) {
  A.assign(n + 1, 0.0);
  B.assign(n + 1, 0.0);
  C.assign(n + 1, 0.0);
  const double apb = p.alpha + p.beta;
  for (int k = 2; k <= n; ++k) {
    const double q = k;
    const double qapbpq = q * (apb + q);
    const double apbp2q = apb + 2.0 * q;
    A[k] = apbp2q * (apbp2q - 1.0) / (2.0 * qapbpq);
    B[k] = (apbp2q - 1.0) * (p.alpha * p.alpha - p.beta * p.beta) /
           (2.0 * qapbpq * (apbp2q - 2.0));
    C[k] = apbp2q * (p.alpha + q - 1.0) * (p.beta + q - 1.0) / (qapbpq * (apbp2q - 2.0));
  }
}

}  // namespace

JacobiKernel1D::JacobiKernel1D(int n, CesaroOrder order, JacobiParams p) : n_(n), p_(p) {
  if (n < 0) throw std::invalid_argument("JacobiKernel1D: negative degree");
  if (!p.valid()) throw std::invalid_argument("JacobiKernel1D: invalid Jacobi parameters");
  recurrence_rows(n_, p_, rec_a_, rec_b_, rec_c_);
  const auto cw = cesaro_kernel_weights(n_, order);
  pair_coeff_.resize(n_ + 1);
  one_coeff_.resize(n_ + 1);
  double at_one = 1.0;  // P_k(1), updated by the running binomial product
  for (int k = 0; k <= n_; ++k) {
    if (k > 0) at_one *= (p_.alpha + k) / k;
    const double inv_norm = 1.0 / jacobi_l2norm(k, p_);
    pair_coeff_[k] = cw[k] * inv_norm;
    one_coeff_[k] = cw[k] * at_one * inv_norm;
  }
}

double JacobiKernel1D::operator()(double s, double t) const {
  double sum = pair_coeff_[0];
  if (n_ == 0) return sum;
  const double l1a = 0.5 * (p_.alpha + p_.beta + 2.0), l1b = 0.5 * (p_.alpha - p_.beta);
  double ps2 = 1.0, pt2 = 1.0;
  double ps1 = l1a * s + l1b, pt1 = l1a * t + l1b;
  sum += pair_coeff_[1] * (ps1 * pt1);
  for (int k = 2; k <= n_; ++k) {
    const double ps = (rec_a_[k] * s + rec_b_[k]) * ps1 - rec_c_[k] * ps2;
    const double pt = (rec_a_[k] * t + rec_b_[k]) * pt1 - rec_c_[k] * pt2;
    sum += pair_coeff_[k] * (ps * pt);
    ps2 = ps1;
    ps1 = ps;
    pt2 = pt1;
    pt1 = pt;
  }
  return sum;
}

double JacobiKernel1D::at_one(double t) const {
  double sum = one_coeff_[0];
  if (n_ == 0) return sum;
  double pt2 = 1.0;
  double pt1 = 0.5 * (p_.alpha + p_.beta + 2.0) * t + 0.5 * (p_.alpha - p_.beta);
  sum += one_coeff_[1] * pt1;
  for (int k = 2; k <= n_; ++k) {
    const double pt = (rec_a_[k] * t + rec_b_[k]) * pt1 - rec_c_[k] * pt2;
    sum += one_coeff_[k] * pt;
    pt2 = pt1;
    pt1 = pt;
  }
  return sum;
}

GenGegenKernel1D::GenGegenKernel1D(int n, CesaroOrder order, GenGegenParams g) : n_(n), g_(g) {
  if (n < 0) throw std::invalid_argument("GenGegenKernel1D: negative degree");
  if (!g.valid()) throw std::invalid_argument("GenGegenKernel1D: invalid parameters");
  if (g.lambda == 0.0 && g.mu == 0.0 && n >= 1)
    throw std::invalid_argument("GenGegenKernel1D: degenerate weight at lambda = mu = 0");
  const auto cw = cesaro_kernel_weights(n_, order);
  const JacobiParams pe{g.lambda - 0.5, g.mu - 0.5};
  const JacobiParams po{g.lambda - 0.5, g.mu + 0.5};
  const int me = n_ / 2;                         // top even degree 2*me
  const int mo = (n_ >= 1) ? (n_ - 1) / 2 : -1;  // top odd degree 2*mo+1
  recurrence_rows(me, pe, ea_, eb_, ec_);
  if (mo >= 0) recurrence_rows(mo, po, oa_, ob_, oc_);
  ew_.assign(me + 1, 0.0);
  ow_.assign(std::max(mo + 1, 0), 0.0);
  for (int k = 0; k <= n_; ++k) {
    const int m = (k % 2 == 0) ? k / 2 : (k - 1) / 2;
    const double r = pochhammer_ratio(g.lambda + g.mu, g.mu + 0.5, (k % 2 == 0) ? m : m + 1);
    const double inv_norm = 1.0 / gen_gegen_sq_norm(k, g_);
    if (k % 2 == 0)
      ew_[m] = cw[k] * r * r * inv_norm;
    else
      ow_[m] = cw[k] * r * r * inv_norm;
  }
}

double GenGegenKernel1D::operator()(double s, double t) const {
  const double us = 2.0 * s * s - 1.0, ut = 2.0 * t * t - 1.0;
  double sum = ew_[0];
  const int me = n_ / 2;
  const int mo = (n_ >= 1) ? (n_ - 1) / 2 : -1;
  // even family at (us, ut)
  if (me >= 1) {
    const double l1a = 0.5 * (g_.lambda + g_.mu + 1.0), l1b = 0.5 * (g_.lambda - g_.mu);
    double es2 = 1.0, et2 = 1.0;
    double es1 = l1a * us + l1b, et1 = l1a * ut + l1b;
    sum += ew_[1] * (es1 * et1);
    for (int m = 2; m <= me; ++m) {
      const double es = (ea_[m] * us + eb_[m]) * es1 - ec_[m] * es2;
      const double et = (ea_[m] * ut + eb_[m]) * et1 - ec_[m] * et2;
      sum += ew_[m] * (es * et);
      es2 = es1;
      es1 = es;
      et2 = et1;
      et1 = et;
    }
  }
  // odd family carries the extra s t factor
  if (mo >= 0) {
    const double st = s * t;
    double os1 = 1.0, ot1 = 1.0;
    sum += ow_[0] * st;
    if (mo >= 1) {
      const double l1a = 0.5 * (g_.lambda + g_.mu + 2.0), l1b = 0.5 * (g_.lambda - g_.mu - 1.0);
      double os2 = 1.0, ot2 = 1.0;
      os1 = l1a * us + l1b;
      ot1 = l1a * ut + l1b;
      sum += ow_[1] * st * (os1 * ot1);
      for (int m = 2; m <= mo; ++m) {
        const double os = (oa_[m] * us + ob_[m]) * os1 - oc_[m] * os2;
        const double ot = (oa_[m] * ut + ob_[m]) * ot1 - oc_[m] * ot2;
        sum += ow_[m] * st * (os * ot);
        os2 = os1;
        os1 = os;
        ot2 = ot1;
        ot1 = ot;
      }
    }
  }
  return sum;
}

double jacobi_cesaro_kernel(int n, CesaroOrder order, JacobiParams p, double s, double t) {
  return JacobiKernel1D(n, order, p)(s, t);
}

double gen_gegen_cesaro_kernel(int n, CesaroOrder order, GenGegenParams g, double s, double t) {
  return GenGegenKernel1D(n, order, g)(s, t);
}

}  // namespace ckl
