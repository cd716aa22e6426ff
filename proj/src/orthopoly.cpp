#include "ckl/orthopoly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ckl/quadrature.hpp"

namespace ckl {

namespace {

void check_params(JacobiParams p) {
  if (!p.valid()) throw std::invalid_argument("jacobi: alpha and beta must exceed -1");
}

// Row k >= 2 of the three-term recurrence P_k = (A t + B) P_{k-1} - C P_{k-2}.
inline void recurrence_row(double alpha, double beta, int k, double& A, double& B, double& C) {
  const double apb = alpha + beta;
  const double q = static_cast<double>(k);
  const double qapbpq = q * (apb + q);
  const double apbp2q = apb + 2.0 * q;
  A = apbp2q * (apbp2q - 1.0) / (2.0 * qapbpq);
  B = (apbp2q - 1.0) * (alpha * alpha - beta * beta) / (2.0 * qapbpq * (apbp2q - 2.0));
  C = apbp2q * (alpha + q - 1.0) * (beta + q - 1.0) / (qapbpq * (apbp2q - 2.0));
}

}  // namespace

double jacobi_eval(int n, JacobiParams p, double t) {
  check_params(p);
  if (n < 0) throw std::invalid_argument("jacobi_eval: negative degree");
  if (n == 0) return 1.0;
  double pm2 = 1.0;
  double pm1 = 0.5 * (p.alpha + p.beta + 2.0) * t + 0.5 * (p.alpha - p.beta);
  for (int k = 2; k <= n; ++k) {
    double A, B, C;
    recurrence_row(p.alpha, p.beta, k, A, B, C);
    const double pk = (A * t + B) * pm1 - C * pm2;
    pm2 = pm1;
    pm1 = pk;
  }
  return pm1;
}

void jacobi_eval_all(int n, JacobiParams p, double t, std::span<double> out) {
  check_params(p);
  if (n < 0 || out.size() < static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("jacobi_eval_all: bad degree or output span");
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = 0.5 * (p.alpha + p.beta + 2.0) * t + 0.5 * (p.alpha - p.beta);
  for (int k = 2; k <= n; ++k) {
    double A, B, C;
    recurrence_row(p.alpha, p.beta, k, A, B, C);
    out[k] = (A * t + B) * out[k - 1] - C * out[k - 2];
  }
}

double jacobi_eval_at_one(int n, JacobiParams p) {
  check_params(p);
  double v = 1.0;
  for (int j = 1; j <= n; ++j) v *= (p.alpha + j) / j;
  return v;
}

double jacobi_weight_mass(JacobiParams p) {
  check_params(p);
  return std::pow(2.0, p.alpha + p.beta + 1.0) *
         std::exp(std::lgamma(p.alpha + 1.0) + std::lgamma(p.beta + 1.0) -
                  std::lgamma(p.alpha + p.beta + 2.0));
}

double jacobi_l2norm(int n, JacobiParams p) {
  check_params(p);
  if (n < 0) throw std::invalid_argument("jacobi_l2norm: negative degree");
  if (n == 0) return jacobi_weight_mass(p);
  // 2^{a+b+1}/(2n+a+b+1) * Gamma(n+a+1)Gamma(n+b+1) / (Gamma(n+a+b+1) n!)
  const double a = p.alpha, b = p.beta;
  return std::pow(2.0, a + b + 1.0) / (2.0 * n + a + b + 1.0) *
         std::exp(std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                  std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0));
}

double gegenbauer_eval(int n, double lambda, double t) {
  if (lambda <= 0.0) throw std::invalid_argument("gegenbauer_eval: lambda must be positive");
  if (n < 0) throw std::invalid_argument("gegenbauer_eval: negative degree");
  if (n == 0) return 1.0;
  double cm2 = 1.0;
  double cm1 = 2.0 * lambda * t;
  for (int k = 2; k <= n; ++k) {
    // k C_k = 2(k+lambda-1) t C_{k-1} - (k+2lambda-2) C_{k-2}
    const double ck = (2.0 * (k + lambda - 1.0) * t * cm1 - (k + 2.0 * lambda - 2.0) * cm2) / k;
    cm2 = cm1;
    cm1 = ck;
  }
  return cm1;
}

double gegenbauer_at_one(int n, double lambda) {
  double v = 1.0;
  for (int j = 1; j <= n; ++j) v *= (2.0 * lambda + j - 1.0) / j;
  return v;
}

double pochhammer_ratio(double a, double b, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer_ratio: negative length");
  if (n == 0) return 1.0;
  if (n <= 30 || a <= 0.0 || b <= 0.0) {
    double v = 1.0;
    for (int j = 0; j < n; ++j) v *= (a + j) / (b + j);
    return v;
  }
  return std::exp(std::lgamma(a + n) - std::lgamma(a) - std::lgamma(b + n) + std::lgamma(b));
}

double gen_gegenbauer_eval(int n, GenGegenParams g, double t) {
  if (!g.valid()) throw std::invalid_argument("gen_gegenbauer_eval: lambda, mu must be >= 0");
  if (n < 0) throw std::invalid_argument("gen_gegenbauer_eval: negative degree");
  const double u = 2.0 * t * t - 1.0;
  if (n % 2 == 0) {
    const int m = n / 2;
    const double r = pochhammer_ratio(g.lambda + g.mu, g.mu + 0.5, m);
    return r * jacobi_eval(m, {g.lambda - 0.5, g.mu - 0.5}, u);
  }
  const int m = (n - 1) / 2;
  const double r = pochhammer_ratio(g.lambda + g.mu, g.mu + 0.5, m + 1);
  return r * t * jacobi_eval(m, {g.lambda - 0.5, g.mu + 0.5}, u);
}

double gen_gegen_weight_mass(GenGegenParams g) {
  if (!g.valid()) throw std::invalid_argument("gen_gegen_weight_mass: lambda, mu must be >= 0");
  return std::exp(std::lgamma(g.mu + 0.5) + std::lgamma(g.lambda + 0.5) -
                  std::lgamma(g.lambda + g.mu + 1.0));
}

double gen_gegen_sq_norm(int n, GenGegenParams g) {
  if (!g.valid()) throw std::invalid_argument("gen_gegen_sq_norm: lambda, mu must be >= 0");
  if (n < 0) throw std::invalid_argument("gen_gegen_sq_norm: negative degree");
  if (n == 0) return gen_gegen_weight_mass(g);
  if (g.lambda == 0.0 && g.mu == 0.0)
    throw std::invalid_argument("gen_gegen_sq_norm: degenerate at lambda = mu = 0, n >= 1");
  // After u = 2t^2 - 1 the integral becomes 2^{-lambda-mu} times a Jacobi-weight
  // integral of a polynomial, so the Gauss rule below is exact.
  const double scale = std::pow(2.0, -(g.lambda + g.mu));
  double value = 0.0;
  if (n % 2 == 0) {
    const int m = n / 2;
    const double r = pochhammer_ratio(g.lambda + g.mu, g.mu + 0.5, m);
    const auto rule = gauss_jacobi_rule(m + 1, {g.lambda - 0.5, g.mu - 0.5});
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double pm = jacobi_eval(m, {g.lambda - 0.5, g.mu - 0.5}, rule.nodes[i]);
      acc += rule.weights[i] * pm * pm;
    }
    value = r * r * scale * acc;
  } else {
    const int m = (n - 1) / 2;
    const double r = pochhammer_ratio(g.lambda + g.mu, g.mu + 0.5, m + 1);
    const auto rule = gauss_jacobi_rule(m + 1, {g.lambda - 0.5, g.mu + 0.5});
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double pm = jacobi_eval(m, {g.lambda - 0.5, g.mu + 0.5}, rule.nodes[i]);
      acc += rule.weights[i] * pm * pm;
    }
    value = 0.5 * r * r * scale * acc;
  }
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::runtime_error("gen_gegen_sq_norm: degenerate norm");
  return value;
}

double gen_gegenbauer_orthonormal(int n, GenGegenParams g, double t) {
  return gen_gegenbauer_eval(n, g, t) / std::sqrt(gen_gegen_sq_norm(n, g));
}

AsymptoticFrame AsymptoticFrame::of(int n, JacobiParams p, double theta) {
  AsymptoticFrame f;
  f.big_n = n + 0.5 * (p.alpha + p.beta + 1.0);
  f.tau = -0.5 * std::numbers::pi * (p.alpha + 0.5);
  f.theta = theta;
  return f;
}

double AsymptoticFrame::shifted_phase(double mu) const {
  return tau + 0.5 * std::numbers::pi * mu;
}

double szego_main_term(int n, JacobiParams p, double theta) {
  check_params(p);
  if (n < 1) throw std::invalid_argument("szego_main_term: degree must be >= 1");
  const double lo = 1.0 / n, hi = std::numbers::pi - 1.0 / n;
  if (!(theta >= lo && theta <= hi))
    throw std::invalid_argument("szego_main_term: theta outside [1/n, pi - 1/n]");
  const auto f = AsymptoticFrame::of(n, p, theta);
  return std::pow(std::sin(0.5 * theta), -p.alpha - 0.5) *
         std::pow(std::cos(0.5 * theta), -p.beta - 0.5) *
         std::cos(f.big_n * theta + f.tau) / std::sqrt(std::numbers::pi * n);
}

double jacobi_upper_bound(int n, double alpha, double t) {
  if (n < 1) throw std::invalid_argument("jacobi_upper_bound: degree must be >= 1");
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("jacobi_upper_bound: t must lie in [0,1]");
  const double ninv2 = 1.0 / (static_cast<double>(n) * n);
  return std::pow(static_cast<double>(n), -0.5) *
         std::pow(1.0 - t + ninv2, -0.5 * (alpha + 0.5));
}

}  // namespace ckl
