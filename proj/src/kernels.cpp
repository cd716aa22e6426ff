#include "ckl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ckl {

namespace {

constexpr double kOnDomainTol = 1e-12;

std::vector<WeightFactorForm> factor_list(const ReflectionWeight& w, FactorKind kind) {
  std::vector<WeightFactorForm> f(w.kappa.size());
  for (std::size_t i = 0; i < w.kappa.size(); ++i) f[i] = {kind, w.kappa[i]};
  return f;
}

void check_point(const DomainPoint& p, Domain expected, int d) {
  if (p.domain != expected) throw std::invalid_argument("kernel: point from the wrong domain");
  const std::size_t want = (expected == Domain::Sphere) ? d + 1 : d;
  if (p.coords.size() != want) throw std::invalid_argument("kernel: wrong coordinate count");
}

}  // namespace

ReflectionWeight::ReflectionWeight(int dim, std::vector<double> k) : d(dim), kappa(std::move(k)) {
  if (d < 1) throw std::invalid_argument("ReflectionWeight: dimension must be >= 1");
  if (kappa.size() != static_cast<std::size_t>(d) + 1)
    throw std::invalid_argument("ReflectionWeight: kappa must have d+1 entries");
  for (double v : kappa)
    if (v < 0.0) throw std::invalid_argument("ReflectionWeight: kappa must be >= 0");
}

double ReflectionWeight::total() const {
  double s = 0.0;
  for (double v : kappa) s += v;
  return s;
}

double ReflectionWeight::lambda() const { return total() + 0.5 * (d - 1); }

double ReflectionWeight::min_kappa() const {
  return *std::min_element(kappa.begin(), kappa.end());
}

double ReflectionWeight::sigma() const { return 0.5 * (d - 1) + total() - min_kappa(); }

DomainPoint DomainPoint::sphere(std::vector<double> coords) {
  double n2 = 0.0;
  for (double c : coords) n2 += c * c;
  if (std::abs(std::sqrt(n2) - 1.0) > kOnDomainTol)
    throw std::invalid_argument("DomainPoint::sphere: coordinates not on the unit sphere");
  return {Domain::Sphere, std::move(coords)};
}

DomainPoint DomainPoint::ball(std::vector<double> coords) {
  double n2 = 0.0;
  for (double c : coords) n2 += c * c;
  if (n2 > 1.0 + kOnDomainTol)
    throw std::invalid_argument("DomainPoint::ball: coordinates outside the unit ball");
  return {Domain::Ball, std::move(coords)};
}

DomainPoint DomainPoint::simplex(std::vector<double> coords) {
  double s = 0.0;
  for (double c : coords) {
    if (c < -kOnDomainTol) throw std::invalid_argument("DomainPoint::simplex: negative coordinate");
    s += c;
  }
  if (s > 1.0 + kOnDomainTol)
    throw std::invalid_argument("DomainPoint::simplex: coordinate sum exceeds 1");
  return {Domain::Simplex, std::move(coords)};
}

std::vector<double> abs_coords(std::span<const double> x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = std::abs(x[i]);
  return v;
}

double abs_coord_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::abs(x[i]) - std::abs(y[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<double> simplex_lift(std::span<const double> x) {
  std::vector<double> xi(x.size() + 1);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xi[i] = std::sqrt(std::max(x[i], 0.0));
    s += x[i];
  }
  xi[x.size()] = std::sqrt(std::max(1.0 - s, 0.0));
  return xi;
}

double simplex_lift_distance(std::span<const double> x, std::span<const double> y) {
  const auto xi = simplex_lift(x);
  const auto zeta = simplex_lift(y);
  double s = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double d = xi[i] - zeta[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double signed_inner(std::span<const double> x, std::span<const double> y,
                    std::span<const double> t) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += x[i] * y[i] * t[i];
  return s;
}

// --- sphere -------------------------------------------------------------------

SphereKernel::SphereKernel(int n, CesaroOrder order, ReflectionWeight w)
    : n_(n),
      w_(std::move(w)),
      k1_(n, order, JacobiParams{w_.lambda() - 0.5, w_.lambda() - 0.5}),
      measure_(product_measure(factor_list(w_, FactorKind::SphereFactor), n)),
      mass_(jacobi_weight_mass({w_.lambda() - 0.5, w_.lambda() - 0.5})) {
  if (!(w_.lambda() > 0.0))
    throw std::invalid_argument(
        "SphereKernel: lambda_kappa = 0 (d = 1, kappa = 0); use the classical circle_kernel");
}

double SphereKernel::eval(std::span<const double> x, std::span<const double> y) const {
  const std::size_t m = x.size();
  std::vector<double> prod(m);
  for (std::size_t i = 0; i < m; ++i) prod[i] = x[i] * y[i];
  const double integral = measure_.integrate([&](std::span<const double> t) {
    double u = 0.0;
    for (std::size_t i = 0; i < m; ++i) u += prod[i] * t[i];
    return k1_.at_one(u);
  });
  return mass_ * integral;
}

double SphereKernel::operator()(const DomainPoint& x, const DomainPoint& y) const {
  check_point(x, Domain::Sphere, w_.d);
  check_point(y, Domain::Sphere, w_.d);
  return eval(x.coords, y.coords);
}

double sphere_proj_kernel(int n, const ReflectionWeight& w, const DomainPoint& x,
                          const DomainPoint& y) {
  check_point(x, Domain::Sphere, w.d);
  check_point(y, Domain::Sphere, w.d);
  const double lambda = w.lambda();
  if (!(lambda > 0.0))
    throw std::invalid_argument("sphere_proj_kernel: lambda_kappa must be positive");
  if (n < 0) throw std::invalid_argument("sphere_proj_kernel: negative degree");
  const auto measure = product_measure(factor_list(w, FactorKind::SphereFactor), n);
  const std::size_t m = x.coords.size();
  std::vector<double> prod(m);
  for (std::size_t i = 0; i < m; ++i) prod[i] = x.coords[i] * y.coords[i];
  const double integral = measure.integrate([&](std::span<const double> t) {
    double u = 0.0;
    for (std::size_t i = 0; i < m; ++i) u += prod[i] * t[i];
    return gegenbauer_eval(n, lambda, u);
  });
  return (n + lambda) / lambda * integral;
}

double sphere_cesaro_kernel(int n, CesaroOrder order, const ReflectionWeight& w,
                            const DomainPoint& x, const DomainPoint& y) {
  return SphereKernel(n, order, w)(x, y);
}

double sphere_cesaro_kernel_by_degree_sum(int n, CesaroOrder order, const ReflectionWeight& w,
                                          const DomainPoint& x, const DomainPoint& y) {
  std::vector<double> proj(n + 1);
  for (int k = 0; k <= n; ++k) proj[k] = sphere_proj_kernel(k, w, x, y);
  return cesaro_mean(proj, n, order);
}

// --- ball ---------------------------------------------------------------------

namespace {

std::vector<double> ball_lift(std::span<const double> x, int sign) {
  std::vector<double> lx(x.size() + 1);
  double n2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = x[i];
    n2 += x[i] * x[i];
  }
  lx[x.size()] = sign * std::sqrt(std::max(1.0 - n2, 0.0));
  return lx;
}

}  // namespace

BallKernel::BallKernel(int n, CesaroOrder order, ReflectionWeight w)
    : d_(w.d), sk_(n, order, std::move(w)) {}

double BallKernel::eval(std::span<const double> x, std::span<const double> y) const {
  const auto lx = ball_lift(x, +1);
  const auto lyp = ball_lift(y, +1);
  const auto lym = ball_lift(y, -1);
  return 0.5 * (sk_.eval(lx, lyp) + sk_.eval(lx, lym));
}

double BallKernel::operator()(const DomainPoint& x, const DomainPoint& y) const {
  check_point(x, Domain::Ball, d_);
  check_point(y, Domain::Ball, d_);
  return eval(x.coords, y.coords);
}

double ball_cesaro_kernel(int n, CesaroOrder order, const ReflectionWeight& w,
                          const DomainPoint& x, const DomainPoint& y) {
  return BallKernel(n, order, w)(x, y);
}

// --- simplex ------------------------------------------------------------------

SimplexKernel::SimplexKernel(int n, CesaroOrder order, ReflectionWeight w)
    : n_(n),
      w_(std::move(w)),
      k1_(n, order, JacobiParams{w_.total() + 0.5 * (w_.d - 2), -0.5}),
      measure_(product_measure(factor_list(w_, FactorKind::SymmetricFactor), 2 * n)),
      mass_(jacobi_weight_mass({w_.total() + 0.5 * (w_.d - 2), -0.5})) {}

double SimplexKernel::eval(std::span<const double> x, std::span<const double> y) const {
  const auto xi = simplex_lift(x);
  const auto zeta = simplex_lift(y);
  const std::size_t m = xi.size();
  std::vector<double> prod(m);
  for (std::size_t i = 0; i < m; ++i) prod[i] = xi[i] * zeta[i];
  const double integral = measure_.integrate([&](std::span<const double> t) {
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) z += prod[i] * t[i];
    return k1_.at_one(2.0 * z * z - 1.0);
  });
  return mass_ * integral;
}

double SimplexKernel::operator()(const DomainPoint& x, const DomainPoint& y) const {
  check_point(x, Domain::Simplex, w_.d);
  check_point(y, Domain::Simplex, w_.d);
  return eval(x.coords, y.coords);
}

double simplex_cesaro_kernel(int n, CesaroOrder order, const ReflectionWeight& w,
                             const DomainPoint& x, const DomainPoint& y) {
  return SimplexKernel(n, order, w)(x, y);
}

// --- classical circle ----------------------------------------------------------

double circle_kernel(int n, CesaroOrder order, double psi) {
  const auto cw = cesaro_kernel_weights(n, order);
  double sum = cw[0];
  if (n == 0) return sum;
  const double c = std::cos(psi);
  double cm2 = 1.0, cm1 = c;  // cos(k psi) by the Chebyshev recurrence
  sum += cw[1] * 2.0 * cm1;
  for (int k = 2; k <= n; ++k) {
    const double ck = 2.0 * c * cm1 - cm2;
    sum += cw[k] * 2.0 * ck;
    cm2 = cm1;
    cm1 = ck;
  }
  return sum;
}

// --- product formula ------------------------------------------------------------

double gen_gegen_product_rhs(int n, GenGegenParams g, double x, double y) {
  if (!g.valid()) throw std::invalid_argument("gen_gegen_product_rhs: invalid parameters");
  const double lm = g.lambda + g.mu;
  if (!(lm > 0.0))
    throw std::invalid_argument("gen_gegen_product_rhs: lambda + mu must be positive");
  if (std::abs(x) > 1.0 || std::abs(y) > 1.0)
    throw std::invalid_argument("gen_gegen_product_rhs: arguments must lie in [-1,1]");
  const WeightFactorForm factors[2] = {{FactorKind::SphereFactor, g.mu},
                                       {FactorKind::SymmetricFactor, g.lambda}};
  const auto measure = product_measure(factors, n);
  const double cross = std::sqrt(std::max(1.0 - x * x, 0.0)) *
                       std::sqrt(std::max(1.0 - y * y, 0.0));
  const double xy = x * y;
  const double integral = measure.integrate([&](std::span<const double> t) {
    return gegenbauer_eval(n, lm, t[0] * xy + t[1] * cross);
  });
  return (n + lm) / lm * integral;
}

// --- domain rules and operator application --------------------------------------

DomainRule make_domain_rule(Domain domain, const ReflectionWeight& w, int degree_cap) {
  DomainRule rule;
  rule.domain = domain;
  rule.w = w;
  rule.degree_cap = degree_cap;
  const int sphere_cap = (domain == Domain::Simplex) ? 2 * degree_cap : degree_cap;
  const SphereRule sr = sphere_product_rule(w.d, std::max(sphere_cap, 1), w.kappa);
  rule.weights = sr.weights;
  if (domain == Domain::Sphere) {
    rule.stride = w.d + 1;
    rule.points = sr.points;
    return rule;
  }
  rule.stride = w.d;
  rule.points.reserve(sr.size() * w.d);
  for (std::size_t i = 0; i < sr.size(); ++i) {
    const auto p = sr.point(i);
    if (domain == Domain::Ball) {
      for (int j = 0; j < w.d; ++j) rule.points.push_back(p[j]);
    } else {
      for (int j = 0; j < w.d; ++j) rule.points.push_back(p[j] * p[j]);
    }
  }
  return rule;
}

double apply_cesaro_operator(std::span<const double> samples, int f_degree,
                             const DomainRule& rule, int n, CesaroOrder order,
                             const DomainPoint& x) {
  if (samples.size() != rule.size())
    throw std::invalid_argument("apply_cesaro_operator: sample count does not match the rule");
  if (rule.degree_cap < n + f_degree)
    throw std::invalid_argument(
        "apply_cesaro_operator: rule resolution below kernel degree + sample degree");
  double sum = 0.0, comp = 0.0;
  auto accumulate = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  switch (rule.domain) {
    case Domain::Sphere: {
      const SphereKernel k(n, order, rule.w);
      for (std::size_t i = 0; i < rule.size(); ++i)
        accumulate(rule.weights[i] * samples[i] * k.eval(x.coords, rule.point(i)));
      break;
    }
    case Domain::Ball: {
      const BallKernel k(n, order, rule.w);
      for (std::size_t i = 0; i < rule.size(); ++i)
        accumulate(rule.weights[i] * samples[i] * k.eval(x.coords, rule.point(i)));
      break;
    }
    case Domain::Simplex: {
      const SimplexKernel k(n, order, rule.w);
      for (std::size_t i = 0; i < rule.size(); ++i)
        accumulate(rule.weights[i] * samples[i] * k.eval(x.coords, rule.point(i)));
      break;
    }
  }
  return sum;
}

long long hspace_dimension(int n, int d) {
  if (n < 0 || d < 1) throw std::invalid_argument("hspace_dimension: need n >= 0, d >= 1");
  auto binom = [](long long a, long long b) -> long long {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  if (n == 0) return 1;
  return binom(n + d, d) - binom(n + d - 2, d);
}

}  // namespace ckl
