#pragma once

#include <span>
#include <vector>

#include "ckl/cesaro.hpp"
#include "ckl/orthopoly.hpp"
#include "ckl/quadrature.hpp"

namespace ckl {

/// The reflection-invariant weight prod |x_i|^{2 kappa_i} on S^d together with
/// its derived indices.
struct ReflectionWeight {
  int d = 2;
  std::vector<double> kappa;  // d+1 entries, each >= 0

  ReflectionWeight() = default;
  ReflectionWeight(int dim, std::vector<double> k);

  double total() const;      // |kappa|
  double lambda() const;     // |kappa| + (d-1)/2
  double sigma() const;      // (d-1)/2 + |kappa| - min kappa
  double min_kappa() const;
};

enum class Domain { Sphere, Ball, Simplex };

/// A validated point of one of the three domains. Sphere points carry d+1
/// coordinates with unit norm; ball and simplex points carry d coordinates.
struct DomainPoint {
  Domain domain = Domain::Sphere;
  std::vector<double> coords;

  static DomainPoint sphere(std::vector<double> coords);
  static DomainPoint ball(std::vector<double> coords);
  static DomainPoint simplex(std::vector<double> coords);
};

// --- geometric quantities entering the kernel formulas -----------------------

/// Coordinatewise absolute values.
std::vector<double> abs_coords(std::span<const double> x);

/// Euclidean distance of the absolute-coordinate vectors.
double abs_coord_distance(std::span<const double> x, std::span<const double> y);

/// Lift of a simplex point to the sphere: (sqrt(x_1), ..., sqrt(x_d), sqrt(1-|x|)).
std::vector<double> simplex_lift(std::span<const double> x);

/// Distance of the lifted simplex points.
double simplex_lift_distance(std::span<const double> x, std::span<const double> y);

/// sum_i x_i y_i t_i, the argument fed to the one-dimensional kernels.
double signed_inner(std::span<const double> x, std::span<const double> y,
                    std::span<const double> t);

// --- kernel evaluators --------------------------------------------------------
//
// Convention: multivariate kernels reproduce against the *normalized* weighted
// measure on their domain (the surface normalization constants are absorbed),
// so the degree-0 kernel is identically 1. The one-dimensional kernels above
// use plain orthonormal products; the weight mass of the underlying 1-D weight
// therefore appears as an explicit factor inside the integral representations.

/// Cesaro kernel on S^d. Exact tensor quadrature over [-1,1]^{d+1}; the
/// integrand degree is known, so there are no tolerance knobs here.
class SphereKernel {
 public:
  SphereKernel(int n, CesaroOrder order, ReflectionWeight w);
  double operator()(const DomainPoint& x, const DomainPoint& y) const;
  double eval(std::span<const double> x, std::span<const double> y) const;
  int degree() const { return n_; }

 private:
  int n_;
  ReflectionWeight w_;
  JacobiKernel1D k1_;
  ProductMeasure measure_;
  double mass_;
};

class BallKernel {
 public:
  BallKernel(int n, CesaroOrder order, ReflectionWeight w);
  double operator()(const DomainPoint& x, const DomainPoint& y) const;
  double eval(std::span<const double> x, std::span<const double> y) const;

 private:
  int d_;
  SphereKernel sk_;
};

class SimplexKernel {
 public:
  SimplexKernel(int n, CesaroOrder order, ReflectionWeight w);
  double operator()(const DomainPoint& x, const DomainPoint& y) const;
  double eval(std::span<const double> x, std::span<const double> y) const;

 private:
  int n_;
  ReflectionWeight w_;
  JacobiKernel1D k1_;
  ProductMeasure measure_;
  double mass_;
};

/// Degree-n reproducing kernel on the sphere in its compact Gegenbauer form,
/// (n+lambda)/lambda integral of C_n^lambda(sum x_i y_i t_i).
double sphere_proj_kernel(int n, const ReflectionWeight& w, const DomainPoint& x,
                          const DomainPoint& y);

double sphere_cesaro_kernel(int n, CesaroOrder order, const ReflectionWeight& w,
                            const DomainPoint& x, const DomainPoint& y);

/// Alternative route: Cesaro-sum the per-degree projection kernels. Used as
/// the cross-check path against the integral representation.
double sphere_cesaro_kernel_by_degree_sum(int n, CesaroOrder order, const ReflectionWeight& w,
                                          const DomainPoint& x, const DomainPoint& y);

double ball_cesaro_kernel(int n, CesaroOrder order, const ReflectionWeight& w,
                          const DomainPoint& x, const DomainPoint& y);

double simplex_cesaro_kernel(int n, CesaroOrder order, const ReflectionWeight& w,
                             const DomainPoint& x, const DomainPoint& y);

/// Classical unweighted circle kernel (the d = 1, kappa = 0 corner that the
/// weighted machinery rejects): Cesaro mean of 1, 2cos(k psi).
double circle_kernel(int n, CesaroOrder order, double psi);

/// Right-hand side of the generalized Gegenbauer product formula: the double
/// integral of C_n^{lambda+mu}(t x y + s sqrt(1-x^2) sqrt(1-y^2)) against the
/// normalized sphere/symmetric factor pair, times (n+lambda+mu)/(lambda+mu).
double gen_gegen_product_rhs(int n, GenGegenParams g, double x, double y);

/// Quadrature rule over one of the domains against its normalized weighted
/// measure, exact for polynomials of degree <= degree_cap on the domain.
struct DomainRule {
  Domain domain = Domain::Sphere;
  ReflectionWeight w;
  int degree_cap = 0;
  int stride = 0;
  std::vector<double> points;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * stride, static_cast<std::size_t>(stride)};
  }
};

DomainRule make_domain_rule(Domain domain, const ReflectionWeight& w, int degree_cap);

/// S_n^delta applied to f sampled on `rule`: quadrature of f(y) K_n(x, y)
/// against the normalized measure. Rejects rules too coarse for the product
/// f * kernel (degree n + f_degree).
double apply_cesaro_operator(std::span<const double> samples, int f_degree,
                             const DomainRule& rule, int n, CesaroOrder order,
                             const DomainPoint& x);

/// Dimension of the space of degree-n h-harmonics in d+1 variables.
long long hspace_dimension(int n, int d);

}  // namespace ckl
