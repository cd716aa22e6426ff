#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ckl/cesaro.hpp"
#include "ckl/kernels.hpp"
#include "ckl/quadrature.hpp"

using namespace ckl;

TEST_CASE("cesaro coefficients") {
  CHECK(cesaro_coeff(0.7, 0) == 1.0);
  CHECK(cesaro_coeff(1.0, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(cesaro_coeff(0.5, 2) == doctest::Approx(1.875).epsilon(1e-15));
  CHECK_THROWS_AS(cesaro_coeff(-1.0, 2), std::invalid_argument);
}

TEST_CASE("coefficient sum identity") {
  // sum_{k<=n} A_k^d = A_n^{d+1}; exact integers for integer d
  for (int delta : {0, 1, 2}) {
    for (int n : {5, 17, 64}) {
      long long sum = 0, an = 1;
      auto binom = [](long long a, long long b) {
        long long r = 1;
        for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
      };
      for (int k = 0; k <= n; ++k) sum += binom(k + delta, k);
      an = binom(n + delta + 1, n);
      CHECK(sum == an);
      // and the floating implementation agrees
      double fsum = 0.0;
      for (int k = 0; k <= n; ++k) fsum += cesaro_coeff(delta, k);
      CHECK(fsum == doctest::Approx(static_cast<double>(an)).epsilon(1e-12));
    }
  }
  for (double delta : {0.35, 2.6}) {
    double sum = 0.0;
    for (int k = 0; k <= 48; ++k) sum += cesaro_coeff(delta, k);
    CHECK(sum == doctest::Approx(cesaro_coeff(delta + 1.0, 48)).epsilon(1e-12));
  }
}

TEST_CASE("cesaro means") {
  {
    // a constant series term sequence sums to A_n^{delta+1}/A_n^delta; the
    // constant-reproduction property belongs to projection sequences, where
    // only the degree-0 term is nonzero
    std::vector<double> ones(21, 1.0);
    for (double delta : {0.0, 0.5, 3.0}) {
      const double want = cesaro_coeff(delta + 1.0, 20) / cesaro_coeff(delta, 20);
      CHECK(cesaro_mean(ones, 20, CesaroOrder::of(delta)) ==
            doctest::Approx(want).epsilon(1e-13));
    }
    std::vector<double> constant_function = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (double delta : {0.0, 0.5, 3.0})
      CHECK(cesaro_mean(constant_function, 4, CesaroOrder::of(delta)) ==
            doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    std::vector<double> s = {1.0, 4.0, 9.0, 16.0};
    CHECK(cesaro_mean(s, 3, CesaroOrder::of(0.0)) == doctest::Approx(30.0).epsilon(1e-14));
    CHECK(cesaro_mean(s, 3, CesaroOrder::projection()) == 16.0);
  }
  {
    // (3*1 + 2*2 + 1*3) / A_2^1
    std::vector<double> s = {1.0, 2.0, 3.0};
    CHECK(cesaro_mean(s, 2, CesaroOrder::of(1.0)) == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("telescoping through the coefficient identity") {
  // the numerator of the (C,delta) mean equals the plain sum of the (C,delta-1)
  // numerators; verified on the coefficients
  const double delta = 1.7;
  const int n = 23;
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = k; j <= n; ++j) acc += cesaro_coeff(delta - 1.0, j - k);
    CHECK(acc == doctest::Approx(cesaro_coeff(delta, n - k)).epsilon(1e-12));
  }
}

TEST_CASE("jacobi kernel basics") {
  const JacobiParams p{0.7, 1.1};
  {
    const double k0 = jacobi_cesaro_kernel(0, CesaroOrder::of(1.0), p, 0.3, -0.8);
    CHECK(k0 == doctest::Approx(1.0 / jacobi_weight_mass(p)).epsilon(1e-13));
  }
  {
    // reproduction of constants: int K_n(1, t) w(t) dt = 1
    for (int n : {1, 7, 19, 32}) {
      for (double delta : {0.0, 0.5, 3.0}) {
        const JacobiKernel1D k(n, CesaroOrder::of(delta), p);
        const auto rule = gauss_jacobi_rule(n / 2 + 2, p);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
          acc += rule.weights[i] * k.at_one(rule.nodes[i]);
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
  {
    // Legendre partial-sum kernel at s = 1
    const JacobiParams leg{0.0, 0.0};
    double want = 0.0;
    for (int k = 0; k <= 4; ++k)
      want += (2.0 * k + 1.0) / 2.0 * jacobi_eval(k, leg, 0.3);
    CHECK(jacobi_cesaro_kernel(4, CesaroOrder::of(0.0), leg, 1.0, 0.3) ==
          doctest::Approx(want).epsilon(1e-13));
  }
  {
    // bitwise symmetry; the fused endpoint path agrees to roundoff
    const JacobiKernel1D k(13, CesaroOrder::of(0.8), p);
    CHECK(k(0.41, -0.77) == k(-0.77, 0.41));
    CHECK(k(1.0, 0.23) == doctest::Approx(k.at_one(0.23)).epsilon(1e-13));
  }
}

TEST_CASE("generalized gegenbauer kernel") {
  const GenGegenParams g{1.2, 0.7};
  {
    // reproduction of constants by adaptive integration of K_n(1, t) w(t)
    for (int n : {1, 9, 32}) {
      const GenGegenKernel1D k(n, CesaroOrder::of(0.5), g);
      auto f = [&](double t) {
        return k(1.0, t) * std::pow(std::abs(t), 2.0 * g.mu) *
               std::pow(1.0 - t * t, g.lambda - 0.5);
      };
      const auto l = adaptive_integrate(f, -1.0, 0.0, {1e-12});
      const auto r = adaptive_integrate(f, 0.0, 1.0, {1e-12});
      CHECK(l.value + r.value == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  {
    // mu = 0: matches the kernel assembled from plain Gegenbauer polynomials
    const GenGegenParams g0{1.4, 0.0};
    const int n = 8;
    const double s = 0.37, t = -0.61;
    const auto cw = cesaro_kernel_weights(n, CesaroOrder::of(1.0));
    const auto rule = gauss_jacobi_rule(n + 2, {g0.lambda - 0.5, g0.lambda - 0.5});
    double want = 0.0;
    for (int k = 0; k <= n; ++k) {
      double norm = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = gegenbauer_eval(k, g0.lambda, rule.nodes[i]);
        norm += rule.weights[i] * v * v;
      }
      want += cw[k] * gegenbauer_eval(k, g0.lambda, s) * gegenbauer_eval(k, g0.lambda, t) / norm;
    }
    CHECK(gen_gegen_cesaro_kernel(n, CesaroOrder::of(1.0), g0, s, t) ==
          doctest::Approx(want).epsilon(1e-10));
  }
  {
    // PROJECTION product equals the product-formula double integral up to the
    // weight mass (the double integral reproduces against the normalized measure)
    const double mass = gen_gegen_weight_mass(g);
    for (int n : {0, 3, 8, 16}) {
      const double x = 0.52, y = -0.34;
      const double lhs = mass * gen_gegen_cesaro_kernel(n, CesaroOrder::projection(), g, x, y);
      CHECK(lhs == doctest::Approx(gen_gegen_product_rhs(n, g, x, y)).epsilon(1e-8));
    }
  }
  {
    const GenGegenKernel1D k(11, CesaroOrder::projection(), g);
    CHECK(k(0.3, 0.9) == k(0.9, 0.3));
  }
}
