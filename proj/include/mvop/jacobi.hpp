#ifndef MVOP_JACOBI_HPP_
#define MVOP_JACOBI_HPP_

// Classical Jacobi polynomials and Gauss-Jacobi quadrature on (0,1).
//
// Two normalizations appear here. jacobi_value() is the textbook
// P_n^{(a,b)}(x) on [-1,1] with weight (1-x)^a (1+x)^b. jacobi_poly() returns
// the same polynomial composed with x = 1-2t, as a polynomial in t, so that
// its natural weight becomes t^a (1-t)^b on (0,1).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mvop/errors.hpp"
#include "mvop/mat2.hpp"

namespace mvop {

namespace detail {

inline void require_jacobi_exponents(double a, double b, const char* where) {
  if (!(a > -1.0) || !(b > -1.0)) {
    throw InvalidParameter(std::string(where) + ": exponents must satisfy a > -1 and b > -1");
  }
}

// P_n and P_{n-1} by the standard three-term recurrence.
inline void jacobi_pair(int n, double a, double b, double x, double& pn, double& pnm1) {
  double p0 = 1.0;
  if (n == 0) {
    pn = p0;
    pnm1 = 0.0;
    return;
  }
  double p1 = 0.5 * (a - b + (a + b + 2.0) * x);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double p2 = (c2 * p1 - c3 * p0) / c1;
    p0 = p1;
    p1 = p2;
  }
  pn = p1;
  pnm1 = p0;
}

}  // namespace detail

/// P_n^{(a,b)}(x) on [-1,1] by recurrence.
inline double jacobi_value(int n, double a, double b, double x) {
  double pn = 0.0;
  double pm = 0.0;
  detail::jacobi_pair(n, a, b, x, pn, pm);
  return pn;
}

/**
 * p_n^{(a,b)}(1-2t) as a polynomial in t.
 *
 * Coefficient of t^j is C(n,j)/n! (j+a+1)_{n-j} (n+a+b+1)_j (-1)^j.
 * Value at t=0 is (a+1)_n/n!.
 */
inline ScalarPolynomial jacobi_poly(int n, double a, double b) {
  detail::require_jacobi_exponents(a, b, "jacobi_poly");
  if (n < 0) throw InvalidParameter("jacobi_poly: degree must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  const double nf = factorial(n);
  for (int j = 0; j <= n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(j)] = sign * binomial(n, j) / nf * pochhammer(j + a + 1.0, n - j) *
                                     pochhammer(n + a + b + 1.0, j);
  }
  return ScalarPolynomial(std::move(c));
}

/// (P_n^{(a,b)})'(-1); zero for n = 0.
inline double jacobi_endpoint_derivative(int n, double a, double b) {
  if (n <= 0) return 0.0;
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return (a + b + n + 1.0) * sign * pochhammer(b + 2.0, n - 1) / (2.0 * factorial(n - 1));
}

/// Euler beta function B(x,y) for x, y > 0.
inline double beta_function(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw InvalidParameter("beta_function: arguments must be positive");
  }
  return std::beta(x, y);
}

/// Gauss rule for t^alpha (1-t)^beta on (0,1); nodes ascending.
struct QuadratureRule {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Node count giving exactness for polynomial integrands of degree d, plus two guard nodes.
inline int nodes_for_degree(int d) { return (std::max(d, 0) + 2) / 2 + 2; }

/**
 * m-point Gauss-Jacobi rule for t^a (1-t)^b on (0,1).
 *
 * Nodes are roots of P_m^{(a,b)}(1-2t), found by Newton with deflation from
 * asymptotic angle estimates and polished undeflated. If Newton misbehaves,
 * roots are bracketed by sign changes on a cosine grid and bisected.
 */
inline QuadratureRule gauss_jacobi_rule(double a, double b, int m) {
  detail::require_jacobi_exponents(a, b, "gauss_jacobi_rule");
  if (m < 1) throw InvalidParameter("gauss_jacobi_rule: need at least one node");

  const double pi = std::numbers::pi;
  auto eval = [&](double x, double& p, double& dp) {
    double pm = 0.0;
    detail::jacobi_pair(m, a, b, x, p, pm);
    const double s = 2.0 * m + a + b;
    dp = (m * ((a - b) - s * x) * p + 2.0 * (m + a) * (m + b) * pm) / (s * (1.0 - x * x));
  };

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(m));
  bool ok = true;
  for (int i = 1; i <= m && ok; ++i) {
    const double theta = (i - 0.25 + 0.5 * a) * pi / (m + 0.5 * (a + b + 1.0));
    double x = std::cos(theta);
    for (int it = 0; it < 100; ++it) {
      double p = 0.0;
      double dp = 0.0;
      eval(x, p, dp);
      double defl = 0.0;
      for (double r : xs) defl += 1.0 / (x - r);
      const double step = p / (dp - p * defl);
      x -= step;
      if (!(std::abs(x) < 1.0)) break;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    ok = std::abs(x) < 1.0 && std::isfinite(x);
    xs.push_back(x);
  }

  if (ok) {
    for (double& x : xs) {
      for (int it = 0; it < 3; ++it) {
        double p = 0.0;
        double dp = 0.0;
        eval(x, p, dp);
        if (dp == 0.0) break;
        const double nx = x - p / dp;
        if (!(std::abs(nx) < 1.0)) break;
        x = nx;
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size() && ok; ++i) {
      if (!(xs[i] - xs[i - 1] > 1e-14)) ok = false;
    }
  }

  if (!ok) {
    // Bracket-and-bisect fallback.
    xs.clear();
    const int grid = 400 * m;
    auto val = [&](double x) { return jacobi_value(m, a, b, x); };
    double x0 = std::cos(pi * (grid - 0.5) / grid);
    double f0 = val(x0);
    for (int g = grid - 1; g >= 1; --g) {
      const double x1 = std::cos(pi * (g - 0.5) / grid);
      const double f1 = val(x1);
      if (f0 == 0.0) {
        xs.push_back(x0);
      } else if (f0 * f1 < 0.0) {
        double lo = x0;
        double hi = x1;
        double flo = f0;
        for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = val(mid);
          if (flo * fm <= 0.0) {
            hi = mid;
          } else {
            lo = mid;
            flo = fm;
          }
        }
        xs.push_back(0.5 * (lo + hi));
      }
      x0 = x1;
      f0 = f1;
    }
    if (static_cast<int>(xs.size()) != m) {
      throw ConvergenceFailure("gauss_jacobi_rule: found " + std::to_string(xs.size()) +
                               " roots, expected " + std::to_string(m));
    }
  }

  // Weights on [-1,1]:
  // Gamma(m+a+1)Gamma(m+b+1)/(Gamma(m+a+b+1) m!) 2^{a+b+1} / ((1-x^2) P'(x)^2)
  const double log_pref = std::lgamma(m + a + 1.0) + std::lgamma(m + b + 1.0) -
                          std::lgamma(m + a + b + 1.0) - std::lgamma(m + 1.0);
  QuadratureRule rule;
  rule.alpha = a;
  rule.beta = b;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  // x descending gives t = (1-x)/2 ascending.
  std::sort(xs.begin(), xs.end(), std::greater<>());
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    double p = 0.0;
    double dp = 0.0;
    eval(x, p, dp);
    // Weight in t already carries the 2^{-(a+b+1)} Jacobian.
    const double w = std::exp(log_pref) / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] = w;
    total += w;
  }
  const double mass = beta_function(a + 1.0, b + 1.0);
  for (double& w : rule.weights) w *= mass / total;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!(rule.nodes[i] > 0.0 && rule.nodes[i] < 1.0) || !(rule.weights[i] > 0.0)) {
      throw ConvergenceFailure("gauss_jacobi_rule: node or weight out of range");
    }
  }
  return rule;
}

}  // namespace mvop

#endif  // MVOP_JACOBI_HPP_
