#ifndef MVOP_TESTS_SUPPORT_HPP_
#define MVOP_TESTS_SUPPORT_HPP_

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "mvop.hpp"

namespace testing_support {

using mvop::CMat2;
using mvop::Complex;
using mvop::MatrixPolynomial;

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
  if (depth > 40 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, tol / 2.0, depth + 1) + simpson(f, m, b, tol / 2.0, depth + 1);
}

// Entrywise integral of a matrix-valued function.
inline CMat2 integrate(const std::function<CMat2(double)>& f, double a, double b, double tol) {
  CMat2 r;
  for (int i = 0; i < 4; ++i) {
    for (int part = 0; part < 2; ++part) {
      auto g = [&](double t) {
        const Complex z = f(t).e[static_cast<std::size_t>(i)];
        return part == 0 ? z.real() : z.imag();
      };
      const double v = simpson(g, a, b, tol);
      r.e[static_cast<std::size_t>(i)] += part == 0 ? Complex(v, 0.0) : Complex(0.0, v);
    }
  }
  return r;
}

inline CMat2 random_matrix(std::mt19937& rng, bool complex = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat2 m;
  for (auto& z : m.e) z = Complex(u(rng), complex ? u(rng) : 0.0);
  return m;
}

inline MatrixPolynomial random_polynomial(std::mt19937& rng, int degree, bool complex = true) {
  std::vector<CMat2> c;
  for (int i = 0; i <= degree; ++i) c.push_back(random_matrix(rng, complex));
  return MatrixPolynomial(std::move(c));
}

// Central difference of a matrix polynomial, order 1 or 2.
inline CMat2 finite_difference(const MatrixPolynomial& p, double t, int order, double h) {
  if (order == 1) return (p(t + h) - p(t - h)) * (1.0 / (2.0 * h));
  return (p(t + h) - p(t) * 2.0 + p(t - h)) * (1.0 / (h * h));
}

inline const std::vector<mvop::Parameters>& parameter_sets() {
  static const std::vector<mvop::Parameters> sets = {
      mvop::validate_parameters(0.0, 0.0, 1.0, 0), mvop::validate_parameters(1.0, 2.0, -2.5, 0),
      mvop::validate_parameters(0.5, 0.5, 1.5, 0)};
  return sets;
}

// Largest coefficient magnitude of P_n times that of P_m times max |<I,I>|.
inline double pairing_scale(const MatrixPolynomial& p, const MatrixPolynomial& q,
                            const mvop::WeightMatrix& w) {
  const CMat2 id = CMat2::identity();
  const double g = mvop::max_abs(
      mvop::inner_product(MatrixPolynomial::constant(id), MatrixPolynomial::constant(id), w));
  return p.max_abs() * q.max_abs() * g;
}

}  // namespace testing_support

#endif  // MVOP_TESTS_SUPPORT_HPP_
