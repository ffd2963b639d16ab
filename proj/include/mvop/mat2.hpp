#ifndef MVOP_MAT2_HPP_
#define MVOP_MAT2_HPP_

/**
 * @file mat2.hpp
 * @brief Complex 2x2 matrices and polynomials with 2x2 matrix coefficients.
 *
 * Everything else in the library is built on two value types:
 *
 *  - `CMat2`: a dense complex 2x2 matrix (row-major).
 *  - `MatrixPolynomial`: sum_i C_i t^i with `CMat2` coefficients, stored
 *    densely in ascending order. Products keep the matrix order (left factor
 *    times right factor), so the ring is non-commutative.
 *
 * Trailing coefficients are trimmed only when they are exactly zero; numerical
 * near-zeros stay in place and comparisons go through tolerances.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "mvop/errors.hpp"

namespace mvop {

using Complex = std::complex<double>;

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), computed as a finite product.
inline double pochhammer(double a, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= a + i;
  return r;
}

inline double factorial(int n) { return pochhammer(1.0, n); }

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// CMat2
// ---------------------------------------------------------------------------

/// Complex 2x2 matrix, row-major.
struct CMat2 {
  std::array<Complex, 4> e{};

  constexpr CMat2() = default;
  constexpr CMat2(Complex a11, Complex a12, Complex a21, Complex a22)
      : e{a11, a12, a21, a22} {}

  static constexpr CMat2 zero() { return {}; }
  static constexpr CMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr CMat2 diag(Complex a, Complex b) { return {a, 0.0, 0.0, b}; }
  /// Matrix unit E_{rc} (0-based row/column).
  static constexpr CMat2 unit(int r, int c) {
    CMat2 m;
    m.e[2 * r + c] = 1.0;
    return m;
  }

  constexpr Complex& operator()(int r, int c) { return e[2 * r + c]; }
  constexpr const Complex& operator()(int r, int c) const { return e[2 * r + c]; }

  CMat2& operator+=(const CMat2& o) {
    for (int i = 0; i < 4; ++i) e[i] += o.e[i];
    return *this;
  }
  CMat2& operator-=(const CMat2& o) {
    for (int i = 0; i < 4; ++i) e[i] -= o.e[i];
    return *this;
  }
  CMat2& operator*=(Complex s) {
    for (auto& x : e) x *= s;
    return *this;
  }

  bool is_zero() const {
    return std::all_of(e.begin(), e.end(), [](const Complex& z) { return z == Complex{}; });
  }
};

inline CMat2 operator+(CMat2 a, const CMat2& b) { return a += b; }
inline CMat2 operator-(CMat2 a, const CMat2& b) { return a -= b; }
inline CMat2 operator-(CMat2 a) { return a *= -1.0; }
inline CMat2 operator*(CMat2 a, Complex s) { return a *= s; }
inline CMat2 operator*(Complex s, CMat2 a) { return a *= s; }
inline CMat2 operator*(CMat2 a, double s) { return a *= s; }
inline CMat2 operator*(double s, CMat2 a) { return a *= s; }
inline CMat2 operator/(CMat2 a, Complex s) { return a *= 1.0 / s; }

inline CMat2 operator*(const CMat2& a, const CMat2& b) {
  return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
          a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

inline bool operator==(const CMat2& a, const CMat2& b) { return a.e == b.e; }

/// Conjugate transpose.
inline CMat2 adjoint(const CMat2& a) {
  return {std::conj(a(0, 0)), std::conj(a(1, 0)), std::conj(a(0, 1)), std::conj(a(1, 1))};
}

inline Complex det(const CMat2& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }
inline Complex trace(const CMat2& a) { return a(0, 0) + a(1, 1); }

/// Largest entry magnitude.
inline double max_abs(const CMat2& a) {
  double m = 0.0;
  for (const auto& z : a.e) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const CMat2& a, const CMat2& b) { return max_abs(a - b); }

/// Inverse; throws SingularMatrix when det is zero relative to the entries.
inline CMat2 inverse(const CMat2& a) {
  const Complex d = det(a);
  const double s = max_abs(a);
  if (std::abs(d) <= 1e-300 || std::abs(d) <= 1e-15 * s * s) {
    throw SingularMatrix("inverse: matrix is numerically singular");
  }
  return CMat2{a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)} / d;
}

inline bool is_finite(const CMat2& a) {
  return std::all_of(a.e.begin(), a.e.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

/// Principal square root of a Hermitian positive-definite 2x2 matrix:
/// sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
inline CMat2 hermitian_sqrt(const CMat2& m) {
  const double d = det(m).real();
  const double t = trace(m).real();
  if (!(d > 0.0) || !(t > 0.0)) {
    throw InvalidParameter("hermitian_sqrt: matrix is not positive definite");
  }
  const double sd = std::sqrt(d);
  return (m + CMat2::identity() * sd) * (1.0 / std::sqrt(t + 2.0 * sd));
}

/// Is the matrix Hermitian positive definite (Sylvester's criterion)?
inline bool is_hermitian_positive_definite(const CMat2& m, double tol = 1e-12) {
  const double s = std::max(max_abs(m), 1e-300);
  if (max_abs(m - adjoint(m)) > tol * s) return false;
  return m(0, 0).real() > 0.0 && det(m).real() > 0.0;
}

// ---------------------------------------------------------------------------
// ScalarPolynomial
// ---------------------------------------------------------------------------

/// Real scalar polynomial, ascending coefficients.
class ScalarPolynomial {
 public:
  ScalarPolynomial() = default;
  explicit ScalarPolynomial(std::vector<double> c) : c_(std::move(c)) { trim(); }
  ScalarPolynomial(std::initializer_list<double> c) : c_(c) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coeffs() const { return c_; }
  double coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0.0;
  }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }

  template <typename T>
  T operator()(T t) const {
    T r{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + T(*it);
    return r;
  }

  ScalarPolynomial derivative(int order = 1) const {
    if (order <= 0) return *this;
    if (degree() < order) return {};
    std::vector<double> d(c_.size() - static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = c_[i + static_cast<std::size_t>(order)] *
             pochhammer(static_cast<double>(i + 1), order);
    }
    return ScalarPolynomial(std::move(d));
  }

  friend ScalarPolynomial operator*(const ScalarPolynomial& p, const ScalarPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> r(p.c_.size() + q.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
      for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return ScalarPolynomial(std::move(r));
  }
  friend ScalarPolynomial operator+(const ScalarPolynomial& p, const ScalarPolynomial& q) {
    std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
    for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
    return ScalarPolynomial(std::move(r));
  }
  friend ScalarPolynomial operator*(double s, const ScalarPolynomial& p) {
    std::vector<double> r = p.c_;
    for (auto& x : r) x *= s;
    return ScalarPolynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }
  std::vector<double> c_;
};

// ---------------------------------------------------------------------------
// MatrixPolynomial
// ---------------------------------------------------------------------------

/// Polynomial in t with CMat2 coefficients; `coeffs()[i]` multiplies t^i.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  explicit MatrixPolynomial(std::vector<CMat2> c) : c_(std::move(c)) { trim(); }
  MatrixPolynomial(std::initializer_list<CMat2> c) : c_(c) { trim(); }

  static MatrixPolynomial constant(const CMat2& m) { return MatrixPolynomial({m}); }
  static MatrixPolynomial monomial(int degree, const CMat2& m) {
    std::vector<CMat2> c(static_cast<std::size_t>(degree) + 1);
    c.back() = m;
    return MatrixPolynomial(std::move(c));
  }
  /// Lift a scalar polynomial to s(t) * I.
  static MatrixPolynomial scalar(const ScalarPolynomial& s) {
    std::vector<CMat2> c;
    c.reserve(s.coeffs().size());
    for (double x : s.coeffs()) c.push_back(CMat2::identity() * x);
    return MatrixPolynomial(std::move(c));
  }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<CMat2>& coeffs() const { return c_; }
  CMat2 coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)]
                                                       : CMat2{};
  }
  CMat2 leading() const { return c_.empty() ? CMat2{} : c_.back(); }

  /// Horner evaluation.
  CMat2 operator()(Complex t) const {
    CMat2 r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
  }

  /// Coefficientwise conjugate transpose; equals P(t)^* for real t.
  MatrixPolynomial adjoint() const {
    std::vector<CMat2> c;
    c.reserve(c_.size());
    for (const auto& m : c_) c.push_back(mvop::adjoint(m));
    return MatrixPolynomial(std::move(c));
  }

  /// Largest coefficient entry magnitude (0 for the zero polynomial).
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : c_) m = std::max(m, mvop::max_abs(x));
    return m;
  }

  MatrixPolynomial derivative(int order = 1) const;

  MatrixPolynomial& operator+=(const MatrixPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  MatrixPolynomial& operator-=(const MatrixPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  MatrixPolynomial& operator*=(Complex s) {
    for (auto& m : c_) m *= s;
    trim();
    return *this;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<CMat2> c_;
};

inline MatrixPolynomial operator+(MatrixPolynomial p, const MatrixPolynomial& q) { return p += q; }
inline MatrixPolynomial operator-(MatrixPolynomial p, const MatrixPolynomial& q) { return p -= q; }
inline MatrixPolynomial operator-(MatrixPolynomial p) { return p *= -1.0; }
inline MatrixPolynomial operator*(MatrixPolynomial p, Complex s) { return p *= s; }
inline MatrixPolynomial operator*(Complex s, MatrixPolynomial p) { return p *= s; }
inline MatrixPolynomial operator*(double s, MatrixPolynomial p) { return p *= s; }

/// Cauchy product, matrix order preserved.
inline MatrixPolynomial operator*(const MatrixPolynomial& p, const MatrixPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<CMat2> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return MatrixPolynomial(std::move(r));
}

inline MatrixPolynomial operator*(const CMat2& m, const MatrixPolynomial& p) {
  std::vector<CMat2> r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.push_back(m * c);
  return MatrixPolynomial(std::move(r));
}

inline MatrixPolynomial operator*(const MatrixPolynomial& p, const CMat2& m) {
  std::vector<CMat2> r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.push_back(c * m);
  return MatrixPolynomial(std::move(r));
}

inline MatrixPolynomial operator*(const ScalarPolynomial& s, const MatrixPolynomial& p) {
  return MatrixPolynomial::scalar(s) * p;
}
inline MatrixPolynomial operator*(const MatrixPolynomial& p, const ScalarPolynomial& s) {
  return p * MatrixPolynomial::scalar(s);
}

inline MatrixPolynomial MatrixPolynomial::derivative(int order) const {
  if (order <= 0) return *this;
  if (degree() < order) return {};
  std::vector<CMat2> d(c_.size() - static_cast<std::size_t>(order));
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = c_[i + static_cast<std::size_t>(order)] *
           pochhammer(static_cast<double>(i + 1), order);
  }
  return MatrixPolynomial(std::move(d));
}

/// Largest coefficient-entry difference between two polynomials.
inline double max_abs_diff(const MatrixPolynomial& p, const MatrixPolynomial& q) {
  return (p - q).max_abs();
}

/// max|p - q| / max(max|p|, max|q|), or 0 when both vanish.
inline double relative_diff(const MatrixPolynomial& p, const MatrixPolynomial& q) {
  const double s = std::max(p.max_abs(), q.max_abs());
  return s == 0.0 ? 0.0 : max_abs_diff(p, q) / s;
}

// Named operations. The operators above are the primary spelling; these exist
// so the call sites that mirror the algebra read naturally.

inline MatrixPolynomial poly_add(const MatrixPolynomial& p, const MatrixPolynomial& q) {
  return p + q;
}
inline MatrixPolynomial poly_mul(const MatrixPolynomial& p, const MatrixPolynomial& q) {
  return p * q;
}
inline MatrixPolynomial poly_derivative(const MatrixPolynomial& p, int order) {
  return p.derivative(order);
}
inline CMat2 poly_eval(const MatrixPolynomial& p, Complex t) { return p(t); }

/**
 * Exact division of a matrix polynomial by a scalar polynomial.
 *
 * Returns q with p = s q + r. Every entry of r must be at most
 * `tol * p.max_abs()`, otherwise DivisionResidual is thrown.
 */
inline MatrixPolynomial poly_divide_scalar(const MatrixPolynomial& p, const ScalarPolynomial& s,
                                           double tol) {
  if (s.is_zero()) throw InvalidParameter("poly_divide_scalar: division by zero polynomial");
  const int ds = s.degree();
  const int dp = p.degree();
  if (dp < ds) {
    if (p.is_zero()) return {};
    throw DivisionResidual("poly_divide_scalar: divisor degree exceeds dividend degree");
  }
  std::vector<CMat2> rem = p.coeffs();
  std::vector<CMat2> quot(static_cast<std::size_t>(dp - ds + 1));
  const double lead = s.leading();
  for (int i = dp; i >= ds; --i) {
    const CMat2 c = rem[static_cast<std::size_t>(i)] * (1.0 / lead);
    quot[static_cast<std::size_t>(i - ds)] = c;
    for (int j = 0; j <= ds; ++j) rem[static_cast<std::size_t>(i - ds + j)] -= c * s.coeff(j);
  }
  double worst = 0.0;
  for (int i = 0; i < ds; ++i) worst = std::max(worst, max_abs(rem[static_cast<std::size_t>(i)]));
  const double scale = p.max_abs();
  if (worst > tol * scale) {
    throw DivisionResidual("poly_divide_scalar: remainder " + std::to_string(worst) +
                           " exceeds tolerance " + std::to_string(tol * scale));
  }
  return MatrixPolynomial(std::move(quot));
}

namespace detail {

// Extended-precision evaluation used by quadrature sums. Monic orthogonal
// polynomials of moderate degree are small on (0,1) while their monomial
// coefficients are O(1), so Horner in double loses digits to cancellation.
using LComplex = std::complex<long double>;
using LMat2 = std::array<LComplex, 4>;

inline LMat2 lmul(const LMat2& a, const LMat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline LMat2 ladjoint(const LMat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

inline LMat2 eval_extended(const MatrixPolynomial& p, long double t) {
  LMat2 r{};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    for (int i = 0; i < 4; ++i) {
      r[static_cast<std::size_t>(i)] =
          r[static_cast<std::size_t>(i)] * t + LComplex(it->e[static_cast<std::size_t>(i)]);
    }
  }
  return r;
}

inline CMat2 to_cmat2(const LMat2& a) {
  CMat2 m;
  for (std::size_t i = 0; i < 4; ++i) {
    m.e[i] = Complex(static_cast<double>(a[i].real()), static_cast<double>(a[i].imag()));
  }
  return m;
}

}  // namespace detail

}  // namespace mvop

#endif  // MVOP_MAT2_HPP_
