#ifndef MVOP_FAMILIES_HPP_
#define MVOP_FAMILIES_HPP_

// Monic orthogonal families for W^(k): three constructions (Rodrigues with
// Jacobi polynomials, matrix hypergeometric series, three-term recurrence),
// norms, orthonormal versions, Christoffel-Darboux sums, derivative families
// and the shift-operator Rodrigues formula.
//
// Index conventions follow the level-k notation: P_n^(k) has degree n-k, so
// functions taking (k, n) require n >= k. MvopFamily is indexed by degree.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mvop/diffop.hpp"
#include "mvop/errors.hpp"
#include "mvop/jacobi.hpp"
#include "mvop/mat2.hpp"
#include "mvop/weights.hpp"

namespace mvop {

inline constexpr double kMonicTolerance = 1e-10;
inline constexpr double kDivisionTolerance = 1e-10;

namespace detail {

inline void require_monic(const MatrixPolynomial& p, int degree, const char* where) {
  const double dev = p.degree() == degree ? max_abs(p.leading() - CMat2::identity()) : INFINITY;
  if (!(dev <= kMonicTolerance)) {
    throw ConstructionFailure(std::string(where) + ": result is not monic of degree " +
                              std::to_string(degree) + " (leading deviation " +
                              std::to_string(dev) + ")");
  }
}

inline void require_degree(int n, int k, const char* where) {
  if (k < 0) throw InvalidParameter(std::string(where) + ": shift level must be non-negative");
  if (n < k) throw InvalidParameter(std::string(where) + ": need n >= k");
}

inline double falling(double x, int i) {
  double r = 1.0;
  for (int j = 0; j < i; ++j) r *= x - j;
  return r;
}

/**
 * d^n/dt^n [t^{ea} (1-t)^{eb} G(t)] divided by t^{ba} (1-t)^{bb}, at t.
 * Requires ea - ba >= n and eb - bb >= n so every power is non-negative.
 */
inline CMat2 power_weighted_derivative(const MatrixPolynomial& g, double ea, double eb, double ba,
                                       double bb, int n, double t) {
  CMat2 r;
  for (int j = 0; j <= n; ++j) {
    double fj = 0.0;
    for (int i = 0; i <= j; ++i) {
      const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
      fj += binomial(j, i) * falling(ea, i) * sign * falling(eb, j - i) *
            std::pow(t, ea - ba - i) * std::pow(1.0 - t, eb - bb - (j - i));
    }
    r += g.derivative(n - j)(t) * (binomial(n, j) * fj);
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Recurrence
// ---------------------------------------------------------------------------

struct RecurrenceCoefficients {
  CMat2 a;
  CMat2 b;
};

/**
 * A_n, B_n of P_{n+1} = t P_n - B_n P_n - A_n P_{n-1} for the level-k
 * family, indexed by degree d = n - k (the level-0 values for the shifted
 * parameters).
 */
inline RecurrenceCoefficients recurrence_coefficients(const Parameters& p, int k, int d) {
  detail::require_level(p, k, "recurrence_coefficients");
  if (d < 0) throw InvalidParameter("recurrence_coefficients: negative degree");
  const Parameters s = p.shifted(k);
  const double a = s.alpha();
  const double b = s.beta();
  const double v = s.v();
  const double K1 = s.kappa_v_b();
  const double K2 = s.kappa_mv_b();
  const double K3 = s.kappa_v_mb();
  const double K4 = s.kappa_mv_mb();
  const double n = d;
  RecurrenceCoefficients r;
  const double an = n * (1 + n + a) * (1 + n + b) * (2 + n + a + b) /
                    ((1 + 2 * n + a + b) * (2 + 2 * n + a + b) * (2 + 2 * n + a + b) *
                     (3 + 2 * n + a + b) * (2 + 2 * n + K2) * (2 + 2 * n + K1));
  r.a = CMat2::diag(an * (4 + 2 * n + K2) * (2 * n + K1), an * (4 + 2 * n + K1) * (2 * n + K2));
  r.b(0, 0) = -n * ((a + n) * v - K4) / ((a + b + 2 * n + 2) * v) +
              (n + 1) * ((a + n + 1) * v - K4) / ((a + b + 2 * n + 4) * v);
  r.b(0, 1) = -K4 * (K1 + 2) / (v * (K1 + 2 * n + 2) * (K1 + 2 * n + 4));
  r.b(1, 0) = K3 * (K2 + 2) / (v * (K2 + 2 * n + 2) * (K2 + 2 * n + 4));
  r.b(1, 1) = -n * ((a + n) * v + K3) / ((a + b + 2 * n + 2) * v) +
              (n + 1) * ((a + n + 1) * v + K3) / ((a + b + 2 * n + 4) * v);
  return r;
}

/**
 * ||P_n||^2 = n! v B(a+n+2, b+n+2)/(a+b+n+3)_n
 *   * diag((k_{v,b}+2)(k_{-v,b}+2n+4)/(k_{v,-b}(k_{v,b}+2n+2)),
 *          -(k_{-v,b}+2)(k_{v,b}+2n+4)/(k_{-v,-b}(k_{-v,b}+2n+2)))
 * for the level-0 family of p.
 */
inline CMat2 norm_matrix(const Parameters& p, int n) {
  detail::require_level(p, 0, "norm_matrix");
  if (n < 0) throw InvalidParameter("norm_matrix: negative degree");
  const double a = p.alpha();
  const double b = p.beta();
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  const double s = factorial(n) * p.v() * beta_function(a + n + 2.0, b + n + 2.0) /
                   pochhammer(a + b + n + 3.0, n);
  return CMat2::diag(s * (K1 + 2) * (K2 + 2 * n + 4) / (p.kappa_v_mb() * (K1 + 2 * n + 2)),
                     -s * (K2 + 2) * (K1 + 2 * n + 4) / (p.kappa_mv_mb() * (K2 + 2 * n + 2)));
}

/// Degree-d norm of the level-k family.
inline CMat2 norm_matrix(const Parameters& p, int d, int k) {
  detail::require_level(p, k, "norm_matrix");
  return norm_matrix(p.shifted(k), d);
}

/// Monic family of W^(k) up to a given degree, built eagerly by recurrence.
class MvopFamily {
 public:
  const Parameters& params() const { return params_; }
  int level() const { return level_; }
  int max_degree() const { return static_cast<int>(polys_.size()) - 1; }

  /// Member of degree d (P_{d+k}^(k) in level-k indexing).
  const MatrixPolynomial& polynomial(int d) const { return polys_.at(static_cast<std::size_t>(d)); }
  const CMat2& norm(int d) const { return norms_.at(static_cast<std::size_t>(d)); }
  const RecurrenceCoefficients& recurrence(int d) const {
    return rec_.at(static_cast<std::size_t>(d));
  }
  const std::vector<MatrixPolynomial>& polynomials() const { return polys_; }

 private:
  friend MvopFamily build_recurrence(const Parameters&, int, int);
  explicit MvopFamily(const Parameters& p, int k) : params_(p), level_(k) {}

  Parameters params_;
  int level_;
  std::vector<MatrixPolynomial> polys_;
  std::vector<CMat2> norms_;
  std::vector<RecurrenceCoefficients> rec_;
};

inline MvopFamily build_recurrence(const Parameters& p, int k, int up_to) {
  detail::require_level(p, k, "build_recurrence");
  if (up_to < 0) throw InvalidParameter("build_recurrence: negative degree");
  MvopFamily f(p, k);
  const MatrixPolynomial t = MatrixPolynomial::monomial(1, CMat2::identity());
  MatrixPolynomial prev;
  MatrixPolynomial cur = MatrixPolynomial::constant(CMat2::identity());
  for (int d = 0; d <= up_to; ++d) {
    detail::require_monic(cur, d, "build_recurrence");
    f.polys_.push_back(cur);
    f.norms_.push_back(norm_matrix(p, d, k));
    f.rec_.push_back(recurrence_coefficients(p, k, d));
    if (d == up_to) break;
    const RecurrenceCoefficients& r = f.rec_.back();
    MatrixPolynomial next = t * cur - r.b * cur - r.a * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Rodrigues construction
// ---------------------------------------------------------------------------

struct RodriguesData {
  int n = 0;
  Complex c;
  Complex d;
  CMat2 r2;
  CMat2 r1;
  CMat2 r0;
  std::array<double, 2> exponents{};  // (n+alpha, n+beta)

  MatrixPolynomial polynomial() const { return MatrixPolynomial{r0, r1, r2}; }
};

/**
 * R_{n,2}, R_{n,1}, R_{n,0} with R_n(t) = t^{n+a}(1-t)^{n+b}(R2 t^2 + R1 t + R0).
 * With `monic`, c_n and d_n are chosen so that R_n^(n) W^{-1} is monic;
 * otherwise c_n = d_n = 1.
 */
inline RodriguesData rodrigues_data(const Parameters& p, int n, bool monic = true) {
  detail::require_level(p, 0, "rodrigues_data");
  if (n < 0) throw InvalidParameter("rodrigues_data: negative degree");
  const double a = p.alpha();
  const double b = p.beta();
  const double v = p.v();
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  const double K3 = p.kappa_v_mb();
  const double K4 = p.kappa_mv_mb();
  RodriguesData r;
  r.n = n;
  if (monic) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double ph = pochhammer(a + b + n + 3.0, n);
    r.c = sign * v * (K1 + 2.0) / (K3 * ph);
    r.d = -sign * v * (K2 + 2.0) / (K4 * ph);
  } else {
    r.c = 1.0;
    r.d = 1.0;
  }
  const Complex c = r.c;
  const Complex d = r.d;
  const double s = a + b + 2.0 * n + 2.0;
  r.r2 = CMat2::diag(c, d);
  r.r1 = CMat2{-c * K3, c * s * K3 / (K1 + 2.0 * n + 2.0), -d * s * K4 / (K2 + 2.0 * n + 2.0),
               d * K4} *
         (1.0 / v);
  const Complex x = c * K3 / (K1 + 2.0 * n + 2.0);
  const Complex y = d * K4 / (K2 + 2.0 * n + 2.0);
  r.r0 = CMat2{x, -x, y, -y} * ((1.0 + n + a) / v);
  r.exponents = {n + a, n + b};
  return r;
}

/**
 * Q(t) = p_n^{(a+2,b)} t R2 J(t) + p_n^{(a+1,b)} R1 J(t) + p_n^{(a,b)} R0 (J2 t + J1),
 * J(t) = J2 t^2 + J1 t + J0, with p_n^{(.,.)} evaluated at 1-2t. Then
 * n! Q(t) = t (1-t)^2 P_n(t).
 */
inline MatrixPolynomial rodrigues_numerator(const Parameters& p, int n) {
  const RodriguesData r = rodrigues_data(p, n, true);
  const InverseWeightFactors j = inverse_weight_factors(p);
  const double a = p.alpha();
  const double b = p.beta();
  const MatrixPolynomial jp = j.polynomial();
  const ScalarPolynomial t{0.0, 1.0};
  MatrixPolynomial q = (t * jacobi_poly(n, a + 2.0, b)) * (r.r2 * jp);
  q += jacobi_poly(n, a + 1.0, b) * (r.r1 * jp);
  q += jacobi_poly(n, a, b) * (r.r0 * MatrixPolynomial{j.j1, j.j2});
  return q;
}

inline MatrixPolynomial build_rodrigues(const Parameters& p, int n) {
  const MatrixPolynomial q = rodrigues_numerator(p, n);
  const ScalarPolynomial divisor{0.0, 1.0, -2.0, 1.0};  // t (1-t)^2
  MatrixPolynomial pn = factorial(n) * poly_divide_scalar(q, divisor, kDivisionTolerance);
  detail::require_monic(pn, n, "build_rodrigues");
  return pn;
}

/// R_n^(n)(t) W(t)^{-1} evaluated directly at an interior t.
inline CMat2 rodrigues_value(const Parameters& p, int n, double t) {
  const RodriguesData r = rodrigues_data(p, n, true);
  const WeightMatrix w = weight(p, 0);
  const CMat2 rn = detail::power_weighted_derivative(r.polynomial(), n + p.alpha(), n + p.beta(),
                                                     p.alpha(), p.beta(), n, t);
  return rn * inverse(w.polynomial_part(t));
}

/**
 * P_n from values of R_n^(n) W^{-1} at 2n+4 Chebyshev points on (0.05, 0.95),
 * via the discrete Chebyshev transform truncated at degree n.
 */
inline MatrixPolynomial rodrigues_by_interpolation(const Parameters& p, int n) {
  const int m = 2 * n + 4;
  const double lo = 0.05;
  const double hi = 0.95;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double pi = std::numbers::pi;
  std::vector<CMat2> vals(static_cast<std::size_t>(m));
  std::vector<double> xs(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    xs[static_cast<std::size_t>(j)] = std::cos(pi * (j + 0.5) / m);
    vals[static_cast<std::size_t>(j)] = rodrigues_value(p, n, mid + half * xs[static_cast<std::size_t>(j)]);
  }
  // T_k in t, with x = (t - mid)/half.
  const ScalarPolynomial x{-mid / half, 1.0 / half};
  ScalarPolynomial tkm1{1.0};
  ScalarPolynomial tk = x;
  MatrixPolynomial result;
  for (int k = 0; k <= n; ++k) {
    CMat2 ck;
    for (int j = 0; j < m; ++j) {
      ck += vals[static_cast<std::size_t>(j)] *
            std::cos(k * std::acos(xs[static_cast<std::size_t>(j)]));
    }
    ck = ck * ((k == 0 ? 1.0 : 2.0) / m);
    const ScalarPolynomial& basis = (k == 0) ? tkm1 : tk;
    result += MatrixPolynomial::scalar(basis) * ck;
    if (k >= 1) {
      ScalarPolynomial next = (2.0 * x) * tk + (-1.0) * tkm1;
      tkm1 = tk;
      tk = next;
    }
  }
  return result;
}

/**
 * ||P_n||^2 by parts:
 * (-1)^n n! B(a+n+1, b+n+1) [ (a+n+1)(a+n+2)/((a+b+2n+2)(a+b+2n+3)) R2
 *                             + (a+n+1)/(a+b+2n+2) R1 + R0 ].
 */
inline CMat2 norm_by_parts(const Parameters& p, int n) {
  const RodriguesData r = rodrigues_data(p, n, true);
  const double a = p.alpha();
  const double b = p.beta();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double s = a + b + 2.0 * n;
  const CMat2 bracket = r.r2 * ((a + n + 1.0) * (a + n + 2.0) / ((s + 2.0) * (s + 3.0))) +
                        r.r1 * ((a + n + 1.0) / (s + 2.0)) + r.r0;
  return bracket * (sign * factorial(n) * beta_function(a + n + 1.0, b + n + 1.0));
}

/**
 * Coefficient matrices C_{n,2}, C_{n,1}, C_{n,0} of
 * P_n Wt = n! (p_n^{(a,b)} C2 + p_{n+1}^{(a,b)} C1 + p_{n+2}^{(a,b)} C0), Jacobi at 1-2t.
 */
inline std::array<CMat2, 3> rodrigues_jacobi_expansion(const Parameters& p, int n) {
  const RodriguesData r = rodrigues_data(p, n, true);
  const double a = p.alpha();
  const double b = p.beta();
  const double v = p.v();
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  const double s = a + b + 2.0 * n;
  std::array<CMat2, 3> c;
  c[0] = CMat2::diag(r.c * (K2 + 2.0 * n + 4.0) / (K1 + 2.0 * n + 2.0),
                     r.d * (K1 + 2.0 * n + 4.0) / (K2 + 2.0 * n + 2.0)) *
         ((b + n + 1.0) * (a + n + 1.0) / ((s + 2.0) * (s + 3.0)));
  c[1] = CMat2{(a - b) * (K2 + 2.0 * n + 4.0) * r.c / ((s + 2.0) * (s + 4.0)),
               -r.c * p.kappa_v_mb() / (K1 + 2.0 * n + 2.0),
               r.d * p.kappa_mv_mb() / (K2 + 2.0 * n + 2.0),
               -(a - b) * (K1 + 2.0 * n + 4.0) * r.d / ((s + 2.0) * (s + 4.0))} *
         ((n + 1.0) / v);
  c[2] = CMat2::diag(r.c, r.d) * ((n + 1.0) * (n + 2.0) / ((s + 4.0) * (s + 3.0)));
  return c;
}

// ---------------------------------------------------------------------------
// Hypergeometric construction
// ---------------------------------------------------------------------------

/**
 * P_n^(k) from the matrix 2H1 series. With m = n-k and brackets
 *   [ ]_0 = I,  [ ]_{j+1} = (C^(k) + jI)^{-1} (j(j-1) I + j U^(k) + V + lambda I) [ ]_j,
 * the column for eigenvalue lambda is sum_{j<=m} [ ]_j t^j/j! m! [ ]_m^{-1} E11
 * (similarly mu with E22), and P_n^(k) is the adjoint of the sum.
 *
 * The series is cut at j = m: the factor producing [ ]_{m+1} kills the
 * selected column, and later brackets are left multiples of it.
 */
inline MatrixPolynomial build_hypergeometric(const Parameters& p, int k, int n) {
  detail::require_degree(n, k, "build_hypergeometric");
  const HypergeometricCoefficients h = hypergeometric_coefficients(p, k);
  const CMat2 lam = hypergeometric_eigenvalue(p, k, n);
  const int m = n - k;
  const CMat2 id = CMat2::identity();
  std::vector<CMat2> sum(static_cast<std::size_t>(m) + 1);
  for (int col = 0; col < 2; ++col) {
    const CMat2 vl = h.v + id * lam(col, col);
    std::vector<CMat2> br{id};
    for (int j = 0; j < m; ++j) {
      CMat2 inv;
      try {
        inv = inverse(h.c + id * static_cast<double>(j));
      } catch (const SingularMatrix&) {
        throw SingularBracket("build_hypergeometric: C + " + std::to_string(j) + "I is singular");
      }
      br.push_back(inv * (id * (j * (j - 1.0)) + h.u * static_cast<double>(j) + vl) * br.back());
    }
    CMat2 last;
    try {
      last = inverse(br.back());
    } catch (const SingularMatrix&) {
      throw SingularBracket("build_hypergeometric: bracket of index " + std::to_string(m) +
                            " is singular");
    }
    const CMat2 tail = last * CMat2::unit(col, col) * factorial(m);
    for (int j = 0; j <= m; ++j) {
      sum[static_cast<std::size_t>(j)] += br[static_cast<std::size_t>(j)] * tail * (1.0 / factorial(j));
    }
  }
  MatrixPolynomial pn = MatrixPolynomial(std::move(sum)).adjoint();
  detail::require_monic(pn, m, "build_hypergeometric");
  return pn;
}

// ---------------------------------------------------------------------------
// Orthonormal polynomials and Christoffel-Darboux
// ---------------------------------------------------------------------------

/// Principal square root of ||P_n||^2.
inline CMat2 norm_root(const CMat2& norm2) { return hermitian_sqrt(norm2); }

struct OrthonormalFamily {
  std::vector<MatrixPolynomial> polynomials;  // ||P_n||^{-1} P_n
  std::vector<CMat2> a_tilde;  // a_tilde[n] = ||P_{n-1}||^{-1} ||P_n||; a_tilde[0] unused (zero)
  std::vector<CMat2> b_tilde;  // ||P_n||^{-1} B_n ||P_n||
};

/// Orthonormal polynomials up to degree up_to, with one extra a_tilde entry.
inline OrthonormalFamily orthonormal_family(const Parameters& p, int up_to) {
  const MvopFamily f = build_recurrence(p, 0, up_to + 1);
  OrthonormalFamily o;
  std::vector<CMat2> roots;
  for (int n = 0; n <= up_to + 1; ++n) roots.push_back(norm_root(f.norm(n)));
  for (int n = 0; n <= up_to; ++n) {
    const CMat2 inv = inverse(roots[static_cast<std::size_t>(n)]);
    o.polynomials.push_back(inv * f.polynomial(n));
    o.b_tilde.push_back(inv * f.recurrence(n).b * roots[static_cast<std::size_t>(n)]);
  }
  o.a_tilde.push_back(CMat2{});
  for (int n = 1; n <= up_to + 1; ++n) {
    o.a_tilde.push_back(inverse(roots[static_cast<std::size_t>(n - 1)]) *
                        roots[static_cast<std::size_t>(n)]);
  }
  return o;
}

struct KernelPair {
  CMat2 lhs;
  CMat2 rhs;
};

namespace detail {

inline void require_distinct(double x, double y) {
  if (std::abs(x - y) < 1e-8) {
    throw DegenerateInput("christoffel_darboux: |x-y| < 1e-8 makes the quotient ill-conditioned");
  }
}

}  // namespace detail

/**
 * sum_{k<=n} Pt_k(y)^* Pt_k(x) against
 * [Pt_n(y)^* At_{n+1}^* Pt_{n+1}(x) - Pt_{n+1}(y)^* At_{n+1} Pt_n(x)] / (x-y).
 */
inline KernelPair christoffel_darboux(const Parameters& p, int n, double x, double y) {
  detail::require_distinct(x, y);
  const MvopFamily f = build_recurrence(p, 0, n + 1);
  std::vector<CMat2> roots;
  for (int j = 0; j <= n + 1; ++j) roots.push_back(norm_root(f.norm(j)));
  auto pt = [&](int j, double s) {
    return inverse(roots[static_cast<std::size_t>(j)]) * f.polynomial(j)(s);
  };
  KernelPair k;
  for (int j = 0; j <= n; ++j) k.lhs += adjoint(pt(j, y)) * pt(j, x);
  const CMat2 at = inverse(roots[static_cast<std::size_t>(n)]) * roots[static_cast<std::size_t>(n + 1)];
  k.rhs = (adjoint(pt(n, y)) * adjoint(at) * pt(n + 1, x) - adjoint(pt(n + 1, y)) * at * pt(n, x)) *
          (1.0 / (x - y));
  return k;
}

/**
 * sum_{k<=n} P_k(y)^* ||P_k||^{-2} P_k(x) against
 * [P_n(y)^* ||P_n||^{-2} P_{n+1}(x) - P_{n+1}(y)^* ||P_n||^{-2} P_n(x)] / (x-y).
 */
inline KernelPair christoffel_darboux_monic(const Parameters& p, int n, double x, double y) {
  detail::require_distinct(x, y);
  const MvopFamily f = build_recurrence(p, 0, n + 1);
  KernelPair k;
  for (int j = 0; j <= n; ++j) {
    k.lhs += adjoint(f.polynomial(j)(y)) * inverse(f.norm(j)) * f.polynomial(j)(x);
  }
  const CMat2 ni = inverse(f.norm(n));
  k.rhs = (adjoint(f.polynomial(n)(y)) * ni * f.polynomial(n + 1)(x) -
           adjoint(f.polynomial(n + 1)(y)) * ni * f.polynomial(n)(x)) *
          (1.0 / (x - y));
  return k;
}

// ---------------------------------------------------------------------------
// Derivative families and shift operators
// ---------------------------------------------------------------------------

/// P_n^(k) = (n-k)!/n! d^k/dt^k P_n.
inline MatrixPolynomial derivative_family(const Parameters& p, int k, int n) {
  detail::require_degree(n, k, "derivative_family");
  detail::require_level(p, k, "derivative_family");
  const MvopFamily f = build_recurrence(p, 0, n);
  MatrixPolynomial d = (factorial(n - k) / factorial(n)) * f.polynomial(n).derivative(k);
  detail::require_monic(d, n - k, "derivative_family");
  return d;
}

/// The two sub-leading coefficients of P_n^(k), of t^{n-k-1} and t^{n-k-2}.
inline std::pair<CMat2, CMat2> subleading_coefficients(const Parameters& p, int k, int n) {
  detail::require_degree(n, k, "subleading_coefficients");
  detail::require_level(p, k, "subleading_coefficients");
  const double a = p.alpha();
  const double b = p.beta();
  const double v = p.v();
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  const double K3 = p.kappa_v_mb();
  const double K4 = p.kappa_mv_mb();
  const double m = n - k;
  const double s = a + b + 2.0 * n;
  const double e1 = K1 + 2.0 * n + 2.0;
  const double e2 = K2 + 2.0 * n + 2.0;
  const CMat2 c1 = CMat2{-((a + n) * v - K4) / (s + 2.0), K4 / e1, -K3 / e2,
                         -((a + n) * v + K3) / (s + 2.0)} *
                   (m / v);
  const CMat2 c2 =
      (CMat2::diag((K1 + 2.0 * n) / e1, (K2 + 2.0 * n) / e2) * ((a + n) / (2.0 * (s + 1.0))) +
       CMat2::diag(1.0 / e1, 1.0 / e2) * ((n + b + 1.0) / (s + 1.0)) +
       CMat2{-(a - b) / e1, -K4 / e1, K3 / e2, (a - b) / e2} * (1.0 / v)) *
      (m * (m - 1.0) * (a + n + 1.0) / (s + 2.0));
  return {c1, c2};
}

/**
 * C_n^k = (-1)^n (a+b+3+2k+n)_n
 *   diag((k_{v,b}+2(k+1+n))/(k_{v,b}+2(k+1)), (k_{-v,b}+2(k+1+n))/(k_{-v,b}+2(k+1))).
 */
inline CMat2 shift_scale(const Parameters& p, int k, int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double ph = pochhammer(p.alpha() + p.beta() + 3.0 + 2.0 * k + n, n);
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  return CMat2::diag((K1 + 2.0 * (k + 1 + n)) / (K1 + 2.0 * (k + 1)),
                     (K2 + 2.0 * (k + 1 + n)) / (K2 + 2.0 * (k + 1))) *
         (sign * ph);
}

/// I eta^(k+n-1) ... eta^(k), applied left to right starting from the highest level.
inline MatrixPolynomial raising_chain(const Parameters& p, int k, int n) {
  MatrixPolynomial q = MatrixPolynomial::constant(CMat2::identity());
  for (int j = k + n - 1; j >= k; --j) q = apply(q, shift_operator(p, j));
  return q;
}

/// P_{n+k}^(k) = (C_n^k)^{-1} I eta^(k+n-1) ... eta^(k).
inline MatrixPolynomial shift_rodrigues(const Parameters& p, int k, int n) {
  if (n < 1) throw InvalidParameter("shift_rodrigues: need n >= 1");
  detail::require_level(p, k, "shift_rodrigues");
  detail::require_level(p, k + n, "shift_rodrigues");
  CMat2 inv;
  try {
    inv = inverse(shift_scale(p, k, n));
  } catch (const SingularMatrix&) {
    throw SingularScale("shift_rodrigues: scale matrix is singular");
  }
  MatrixPolynomial q = inv * raising_chain(p, k, n);
  detail::require_monic(q, n, "shift_rodrigues");
  return q;
}

/// (C_n^k)^{-1} (d^n/dt^n W^(k+n))(t) (W^(k)(t))^{-1} at an interior t.
inline CMat2 weight_derivative_rodrigues_value(const Parameters& p, int k, int n, double t) {
  const WeightMatrix top = weight(p, k + n);
  const WeightMatrix base = weight(p, k);
  const CMat2 dn = detail::power_weighted_derivative(top.polynomial_part, top.exponents[0],
                                                     top.exponents[1], base.exponents[0],
                                                     base.exponents[1], n, t);
  return inverse(shift_scale(p, k, n)) * dn * inverse(base.polynomial_part(t));
}

}  // namespace mvop

#endif  // MVOP_FAMILIES_HPP_
