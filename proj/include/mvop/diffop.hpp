#ifndef MVOP_DIFFOP_HPP_
#define MVOP_DIFFOP_HPP_

// Right-acting matrix differential operators D = sum_i d^i F_i(t), acting as
// P D = sum_i P^(i)(t) F_i(t).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "mvop/errors.hpp"
#include "mvop/jacobi.hpp"
#include "mvop/mat2.hpp"
#include "mvop/weights.hpp"

namespace mvop {

class RightDifferentialOperator {
 public:
  RightDifferentialOperator() = default;
  explicit RightDifferentialOperator(std::vector<MatrixPolynomial> f) : f_(std::move(f)) {
    while (!f_.empty() && f_.back().is_zero()) f_.pop_back();
  }

  static RightDifferentialOperator identity() {
    return RightDifferentialOperator({MatrixPolynomial::constant(CMat2::identity())});
  }
  static RightDifferentialOperator derivative() {
    return RightDifferentialOperator({MatrixPolynomial{}, MatrixPolynomial::constant(CMat2::identity())});
  }

  /// Highest i with F_i != 0, or -1 for the zero operator.
  int order() const { return static_cast<int>(f_.size()) - 1; }
  const std::vector<MatrixPolynomial>& coefficients() const { return f_; }
  MatrixPolynomial coefficient(int i) const {
    return (i >= 0 && i < static_cast<int>(f_.size())) ? f_[static_cast<std::size_t>(i)]
                                                       : MatrixPolynomial{};
  }

  /// max_i (deg F_i - i); P D has degree at most deg P plus this.
  int degree_excess() const {
    int e = 0;
    for (int i = 0; i <= order(); ++i) {
      if (!f_[static_cast<std::size_t>(i)].is_zero()) {
        e = std::max(e, f_[static_cast<std::size_t>(i)].degree() - i);
      }
    }
    return e;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& p : f_) m = std::max(m, p.max_abs());
    return m;
  }

  friend RightDifferentialOperator operator+(const RightDifferentialOperator& x,
                                             const RightDifferentialOperator& y) {
    std::vector<MatrixPolynomial> r(std::max(x.f_.size(), y.f_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = x.coefficient(static_cast<int>(i)) + y.coefficient(static_cast<int>(i));
    }
    return RightDifferentialOperator(std::move(r));
  }
  friend RightDifferentialOperator operator*(Complex s, const RightDifferentialOperator& x) {
    std::vector<MatrixPolynomial> r = x.f_;
    for (auto& p : r) p *= s;
    return RightDifferentialOperator(std::move(r));
  }
  friend RightDifferentialOperator operator-(const RightDifferentialOperator& x,
                                             const RightDifferentialOperator& y) {
    return x + Complex(-1.0) * y;
  }

 private:
  std::vector<MatrixPolynomial> f_;
};

/// Largest coefficient difference between two operators.
inline double max_abs_diff(const RightDifferentialOperator& x, const RightDifferentialOperator& y) {
  return (x - y).max_abs();
}

/// p D = sum_i p^(i) F_i.
inline MatrixPolynomial apply(const MatrixPolynomial& p, const RightDifferentialOperator& op) {
  MatrixPolynomial r;
  for (int i = 0; i <= op.order(); ++i) r += p.derivative(i) * op.coefficient(i);
  return r;
}

/**
 * Operator C with p C = (p A) B.
 *
 * (p A) B = sum_j d^j (sum_i p^(i) A_i) B_j
 *         = sum_{i,j} sum_{l<=j} binom(j,l) p^(i+l) A_i^(j-l) B_j.
 */
inline RightDifferentialOperator compose(const RightDifferentialOperator& first,
                                         const RightDifferentialOperator& second) {
  if (first.order() < 0 || second.order() < 0) return {};
  std::vector<MatrixPolynomial> c(static_cast<std::size_t>(first.order() + second.order() + 1));
  for (int j = 0; j <= second.order(); ++j) {
    const MatrixPolynomial& bj = second.coefficients()[static_cast<std::size_t>(j)];
    if (bj.is_zero()) continue;
    for (int i = 0; i <= first.order(); ++i) {
      const MatrixPolynomial& ai = first.coefficients()[static_cast<std::size_t>(i)];
      for (int l = 0; l <= j; ++l) {
        c[static_cast<std::size_t>(i + l)] += binomial(j, l) * (ai.derivative(j - l) * bj);
      }
    }
  }
  return RightDifferentialOperator(std::move(c));
}

// ---------------------------------------------------------------------------
// Hypergeometric operator D^(k) = d^2 t(1-t) + d (C^(k)* - t U^(k)) - V
// ---------------------------------------------------------------------------

struct HypergeometricCoefficients {
  CMat2 c;
  CMat2 u;
  CMat2 v;
};

/// C^(k), U^(k), V; equal to the level-0 values for (alpha+k, beta+k, v).
inline HypergeometricCoefficients hypergeometric_coefficients(const Parameters& p, int k = 0) {
  detail::require_level(p, k, "hypergeometric_coefficients");
  const double a = p.alpha() + k;
  const double v = p.v();
  const double k3 = p.kappa_v_mb();
  const double k4 = p.kappa_mv_mb();
  HypergeometricCoefficients h;
  h.c = CMat2{a + 1.0 - k4 / v, k3 / v, -k4 / v, a + 1.0 + k3 / v};
  h.u = CMat2::identity() * (p.alpha() + p.beta() + 4.0 + 2.0 * k);
  h.v = CMat2::diag(v, 0.0);
  return h;
}

inline RightDifferentialOperator hypergeometric_operator(const Parameters& p, int k = 0) {
  const HypergeometricCoefficients h = hypergeometric_coefficients(p, k);
  const CMat2 id = CMat2::identity();
  return RightDifferentialOperator({MatrixPolynomial::constant(-h.v),
                                    MatrixPolynomial{adjoint(h.c), -h.u},
                                    MatrixPolynomial{CMat2{}, id, -id}});
}

/// Lambda_n^(k) = diag(lambda, mu) for the degree n-k member of the level-k family.
inline CMat2 hypergeometric_eigenvalue(const Parameters& p, int k, int n) {
  const double m = n - k;
  const double mu = -m * (p.alpha() + p.beta() + 3.0 + n + k);
  return CMat2::diag(mu - p.v(), mu);
}

/// min |lambda_q^(k) - mu_l^(k)| over degrees q, l <= qmax.
inline double eigenvalue_separation(const Parameters& p, int k, int qmax) {
  double best = INFINITY;
  for (int q = 0; q <= qmax; ++q) {
    for (int l = 0; l <= qmax; ++l) {
      const double lam = hypergeometric_eigenvalue(p, k, q + k)(0, 0).real();
      const double mu = hypergeometric_eigenvalue(p, k, l + k)(1, 1).real();
      best = std::min(best, std::abs(lam - mu));
    }
  }
  return best;
}

/**
 * Eigenvalue read off the leading terms: for an operator with deg F_i <= i,
 * monic P_n gives P_n D = Lambda_n t^n + lower, with
 * Lambda_n = sum_i n(n-1)...(n-i+1) [t^i]F_i.
 */
inline CMat2 leading_eigenvalue(const RightDifferentialOperator& op, int n) {
  CMat2 r;
  for (int i = 0; i <= op.order() && i <= n; ++i) {
    double f = 1.0;
    for (int j = 0; j < i; ++j) f *= n - j;
    r += op.coefficient(i).coeff(i) * f;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symmetry
// ---------------------------------------------------------------------------

namespace detail {

// Quadrature for a weight, with the polynomial part evaluated at the nodes in
// extended precision.
struct WeightedRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
  std::vector<LMat2> w_at;
};

inline WeightedRule weighted_rule(const WeightMatrix& w, int m) {
  const QuadratureRule q = gauss_jacobi_rule(w.exponents[0], w.exponents[1], m);
  WeightedRule r;
  for (std::size_t i = 0; i < q.size(); ++i) {
    r.nodes.push_back(q.nodes[i]);
    r.weights.push_back(q.weights[i]);
    r.w_at.push_back(eval_extended(w.polynomial_part, q.nodes[i]));
  }
  return r;
}

inline CMat2 pairing(const std::vector<LMat2>& pv, const std::vector<LMat2>& qv,
                     const WeightedRule& r) {
  LMat2 acc{};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const LMat2 term = lmul(lmul(pv[i], r.w_at[i]), ladjoint(qv[i]));
    for (std::size_t e = 0; e < 4; ++e) acc[e] += r.weights[i] * term[e];
  }
  return to_cmat2(acc);
}

inline std::vector<LMat2> values_at(const MatrixPolynomial& p, const WeightedRule& r) {
  std::vector<LMat2> out;
  out.reserve(r.nodes.size());
  for (long double t : r.nodes) out.push_back(eval_extended(p, t));
  return out;
}

}  // namespace detail

/// <P, Q>_W = int_0^1 P(t) W(t) Q(t)^* dt by Gauss-Jacobi quadrature.
inline CMat2 inner_product(const MatrixPolynomial& p, const MatrixPolynomial& q,
                           const WeightMatrix& w) {
  if (p.is_zero() || q.is_zero()) return {};
  const int m = nodes_for_degree(p.degree() + q.degree() + w.polynomial_part.degree());
  const detail::WeightedRule r = detail::weighted_rule(w, m);
  return detail::pairing(detail::values_at(p, r), detail::values_at(q, r), r);
}

struct SymmetryResult {
  bool symmetric = false;
  double max_residual = 0.0;
};

/**
 * Tests <P D, Q> = <P, Q D> for P, Q ranging over t^i E_ab, i <= degree_budget.
 * The residual is |difference| / max(1, largest pairing magnitude).
 * `nodes` overrides the quadrature size; an override too small for exactness
 * is rejected.
 */
inline SymmetryResult is_symmetric(const RightDifferentialOperator& op, const WeightMatrix& w,
                                   int degree_budget, double tol, int nodes = 0) {
  if (op.order() > 2) throw InvalidParameter("is_symmetric: operator order exceeds 2");
  if (degree_budget < 0) throw InvalidParameter("is_symmetric: negative degree budget");
  const int deg = 2 * degree_budget + op.degree_excess() + w.polynomial_part.degree();
  const int need = nodes_for_degree(deg);
  if (nodes > 0 && 2 * nodes - 1 < deg) {
    throw InvalidParameter("is_symmetric: quadrature with " + std::to_string(nodes) +
                           " nodes cannot integrate degree " + std::to_string(deg));
  }
  const detail::WeightedRule r = detail::weighted_rule(w, nodes > 0 ? nodes : need);

  std::vector<std::vector<detail::LMat2>> plain;
  std::vector<std::vector<detail::LMat2>> acted;
  for (int i = 0; i <= degree_budget; ++i) {
    for (int u = 0; u < 4; ++u) {
      const MatrixPolynomial basis = MatrixPolynomial::monomial(i, CMat2::unit(u / 2, u % 2));
      plain.push_back(detail::values_at(basis, r));
      acted.push_back(detail::values_at(apply(basis, op), r));
    }
  }
  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t x = 0; x < plain.size(); ++x) {
    for (std::size_t y = 0; y < plain.size(); ++y) {
      const CMat2 lhs = detail::pairing(acted[x], plain[y], r);
      const CMat2 rhs = detail::pairing(plain[x], acted[y], r);
      worst = std::max(worst, max_abs(lhs - rhs));
      scale = std::max({scale, max_abs(lhs), max_abs(rhs)});
    }
  }
  SymmetryResult res;
  res.max_residual = worst / scale;
  res.symmetric = res.max_residual <= tol;
  return res;
}

/**
 * Residual of the three pointwise symmetry equations at interior t:
 *   F2 W = W F2*
 *   2 (F2 W)' - F1 W = W F1*
 *   (F2 W)'' - (F1 W)' + F0 W = W F0*
 * after dividing by t^a (1-t)^b. Returns the largest entry relative to the
 * size of the terms.
 */
inline double symmetry_equations_residual(const RightDifferentialOperator& op,
                                          const WeightMatrix& w, double t) {
  const double a = w.exponents[0];
  const double b = w.exponents[1];
  // s'/s and s''/s for s = t^a (1-t)^b
  const double l1 = a / t - b / (1.0 - t);
  const double l2 = l1 * l1 - a / (t * t) - b / ((1.0 - t) * (1.0 - t));
  const MatrixPolynomial& wt = w.polynomial_part;
  const MatrixPolynomial f2 = op.coefficient(2);
  const MatrixPolynomial f1 = op.coefficient(1);
  const MatrixPolynomial f0 = op.coefficient(0);
  const MatrixPolynomial g2 = f2 * wt;
  const MatrixPolynomial g1 = f1 * wt;
  // (s G)/s, (s G)'/s, (s G)''/s
  auto d1 = [&](const MatrixPolynomial& g) { return g(t) * l1 + g.derivative()(t); };
  auto d2 = [&](const MatrixPolynomial& g) {
    return g(t) * l2 + g.derivative()(t) * (2.0 * l1) + g.derivative(2)(t);
  };
  const CMat2 W = wt(t);
  const CMat2 e1 = g2(t) - W * adjoint(f2(t));
  const CMat2 e2 = d1(g2) * 2.0 - g1(t) - W * adjoint(f1(t));
  const CMat2 e3 = d2(g2) - d1(g1) + f0(t) * W - W * adjoint(f0(t));
  const double scale = std::max({1.0, max_abs(d2(g2)), max_abs(d1(g1)), max_abs(f0(t) * W),
                                 max_abs(d1(g2)), max_abs(g1(t))});
  return std::max({max_abs(e1), max_abs(e2), max_abs(e3)}) / scale;
}

/**
 * One-sided boundary sampling of F2 W and F1 W - (F2 W)' at t = eps and
 * 1 - eps; returns the largest entry magnitude.
 */
inline double boundary_terms(const RightDifferentialOperator& op, const WeightMatrix& w,
                             double eps = 1e-6) {
  const double a = w.exponents[0];
  const double b = w.exponents[1];
  const MatrixPolynomial g2 = op.coefficient(2) * w.polynomial_part;
  const MatrixPolynomial g1 = op.coefficient(1) * w.polynomial_part;
  double worst = 0.0;
  for (double t : {eps, 1.0 - eps}) {
    const double s = std::pow(t, a) * std::pow(1.0 - t, b);
    const double l1 = a / t - b / (1.0 - t);
    const CMat2 f2w = g2(t) * s;
    const CMat2 df2w = (g2(t) * l1 + g2.derivative()(t)) * s;
    worst = std::max({worst, max_abs(f2w), max_abs(g1(t) * s - df2w)});
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Shift operators
// ---------------------------------------------------------------------------

/// eta^(k) = d (Phi^(k))* + (Psi^(k))*, mapping level k+1 polynomials to level k.
inline RightDifferentialOperator shift_operator(const Parameters& p, int k) {
  const PearsonData d = pearson_data(p, k);
  return RightDifferentialOperator({d.psi.adjoint(), d.phi.adjoint()});
}

/// (d/dt, eta^(k)): <P', Q>_{k+1} = -<P, Q eta^(k)>_k.
inline std::pair<RightDifferentialOperator, RightDifferentialOperator> lowering_raising_pair(
    const Parameters& p, int k) {
  return {RightDifferentialOperator::derivative(), shift_operator(p, k)};
}

/// E^(k): first d/dt, then eta^(k).
inline RightDifferentialOperator e_operator(const Parameters& p, int k) {
  return compose(RightDifferentialOperator::derivative(), shift_operator(p, k));
}

/// Darboux transform of E^(k): first eta^(k), then d/dt.
inline RightDifferentialOperator darboux_operator(const Parameters& p, int k) {
  return compose(shift_operator(p, k), RightDifferentialOperator::derivative());
}

/// Lambda_n(E^(k)) = n(n+a+b+3+2k) A2^k, n the degree.
inline CMat2 e_operator_eigenvalue(const Parameters& p, int k, int n) {
  return pearson_data(p, k).a2 * (n * (n + p.alpha() + p.beta() + 3.0 + 2.0 * k));
}

// ---------------------------------------------------------------------------
// Order <= 2 operators in the algebra
// ---------------------------------------------------------------------------

/// Coordinates (a, b, c, d, e); the leading matrix is [[a, c], [b, d]].
struct AlgebraElement {
  Complex a;
  Complex b;
  Complex c;
  Complex d;
  Complex e;
};

/// a, d, e real and b (k_{v,b}+2)/k_{v,-b} = -conj(c) (k_{-v,b}+2)/k_{-v,-b}.
inline bool satisfies_symmetry_condition(const Parameters& p, const AlgebraElement& x,
                                         double tol = 1e-12) {
  auto real = [&](Complex z) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); };
  if (!real(x.a) || !real(x.d) || !real(x.e)) return false;
  const Complex lhs = x.b * (p.kappa_v_b() + 2.0) / p.kappa_v_mb();
  const Complex rhs = -std::conj(x.c) * (p.kappa_mv_b() + 2.0) / p.kappa_mv_mb();
  return std::abs(lhs - rhs) <= tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// F2 = A2 t^2 + A1 t + A0, F1 = B1 t + B0, F0 = C0.
struct AlgebraCoefficients {
  CMat2 a2;
  CMat2 a1;
  CMat2 a0;
  CMat2 b1;
  CMat2 b0;
  CMat2 c0;
};

inline AlgebraCoefficients algebra_coefficients(const Parameters& p, const AlgebraElement& x) {
  detail::require_level(p, 0, "algebra_coefficients");
  const double al = p.alpha();
  const double be = p.beta();
  const double v = p.v();
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  const double K3 = p.kappa_v_mb();
  const double K4 = p.kappa_mv_mb();
  const Complex a = x.a;
  const Complex b = x.b;
  const Complex c = x.c;
  const Complex d = x.d;
  AlgebraCoefficients r;
  r.a2 = CMat2{a, c, b, d};
  r.a1 = (CMat2{-2.0 * v * a, (a - d) * K4, (a - d) * K3, -2.0 * v * d} +
          b * K4 * CMat2{-1.0, 0.0, 2.0, 1.0} + c * K3 * CMat2{-1.0, -2.0, 0.0, 1.0}) *
         (1.0 / (2.0 * v));
  r.a0 = CMat2{-1.0, -1.0, 1.0, 1.0} * (((a - d) * K3 * K4 + b * K4 * K4 - c * K3 * K3) / (4.0 * v * v));
  r.b1 = CMat2{a * (al + be + 4.0), (K2 + 4.0) * c, (K1 + 4.0) * b, (al + be + 4.0) * d};
  r.b0 = (a * CMat2{-4.0 * ((al + 1.0) * v - K4), K4 * (K2 + 6.0), K3 * (K1 + 2.0), 0.0} +
          b * K4 * CMat2{-(K1 + 2.0), 0.0, 2.0 * (K1 + 4.0), K1 + 6.0} +
          c * K3 * CMat2{-(K2 + 6.0), -2.0 * (K2 + 4.0), 0.0, K2 + 2.0} +
          d * CMat2{0.0, -K4 * (K2 + 2.0), -K3 * (K1 + 6.0), -4.0 * ((al + 1.0) * v + K3)}) *
         (1.0 / (4.0 * v));
  r.c0 = CMat2{a * (K2 + 4.0) / (K1 + 4.0) - d * (K2 + 2.0) / (K1 + 2.0),
               c * (K2 + 4.0) * (K2 + 2.0) / ((K1 + 4.0) * (K1 + 2.0)), b, 0.0} *
             (0.25 * (K1 + 4.0) * (K1 + 2.0)) +
         CMat2::identity() * x.e;
  return r;
}

inline RightDifferentialOperator algebra_operator(const Parameters& p, const AlgebraElement& x) {
  const AlgebraCoefficients r = algebra_coefficients(p, x);
  return RightDifferentialOperator({MatrixPolynomial::constant(r.c0), MatrixPolynomial{r.b0, r.b1},
                                    MatrixPolynomial{r.a0, r.a1, r.a2}});
}

/// Lambda_n = n(n-1) A2 + n B1 + C0.
inline CMat2 algebra_eigenvalue(const Parameters& p, const AlgebraElement& x, int n) {
  const AlgebraCoefficients r = algebra_coefficients(p, x);
  return r.a2 * (n * (n - 1.0)) + r.b1 * static_cast<double>(n) + r.c0;
}

/// D1..D4 and I. D3 and D4 differ by a complex rotation of (b, c).
struct AlgebraBasis {
  std::array<AlgebraElement, 5> elements;
  std::array<RightDifferentialOperator, 5> operators;
};

/// b3 = -k_{v,-b}(k_{-v,b}+2)/(k_{-v,-b}(k_{v,b}+2)).
inline double algebra_b3(const Parameters& p) {
  return -p.kappa_v_mb() * (p.kappa_mv_b() + 2.0) / (p.kappa_mv_mb() * (p.kappa_v_b() + 2.0));
}

inline AlgebraBasis algebra_basis(const Parameters& p) {
  const double b3 = algebra_b3(p);
  const Complex i(0.0, 1.0);
  AlgebraBasis basis;
  basis.elements = {AlgebraElement{1.0, 0.0, 0.0, 0.0, 0.0}, AlgebraElement{0.0, 0.0, 0.0, 1.0, 0.0},
                    AlgebraElement{0.0, b3, 1.0, 0.0, 0.0}, AlgebraElement{0.0, -i * b3, i, 0.0, 0.0},
                    AlgebraElement{0.0, 0.0, 0.0, 0.0, 1.0}};
  for (std::size_t j = 0; j < 5; ++j) basis.operators[j] = algebra_operator(p, basis.elements[j]);
  return basis;
}

}  // namespace mvop

#endif  // MVOP_DIFFOP_HPP_
