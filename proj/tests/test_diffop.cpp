#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace mvop;
using testing_support::parameter_sets;
using testing_support::random_polynomial;

namespace {

const CMat2 kI = CMat2::identity();

// P D evaluated at t from derivatives approximated by finite differences.
CMat2 apply_by_differences(const MatrixPolynomial& p, const RightDifferentialOperator& op, double t) {
  CMat2 r = p(t) * op.coefficient(0)(t);
  r += testing_support::finite_difference(p, t, 1, 1e-5) * op.coefficient(1)(t);
  r += testing_support::finite_difference(p, t, 2, 1e-4) * op.coefficient(2)(t);
  return r;
}

}  // namespace

TEST(Apply, ZerothOrderTerm) {
  const CMat2 v{1.0, 2.0, 3.0, 4.0};
  const RightDifferentialOperator op({MatrixPolynomial::constant(v)});
  EXPECT_EQ(apply(MatrixPolynomial::constant(kI), op).coeff(0), v);
}

TEST(Apply, IdentityOnHypergeometricOperator) {
  const Parameters p = validate_parameters(0.0, 0.0, 1.0);
  const MatrixPolynomial r = apply(MatrixPolynomial::constant(kI), hypergeometric_operator(p));
  EXPECT_LT(max_abs_diff(r, MatrixPolynomial::constant(CMat2::diag(-1.0, 0.0))), 1e-15);
  EXPECT_LT(max_abs_diff(hypergeometric_eigenvalue(p, 0, 0), CMat2::diag(-1.0, 0.0)), 1e-15);
}

TEST(Apply, AgreesWithFiniteDifferences) {
  std::mt19937 rng(21);
  const RightDifferentialOperator op({random_polynomial(rng, 1), random_polynomial(rng, 2),
                                      random_polynomial(rng, 2)});
  const MatrixPolynomial p = random_polynomial(rng, 4);
  const MatrixPolynomial r = apply(p, op);
  for (double t : {0.15, 0.5, 0.85}) EXPECT_LT(max_abs_diff(r(t), apply_by_differences(p, op, t)), 1e-6);
}

TEST(Compose, IdentityAndAssociativityOnPolynomials) {
  std::mt19937 rng(22);
  const RightDifferentialOperator a({random_polynomial(rng, 1), random_polynomial(rng, 1)});
  const RightDifferentialOperator b({random_polynomial(rng, 0), random_polynomial(rng, 1),
                                     random_polynomial(rng, 2)});
  EXPECT_LT(max_abs_diff(compose(RightDifferentialOperator::identity(), a), a), 1e-15);
  const MatrixPolynomial p = random_polynomial(rng, 5);
  // Right action: P (A B) = (P A) B.
  EXPECT_LT(max_abs_diff(apply(p, compose(a, b)), apply(apply(p, a), b)), 1e-11);
}

TEST(HypergeometricOperator, LevelShiftIdentity) {
  const RightDifferentialOperator a = hypergeometric_operator(validate_parameters(0.0, 0.0, 1.0), 1);
  const RightDifferentialOperator b = hypergeometric_operator(validate_parameters(1.0, 1.0, 1.0), 0);
  EXPECT_LT(max_abs_diff(a, b), 1e-15);
}

TEST(HypergeometricOperator, EigenvalueTable) {
  const Parameters p = validate_parameters(0.0, 0.0, 1.0);
  EXPECT_LT(max_abs_diff(hypergeometric_eigenvalue(p, 0, 1), CMat2::diag(-5.0, -4.0)), 1e-15);
  EXPECT_LT(max_abs_diff(hypergeometric_eigenvalue(p, 0, 2), CMat2::diag(-11.0, -10.0)), 1e-15);
  EXPECT_GE(eigenvalue_separation(p, 0, 12), 0.5);
}

TEST(IsSymmetric, HypergeometricOperator) {
  for (const Parameters& p : parameter_sets()) {
    const SymmetryResult s = is_symmetric(hypergeometric_operator(p), weight(p), 8, 1e-10);
    EXPECT_TRUE(s.symmetric);
    EXPECT_LT(s.max_residual, 1e-10);
    EXPECT_LT(symmetry_equations_residual(hypergeometric_operator(p), weight(p), 0.37), 1e-12);
  }
}

TEST(IsSymmetric, BoundaryTermsVanish) {
  const Parameters p = validate_parameters(0.5, 0.5, 1.5);
  EXPECT_LT(boundary_terms(hypergeometric_operator(p), weight(p)), 100 * 1e-6);
}

TEST(IsSymmetric, RejectsBadInput) {
  const Parameters p = validate_parameters(0.0, 0.0, 1.0);
  const RightDifferentialOperator third({MatrixPolynomial{}, MatrixPolynomial{}, MatrixPolynomial{},
                                         MatrixPolynomial::constant(kI)});
  EXPECT_THROW(is_symmetric(third, weight(p), 3, 1e-10), InvalidParameter);
  EXPECT_THROW(is_symmetric(hypergeometric_operator(p), weight(p), 8, 1e-10, 2), InvalidParameter);
}

TEST(ShiftOperator, ActionOnIdentity) {
  for (const Parameters& p : parameter_sets()) {
    for (int k = 0; k <= 2; ++k) {
      const PearsonData d = pearson_data(p, k);
      const MatrixPolynomial r = apply(MatrixPolynomial::constant(kI), shift_operator(p, k));
      EXPECT_LT(max_abs_diff(r, d.psi.adjoint()), 1e-15);
      EXPECT_EQ(r.degree(), 1);
      EXPECT_LT(max_abs_diff(r.leading(), adjoint(d.b1)), 1e-15);
    }
  }
}

TEST(ShiftOperator, QuotientForm) {
  // Q eta = (Q W^(k+1))' (W^(k))^{-1}, on full weights.
  std::mt19937 rng(23);
  for (const Parameters& p : parameter_sets()) {
    const int k = 1;
    const WeightMatrix w0 = weight(p, k);
    const WeightMatrix w1 = weight(p, k + 1);
    const MatrixPolynomial q = random_polynomial(rng, 3);
    const MatrixPolynomial qe = apply(q, shift_operator(p, k));
    auto f = [&](double t) { return q(t) * w1(t); };
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double h = 1e-5;
      const CMat2 fd = (f(t + h) - f(t - h)) * (1.0 / (2.0 * h)) * inverse(w0(t));
      EXPECT_LT(max_abs_diff(qe(t), fd), 1e-6 * std::max(1.0, max_abs(fd)));
    }
  }
}

TEST(ShiftOperator, AdjointForSimplePair) {
  const Parameters p = validate_parameters(0.0, 0.0, 1.0);
  const auto [d, eta] = lowering_raising_pair(p, 0);
  const MatrixPolynomial pt = MatrixPolynomial::monomial(1, kI);
  const MatrixPolynomial q = MatrixPolynomial::constant(kI);
  const WeightMatrix w1 = weight(p, 1);
  const CMat2 lhs = inner_product(apply(pt, d), q, w1);
  const CMat2 oracle = testing_support::integrate([&](double t) { return w1(t); }, 0.0, 1.0, 1e-13);
  EXPECT_LT(max_abs_diff(lhs, oracle), 1e-10);
  const CMat2 rhs = -inner_product(pt, apply(q, eta), weight(p, 0));
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-10);
  EXPECT_TRUE(apply(q, d).is_zero());
}

TEST(ShiftOperator, AdjointRandomPairs) {
  std::mt19937 rng(24);
  for (const Parameters& p : parameter_sets()) {
    const auto [d, eta] = lowering_raising_pair(p, 0);
    for (int i = 0; i < 5; ++i) {
      const MatrixPolynomial a = random_polynomial(rng, 4);
      const MatrixPolynomial b = random_polynomial(rng, 4);
      const CMat2 lhs = inner_product(apply(a, d), b, weight(p, 1));
      const CMat2 rhs = -inner_product(a, apply(b, eta), weight(p, 0));
      EXPECT_LT(max_abs_diff(lhs, rhs), 1e-10 * std::max(1.0, max_abs(lhs)));
    }
  }
}

TEST(EOperator, SymmetryAndDarboux) {
  const Parameters p = validate_parameters(0.0, 0.0, 1.0);
  EXPECT_TRUE(is_symmetric(e_operator(p, 0), weight(p, 0), 6, 1e-9).symmetric);
  const RightDifferentialOperator dt = darboux_operator(p, 0);
  const SymmetryResult s0 = is_symmetric(dt, weight(p, 0), 5, 1e-9);
  EXPECT_FALSE(s0.symmetric);
  EXPECT_GT(s0.max_residual, 1e-6);
  EXPECT_TRUE(is_symmetric(dt, weight(p, 1), 5, 1e-9).symmetric);
  EXPECT_TRUE(e_operator_eigenvalue(p, 0, 0).is_zero());
}

TEST(Algebra, ElementExamples) {
  for (const Parameters& p : parameter_sets()) {
    const RightDifferentialOperator id = algebra_operator(p, AlgebraElement{0.0, 0.0, 0.0, 0.0, 1.0});
    EXPECT_LT(max_abs_diff(id, RightDifferentialOperator::identity()), 1e-15);
    const double k1 = p.kappa_v_b();
    const double k2 = p.kappa_mv_b();
    const AlgebraCoefficients d1 = algebra_coefficients(p, AlgebraElement{1.0, 0.0, 0.0, 0.0, 0.0});
    EXPECT_LT(max_abs_diff(d1.c0, CMat2::diag((k2 + 4) * (k1 + 2) / 4, 0.0)), 1e-13);
    const AlgebraCoefficients d2 = algebra_coefficients(p, AlgebraElement{0.0, 0.0, 0.0, 1.0, 0.0});
    EXPECT_LT(max_abs_diff(d2.c0, CMat2::diag(-(k1 + 4) * (k2 + 2) / 4, 0.0)), 1e-13);
  }
}

TEST(Algebra, BasisEigenvalueDisplays) {
  for (const Parameters& p : parameter_sets()) {
    const AlgebraBasis b = algebra_basis(p);
    for (int n = 0; n <= 8; ++n) {
      const CMat2 l1 = algebra_eigenvalue(p, b.elements[0], n);
      const double e11 = (p.kappa_v_b() + 2.0 * (n + 1)) * (p.kappa_mv_b() + 2.0 * (n + 2)) / 4.0;
      EXPECT_LT(max_abs_diff(l1, CMat2::diag(e11, 0.0)), 1e-12 * std::max(1.0, e11));
      const CMat2 l2 = algebra_eigenvalue(p, b.elements[1], n);
      EXPECT_NEAR(l2(1, 1).real(), n * (n + p.alpha() + p.beta() + 3.0), 1e-11);
    }
    const RightDifferentialOperator sum = Complex(-1.0) * b.operators[0] - b.operators[1];
    EXPECT_LT(max_abs_diff(sum, hypergeometric_operator(p)), 1e-11);
    for (int j = 0; j < 4; ++j) {
      EXPECT_TRUE(satisfies_symmetry_condition(p, b.elements[static_cast<std::size_t>(j)]));
      EXPECT_LT(is_symmetric(b.operators[static_cast<std::size_t>(j)], weight(p), 6, 1e-9).max_residual, 1e-9);
    }
  }
}

TEST(Algebra, AsymmetricElementFailsCondition) {
  const Parameters p = validate_parameters(1.0, 2.0, -2.5);
  const AlgebraElement x{0.0, 1.0, 1.0, 0.0, 0.0};
  EXPECT_FALSE(satisfies_symmetry_condition(p, x));
  EXPECT_FALSE(is_symmetric(algebra_operator(p, x), weight(p), 5, 1e-9).symmetric);
}
