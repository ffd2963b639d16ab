#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace mvop;
using testing_support::pairing_scale;
using testing_support::parameter_sets;

namespace {

const CMat2 kI = CMat2::identity();

Parameters unit_v() { return validate_parameters(0.0, 0.0, 1.0); }

MatrixPolynomial one() { return MatrixPolynomial::constant(kI); }

// <P,Q> at alpha = beta = 0 by Simpson; the weight is a polynomial there.
CMat2 simpson_pairing(const MatrixPolynomial& p, const MatrixPolynomial& q, const WeightMatrix& w) {
  return testing_support::integrate([&](double t) { return p(t) * w.polynomial_at(t) * adjoint(q(t)); },
                                    0.0, 1.0, 1e-14);
}

}  // namespace

TEST(Rodrigues, MonicConstantsAtUnitV) {
  const RodriguesData r0 = rodrigues_data(unit_v(), 0, true);
  EXPECT_NEAR(std::abs(r0.c - 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r0.d - 1.0), 0.0, 1e-15);
  const RodriguesData r1 = rodrigues_data(unit_v(), 1, true);
  EXPECT_NEAR(std::abs(r1.c + 0.75), 0.0, 1e-15);
  const RodriguesData raw = rodrigues_data(unit_v(), 3, false);
  EXPECT_EQ(raw.c, Complex(1.0));
  EXPECT_EQ(raw.d, Complex(1.0));
}

TEST(Rodrigues, DegreeZeroIsIdentity) {
  for (const Parameters& p : parameter_sets()) EXPECT_LT(max_abs_diff(build_rodrigues(p, 0), one()), 1e-13);
}

TEST(Rodrigues, DegreeOneMatchesQuadratureB0) {
  const Parameters p = unit_v();
  const WeightMatrix w = weight(p);
  const MatrixPolynomial t = MatrixPolynomial::monomial(1, kI);
  const CMat2 b0 = simpson_pairing(t, one(), w) * inverse(simpson_pairing(one(), one(), w));
  EXPECT_LT(max_abs_diff(b0, CMat2{0.5, 0.2, 1.0 / 3.0, 0.5}), 1e-12);
  const MatrixPolynomial expected = t - MatrixPolynomial::constant(b0);
  EXPECT_LT(max_abs_diff(build_rodrigues(p, 1), expected), 1e-12);
}

TEST(Rodrigues, DegreeFiveOrthogonal) {
  for (const Parameters& p : parameter_sets()) {
    const WeightMatrix w = weight(p);
    const MatrixPolynomial p5 = build_rodrigues(p, 5);
    for (int m = 0; m < 5; ++m) {
      const MatrixPolynomial pm = build_rodrigues(p, m);
      EXPECT_LT(max_abs(inner_product(p5, pm, w)), 1e-10 * pairing_scale(p5, pm, w));
    }
  }
}

TEST(Rodrigues, SimpsonOrthogonalityAtUnitV) {
  const WeightMatrix w = weight(unit_v());
  const MatrixPolynomial p4 = build_rodrigues(unit_v(), 4);
  for (int m = 0; m < 4; ++m) {
    EXPECT_LT(max_abs(simpson_pairing(p4, build_rodrigues(unit_v(), m), w)), 1e-10);
  }
}

TEST(Rodrigues, InterpolationRoute) {
  for (const Parameters& p : parameter_sets()) {
    for (int n : {2, 6, 10}) {
      EXPECT_LT(relative_diff(rodrigues_by_interpolation(p, n), build_rodrigues(p, n)), 1e-8);
    }
  }
}

TEST(Hypergeometric, MatchesRodrigues) {
  for (const Parameters& p : parameter_sets()) {
    EXPECT_LT(max_abs_diff(build_hypergeometric(p, 0, 0), one()), 1e-15);
    EXPECT_LT(max_abs_diff(build_hypergeometric(p, 0, 1), build_rodrigues(p, 1)), 1e-10);
    for (int n = 2; n <= 12; ++n) {
      EXPECT_LT(relative_diff(build_hypergeometric(p, 0, n), build_rodrigues(p, n)), 1e-8);
    }
    EXPECT_LT(max_abs_diff(build_hypergeometric(p, 2, 2), one()), 1e-15);
  }
}

TEST(Hypergeometric, RejectsDegreeBelowLevel) {
  EXPECT_THROW(build_hypergeometric(unit_v(), 2, 1), InvalidParameter);
}

TEST(Recurrence, ExampleCoefficients) {
  const RecurrenceCoefficients r0 = recurrence_coefficients(unit_v(), 0, 0);
  EXPECT_LT(max_abs_diff(r0.b, CMat2{0.5, 0.2, 1.0 / 3.0, 0.5}), 1e-14);
  const RecurrenceCoefficients r1 = recurrence_coefficients(unit_v(), 0, 1);
  EXPECT_LT(max_abs_diff(r1.a, CMat2::diag(1.0 / 20.0, 7.0 / 300.0)), 1e-14);
}

TEST(Recurrence, A1FromQuadratureNorms) {
  const WeightMatrix w = weight(unit_v());
  const MatrixPolynomial p1 = build_rodrigues(unit_v(), 1);
  const CMat2 a1 = simpson_pairing(p1, p1, w) * inverse(simpson_pairing(one(), one(), w));
  EXPECT_LT(max_abs_diff(a1, CMat2::diag(1.0 / 20.0, 7.0 / 300.0)), 1e-12);
}

TEST(Recurrence, ANonsingular) {
  for (const Parameters& p : parameter_sets()) {
    for (int d = 1; d <= 12; ++d) {
      const CMat2 a = recurrence_coefficients(p, 0, d).a;
      EXPECT_GT(std::abs(det(a)), 1e-12 * max_abs(a) * max_abs(a));
    }
  }
}

TEST(Recurrence, MatchesRodrigues) {
  for (const Parameters& p : parameter_sets()) {
    const MvopFamily f = build_recurrence(p, 0, 12);
    EXPECT_EQ(f.max_degree(), 12);
    for (int n = 0; n <= 12; ++n) EXPECT_LT(relative_diff(f.polynomial(n), build_rodrigues(p, n)), 1e-8);
  }
}

TEST(Norms, ClosedFormExamples) {
  EXPECT_LT(max_abs_diff(norm_matrix(unit_v(), 0), CMat2::diag(0.5, 5.0 / 6.0)), 1e-15);
  const CMat2 g = inner_product(one(), one(), weight(unit_v()));
  EXPECT_LT(max_abs_diff(g, CMat2::diag(0.5, 5.0 / 6.0)), 1e-14);
  for (const Parameters& p : parameter_sets()) {
    for (int n = 0; n <= 10; ++n) {
      const CMat2 nn = norm_matrix(p, n);
      EXPECT_EQ(nn(0, 1), Complex(0.0));
      EXPECT_EQ(nn(1, 0), Complex(0.0));
      EXPECT_TRUE(is_hermitian_positive_definite(nn));
    }
  }
}

TEST(Norms, MatchQuadratureAndByParts) {
  for (const Parameters& p : parameter_sets()) {
    const WeightMatrix w = weight(p);
    for (int n = 0; n <= 10; ++n) {
      const MatrixPolynomial pn = build_rodrigues(p, n);
      const CMat2 nn = norm_matrix(p, n);
      EXPECT_LT(max_abs_diff(inner_product(pn, pn, w), nn), 1e-10 * max_abs(nn));
      EXPECT_LT(max_abs_diff(norm_by_parts(p, n), nn), 1e-11 * max_abs(nn));
    }
  }
}

TEST(Norms, SimpsonAtUnitV) {
  const WeightMatrix w = weight(unit_v());
  for (int n = 0; n <= 4; ++n) {
    const MatrixPolynomial pn = build_rodrigues(unit_v(), n);
    const CMat2 nn = norm_matrix(unit_v(), n);
    EXPECT_LT(max_abs_diff(simpson_pairing(pn, pn, w), nn), 1e-10 * max_abs(nn));
  }
}

TEST(InnerProduct, HermitianForm) {
  std::mt19937 rng(31);
  for (const Parameters& p : parameter_sets()) {
    const MatrixPolynomial a = testing_support::random_polynomial(rng, 4);
    const MatrixPolynomial b = testing_support::random_polynomial(rng, 3);
    const WeightMatrix w = weight(p);
    EXPECT_LT(max_abs_diff(inner_product(a, b, w), adjoint(inner_product(b, a, w))), 1e-12);
    const MatrixPolynomial p2 = build_rodrigues(p, 2);
    const MatrixPolynomial p3 = build_rodrigues(p, 3);
    EXPECT_LT(max_abs(inner_product(p2, p3, w)), 1e-10 * pairing_scale(p2, p3, w));
  }
}

TEST(Orthogonality, FullGrid) {
  for (const Parameters& p : parameter_sets()) {
    const WeightMatrix w = weight(p);
    const MvopFamily f = build_recurrence(p, 0, 10);
    for (int n = 1; n <= 10; ++n) {
      for (int m = 0; m < n; ++m) {
        const CMat2 g = inner_product(f.polynomial(n), f.polynomial(m), w);
        EXPECT_LT(max_abs(g), 1e-10 * pairing_scale(f.polynomial(n), f.polynomial(m), w));
      }
    }
  }
}

TEST(Eigenfunctions, LevelZeroAndShifted) {
  for (const Parameters& p : parameter_sets()) {
    for (int k = 0; k <= 2; ++k) {
      const RightDifferentialOperator d = hypergeometric_operator(p, k);
      for (int n = k; n <= k + 10; ++n) {
        const MatrixPolynomial pn = build_hypergeometric(p, k, n);
        const MatrixPolynomial r = apply(pn, d) - hypergeometric_eigenvalue(p, k, n) * pn;
        EXPECT_LT(r.max_abs(), 1e-9 * std::max(1.0, pn.max_abs()));
      }
    }
  }
}

TEST(Orthonormal, ExamplesAndGram) {
  const OrthonormalFamily o0 = orthonormal_family(unit_v(), 0);
  EXPECT_LT(max_abs_diff(o0.polynomials[0], MatrixPolynomial::constant(
                                                CMat2::diag(std::sqrt(2.0), std::sqrt(6.0 / 5.0)))),
            1e-14);
  for (const Parameters& p : parameter_sets()) {
    const OrthonormalFamily o = orthonormal_family(p, 8);
    const WeightMatrix w = weight(p);
    for (int n = 0; n <= 8; ++n) {
      const MatrixPolynomial& q = o.polynomials[static_cast<std::size_t>(n)];
      EXPECT_LT(max_abs_diff(inner_product(q, q, w), kI), 1e-10);
      const CMat2& b = o.b_tilde[static_cast<std::size_t>(n)];
      EXPECT_LT(max_abs_diff(b, adjoint(b)), 1e-12 * std::max(1.0, max_abs(b)));
    }
  }
}

TEST(ChristoffelDarboux, Examples) {
  const KernelPair k0 = christoffel_darboux(unit_v(), 0, 0.2, 0.6);
  EXPECT_LT(max_abs_diff(k0.lhs, inverse(norm_matrix(unit_v(), 0))), 1e-14);
  EXPECT_LT(max_abs_diff(k0.lhs, k0.rhs), 1e-12);
  const KernelPair k5 = christoffel_darboux(unit_v(), 5, 0.3, 0.7);
  EXPECT_LT(max_abs_diff(k5.lhs, k5.rhs), 1e-9 * max_abs(k5.lhs));
  const KernelPair m5 = christoffel_darboux_monic(unit_v(), 5, 0.3, 0.7);
  EXPECT_LT(max_abs_diff(m5.lhs, m5.rhs), 1e-9 * max_abs(m5.lhs));
  EXPECT_LT(max_abs_diff(k5.lhs, m5.lhs), 1e-9 * max_abs(k5.lhs));
  EXPECT_THROW(christoffel_darboux(unit_v(), 3, 0.5, 0.5), DegenerateInput);
}

TEST(DerivativeFamily, MatchesShiftedFamily) {
  for (const Parameters& p : parameter_sets()) {
    for (int k = 0; k <= 3; ++k) {
      const MvopFamily shifted = build_recurrence(p.shifted(k), 0, 8);
      const WeightMatrix wk = weight(p, k);
      EXPECT_LT(max_abs_diff(derivative_family(p, k, k), one()), 1e-13);
      for (int d = 0; d <= 8; ++d) {
        const MatrixPolynomial pk = derivative_family(p, k, d + k);
        EXPECT_LT(relative_diff(pk, shifted.polynomial(d)), 1e-9);
        if (d > 0) {
          const MatrixPolynomial lower = derivative_family(p, k, d + k - 1);
          EXPECT_LT(max_abs(inner_product(pk, lower, wk)), 1e-10 * pairing_scale(pk, lower, wk));
        }
      }
    }
  }
  const MatrixPolynomial a = derivative_family(unit_v(), 1, 3);
  const MatrixPolynomial b = build_recurrence(validate_parameters(1.0, 1.0, 1.0), 0, 2).polynomial(2);
  EXPECT_LT(max_abs_diff(a, b), 1e-9);
}

TEST(DerivativeFamily, SubleadingCoefficients) {
  for (const Parameters& p : parameter_sets()) {
    for (int k = 0; k <= 2; ++k) {
      for (int n = k + 2; n <= k + 8; ++n) {
        const MatrixPolynomial pk = derivative_family(p, k, n);
        const auto [c1, c2] = subleading_coefficients(p, k, n);
        const double s = std::max(1.0, pk.max_abs());
        EXPECT_LT(max_abs_diff(c1, pk.coeff(n - k - 1)), 1e-9 * s);
        EXPECT_LT(max_abs_diff(c2, pk.coeff(n - k - 2)), 1e-9 * s);
      }
    }
  }
}

TEST(ShiftRodrigues, ScaleExampleAndSign) {
  const CMat2 c = shift_scale(unit_v(), 0, 1);
  EXPECT_LT(max_abs_diff(c, CMat2::diag(-20.0 / 3.0, -12.0)), 1e-13);
  const MatrixPolynomial eta_i = apply(one(), shift_operator(unit_v(), 0));
  const MatrixPolynomial normalized = inverse(eta_i.leading()) * eta_i;
  EXPECT_LT(max_abs_diff(normalized, build_rodrigues(unit_v(), 1)), 1e-12);
  for (const Parameters& p : parameter_sets()) {
    for (int k = 0; k <= 2; ++k) {
      for (int n = 1; n <= 5; ++n) {
        const CMat2 s = shift_scale(p, k, n);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        EXPECT_GT(sign * s(0, 0).real(), 0.0);
        EXPECT_GT(sign * s(1, 1).real(), 0.0);
      }
    }
  }
}

TEST(ShiftRodrigues, ChainEqualsDerivativeFamily) {
  for (const Parameters& p : parameter_sets()) {
    for (int k = 0; k <= 2; ++k) {
      for (int n = 1; n <= 5; ++n) {
        const MatrixPolynomial target = derivative_family(p, k, n + k);
        EXPECT_LT(relative_diff(shift_rodrigues(p, k, n), target), 1e-9);
        const MatrixPolynomial chain = raising_chain(p, k, n);
        EXPECT_LT(max_abs_diff(chain, shift_scale(p, k, n) * target), 1e-9 * std::max(1.0, chain.max_abs()));
        for (double t : {0.25, 0.6}) {
          const CMat2 wv = weight_derivative_rodrigues_value(p, k, n, t);
          EXPECT_LT(max_abs_diff(wv, target(t)), 1e-9 * std::max(1.0, max_abs(wv)));
        }
      }
    }
  }
  EXPECT_THROW(shift_rodrigues(unit_v(), 0, 0), InvalidParameter);
}

TEST(EOperator, EigenvalueAndCommutation) {
  for (const Parameters& p : parameter_sets()) {
    const RightDifferentialOperator e = e_operator(p, 0);
    const RightDifferentialOperator d = hypergeometric_operator(p);
    for (int n = 0; n <= 8; ++n) {
      const MatrixPolynomial pn = build_rodrigues(p, n);
      const double s = std::max(1.0, pn.max_abs());
      EXPECT_LT((apply(pn, e) - e_operator_eigenvalue(p, 0, n) * pn).max_abs(), 1e-9 * s * (n + 1) * (n + 1));
      EXPECT_LT((apply(apply(pn, e), d) - apply(apply(pn, d), e)).max_abs(), 1e-8 * s * std::pow(n + 1.0, 4));
    }
  }
}
