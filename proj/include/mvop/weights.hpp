#ifndef MVOP_WEIGHTS_HPP_
#define MVOP_WEIGHTS_HPP_

// Parameter domain, the weight family W^(k)(t) = t^{a+k}(1-t)^{b+k} Wt^(k)(t),
// the factors of its inverse, and Pearson data (Phi^(k), Psi^(k)).

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "mvop/errors.hpp"
#include "mvop/mat2.hpp"

namespace mvop {

class Parameters;
Parameters validate_parameters(double alpha, double beta, double v, int level = 0);

/// The triple (alpha, beta, v) with its kappa constants.
class Parameters {
 public:
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double v() const { return v_; }

  /// kappa(sv, sb) = alpha + sv*v + sb*beta, signs in {+1,-1}.
  double kappa(int sv, int sb) const { return alpha_ + sv * v_ + sb * beta_; }
  double kappa_v_b() const { return kvb_; }
  double kappa_mv_b() const { return kmvb_; }
  double kappa_v_mb() const { return kvmb_; }
  double kappa_mv_mb() const { return kmvmb_; }

  /// True when the level-0 constraints hold; objects at level k >= 1 may be
  /// built from parameters for which this is false.
  bool level0_valid() const { return level0_valid_; }

  /// |alpha-beta| < |v| < alpha+beta+2(k+1), alpha+k > -1, beta+k > -1.
  bool valid_at_level(int k) const {
    return k >= 0 && alpha_ + k > -1.0 && beta_ + k > -1.0 &&
           std::abs(alpha_ - beta_) < std::abs(v_) &&
           std::abs(v_) < alpha_ + beta_ + 2.0 * (k + 1);
  }

  /// (alpha+k, beta+k, v); the level-k objects equal the level-0 objects of this.
  Parameters shifted(int k) const { return validate_parameters(alpha_ + k, beta_ + k, v_, 0); }

  std::string to_string() const {
    std::ostringstream os;
    os << "(alpha=" << alpha_ << ", beta=" << beta_ << ", v=" << v_ << ")";
    return os.str();
  }

 private:
  friend Parameters validate_parameters(double, double, double, int);
  Parameters(double a, double b, double v)
      : alpha_(a),
        beta_(b),
        v_(v),
        kvb_(a + v + b),
        kmvb_(a - v + b),
        kvmb_(a + v - b),
        kmvmb_(a - v - b) {
    level0_valid_ = valid_at_level(0);
  }

  double alpha_;
  double beta_;
  double v_;
  double kvb_;
  double kmvb_;
  double kvmb_;
  double kmvmb_;
  bool level0_valid_ = false;
};

/**
 * Checks the constraints for objects at shift level `level` and returns the
 * parameter value. The message names the violated inequality.
 */
inline Parameters validate_parameters(double alpha, double beta, double v, int level) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(v)) {
    throw InvalidParameter("parameters must be finite");
  }
  if (level < 0) throw InvalidParameter("shift level must be non-negative");
  std::ostringstream os;
  const std::string k = level == 0 ? "" : "+" + std::to_string(level);
  const std::string twok = level == 0 ? "2" : std::to_string(2 * (level + 1));
  if (!(alpha + level > -1.0)) {
    os << "alpha" << k << " > -1 violated (alpha=" << alpha << ")";
    throw InvalidParameter(os.str());
  }
  if (!(beta + level > -1.0)) {
    os << "beta" << k << " > -1 violated (beta=" << beta << ")";
    throw InvalidParameter(os.str());
  }
  if (!(std::abs(alpha - beta) < std::abs(v))) {
    os << "|alpha-beta| < |v| violated (|alpha-beta|=" << std::abs(alpha - beta)
       << ", |v|=" << std::abs(v) << ")";
    throw InvalidParameter(os.str());
  }
  if (!(std::abs(v) < alpha + beta + 2.0 * (level + 1))) {
    os << "|v| < alpha+beta+" << twok << " violated (|v|=" << std::abs(v)
       << ", alpha+beta+" << twok << "=" << alpha + beta + 2.0 * (level + 1) << ")";
    throw InvalidParameter(os.str());
  }
  return Parameters(alpha, beta, v);
}

namespace detail {

inline void require_level(const Parameters& p, int k, const char* where) {
  if (!p.valid_at_level(k)) {
    // Reuse the message of the validator.
    try {
      validate_parameters(p.alpha(), p.beta(), p.v(), k);
    } catch (const InvalidParameter& e) {
      throw InvalidParameter(std::string(where) + ": " + e.what());
    }
    throw InvalidParameter(std::string(where) + ": invalid shift level");
  }
}

}  // namespace detail

/// W^(k)(t) = t^{exponents[0]} (1-t)^{exponents[1]} polynomial_part(t).
struct WeightMatrix {
  Parameters params;
  int level = 0;
  MatrixPolynomial polynomial_part;
  std::array<double, 2> exponents{};
  /// Mirrors params.level0_valid(); false marks a level-k weight whose base
  /// parameters are outside the level-0 domain.
  bool level0_valid = true;

  CMat2 polynomial_at(double t) const { return polynomial_part(t); }
  CMat2 operator()(double t) const {
    return polynomial_part(t) * (std::pow(t, exponents[0]) * std::pow(1.0 - t, exponents[1]));
  }
};

/**
 * Weight at shift level k. The coefficients are
 *   W2 = v diag((k_{v,b}+2(k+1))/k_{v,-b}, -(k_{-v,b}+2(k+1))/k_{-v,-b})
 *   W1 = [[-k_{v,b}-2(k+1), a+b+2(k+1)], [a+b+2(k+1), -k_{-v,b}-2(k+1)]]
 *   W0 = (a+k+1) [[1,-1],[-1,1]]
 * which coincide with the level-0 weight of (a+k, b+k, v).
 */
inline WeightMatrix weight(const Parameters& p, int k = 0) {
  detail::require_level(p, k, "weight");
  const double a = p.alpha();
  const double b = p.beta();
  const double v = p.v();
  const double s = 2.0 * (k + 1);
  const CMat2 w2 = CMat2::diag(v * (p.kappa_v_b() + s) / p.kappa_v_mb(),
                               -v * (p.kappa_mv_b() + s) / p.kappa_mv_mb());
  const CMat2 w1{-p.kappa_v_b() - s, a + b + s, a + b + s, -p.kappa_mv_b() - s};
  const CMat2 w0 = CMat2{1.0, -1.0, -1.0, 1.0} * (a + k + 1.0);
  return WeightMatrix{p, k, MatrixPolynomial{w0, w1, w2}, {a + k, b + k}, p.level0_valid()};
}

/// J2, J1, J0 with (J2 t^2 + J1 t + J0) Wt(t) = t^2 (1-t)^2 I at level 0.
struct InverseWeightFactors {
  CMat2 j2;
  CMat2 j1;
  CMat2 j0;

  MatrixPolynomial polynomial() const { return MatrixPolynomial{j0, j1, j2}; }
};

inline InverseWeightFactors inverse_weight_factors(const Parameters& p) {
  detail::require_level(p, 0, "inverse_weight_factors");
  const double a = p.alpha();
  const double b = p.beta();
  const double v = p.v();
  const double k1 = p.kappa_v_b() + 2.0;
  const double k2 = p.kappa_mv_b() + 2.0;
  const double k3 = p.kappa_v_mb();
  const double k4 = p.kappa_mv_mb();
  InverseWeightFactors f;
  f.j2 = CMat2::diag(k3 / (v * k1), -k4 / (v * k2));
  const double off = (a + b + 2.0) / (k1 * k2);
  f.j1 = CMat2{1.0 / k1, off, off, 1.0 / k2} * (k3 * k4 / (v * v));
  f.j0 = CMat2{1.0, 1.0, 1.0, 1.0} * (-k3 * k4 * (a + 1.0) / (v * v * k1 * k2));
  return f;
}

/// Pearson pair for (W^(k) Phi^(k))' = W^(k) Psi^(k).
struct PearsonData {
  MatrixPolynomial phi;  // A0 + A1 t + A2 t^2
  MatrixPolynomial psi;  // B0 + B1 t
  CMat2 a2;
  CMat2 a1;
  CMat2 a0;
  CMat2 b1;
  CMat2 b0;
  int level = 0;
};

/**
 * Pearson data at level k. With s1 = k_{v,b}+2(k+1), s2 = k_{-v,b}+2(k+1):
 *   A2 = diag(-(s1+2)/s1, -(s2+2)/s2)
 *   A1 = 2/(s1 s2) [[0, k_{v,-b}], [k_{-v,-b}, 0]] - A2
 *   A0 = k_{v,-b} k_{-v,-b}/(v s1 s2) [[-1, 1], [-1, 1]]
 *   B1 = (a+b+4+2k) A2
 *   B0 = (-(a+k+1) I - diag(-k_{-v,-b}, k_{v,-b})/v) A2
 *        + ((a+b+2k+4) A1 + B1) diag(-s2, s1) / (2v)
 */
inline PearsonData pearson_data(const Parameters& p, int k = 0) {
  detail::require_level(p, k, "pearson_data");
  detail::require_level(p, k + 1, "pearson_data");
  const double a = p.alpha();
  const double b = p.beta();
  const double v = p.v();
  const double s1 = p.kappa_v_b() + 2.0 * (k + 1);
  const double s2 = p.kappa_mv_b() + 2.0 * (k + 1);
  const double k3 = p.kappa_v_mb();
  const double k4 = p.kappa_mv_mb();
  PearsonData d;
  d.level = k;
  d.a2 = CMat2::diag(-(s1 + 2.0) / s1, -(s2 + 2.0) / s2);
  d.a1 = CMat2{0.0, k3, k4, 0.0} * (2.0 / (s1 * s2)) - d.a2;
  d.a0 = CMat2{-1.0, 1.0, -1.0, 1.0} * (k3 * k4 / (v * s1 * s2));
  d.b1 = d.a2 * (a + b + 4.0 + 2.0 * k);
  d.b0 = (CMat2::identity() * (-(a + k + 1.0)) - CMat2::diag(-k4, k3) * (1.0 / v)) * d.a2 +
         (d.a1 * (a + b + 2.0 * k + 4.0) + d.b1) * CMat2::diag(-s2, s1) * (1.0 / (2.0 * v));
  d.phi = MatrixPolynomial{d.a0, d.a1, d.a2};
  d.psi = MatrixPolynomial{d.b0, d.b1};
  return d;
}

namespace detail {

inline MatrixPolynomial scalar_poly(std::initializer_list<double> c) {
  return MatrixPolynomial::scalar(ScalarPolynomial(c));
}

}  // namespace detail

/**
 * The Pearson equation with t^{a+k-1}(1-t)^{b+k-1} factored out:
 *   (a' - (a'+b') t) Wt Phi + t(1-t) (Wt Phi)' - t(1-t) Wt Psi,
 * with a' = alpha+k, b' = beta+k. Vanishes identically.
 */
inline MatrixPolynomial pearson_residual_polynomial(const Parameters& p, int k) {
  const WeightMatrix w = weight(p, k);
  const PearsonData d = pearson_data(p, k);
  const double a = w.exponents[0];
  const double b = w.exponents[1];
  const MatrixPolynomial tt = detail::scalar_poly({0.0, 1.0, -1.0});
  const MatrixPolynomial wphi = w.polynomial_part * d.phi;
  return detail::scalar_poly({a, -(a + b)}) * wphi + tt * wphi.derivative() -
         tt * (w.polynomial_part * d.psi);
}

/// t(1-t) Wt^(k+1) - Wt^(k) Phi^(k); the weight identity W^(k+1) = W^(k) Phi^(k).
inline MatrixPolynomial weight_shift_residual(const Parameters& p, int k) {
  const MatrixPolynomial tt = detail::scalar_poly({0.0, 1.0, -1.0});
  return tt * weight(p, k + 1).polynomial_part - weight(p, k).polynomial_part * pearson_data(p, k).phi;
}

/// (W^(k+1))' - W^(k) Psi^(k), with t^{a+k}(1-t)^{b+k} factored out.
inline MatrixPolynomial weight_derivative_residual(const Parameters& p, int k) {
  const WeightMatrix w1 = weight(p, k + 1);
  const double a = w1.exponents[0];
  const double b = w1.exponents[1];
  const MatrixPolynomial tt = detail::scalar_poly({0.0, 1.0, -1.0});
  return detail::scalar_poly({a, -(a + b)}) * w1.polynomial_part +
         tt * w1.polynomial_part.derivative() - weight(p, k).polynomial_part * pearson_data(p, k).psi;
}

/// The four coefficient equations (t^4 down to t^1) equivalent to the Pearson equation.
inline std::array<CMat2, 4> pearson_coefficient_identities(const Parameters& p, int k) {
  const WeightMatrix w = weight(p, k);
  const PearsonData d = pearson_data(p, k);
  const CMat2 w0 = w.polynomial_part.coeff(0);
  const CMat2 w1 = w.polynomial_part.coeff(1);
  const CMat2 w2 = w.polynomial_part.coeff(2);
  const double a = p.alpha();
  const double b = p.beta();
  const CMat2& A0 = d.a0;
  const CMat2& A1 = d.a1;
  const CMat2& A2 = d.a2;
  const CMat2& B0 = d.b0;
  const CMat2& B1 = d.b1;
  std::array<CMat2, 4> e;
  e[0] = w2 * A2 * (a + k + 4.0) - (w2 * A1 + w1 * A2) * (a + b + 2.0 * k + 3.0) +
         w2 * (B0 - B1) + w1 * B1;
  e[1] = (w2 * A1 + w1 * A2) * (a + k + 3.0) - (w2 * A0 + w1 * A1) * (a + b + 2.0 * k + 2.0) -
         w2 * B0 + w1 * (B0 - B1) + 2.0 * (w0 * A2);
  e[2] = (w2 * A0 + w1 * A1 + w0 * A2) * (a + k + 2.0) -
         (w1 * A0 + w0 * A1) * (a + b + 2.0 * k + 1.0) - w1 * B0 + w0 * (B0 - B1);
  e[3] = (w1 * A0 + w0 * A1) * (a + k + 1.0) - w0 * B0;
  return e;
}

}  // namespace mvop

#endif  // MVOP_WEIGHTS_HPP_
