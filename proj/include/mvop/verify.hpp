#ifndef MVOP_VERIFY_HPP_
#define MVOP_VERIFY_HPP_

// Named verification suites. Each check records the largest residual found,
// the tolerance it was held to and the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mvop/diffop.hpp"
#include "mvop/families.hpp"
#include "mvop/json.hpp"
#include "mvop/weights.hpp"

namespace mvop {

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Lower-bound checks pass when the residual exceeds the tolerance.
  bool lower_bound = false;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  double alpha = 0.0;
  double beta = 0.0;
  double v = 0.0;
  std::vector<Check> checks;
  double elapsed_seconds = 0.0;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

inline void to_json(json& j, const Check& c) {
  j = {{"name", c.name},
       {"max_residual", c.max_residual},
       {"tolerance", c.tolerance},
       {"comparison", c.lower_bound ? ">" : "<="},
       {"pass", c.pass}};
}

inline void from_json(const json& j, Check& c) {
  c.name = j.at("name").get<std::string>();
  c.max_residual = j.at("max_residual").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.lower_bound = j.value("comparison", "<=") == ">";
  c.pass = j.at("pass").get<bool>();
}

inline void to_json(json& j, const VerificationReport& r) {
  j = {{"suite", r.suite},
       {"params", {{"alpha", r.alpha}, {"beta", r.beta}, {"v", r.v}}},
       {"checks", r.checks},
       {"pass", r.pass()},
       {"elapsed_seconds", r.elapsed_seconds}};
}

inline void from_json(const json& j, VerificationReport& r) {
  r.suite = j.at("suite").get<std::string>();
  r.alpha = j.at("params").at("alpha").get<double>();
  r.beta = j.at("params").at("beta").get<double>();
  r.v = j.at("params").at("v").get<double>();
  r.checks = j.at("checks").get<std::vector<Check>>();
  r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
}

struct SuiteOptions {
  int nmax = 10;
  int kmax = 2;
  /// Replaces every upper-bound tolerance when set.
  std::optional<double> tol;
};

/// MVOP_DEFAULT_TOL, if set to a positive number.
inline std::optional<double> env_default_tolerance() {
  const char* s = std::getenv("MVOP_DEFAULT_TOL");
  if (s == nullptr) return std::nullopt;
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || !(x > 0.0) || !std::isfinite(x)) return std::nullopt;
  return x;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"orthogonality", "eigen", "norms", "recurrence",
                                              "pearson", "shift", "cd", "algebra", "cross", "all"};
  return names;
}

namespace detail {

class CheckList {
 public:
  explicit CheckList(const SuiteOptions& o) : opt_(o) {}

  void upper(const std::string& name, double residual, double tol) {
    Check c{name, residual, opt_.tol.value_or(tol), false, false};
    c.pass = std::isfinite(residual) && residual <= c.tolerance;
    checks.push_back(c);
  }
  void lower(const std::string& name, double residual, double bound) {
    Check c{name, residual, bound, true, false};
    c.pass = std::isfinite(residual) && residual > bound;
    checks.push_back(c);
  }

  std::vector<Check> checks;

 private:
  const SuiteOptions& opt_;
};

inline double coef_scale(const MatrixPolynomial& p) { return std::max(1.0, p.max_abs()); }

// Scale for <P, Q>: product of coefficient sizes times the total mass of W.
inline double pairing_scale(const MatrixPolynomial& p, const MatrixPolynomial& q,
                            const WeightMatrix& w) {
  const double mass = max_abs(inner_product(MatrixPolynomial::constant(CMat2::identity()),
                                            MatrixPolynomial::constant(CMat2::identity()), w));
  return p.max_abs() * q.max_abs() * mass;
}

inline double eigen_residual(const MatrixPolynomial& p, const RightDifferentialOperator& op,
                             const CMat2& lambda) {
  const MatrixPolynomial pd = apply(p, op);
  return (pd - lambda * p).max_abs() / std::max({1.0, pd.max_abs(), p.max_abs()});
}

inline MatrixPolynomial random_polynomial(std::mt19937_64& g, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<CMat2> c(static_cast<std::size_t>(degree) + 1);
  for (auto& m : c)
    for (auto& e : m.e) e = {u(g), u(g)};
  return MatrixPolynomial(std::move(c));
}

inline void suite_orthogonality(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  const MvopFamily f = build_recurrence(p, 0, o.nmax);
  const WeightMatrix w = weight(p, 0);
  double orth = 0.0;
  double norm = 0.0;
  for (int n = 0; n <= o.nmax; ++n) {
    for (int m = 0; m < n; ++m) {
      const CMat2 g = inner_product(f.polynomial(n), f.polynomial(m), w);
      orth = std::max(orth, max_abs(g) / pairing_scale(f.polynomial(n), f.polynomial(m), w));
    }
    const CMat2 g = inner_product(f.polynomial(n), f.polynomial(n), w);
    norm = std::max(norm, max_abs(g - f.norm(n)) / max_abs(f.norm(n)));
  }
  out.upper("orthogonality <P_n,P_m>", orth, 1e-10);
  out.upper("norm closed form vs quadrature", norm, 1e-10);
}

inline void suite_eigen(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  for (int k = 0; k <= o.kmax; ++k) {
    if (!p.valid_at_level(k)) continue;
    const MvopFamily f = build_recurrence(p, k, o.nmax);
    const RightDifferentialOperator d = hypergeometric_operator(p, k);
    double r = 0.0;
    for (int m = 0; m <= o.nmax; ++m) {
      r = std::max(r, eigen_residual(f.polynomial(m), d, hypergeometric_eigenvalue(p, k, m + k)));
    }
    out.upper("eigenfunction D level " + std::to_string(k), r, 1e-9);
  }
}

inline void suite_norms(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  const MvopFamily f = build_recurrence(p, 0, o.nmax + 1);
  double parts = 0.0;
  double prop_a = 0.0;
  double prop_b = 0.0;
  for (int n = 0; n <= o.nmax; ++n) {
    const CMat2 nn = f.norm(n);
    parts = std::max(parts, max_abs(norm_by_parts(p, n) - nn) / max_abs(nn));
    if (n >= 1) {
      const CMat2 lhs = f.recurrence(n).a * f.norm(n - 1);
      prop_a = std::max(prop_a, max_abs(lhs - nn) / max_abs(nn));
    }
    const CMat2 bn = f.recurrence(n).b * nn;
    prop_b = std::max(prop_b, max_abs(adjoint(bn) - bn) / max_abs(bn));
  }
  out.upper("norm by parts", parts, 1e-11);
  out.upper("A_n ||P_{n-1}||^2 = ||P_n||^2", prop_a, 1e-11);
  out.upper("B_n ||P_n||^2 hermitian", prop_b, 1e-11);

  const OrthonormalFamily on = orthonormal_family(p, o.nmax);
  const WeightMatrix w = weight(p, 0);
  double gram = 0.0;
  double herm = 0.0;
  double ron = 0.0;
  const MatrixPolynomial t = MatrixPolynomial::monomial(1, CMat2::identity());
  const OrthonormalFamily on1 = orthonormal_family(p, o.nmax + 1);
  for (int n = 0; n <= o.nmax; ++n) {
    const auto& pn = on.polynomials[static_cast<std::size_t>(n)];
    gram = std::max(gram, max_abs(inner_product(pn, pn, w) - CMat2::identity()));
    const CMat2& bt = on.b_tilde[static_cast<std::size_t>(n)];
    herm = std::max(herm, max_abs(bt - adjoint(bt)) / std::max(1e-300, max_abs(bt)));
    MatrixPolynomial rhs = on1.a_tilde[static_cast<std::size_t>(n + 1)] *
                               on1.polynomials[static_cast<std::size_t>(n + 1)] +
                           bt * pn;
    if (n >= 1) {
      rhs += adjoint(on.a_tilde[static_cast<std::size_t>(n)]) *
             on.polynomials[static_cast<std::size_t>(n - 1)];
    }
    const MatrixPolynomial lhs = t * pn;
    ron = std::max(ron, relative_diff(lhs, rhs));
  }
  out.upper("orthonormal gram = I", gram, 1e-10);
  out.upper("orthonormal B_n hermitian", herm, 1e-12);
  out.upper("orthonormal recurrence", ron, 1e-10);
}

inline void suite_recurrence(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  const MvopFamily f = build_recurrence(p, 0, o.nmax);
  const WeightMatrix w = weight(p, 0);
  double b_quad = 0.0;
  double a_min_det = INFINITY;
  const MatrixPolynomial t = MatrixPolynomial::monomial(1, CMat2::identity());
  for (int n = 0; n <= o.nmax; ++n) {
    // B_n = <t P_n, P_n> ||P_n||^{-2}
    const CMat2 b = inner_product(t * f.polynomial(n), f.polynomial(n), w) * inverse(f.norm(n));
    b_quad = std::max(b_quad, max_abs(b - f.recurrence(n).b) / std::max(1.0, max_abs(b)));
    if (n >= 1) {
      const CMat2& a = f.recurrence(n).a;
      a_min_det = std::min(a_min_det, std::abs(det(a)) / (max_abs(a) * max_abs(a)));
    }
  }
  out.upper("B_n closed form vs quadrature", b_quad, 1e-9);
  if (o.nmax >= 1) out.lower("A_n nonsingular (relative det)", a_min_det, 1e-12);
}

inline void suite_pearson(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  for (int k = 0; k <= o.kmax; ++k) {
    if (!p.valid_at_level(k) || !p.valid_at_level(k + 1)) continue;
    const std::string lv = " k=" + std::to_string(k);
    const MatrixPolynomial pek = pearson_residual_polynomial(p, k);
    const MatrixPolynomial ws = weight_shift_residual(p, k);
    const MatrixPolynomial wd = weight_derivative_residual(p, k);
    const WeightMatrix w = weight(p, k);
    const PearsonData d = pearson_data(p, k);
    const double scale = std::max({1.0, (w.polynomial_part * d.phi).max_abs(),
                                   (w.polynomial_part * d.psi).max_abs()});
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double t = i / 51.0;
      r1 = std::max(r1, max_abs(pek(t)) / scale);
      r2 = std::max(r2, max_abs(ws(t)) / scale);
      r3 = std::max(r3, max_abs(wd(t)) / scale);
    }
    out.upper("pearson equation" + lv, r1, 1e-10);
    out.upper("W^(k+1) = W^(k) Phi" + lv, r2, 1e-10);
    out.upper("(W^(k+1))' = W^(k) Psi" + lv, r3, 1e-10);
    double ids = 0.0;
    for (const CMat2& e : pearson_coefficient_identities(p, k)) ids = std::max(ids, max_abs(e) / scale);
    out.upper("coefficient identities" + lv, ids, 1e-12);
    out.upper("B1 = (a+b+4+2k) A2" + lv, max_abs(d.b1 - d.a2 * (p.alpha() + p.beta() + 4.0 + 2.0 * k)), 0.0);
    out.upper("W0 A0 = 0" + lv, max_abs(w.polynomial_part.coeff(0) * d.a0), 1e-12);
  }
}

inline void suite_shift(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  std::mt19937_64 g(12345);
  const int nchain = std::min(o.nmax, 5);
  for (int k = 0; k <= o.kmax; ++k) {
    if (!p.valid_at_level(k) || !p.valid_at_level(k + 1)) continue;
    const std::string lv = " k=" + std::to_string(k);
    double adj = 0.0;
    const RightDifferentialOperator eta = shift_operator(p, k);
    for (int i = 0; i < 20; ++i) {
      const MatrixPolynomial a = random_polynomial(g, 4);
      const MatrixPolynomial b = random_polynomial(g, 4);
      const CMat2 lhs = inner_product(a.derivative(), b, weight(p, k + 1));
      const CMat2 rhs = -inner_product(a, apply(b, eta), weight(p, k));
      adj = std::max(adj, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));
    }
    out.upper("adjoint <P',Q>_{k+1} = -<P,Q eta>_k" + lv, adj, 1e-10);

    double chain = 0.0;
    double wd = 0.0;
    for (int n = 1; n <= nchain; ++n) {
      if (!p.valid_at_level(k + n)) break;
      const MvopFamily f = build_recurrence(p, k, n);
      chain = std::max(chain, relative_diff(raising_chain(p, k, n), shift_scale(p, k, n) * f.polynomial(n)));
      for (int i = 1; i <= 9; ++i) {
        const double t = i / 10.0;
        const CMat2 ref = f.polynomial(n)(t);
        wd = std::max(wd, max_abs(weight_derivative_rodrigues_value(p, k, n, t) - ref) /
                              std::max(1.0, max_abs(ref)));
      }
    }
    out.upper("raising chain = C_n^k P" + lv, chain, 1e-9);
    out.upper("weight-derivative rodrigues" + lv, wd, 1e-9);

    const MvopFamily f = build_recurrence(p, k, o.nmax);
    const RightDifferentialOperator e = e_operator(p, k);
    double r = 0.0;
    for (int n = 0; n <= o.nmax; ++n) {
      r = std::max(r, eigen_residual(f.polynomial(n), e, e_operator_eigenvalue(p, k, n)));
    }
    out.upper("E eigenvalue" + lv, r, 1e-9);
  }
}

inline void suite_cd(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  std::mt19937_64 g(777);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  double on = 0.0;
  double mo = 0.0;
  const int nmax = std::min(o.nmax, 8);
  for (int i = 0; i < 10; ++i) {
    double x = u(g);
    double y = u(g);
    while (std::abs(x - y) < 0.05) y = u(g);
    for (int n = 0; n <= nmax; ++n) {
      const KernelPair a = christoffel_darboux(p, n, x, y);
      on = std::max(on, max_abs(a.lhs - a.rhs) / std::max(1.0, max_abs(a.lhs)));
      const KernelPair b = christoffel_darboux_monic(p, n, x, y);
      mo = std::max(mo, max_abs(b.lhs - b.rhs) / std::max(1.0, max_abs(b.lhs)));
    }
  }
  out.upper("christoffel-darboux orthonormal", on, 1e-9);
  out.upper("christoffel-darboux monic", mo, 1e-9);
}

/// Rank of real row vectors by Gaussian elimination with partial pivoting.
inline int numeric_rank(std::vector<std::vector<double>> a, double tol) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    for (std::size_t i = r; i < rows; ++i)
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    if (std::abs(a[piv][c]) <= tol) continue;
    std::swap(a[r], a[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

inline void suite_algebra(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  const AlgebraBasis basis = algebra_basis(p);
  const WeightMatrix w0 = weight(p, 0);
  const int nmax = std::min(o.nmax, 8);
  const MvopFamily f = build_recurrence(p, 0, nmax);
  const char* names[] = {"D1", "D2", "D3", "D4"};
  for (std::size_t j = 0; j < 4; ++j) {
    const SymmetryResult s = is_symmetric(basis.operators[j], w0, 6, 1e-9);
    out.upper(std::string(names[j]) + " symmetric", s.max_residual, 1e-9);
  }
  // Eigenvalue displays.
  const double K1 = p.kappa_v_b();
  const double K2 = p.kappa_mv_b();
  const double K3 = p.kappa_v_mb();
  const double K4 = p.kappa_mv_mb();
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < 4; ++j) {
    double r = 0.0;
    for (int n = 0; n <= nmax; ++n) {
      CMat2 disp;
      const double up = 0.25 * (K2 + 2.0 * (1 + n)) * (K2 + 2.0 * (2 + n));
      const double low = (K1 + 2.0 * (1 + n)) * (K1 + 2.0 * (2 + n)) * (K2 + 2.0) * K3 /
                         (4.0 * K4 * (K1 + 2.0));
      switch (j) {
        case 0: disp = CMat2::diag(0.25 * (K1 + 2.0 * (n + 1)) * (K2 + 2.0 * (n + 2)), 0.0); break;
        case 1: disp = CMat2::diag(-0.25 * (K2 + 2.0) * (K1 + 4.0), (n + p.alpha() + p.beta() + 3.0) * n); break;
        case 2: disp = CMat2{0.0, up, -low, 0.0}; break;
        default: disp = CMat2{0.0, -up, -low, 0.0} * (-i); break;  // D4 = -i (i D4)
      }
      r = std::max(r, eigen_residual(f.polynomial(n), basis.operators[j], disp));
    }
    out.upper(std::string(names[j]) + " eigenvalue display", r, 1e-9);
  }
  const RightDifferentialOperator d = hypergeometric_operator(p, 0);
  const RightDifferentialOperator sum = Complex(-1.0) * basis.operators[0] - basis.operators[1];
  out.upper("D = -D1-D2", max_abs_diff(sum, d) / std::max(1.0, d.max_abs()), 1e-11);
  const RightDifferentialOperator e = e_operator(p, 0);
  const RightDifferentialOperator comb = Complex(-(K1 + 4.0) / (K1 + 2.0)) * basis.operators[0] +
                                         Complex(-(K2 + 4.0) / (K2 + 2.0)) * basis.operators[1];
  out.upper("E = combination of D1, D2", max_abs_diff(comb, e) / std::max(1.0, e.max_abs()), 1e-11);
  const CMat2 l1 = algebra_eigenvalue(p, basis.elements[0], 1);
  const CMat2 l3 = algebra_eigenvalue(p, basis.elements[2], 1);
  out.lower("Lambda_1(D1), Lambda_1(D3) do not commute", max_abs(l1 * l3 - l3 * l1), 1e-6);
  // Second-order coefficient of a D1 + b D2 + c D3 + d (iD4) as a linear map of (a,b,c,d).
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < 4; ++j) {
    CMat2 lead = algebra_coefficients(p, basis.elements[j]).a2;
    if (j == 3) lead = lead * i;
    std::vector<double> row;
    for (const auto& z : lead.e) {
      row.push_back(z.real());
      row.push_back(z.imag());
    }
    rows.push_back(row);
  }
  out.lower("no order-one operators (rank of leading map)", numeric_rank(rows, 1e-12), 3.5);
  double comm = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    comm = std::max(comm, relative_diff(apply(apply(f.polynomial(n), e), d),
                                        apply(apply(f.polynomial(n), d), e)));
  }
  out.upper("E and D commute on P_n", comm, 1e-8);
  const RightDifferentialOperator dt = darboux_operator(p, 0);
  out.lower("Darboux transform not symmetric for W^(0)", is_symmetric(dt, w0, 5, 1e-9).max_residual, 1e-6);
  if (p.valid_at_level(1)) {
    out.upper("Darboux transform symmetric for W^(1)", is_symmetric(dt, weight(p, 1), 5, 1e-9).max_residual, 1e-9);
  }
}

inline void suite_cross(const Parameters& p, const SuiteOptions& o, CheckList& out) {
  const MvopFamily f = build_recurrence(p, 0, o.nmax);
  double rh = 0.0;
  double rr = 0.0;
  double ri = 0.0;
  for (int n = 0; n <= o.nmax; ++n) {
    const MatrixPolynomial r = build_rodrigues(p, n);
    rh = std::max(rh, relative_diff(r, build_hypergeometric(p, 0, n)));
    rr = std::max(rr, relative_diff(r, f.polynomial(n)));
    ri = std::max(ri, relative_diff(r, rodrigues_by_interpolation(p, n)));
  }
  out.upper("rodrigues vs hypergeometric", rh, 1e-8);
  out.upper("rodrigues vs recurrence", rr, 1e-8);
  out.upper("rodrigues division vs interpolation", ri, 1e-8);
  double dk = 0.0;
  for (int k = 1; k <= o.kmax; ++k) {
    if (!p.valid_at_level(k)) continue;
    const MvopFamily fk = build_recurrence(p, k, o.nmax);
    for (int m = 0; m <= o.nmax; ++m) {
      dk = std::max(dk, relative_diff(derivative_family(p, k, m + k), fk.polynomial(m)));
      dk = std::max(dk, relative_diff(build_hypergeometric(p, k, m + k), fk.polynomial(m)));
    }
  }
  if (o.kmax >= 1) out.upper("level-k constructions agree", dk, 1e-8);
}

}  // namespace detail

/// Runs a named suite; InvalidParameter for unknown names or parameters.
inline VerificationReport run_suite(const std::string& suite, const Parameters& p,
                                    const SuiteOptions& o) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  if (o.nmax < 0 || o.kmax < 0) throw InvalidParameter("nmax and kmax must be non-negative");
  detail::CheckList out(o);
  const bool all = suite == "all";
  bool known = all;
  auto run = [&](const char* name, void (*fn)(const Parameters&, const SuiteOptions&, detail::CheckList&)) {
    if (all || suite == name) {
      known = true;
      fn(p, o, out);
    }
  };
  run("orthogonality", detail::suite_orthogonality);
  run("eigen", detail::suite_eigen);
  run("norms", detail::suite_norms);
  run("recurrence", detail::suite_recurrence);
  run("pearson", detail::suite_pearson);
  run("shift", detail::suite_shift);
  run("cd", detail::suite_cd);
  run("algebra", detail::suite_algebra);
  run("cross", detail::suite_cross);
  if (!known) throw InvalidParameter("unknown suite '" + suite + "'");
  VerificationReport r;
  r.suite = suite;
  r.alpha = p.alpha();
  r.beta = p.beta();
  r.v = p.v();
  r.checks = std::move(out.checks);
  r.elapsed_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return r;
}

}  // namespace mvop

#endif  // MVOP_VERIFY_HPP_
