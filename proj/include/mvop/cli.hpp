#ifndef MVOP_CLI_HPP_
#define MVOP_CLI_HPP_

// Command-line front end: compute, verify, table.
//
// Exit codes: 0 success, 1 a verification check failed, 2 invalid parameters
// or flag combination, 3 construction failure.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvop/diffop.hpp"
#include "mvop/errors.hpp"
#include "mvop/families.hpp"
#include "mvop/json.hpp"
#include "mvop/verify.hpp"
#include "mvop/weights.hpp"

namespace mvop {

namespace cli_detail {

struct ParamFlags {
  double alpha = 0.0;
  double beta = 0.0;
  double v = 0.0;
};

inline void add_param_flags(CLI::App* app, ParamFlags& p) {
  app->add_option("--alpha", p.alpha, "exponent of t (alpha > -1)")->required();
  app->add_option("--beta", p.beta, "exponent of 1-t (beta > -1)")->required();
  app->add_option("--v", p.v, "coupling parameter, |alpha-beta| < |v| < alpha+beta+2")->required();
}

inline std::string csv_header_matrix(const std::string& prefix) {
  std::string h;
  for (const char* e : {"11", "12", "21", "22"}) {
    h += "," + prefix + e + "_re," + prefix + e + "_im";
  }
  return h;
}

// Adding 0.0 turns -0 into 0.
inline double clean(double x) { return x + 0.0; }

inline void csv_matrix(std::ostream& os, const CMat2& m) {
  for (const auto& z : m.e) os << "," << clean(z.real()) << "," << clean(z.imag());
}

// Writes to --out when given, otherwise to out.
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidParameter("cannot open output file '" + path + "'");
  f << text;
}

struct ComputeFlags {
  ParamFlags p;
  int k = 0;
  int n = 0;
  std::string method = "rodrigues";
  std::string format = "json";
  std::string out;
  bool extras = false;
};

inline int cmd_compute(const ComputeFlags& f, std::ostream& out) {
  const Parameters p = validate_parameters(f.p.alpha, f.p.beta, f.p.v, f.k);
  if (f.n < f.k) throw InvalidParameter("--n must be at least --k");
  const int degree = f.n - f.k;
  MatrixPolynomial poly;
  if (f.method == "rodrigues") {
    poly = build_rodrigues(p.shifted(f.k), degree);
  } else if (f.method == "hyper") {
    poly = build_hypergeometric(p, f.k, f.n);
  } else {
    poly = build_recurrence(p, f.k, degree).polynomial(degree);
  }
  std::ostringstream os;
  os << std::setprecision(17);
  if (f.format == "json") {
    json j = {{"params", params_json(p)},
              {"k", f.k},
              {"n", f.n},
              {"degree", degree},
              {"method", f.method},
              {"coefficients", poly}};
    if (f.extras) {
      const RecurrenceCoefficients r = recurrence_coefficients(p, f.k, degree);
      j["norm"] = norm_matrix(p, degree, f.k);
      j["recurrence"] = {{"A", r.a}, {"B", r.b}};
    }
    os << j.dump(2) << "\n";
  } else {
    os << "power" << csv_header_matrix("p") << "\n";
    for (int i = 0; i <= poly.degree(); ++i) {
      os << i;
      csv_matrix(os, poly.coeff(i));
      os << "\n";
    }
  }
  emit(os.str(), f.out, out);
  return 0;
}

struct VerifyFlags {
  ParamFlags p;
  std::string suite = "all";
  int nmax = 10;
  int kmax = 2;
  std::optional<double> tol;
  std::string out;
};

inline int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const Parameters p = validate_parameters(f.p.alpha, f.p.beta, f.p.v, 0);
  SuiteOptions o;
  o.nmax = f.nmax;
  o.kmax = f.kmax;
  o.tol = f.tol ? f.tol : env_default_tolerance();
  const VerificationReport r = run_suite(f.suite, p, o);
  emit(json(r).dump(2) + "\n", f.out, out);
  return r.pass() ? 0 : 1;
}

struct TableFlags {
  ParamFlags p;
  std::string what;
  int nmax = 10;
  int k = 0;
  int n = 5;
  std::vector<double> x;
  std::vector<double> y;
  std::string out;
};

inline int cmd_table(const TableFlags& f, std::ostream& out) {
  if (f.nmax < 0) throw InvalidParameter("--nmax must be non-negative");
  const Parameters p = validate_parameters(f.p.alpha, f.p.beta, f.p.v, f.k);
  std::ostringstream os;
  os << std::setprecision(17);
  if (f.what == "eigenvalues") {
    os << "n,lambda,mu\n";
    for (int d = 0; d <= f.nmax; ++d) {
      const CMat2 l = hypergeometric_eigenvalue(p, f.k, d + f.k);
      os << d + f.k << "," << clean(l(0, 0).real()) << "," << clean(l(1, 1).real()) << "\n";
    }
  } else if (f.what == "norms") {
    os << "n,norm11,norm22\n";
    for (int d = 0; d <= f.nmax; ++d) {
      const CMat2 nn = norm_matrix(p, d, f.k);
      os << d + f.k << "," << clean(nn(0, 0).real()) << "," << clean(nn(1, 1).real()) << "\n";
    }
  } else if (f.what == "recurrence") {
    os << "n" << csv_header_matrix("A") << csv_header_matrix("B") << "\n";
    for (int d = 0; d <= f.nmax; ++d) {
      const RecurrenceCoefficients r = recurrence_coefficients(p, f.k, d);
      os << d + f.k;
      csv_matrix(os, r.a);
      csv_matrix(os, r.b);
      os << "\n";
    }
  } else {
    if (f.k != 0) throw InvalidParameter("--what kernel is defined for --k 0 only");
    if (f.x.empty() || f.y.empty()) throw InvalidParameter("--what kernel needs --x and --y");
    os << "x,y" << csv_header_matrix("K") << "\n";
    for (double x : f.x) {
      for (double y : f.y) {
        const KernelPair kp = christoffel_darboux(p, f.n, x, y);
        os << x << "," << y;
        csv_matrix(os, kp.lhs);
        os << "\n";
      }
    }
  }
  emit(os.str(), f.out, out);
  return 0;
}

}  // namespace cli_detail

/// Entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-valued Jacobi-type orthogonal polynomials"};
  app.name("mvop");
  app.require_subcommand(1);

  cli_detail::ComputeFlags cf;
  CLI::App* compute = app.add_subcommand("compute", "coefficients of a monic polynomial P_n^(k)");
  cli_detail::add_param_flags(compute, cf.p);
  compute->add_option("--k", cf.k, "shift level")->capture_default_str();
  compute->add_option("--n", cf.n, "index n (degree n-k)")->required();
  compute->add_option("--method", cf.method, "construction")
      ->check(CLI::IsMember({"rodrigues", "hyper", "recurrence"}))
      ->capture_default_str();
  compute->add_option("--format", cf.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  compute->add_option("--out", cf.out, "output file (default stdout)");
  compute->add_flag("--extras", cf.extras, "include norm and recurrence row (json)");

  cli_detail::VerifyFlags vf;
  double tol = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite, print a JSON report");
  cli_detail::add_param_flags(verify, vf.p);
  verify->add_option("--suite", vf.suite, "suite name")
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_option("--nmax", vf.nmax, "largest degree")->capture_default_str();
  verify->add_option("--kmax", vf.kmax, "largest shift level")->capture_default_str();
  CLI::Option* tol_opt = verify->add_option("--tol", tol, "replace every upper-bound tolerance");
  verify->add_option("--out", vf.out, "output file (default stdout)");

  cli_detail::TableFlags tf;
  CLI::App* table = app.add_subcommand(
      "table",
      "CSV tables. eigenvalues: n,lambda,mu. norms: n,norm11,norm22. "
      "recurrence: n, then A and B entries as re/im pairs. "
      "kernel: x,y, then orthonormal kernel entries as re/im pairs");
  cli_detail::add_param_flags(table, tf.p);
  table->add_option("--what", tf.what, "table kind")
      ->required()
      ->check(CLI::IsMember({"recurrence", "norms", "eigenvalues", "kernel"}));
  table->add_option("--nmax", tf.nmax, "rows for degrees 0..nmax")->capture_default_str();
  table->add_option("--k", tf.k, "shift level")->capture_default_str();
  table->add_option("--n", tf.n, "kernel truncation degree")->capture_default_str();
  table->add_option("--x", tf.x, "kernel x values");
  table->add_option("--y", tf.y, "kernel y values");
  table->add_option("--out", tf.out, "output file (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (compute->parsed()) return cli_detail::cmd_compute(cf, out);
    if (verify->parsed()) {
      if (tol_opt->count() > 0) vf.tol = tol;
      return cli_detail::cmd_verify(vf, out);
    }
    return cli_detail::cmd_table(tf, out);
  } catch (const InvalidParameter& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateInput& e) {
    err << "DegenerateInput: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "construction failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace mvop

#endif  // MVOP_CLI_HPP_
