#ifndef MVOP_JSON_HPP_
#define MVOP_JSON_HPP_

// JSON encodings: a complex scalar is [re, im], a CMat2 is a row-major 2x2
// array of complex scalars, a MatrixPolynomial is an ascending array of CMat2.

#include <complex>

#include <json.hpp>

#include "mvop/jacobi.hpp"
#include "mvop/mat2.hpp"
#include "mvop/weights.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) { j = json::array({z.real(), z.imag()}); }
  static void from_json(const json& j, std::complex<double>& z) {
    z = {j.at(0).get<double>(), j.at(1).get<double>()};
  }
};

}  // namespace nlohmann

namespace mvop {

using json = nlohmann::json;

inline void to_json(json& j, const CMat2& m) {
  j = json::array({json::array({json(m(0, 0)), json(m(0, 1))}),
                   json::array({json(m(1, 0)), json(m(1, 1))})});
}

inline void from_json(const json& j, CMat2& m) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = j.at(r).at(c).get<Complex>();
}

inline void to_json(json& j, const MatrixPolynomial& p) {
  j = json::array();
  for (const auto& c : p.coeffs()) j.push_back(c);
}

inline void from_json(const json& j, MatrixPolynomial& p) {
  std::vector<CMat2> c;
  for (const auto& e : j) c.push_back(e.get<CMat2>());
  p = MatrixPolynomial(std::move(c));
}

inline json params_json(const Parameters& p) {
  return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"v", p.v()}};
}

inline json weight_json(const WeightMatrix& w) {
  return {{"params", params_json(w.params)},
          {"k", w.level},
          {"exponents", {w.exponents[0], w.exponents[1]}},
          {"polynomial_part", w.polynomial_part},
          {"level0_valid", w.level0_valid}};
}

inline json pearson_json(const PearsonData& d) {
  return {{"k", d.level}, {"phi", d.phi}, {"psi", d.psi}};
}

inline json rule_json(const QuadratureRule& q) {
  return {{"alpha", q.alpha}, {"beta", q.beta}, {"nodes", q.nodes}, {"weights", q.weights}};
}

}  // namespace mvop

#endif  // MVOP_JSON_HPP_
