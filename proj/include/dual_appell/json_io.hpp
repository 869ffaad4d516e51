#pragma once

// JSON forms of the library's values.
//
//   tensor      {"dim", "rank", "scalar", "coeffs": [[[alpha...], value], ...]}
//   chi         {"n1", "scalar", "coeffs": [value, ...]}
//   germ        {"n1", "d", "scalar", "kernels": [tensor, ...]}
//   element     {"basis", "n1", "d", "scalar", "system"?, "blocks": [tensor, ...]}
//   functional  element schema with "dual": true and no basis
//   measure     {"kind": gaussian|sphere|table, "d", "r"?, "max_degree"?, "moments"?: [[[alpha...], value], ...]}
//
// Multi-indices are listed in graded-lex order. Rational values are "num/den"
// strings; float values are JSON numbers. Readers accept either form.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hspace.hpp"

namespace dual_appell {

using Json = nlohmann::ordered_json;

template <Scalar S>
Json scalar_to_json(const S& v) {
  if constexpr (is_exact_v<S>) return to_string(v);
  else return v;
}

template <Scalar S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return scalar_traits<S>::parse(j.get<std::string>());
  if (j.is_number_integer()) return from_int<S>(j.get<std::int64_t>());
  if (j.is_number()) {
    if constexpr (is_exact_v<S>) return Rational(j.get<double>());
    else return S(j.get<double>());
  }
  throw std::invalid_argument("expected a scalar, got " + j.dump());
}

inline Json multi_index_to_json(const MultiIndex& a) { return a.entries(); }

inline MultiIndex multi_index_from_json(const Json& j) { return MultiIndex(j.get<std::vector<int>>()); }

template <Scalar S>
Json to_json(const SymTensor<S>& t) {
  Json coeffs = Json::array();
  const auto idx = t.indices();
  for (std::size_t i = 0; i < idx.size(); ++i)
    coeffs.push_back(Json::array({multi_index_to_json(idx[i]), scalar_to_json(t.coeffs()[i])}));
  return Json{{"dim", t.dim()}, {"rank", t.rank()}, {"scalar", scalar_traits<S>::name}, {"coeffs", coeffs}};
}

template <Scalar S>
SymTensor<S> tensor_from_json(const Json& j) {
  SymTensor<S> t(j.at("dim").get<int>(), j.at("rank").get<int>());
  for (const auto& entry : j.at("coeffs")) t.at(multi_index_from_json(entry.at(0))) = scalar_from_json<S>(entry.at(1));
  return t;
}

template <Scalar S>
Json to_json(const ChiFunction<S>& chi) {
  Json c = Json::array();
  for (const auto& v : chi.coeffs()) c.push_back(scalar_to_json(v));
  return Json{{"n1", chi.n1()}, {"scalar", scalar_traits<S>::name}, {"coeffs", c}};
}

template <Scalar S>
ChiFunction<S> chi_from_json(const Json& j) {
  std::vector<S> c;
  for (const auto& v : j.at("coeffs")) c.push_back(scalar_from_json<S>(v));
  return ChiFunction<S>(j.at("n1").get<int>(), std::move(c));
}

template <Scalar S>
Json to_json(const Germ<S>& g) {
  Json k = Json::array();
  for (const auto& t : g.kernels()) k.push_back(to_json(t));
  return Json{{"n1", g.n1()}, {"d", g.dim()}, {"scalar", scalar_traits<S>::name}, {"kernels", k}};
}

template <Scalar S>
Germ<S> germ_from_json(const Json& j) {
  std::vector<SymTensor<S>> k;
  for (const auto& t : j.at("kernels")) k.push_back(tensor_from_json<S>(t));
  return Germ<S>(j.at("d").get<int>(), j.at("n1").get<int>(), std::move(k));
}

template <Scalar S>
Json to_json(const PolyElement<S>& e) {
  Json b = Json::array();
  for (const auto& t : e.blocks()) b.push_back(to_json(t));
  Json out{{"basis", basis_name(e.basis())}, {"n1", e.n1()}, {"d", e.dim()}, {"scalar", scalar_traits<S>::name}};
  if (e.basis() == Basis::appell) out["system"] = e.system();
  out["blocks"] = b;
  return out;
}

template <Scalar S>
PolyElement<S> element_from_json(const Json& j) {
  const auto basis_text = j.at("basis").get<std::string>();
  Basis basis;
  if (basis_text == "monomial") basis = Basis::monomial;
  else if (basis_text == "appell") basis = Basis::appell;
  else throw std::invalid_argument("unknown basis '" + basis_text + "'");
  std::vector<SymTensor<S>> b;
  for (const auto& t : j.at("blocks")) b.push_back(tensor_from_json<S>(t));
  return PolyElement<S>(j.at("d").get<int>(), j.at("n1").get<int>(), basis, std::move(b), j.value("system", ""));
}

template <Scalar S>
Json to_json(const DualFunctional<S>& f) {
  Json b = Json::array();
  for (const auto& t : f.blocks()) b.push_back(to_json(t));
  return Json{{"dual", true}, {"n1", f.n1()}, {"d", f.dim()}, {"scalar", scalar_traits<S>::name}, {"blocks", b}};
}

template <Scalar S>
DualFunctional<S> functional_from_json(const Json& j) {
  if (!j.value("dual", false)) throw std::invalid_argument("functional JSON must carry \"dual\": true");
  std::vector<SymTensor<S>> b;
  for (const auto& t : j.at("blocks")) b.push_back(tensor_from_json<S>(t));
  return DualFunctional<S>(j.at("d").get<int>(), j.at("n1").get<int>(), std::move(b));
}

// default_max_degree applies when the config does not pin "max_degree".
template <Scalar S>
MomentFunctional<S> measure_from_json(const Json& j, int default_max_degree) {
  const auto kind = j.at("kind").get<std::string>();
  const int d = j.at("d").get<int>();
  const int max_degree = j.value("max_degree", default_max_degree);
  if (kind == "gaussian") return MomentFunctional<S>::gaussian(d, max_degree);
  if (kind == "sphere")
    return MomentFunctional<S>::sphere(d, j.contains("r") ? scalar_from_json<S>(j.at("r")) : from_int<S>(1), max_degree);
  if (kind == "table") {
    std::map<MultiIndex, S> m;
    for (const auto& entry : j.at("moments")) m[multi_index_from_json(entry.at(0))] = scalar_from_json<S>(entry.at(1));
    return MomentFunctional<S>::table(d, max_degree, std::move(m));
  }
  throw std::invalid_argument("unknown measure kind '" + kind + "'");
}

template <Scalar S>
Json to_json(const MomentFunctional<S>& mf) {
  Json out{{"kind", measure_name(mf.kind())}, {"d", mf.dim()}, {"max_degree", mf.max_degree()}};
  if (mf.kind() == MeasureKind::sphere) out["r"] = scalar_to_json(mf.radius());
  if (mf.kind() == MeasureKind::table) {
    Json m = Json::array();
    for (const auto& [alpha, v] : mf.table_entries()) m.push_back(Json::array({multi_index_to_json(alpha), scalar_to_json(v)}));
    out["moments"] = m;
  }
  return out;
}

}  // namespace dual_appell
