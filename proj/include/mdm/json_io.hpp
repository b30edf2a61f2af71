#pragma once

// JSON forms of matrices, measures, estimates, oracle results and reports.
// Complex matrices: {"rows","cols","entries":[[re,im],...]} row-major.
// Rational entries are "p/q" strings.

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdm/exact_oracle.hpp"
#include "mdm/mc_mean.hpp"
#include "mdm/measures.hpp"
#include "mdm/spectral.hpp"
#include "mdm/verify.hpp"

namespace mdm {

using Json = nlohmann::json;

namespace json_detail {

inline void require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("json: missing field '") + key + "'");
}

inline std::pair<Index, Index> shape(const Json& j) {
  require(j, "rows");
  require(j, "cols");
  require(j, "entries");
  const auto rows = j.at("rows").get<Index>(), cols = j.at("cols").get<Index>();
  if (rows < 0 || cols < 0 || j.at("entries").size() != static_cast<std::size_t>(rows * cols))
    throw DimensionError("json: entry count does not match rows x cols");
  return {rows, cols};
}

}  // namespace json_detail

inline Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix complex_matrix_from_json(const Json& j) {
  const auto [rows, cols] = json_detail::shape(j);
  ComplexMatrix m(rows, cols);
  const auto& e = j.at("entries");
  for (Index i = 0; i < rows * cols; ++i) {
    const auto& x = e.at(static_cast<std::size_t>(i));
    if (x.is_array() && x.size() == 2) {
      m(i / cols, i % cols) = Complex(x[0].get<double>(), x[1].get<double>());
    } else if (x.is_number()) {
      m(i / cols, i % cols) = x.get<double>();
    } else if (x.is_string()) {
      m(i / cols, i % cols) = to_double(parse_rational(x.get<std::string>()));
    } else {
      throw DomainError("json: matrix entry is neither [re, im], a number nor a rational string");
    }
  }
  return m;
}

inline Json to_json(const Eigen::MatrixXd& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Eigen::MatrixXd real_matrix_from_json(const Json& j) {
  const auto [rows, cols] = json_detail::shape(j);
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows * cols; ++i) m(i / cols, i % cols) = j.at("entries").at(static_cast<std::size_t>(i)).get<double>();
  return m;
}

inline Json to_json(const RationalMatrix& m) {
  Json entries = Json::array();
  for (const auto& v : m.data()) entries.push_back(to_string(v));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline RationalMatrix rational_matrix_from_json(const Json& j) {
  const auto [rows, cols] = json_detail::shape(j);
  RationalMatrix m(rows, cols);
  for (Index i = 0; i < rows * cols; ++i)
    m(i / cols, i % cols) = parse_rational(j.at("entries").at(static_cast<std::size_t>(i)).get<std::string>());
  return m;
}

inline bool has_rational_entries(const Json& j) {
  return j.contains("entries") && !j.at("entries").empty() && j.at("entries").front().is_string();
}

inline Json to_json(const MeasureSpec& spec) {
  return std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZhslMeasure>) {
          return {{"type", "zhsl"}, {"n", m.n}, {"q", m.q}};
        } else if constexpr (std::is_same_v<T, BlochMeasure>) {
          return {{"type", "bloch"}, {"u", m.u}};
        } else {
          Json factors = Json::array();
          for (const auto& f : m.factors) factors.push_back(to_json(f));
          return {{"type", "product"}, {"factors", std::move(factors)}};
        }
      },
      spec.law);
}

inline MeasureSpec measure_from_json(const Json& j) {
  json_detail::require(j, "type");
  const auto type = j.at("type").get<std::string>();
  MeasureSpec out;
  if (type == "zhsl") {
    json_detail::require(j, "n");
    const auto n = j.at("n").get<std::size_t>();
    if (!j.contains("q")) {
      out = MeasureSpec::zhsl(n);
    } else if (j.at("q").is_number()) {
      out = MeasureSpec::zhsl(n, j.at("q").get<double>());
    } else {
      auto q = j.at("q").get<std::vector<double>>();
      if (q.size() != n) throw DomainError("zhsl measure: q must have n entries");
      out = MeasureSpec::zhsl(std::move(q));
    }
  } else if (type == "bloch") {
    json_detail::require(j, "u");
    out = MeasureSpec::bloch(j.at("u").get<double>());
  } else if (type == "product") {
    json_detail::require(j, "factors");
    std::vector<MeasureSpec> factors;
    for (const auto& f : j.at("factors")) factors.push_back(measure_from_json(f));
    out = MeasureSpec::product(std::move(factors));
  } else {
    throw DomainError("unknown measure type '" + type + "'");
  }
  out.validate();
  return out;
}

inline Json to_json(const MeanEstimate& est) {
  Json j = to_json(est.mean);
  j["m"] = est.scenario.power;
  j["factors"] = est.scenario.factors;
  j["measure"] = to_json(est.spec);
  j["n_samples"] = est.n_samples;
  j["seed"] = est.seed;
  j["workers"] = est.workers;
  j["stderr_max"] = est.stderr_max();
  j["stderr"] = to_json(est.stderr);
  return j;
}

inline MeanEstimate mean_estimate_from_json(const Json& j) {
  MeanEstimate est;
  est.mean = complex_matrix_from_json(j);
  for (const char* key : {"m", "factors", "measure", "n_samples", "seed", "workers", "stderr"}) json_detail::require(j, key);
  est.scenario = Scenario(j.at("factors").get<std::vector<std::size_t>>(), j.at("m").get<int>());
  est.spec = measure_from_json(j.at("measure"));
  est.n_samples = j.at("n_samples").get<std::size_t>();
  est.seed = j.at("seed").get<std::uint64_t>();
  est.workers = j.at("workers").get<unsigned>();
  est.stderr = real_matrix_from_json(j.at("stderr"));
  return est;
}

inline Json to_json(const OracleResult& o) {
  Json j = to_json(o.mean);
  Json coeffs = Json::object();
  for (const auto& [p, c] : o.coefficients) coeffs[p.cycle_notation()] = to_string(c);
  j["coefficients"] = std::move(coeffs);
  j["n"] = o.n;
  j["m"] = o.m;
  Json q = Json::array();
  for (const auto& v : o.q) q.push_back(to_string(v));
  j["q"] = std::move(q);
  return j;
}

inline OracleResult oracle_result_from_json(const Json& j) {
  OracleResult o;
  o.mean = rational_matrix_from_json(j);
  for (const char* key : {"n", "m", "q"}) json_detail::require(j, key);
  o.n = j.at("n").get<std::size_t>();
  o.m = j.at("m").get<int>();
  for (const auto& v : j.at("q")) o.q.push_back(parse_rational(v.get<std::string>()));
  if (j.contains("coefficients")) {
    for (const auto& [key, val] : j.at("coefficients").items())
      o.coefficients.emplace_back(Permutation::from_cycle_notation(key, o.m), parse_rational(val.get<std::string>()));
    std::sort(o.coefficients.begin(), o.coefficients.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return o;
}

inline Json to_json(const SymbolicMatrix& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.dim(); ++r)
    for (Index c = 0; c < m.dim(); ++c) entries.push_back({{"r", to_string(m(r, c).r)}, {"s", to_string(m(r, c).s)}});
  return {{"rows", m.dim()}, {"cols", m.dim()}, {"entries", std::move(entries)}};
}

inline SymbolicMatrix symbolic_matrix_from_json(const Json& j) {
  const auto [rows, cols] = json_detail::shape(j);
  if (rows != cols) throw DimensionError("json: symbolic matrix is not square");
  SymbolicMatrix m(rows);
  for (Index i = 0; i < rows * cols; ++i) {
    const auto& e = j.at("entries").at(static_cast<std::size_t>(i));
    json_detail::require(e, "r");
    json_detail::require(e, "s");
    m(i / cols, i % cols) = {parse_rational(e.at("r").get<std::string>()), parse_rational(e.at("s").get<std::string>())};
  }
  return m;
}

inline Json to_json(const VerifyReport& r) {
  return {{"case", r.case_id}, {"status", r.status},         {"gated", r.gated},
          {"max_z", r.max_z},  {"max_abs_delta", r.max_abs_delta}, {"notes", r.notes}};
}

inline VerifyReport verify_report_from_json(const Json& j) {
  for (const char* key : {"case", "status", "gated", "max_z", "max_abs_delta", "notes"}) json_detail::require(j, key);
  VerifyReport r;
  r.case_id = j.at("case").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.gated = j.at("gated").get<bool>();
  r.max_z = j.at("max_z").get<double>();
  r.max_abs_delta = j.at("max_abs_delta").get<double>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

inline Json to_json(const SpectralDecomposition& s) {
  Json clusters = Json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  return {{"clusters", std::move(clusters)}, {"cluster_tol", s.cluster_tol}, {"unstable", s.unstable}};
}

}  // namespace mdm
