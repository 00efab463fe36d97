#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbound/bounds.hpp"
#include "mbound/component_estimator.hpp"
#include "mbound/families.hpp"
#include "mbound/fourier.hpp"
#include "mbound/gl2.hpp"
#include "mbound/serialization.hpp"
#include "mbound/subsystems.hpp"

namespace mbound {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

/// Envelope for every CLI result. Payload members name the operation that produced them.
struct Report {
  std::vector<std::string> command;
  json inputs = json::object();
  json outputs = json::object();
  std::vector<std::string> notes;
  int exit_status = 0;

  json to_json() const {
    return {{"schema", "mbound-report"}, {"version", kReportSchemaVersion}, {"command", command}, {"inputs", inputs},
            {"outputs", outputs},        {"notes", notes},                  {"exit_status", exit_status}};
  }
  static Report from_json(const json& j) {
    if (j.at("schema") != "mbound-report" || j.at("version") != kReportSchemaVersion)
      throw std::invalid_argument("Report: unknown schema or version");
    Report r;
    r.command = j.at("command").get<std::vector<std::string>>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.exit_status = j.at("exit_status").get<int>();
    return r;
  }
  friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {

inline json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_json_value(r));
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

}  // namespace detail

// Bounds

inline json to_json_value(const BoundReport& r) {
  json breakdown = json::array();
  for (const auto& b : r.breakdown) breakdown.push_back({{"subsystem", b.subsystem}, {"m_phi", to_json_value(b.m)}, {"n_phi", b.n}});
  json j = {{"type", r.type},       {"weyl_order", r.weyl_order},     {"m_phi", to_json_value(r.m)},
            {"n_phi", r.n},         {"c_gx", r.c_gx},                 {"c_estimated", r.c_estimated},
            {"bound", to_json_value(r.bound)}, {"validity", r.validity}, {"breakdown", breakdown},
            {"notes", r.notes},     {"unevaluated_term", nullptr}};
  if (r.unevaluated_term) j["unevaluated_term"] = *r.unevaluated_term;
  return j;
}

inline BoundReport bound_report_from_json(const json& j) {
  BoundReport r;
  r.type = j.at("type").get<std::string>();
  r.weyl_order = j.at("weyl_order").get<std::uint64_t>();
  r.m = rational_from_json(j.at("m_phi"));
  r.n = j.at("n_phi").get<std::int64_t>();
  r.c_gx = j.at("c_gx").get<std::int64_t>();
  r.c_estimated = j.at("c_estimated").get<bool>();
  r.bound = rational_from_json(j.at("bound"));
  r.validity = j.at("validity").get<std::string>();
  for (const auto& b : j.at("breakdown"))
    r.breakdown.push_back({b.at("subsystem").get<std::string>(), rational_from_json(b.at("m_phi")), b.at("n_phi").get<std::int64_t>()});
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (!j.at("unevaluated_term").is_null()) r.unevaluated_term = j.at("unevaluated_term").get<std::string>();
  return r;
}

// Fourier matrices and families

inline json to_json_value(const FourierMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.n; ++k) row.push_back(to_json_value(m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"size", m.n}, {"labels", m.labels}, {"entries", rows}};
}

inline FourierMatrix fourier_matrix_from_json(const json& j) {
  FourierMatrix m;
  m.n = j.at("size").get<std::size_t>();
  m.labels = j.at("labels").get<std::vector<std::string>>();
  const auto& rows = j.at("entries");
  if (rows.size() != m.n || m.labels.size() != m.n) throw std::invalid_argument("FourierMatrix: size mismatch");
  for (const auto& row : rows) {
    if (row.size() != m.n) throw std::invalid_argument("FourierMatrix: row size mismatch");
    for (const auto& v : row) m.entries.push_back(cyclotomic_from_json(v));
  }
  return m;
}

inline json to_json_value(const FamilyRecord& f) {
  json members = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& m = f.members[i];
    json entry = {{"label", m.label}, {"principal_series", m.phi ? json(*m.phi) : json(nullptr)},
                  {"m_index", m.m},   {"m_label", f.fourier.labels[m.m]},
                  {"special", m.special}};
    const auto row = positive_row(f, i);
    entry["positive_row"] = {{"row_of", row.phi}, {"coefficients", detail::rationals_to_json(row.coefficients)}};
    members.push_back(std::move(entry));
  }
  return {{"type", f.type.str()}, {"id", f.id}, {"gamma", f.gamma.str()}, {"members", members}, {"fourier", to_json_value(f.fourier)}};
}

// Subsystems

inline json to_json_value(const RootSystemData& rs, const SubsystemRecord& s) {
  json simple = json::array();
  for (auto i : subsystem_simple_roots(rs, s.roots)) simple.push_back(rs.roots[i]);
  return {{"type", s.type.str()}, {"size", s.roots.size()}, {"simple_roots", simple}, {"roots", s.roots}};
}

// GL2 oracle

inline json to_json_value(const DlWitness& w) { return {{"torus", w.torus}, {"theta", w.theta}, {"value", w.value}}; }
inline DlWitness dl_witness_from_json(const json& j) {
  return {j.at("torus").get<std::string>(), j.at("theta").get<int>(), j.at("value").get<std::int64_t>()};
}

inline json to_json_value(const DlBoundReport& r) {
  json violations = json::array();
  for (const auto& w : r.violations) violations.push_back(to_json_value(w));
  return {{"q", r.q},
          {"space", r.space},
          {"c", r.c},
          {"max_abs", r.max_abs},
          {"argmax", to_json_value(r.argmax)},
          {"violations", violations},
          {"characters_checked", r.characters_checked},
          {"pass", r.pass}};
}

inline DlBoundReport dl_bound_report_from_json(const json& j) {
  DlBoundReport r;
  r.q = j.at("q").get<int>();
  r.space = j.at("space").get<std::string>();
  r.c = j.at("c").get<std::int64_t>();
  r.max_abs = j.at("max_abs").get<std::int64_t>();
  r.argmax = dl_witness_from_json(j.at("argmax"));
  for (const auto& w : j.at("violations")) r.violations.push_back(dl_witness_from_json(w));
  r.characters_checked = j.at("characters_checked").get<std::size_t>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

inline json to_json_value(const TheoremAReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"q", x.q},
                    {"max_multiplicity", x.max_multiplicity},
                    {"argmax_degree", x.argmax_degree},
                    {"argmax_index", x.argmax_index},
                    {"num_irreducibles", x.num_irreducibles},
                    {"space_size", x.space_size}});
  return {{"space", r.space},
          {"C", r.C},
          {"rows", rows},
          {"max_multiplicity", r.max_multiplicity},
          {"constant_in_q", r.constant_in_q},
          {"pass_strict", r.pass_strict},
          {"pass_nonstrict", r.pass_nonstrict}};
}

inline TheoremAReport theorem_a_report_from_json(const json& j) {
  TheoremAReport r;
  r.space = j.at("space").get<std::string>();
  r.C = j.at("C").get<std::int64_t>();
  for (const auto& x : j.at("rows"))
    r.rows.push_back({x.at("q").get<int>(), x.at("max_multiplicity").get<std::int64_t>(), x.at("argmax_degree").get<std::int64_t>(),
                      x.at("argmax_index").get<std::size_t>(), x.at("num_irreducibles").get<std::size_t>(),
                      x.at("space_size").get<std::size_t>()});
  r.max_multiplicity = j.at("max_multiplicity").get<std::int64_t>();
  r.constant_in_q = j.at("constant_in_q").get<bool>();
  r.pass_strict = j.at("pass_strict").get<bool>();
  r.pass_nonstrict = j.at("pass_nonstrict").get<bool>();
  return r;
}

// Component estimation

inline json to_json_value(const CountSeries& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back({{"q", p.q}, {"count", p.count}});
  return {{"space", s.space}, {"points", pts}};
}

inline CountSeries count_series_from_json(const json& j) {
  CountSeries s{j.at("space").get<std::string>(), {}};
  for (const auto& p : j.at("points")) s.points.push_back({p.at("q").get<int>(), p.at("count").get<std::int64_t>()});
  return s;
}

inline json to_json_value(const ComponentEstimate& e) {
  return {{"d", e.d},
          {"c", e.c},
          {"extrapolated", to_json_value(e.extrapolated)},
          {"residual", to_json_value(e.residual)},
          {"median_ratio", to_json_value(e.median_ratio)},
          {"ratios", detail::rationals_to_json(e.ratios)},
          {"leave_one_out", detail::rationals_to_json(e.leave_one_out)},
          {"confident", e.confident},
          {"series", to_json_value(e.series)}};
}

inline ComponentEstimate component_estimate_from_json(const json& j) {
  ComponentEstimate e;
  e.d = j.at("d").get<int>();
  e.c = j.at("c").get<std::int64_t>();
  e.extrapolated = rational_from_json(j.at("extrapolated"));
  e.residual = rational_from_json(j.at("residual"));
  e.median_ratio = rational_from_json(j.at("median_ratio"));
  e.ratios = detail::rationals_from_json(j.at("ratios"));
  e.leave_one_out = detail::rationals_from_json(j.at("leave_one_out"));
  e.confident = j.at("confident").get<bool>();
  e.series = count_series_from_json(j.at("series"));
  return e;
}

}  // namespace mbound
