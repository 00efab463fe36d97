#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbound/cyclotomic.hpp"
#include "mbound/rational.hpp"

namespace mbound {

/// Rationals are written as "p" or "p/q" strings so no precision is lost.
inline nlohmann::json to_json_value(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return Rational::parse(j.get<std::string>());
}

/// {"order": n, "coeffs": [[k, "p/q"], ...]} meaning sum coeff * zeta_n^k.
inline nlohmann::json to_json_value(const Cyclotomic& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [k, v] : c.terms()) coeffs.push_back({k, v.str()});
  return {{"order", c.order()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
  const int n = j.at("order").get<int>();
  if (n < 1 || n > Cyclotomic::kMaxOrder) throw std::invalid_argument("cyclotomic: order out of range");
  std::vector<Rational> dense(static_cast<std::size_t>(n));
  for (const auto& t : j.at("coeffs")) {
    const int k = t.at(0).get<int>();
    if (k < 0 || k >= n) throw std::invalid_argument("cyclotomic: exponent out of range");
    dense[static_cast<std::size_t>(k)] += rational_from_json(t.at(1));
  }
  return Cyclotomic::from_dense(n, std::move(dense));
}

/// Exact value plus a readable rendering for text output.
inline std::string render(const Cyclotomic& c) {
  if (auto r = c.as_rational()) return r->str();
  std::string out;
  for (const auto& [k, v] : c.terms()) {
    std::string coeff = v.str();
    const bool neg = !coeff.empty() && coeff[0] == '-';
    if (neg) coeff.erase(0, 1);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (coeff != "1") out += coeff + "*";
    out += "z" + std::to_string(c.order()) + "^" + std::to_string(k);
  }
  return out;
}

}  // namespace mbound
