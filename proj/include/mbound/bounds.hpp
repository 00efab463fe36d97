#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mbound/errors.hpp"
#include "mbound/families.hpp"
#include "mbound/rational.hpp"
#include "mbound/root_system.hpp"
#include "mbound/subsystems.hpp"

namespace mbound {

struct BoundConfig {
  std::int64_t c_gx = 1;
  bool c_estimated = false;  // c_gx came from the component estimator
  std::map<std::string, std::int64_t> n_phi_overrides;                 // keyed by type string
  std::map<std::string, std::vector<Rational>> coefficient_overrides;  // keyed by type string

  void validate() const {
    if (c_gx < 1) throw std::invalid_argument("BoundConfig: c(G,X) must be at least 1");
  }
};

/// Contribution of one index of the final maximum.
struct SubsystemBound {
  std::string subsystem;  // as classified, with short-root markers
  Rational m;
  std::int64_t n = 0;
  friend bool operator==(const SubsystemBound&, const SubsystemBound&) = default;
};

struct BoundReport {
  std::string type;
  std::uint64_t weyl_order = 0;
  Rational m;
  std::int64_t n = 0;
  std::int64_t c_gx = 1;
  bool c_estimated = false;
  Rational bound;
  std::string validity;
  std::vector<SubsystemBound> breakdown;
  std::vector<std::string> notes;
  std::optional<std::string> unevaluated_term;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

inline constexpr std::int64_t kDefaultNPhiPerWeylOrder = 2;

namespace detail {

inline std::optional<std::set<Rational>> override_for(const CartanType& type, const BoundConfig& cfg) {
  auto it = cfg.coefficient_overrides.find(type.str());
  if (it == cfg.coefficient_overrides.end()) return std::nullopt;
  std::set<Rational> s(it->second.begin(), it->second.end());
  if (s.empty()) throw std::invalid_argument("coefficient override for " + type.str() + " is empty");
  for (const auto& g : s)
    if (g.sign() <= 0) throw std::invalid_argument("coefficient override for " + type.str() + " must be positive");
  return s;
}

}  // namespace detail

/// C_Phi, honoring overrides for the whole type or for single components.
inline std::set<Rational> coefficient_set(const CartanType& type, const BoundConfig& cfg = {}) {
  const auto shape = type.untwisted_shape();
  if (auto o = detail::override_for(shape, cfg)) return *o;
  std::set<Rational> acc{Rational(1)};
  for (const auto& comp : shape.components) {
    CartanType single{{comp}};
    std::set<Rational> local;
    if (auto o = detail::override_for(single, cfg)) local = *o;
    else local = c_phi_set(single);
    std::set<Rational> next;
    for (const auto& a : acc)
      for (const auto& b : local) next.insert(a * b);
    acc = std::move(next);
  }
  return acc;
}

/// M_Phi = max 1/gamma over C_Phi.
inline Rational m_phi(const CartanType& type, const BoundConfig& cfg = {}) {
  const auto s = coefficient_set(type, cfg);
  return Rational(1) / *s.begin();
}

/// N_Phi: override, else 0 for type A, else 2|W| as a placeholder; products take the maximum.
inline std::int64_t n_phi(const CartanType& type, const BoundConfig& cfg = {}) {
  const auto shape = type.untwisted_shape();
  if (auto it = cfg.n_phi_overrides.find(shape.str()); it != cfg.n_phi_overrides.end()) return it->second;
  std::int64_t n = 0;
  for (const auto& comp : shape.components) {
    CartanType single{{comp}};
    if (auto it = cfg.n_phi_overrides.find(single.str()); it != cfg.n_phi_overrides.end()) {
      n = std::max(n, it->second);
    } else if (comp.family != 'A') {
      n = std::max(n, kDefaultNPhiPerWeylOrder * static_cast<std::int64_t>(weyl_order(single)));
    }
  }
  return n;
}

namespace detail {

inline BoundReport base_report(const CartanType& type, const BoundConfig& cfg) {
  cfg.validate();
  BoundReport r;
  r.type = type.str();
  r.weyl_order = weyl_order(type);
  r.c_gx = cfg.c_gx;
  r.c_estimated = cfg.c_estimated;
  if (cfg.c_estimated) r.notes.push_back("c(G,X) is an estimate from point counts, not a certified value");
  return r;
}

inline void finish(BoundReport& r, const CartanType& n_source, const BoundConfig& cfg) {
  r.bound = r.m * Rational(static_cast<long>(r.weyl_order)) * Rational(static_cast<long>(r.c_gx));
  r.validity = "multiplicity <= C for all finite fields with q > " + std::to_string(r.n);
  const auto shape = n_source.untwisted_shape();
  if (!cfg.n_phi_overrides.count(shape.str()) && !shape.is_type_a())
    r.notes.push_back("N_Phi uses the default placeholder 2|W|; the exact threshold is not effective");
}

}  // namespace detail

/// Unipotent characters: multiplicity <= M_Phi * |W| * c(G,X).
inline BoundReport bound_unipotent(const CartanType& type, const BoundConfig& cfg = {}) {
  auto r = detail::base_report(type, cfg);
  r.m = m_phi(type, cfg);
  r.n = n_phi(type, cfg);
  detail::finish(r, type, cfg);
  return r;
}

/// One Lusztig series whose centralizer has root system `subsystem` (of the dual type);
/// the Weyl group order stays that of the ambient type.
inline BoundReport bound_series(const CartanType& ambient, const CartanType& subsystem, const BoundConfig& cfg = {}) {
  auto r = detail::base_report(ambient, cfg);
  r.m = m_phi(subsystem, cfg);
  r.n = n_phi(subsystem, cfg);
  r.breakdown.push_back({subsystem.str(), r.m, r.n});
  detail::finish(r, subsystem, cfg);
  return r;
}

/// Maximum over the type itself and all closed subsystems of the dual type.
inline BoundReport global_bound(const CartanType& type, const BoundConfig& cfg = {}) {
  auto r = detail::base_report(type, cfg);
  r.m = m_phi(type, cfg);
  r.n = n_phi(type, cfg);
  r.breakdown.push_back({type.str(), r.m, r.n});
  const auto dual_rs = build_root_system(type.untwisted_shape().dual());
  for (const auto& rec : closed_subsystems(dual_rs)) {
    const auto m = m_phi(rec.type, cfg);
    const auto n = n_phi(rec.type, cfg);
    r.breakdown.push_back({rec.type.str(), m, n});
    r.m = std::max(r.m, m);
    r.n = std::max(r.n, n);
  }
  r.bound = r.m * Rational(static_cast<long>(r.weyl_order)) * Rational(static_cast<long>(r.c_gx));
  r.validity = "multiplicity <= C for all finite fields with q > " + std::to_string(r.n);
  bool any_default = false;
  for (const auto& b : r.breakdown) {
    const auto t = CartanType::parse(b.subsystem).untwisted_shape();
    if (!t.is_type_a() && !t.empty() && !cfg.n_phi_overrides.count(t.str())) any_default = true;
  }
  if (any_default) r.notes.push_back("N_Phi uses the default placeholder 2|W|; the exact threshold is not effective");
  r.unevaluated_term = "max multiplicity over fields with q <= " + std::to_string(r.n) +
                       " (finite but not evaluated; verify-gl2 evaluates it for GL2 instances)";
  return r;
}

inline BoundReport bound_unipotent(const std::string& t, const BoundConfig& cfg = {}) { return bound_unipotent(CartanType::parse(t), cfg); }
inline BoundReport global_bound(const std::string& t, const BoundConfig& cfg = {}) { return global_bound(CartanType::parse(t), cfg); }
inline BoundReport bound_series(const std::string& a, const std::string& s, const BoundConfig& cfg = {}) {
  return bound_series(CartanType::parse(a), CartanType::parse(s), cfg);
}

}  // namespace mbound
