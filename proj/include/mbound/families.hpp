#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbound/errors.hpp"
#include "mbound/family_data.hpp"
#include "mbound/fourier.hpp"
#include "mbound/root_system.hpp"

namespace mbound {

struct FamilyMember {
  std::string label;
  std::optional<std::string> phi;  // Weyl group character for principal-series members
  std::size_t m = 0;               // index into M(Gamma) order
  bool special = false;
};

struct FamilyRecord {
  CartanType type;
  int id = 0;
  GammaType gamma;
  std::vector<FamilyMember> members;
  FourierMatrix fourier;

  std::size_t size() const { return members.size(); }
};

struct PositiveRow {
  std::string phi;                    // principal-series label of the row
  std::size_t row = 0;                // member index whose row this is
  std::vector<Rational> coefficients; // on the block containing the requested member
};

namespace detail {

struct RawFamily {
  int id;
  GammaType gamma;
  std::vector<FamilyMember> members;
};

using FamilyTable = std::map<std::string, std::vector<RawFamily>>;

inline FamilyTable parse_family_table(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("format") != "mbound-unipotent-families" || j.at("version") != 1)
    throw DataIntegrityError("family data: unexpected format or version");
  FamilyTable out;
  for (const auto& [type, fams] : j.at("types").items()) {
    auto& list = out[CartanType::parse(type).str()];
    for (const auto& f : fams) {
      RawFamily rf{f.at("id").get<int>(), GammaType::parse(f.at("gamma").get<std::string>()), {}};
      for (const auto& m : f.at("members")) {
        FamilyMember fm;
        fm.label = m.at("label").get<std::string>();
        if (!m.at("phi").is_null()) fm.phi = m.at("phi").get<std::string>();
        fm.m = m.at("m").get<std::size_t>();
        fm.special = m.at("special").get<bool>();
        rf.members.push_back(std::move(fm));
      }
      list.push_back(std::move(rf));
    }
  }
  for (const auto& [alias, target] : j.at("aliases").items()) {
    const auto key = CartanType::parse(alias).str();
    if (!out.count(key)) out[key] = out.at(CartanType::parse(target.get<std::string>()).str());
  }
  return out;
}

/// Structural checks on one family: size matches Gamma, M-indices form a permutation,
/// exactly one special member, which is principal series and sits at the origin of M(Gamma).
inline void validate_family(const std::string& type, const RawFamily& f) {
  auto fail = [&](const std::string& why) {
    throw DataIntegrityError("family data for " + type + " family " + std::to_string(f.id) + ": " + why);
  };
  if (f.members.size() != f.gamma.family_size()) fail("size does not match Gamma");
  std::vector<bool> seen(f.members.size(), false);
  int specials = 0;
  for (const auto& m : f.members) {
    if (m.m >= seen.size() || seen[m.m]) fail("M(Gamma) positions are not a permutation");
    seen[m.m] = true;
    if (m.special) {
      ++specials;
      if (!m.phi) fail("special member is not principal series");
      if (m.m != 0) fail("special member is not at the origin of M(Gamma)");
    }
  }
  if (specials != 1) fail("expected exactly one special member");
}

inline const FamilyTable& family_table() {
  static const FamilyTable table = [] {
    auto t = parse_family_table(data::kUnipotentFamiliesJson);
    for (const auto& [type, fams] : t)
      for (const auto& f : fams) validate_family(type, f);
    return t;
  }();
  return table;
}

// Curated key for an irreducible component, or nullopt when no data applies.
inline std::optional<std::string> curated_key(const CartanComponent& c) {
  CartanComponent base = c;
  base.short_roots = false;
  if (c.twist == 2 && c.family == 'A') base.twist = 1;  // 2A_n reuses the split data
  if (base.twist != 1) return std::nullopt;
  CartanType t{{base}};
  t.normalize();
  const auto key = t.str();
  if (!family_table().count(key)) return std::nullopt;
  return key;
}

}  // namespace detail

/// Type names with curated family data.
inline std::vector<std::string> curated_types() {
  std::vector<std::string> out;
  for (const auto& [k, v] : detail::family_table()) out.push_back(k);
  return out;
}

/// Families of unipotent characters of an irreducible curated type.
inline std::vector<FamilyRecord> families_of_type(const CartanType& type) {
  if (type.components.size() != 1)
    throw std::invalid_argument("families_of_type: expects an irreducible type, got " + type.str());
  const auto key = detail::curated_key(type.components.front());
  if (!key) throw DataUnavailableError("family data unavailable for type " + type.str());
  std::vector<FamilyRecord> out;
  for (const auto& f : detail::family_table().at(*key)) {
    FamilyRecord r{type, f.id, f.gamma, f.members, fourier_matrix(f.gamma)};
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<FamilyRecord> families_of_type(const std::string& type) {
  return families_of_type(CartanType::parse(type));
}

/// The principal-series row of A(F) that is strictly positive on the block containing
/// `member`, with those entries. The row is that of the special member; for S2^e the
/// block is the run of four consecutive M(Gamma) positions containing the member.
inline PositiveRow positive_row(const FamilyRecord& fam, std::size_t member) {
  if (member >= fam.size()) throw std::out_of_range("positive_row: member index out of range");
  const auto special = std::find_if(fam.members.begin(), fam.members.end(), [](const FamilyMember& m) { return m.special; });
  if (special == fam.members.end() || !special->phi) throw DataIntegrityError("positive_row: family has no special member");
  std::size_t begin = 0, end = fam.size();
  if (fam.gamma.kind == GammaType::Kind::S2Power) {
    begin = fam.members[member].m / 4 * 4;
    end = begin + 4;
  }
  PositiveRow out{*special->phi, static_cast<std::size_t>(special - fam.members.begin()), {}};
  for (std::size_t k = begin; k < end; ++k) {
    const auto v = fam.fourier(special->m, k).as_rational();
    if (!v || v->sign() <= 0)
      throw DataIntegrityError("positive_row: row of " + special->label + " is not strictly positive");
    out.coefficients.push_back(*v);
  }
  return out;
}

/// C_Phi: positive-row entries over all families, multiplied out across components.
inline std::set<Rational> c_phi_set(const CartanType& type) {
  std::set<Rational> acc{Rational(1)};
  for (const auto& comp : type.components) {
    std::set<Rational> local;
    for (const auto& fam : families_of_type(CartanType{{comp}}))
      for (std::size_t i = 0; i < fam.size(); ++i)
        for (const auto& g : positive_row(fam, i).coefficients) local.insert(g);
    std::set<Rational> next;
    for (const auto& a : acc)
      for (const auto& b : local) next.insert(a * b);
    acc = std::move(next);
  }
  return acc;
}

inline std::set<Rational> c_phi_set(const std::string& type) { return c_phi_set(CartanType::parse(type)); }

}  // namespace mbound
