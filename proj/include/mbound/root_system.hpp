#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbound/errors.hpp"
#include "mbound/finite_group.hpp"

namespace mbound {

/// One irreducible component of a Cartan type.
struct CartanComponent {
  char family = 'A';
  int rank = 1;
  int twist = 1;             // 1 split, 2 or 3 for twisted forms
  bool short_roots = false;  // subsystem made of short roots of the ambient system

  friend auto operator<=>(const CartanComponent&, const CartanComponent&) = default;
};

/// A (possibly reducible, possibly empty) Cartan type such as "B2", "A1xG2", "2A3", "3D4".
struct CartanType {
  std::vector<CartanComponent> components;

  static CartanType parse(const std::string& text) {
    CartanType out;
    if (text.empty() || text == "empty") return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('x', pos);
      if (end == std::string::npos) end = text.size();
      out.components.push_back(parse_component(text.substr(pos, end - pos), text));
      pos = end + 1;
    }
    out.normalize();
    return out;
  }

  bool empty() const { return components.empty(); }
  int rank() const {
    int r = 0;
    for (const auto& c : components) r += c.rank;
    return r;
  }
  bool is_split() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.twist == 1; });
  }
  bool is_type_a() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.family == 'A'; });
  }
  /// Twisted labels that are accepted but carry no curated data (Suzuki and Ree groups).
  bool is_data_incomplete() const {
    return std::any_of(components.begin(), components.end(), [](const auto& c) {
      return c.twist == 2 && (c.family == 'B' || c.family == 'G' || c.family == 'F');
    });
  }

  /// Same type with short-root markers removed.
  CartanType untwisted_shape() const {
    CartanType t = *this;
    for (auto& c : t.components) c.short_roots = false;
    t.normalize();
    return t;
  }

  /// Langlands dual: B_n and C_n exchanged.
  CartanType dual() const {
    CartanType t = *this;
    for (auto& c : t.components) {
      if (c.family == 'B' && c.rank >= 3) c.family = 'C';
      else if (c.family == 'C' && c.rank >= 3) c.family = 'B';
    }
    t.normalize();
    return t;
  }

  std::string str() const {
    if (components.empty()) return "empty";
    std::string s;
    for (std::size_t i = 0; i < components.size(); ++i) {
      const auto& c = components[i];
      if (i) s += 'x';
      if (c.twist != 1) s += std::to_string(c.twist);
      if (c.short_roots) s += '~';
      s += c.family;
      s += std::to_string(c.rank);
    }
    return s;
  }

  friend bool operator==(const CartanType&, const CartanType&) = default;
  friend bool operator<(const CartanType& a, const CartanType& b) { return a.components < b.components; }

  void normalize() {
    for (auto& c : components)
      if (c.family == 'C' && c.rank == 2) c.family = 'B';
    std::sort(components.begin(), components.end());
  }

 private:
  static CartanComponent parse_component(const std::string& s, const std::string& whole) {
    auto fail = [&](const std::string& why) -> CartanComponent {
      throw std::invalid_argument("invalid Cartan type '" + whole + "': " + why);
    };
    CartanComponent c;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '2' || s[i] == '3') && i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1]))) {
      c.twist = s[i] - '0';
      ++i;
    }
    if (i < s.size() && s[i] == '~') {
      c.short_roots = true;
      ++i;
    }
    if (i >= s.size()) return fail("missing family letter");
    c.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i++])));
    if (std::string("ABCDEFG").find(c.family) == std::string::npos) return fail("unknown family");
    if (i >= s.size() || !std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      return fail("missing rank");
    c.rank = std::stoi(s.substr(i));
    const int n = c.rank;
    bool ok = false;
    switch (c.family) {
      case 'A': ok = n >= 1; break;
      case 'B': case 'C': ok = n >= 2; break;
      case 'D': ok = n >= 2; break;
      case 'E': ok = n >= 6 && n <= 8; break;
      case 'F': ok = n == 4; break;
      case 'G': ok = n == 2; break;
    }
    if (!ok) return fail("rank out of range for family");
    if (c.twist == 3 && !(c.family == 'D' && n == 4)) return fail("twist 3 only on D4");
    if (c.twist == 2) {
      const bool usual = (c.family == 'A' && n >= 2) || (c.family == 'D' && n >= 4) || (c.family == 'E' && n == 6);
      const bool suzuki_ree = (c.family == 'B' && n == 2) || (c.family == 'G' && n == 2) || (c.family == 'F' && n == 4);
      if (!usual && !suzuki_ree) return fail("twist 2 not allowed on this family");
    }
    return c;
  }
};

/// |W| from the classical formulas.
inline std::uint64_t weyl_order(const CartanType& type) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  std::uint64_t w = 1;
  for (const auto& c : type.components) {
    const int n = c.rank;
    switch (c.family) {
      case 'A': w *= fact(n + 1); break;
      case 'B': case 'C': w *= (std::uint64_t{1} << n) * fact(n); break;
      case 'D': w *= (std::uint64_t{1} << (n - 1)) * fact(n); break;
      case 'E': w *= n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL; break;
      case 'F': w *= 1152; break;
      case 'G': w *= 12; break;
    }
  }
  return w;
}

/// Number of roots from the classical formulas.
inline std::size_t root_count(const CartanType& type) {
  std::size_t r = 0;
  for (const auto& c : type.components) {
    const std::size_t n = static_cast<std::size_t>(c.rank);
    switch (c.family) {
      case 'A': r += n * (n + 1); break;
      case 'B': case 'C': r += 2 * n * n; break;
      case 'D': r += 2 * n * (n - 1); break;
      case 'E': r += n == 6 ? 72 : n == 7 ? 126 : 240; break;
      case 'F': r += 48; break;
      case 'G': r += 12; break;
    }
  }
  return r;
}

/// Symmetric Gram matrix of the simple roots (scaled to integers), Bourbaki numbering.
inline std::vector<std::vector<int>> gram_matrix(const CartanType& type) {
  const int r = type.rank();
  std::vector<std::vector<int>> g(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  int off = 0;
  for (const auto& c : type.components) {
    const int n = c.rank;
    auto set = [&](int i, int j, int v) {
      g[static_cast<std::size_t>(off + i)][static_cast<std::size_t>(off + j)] = v;
      g[static_cast<std::size_t>(off + j)][static_cast<std::size_t>(off + i)] = v;
    };
    auto chain = [&](int len_sq, int bond) {
      for (int i = 0; i < n; ++i) set(i, i, len_sq);
      for (int i = 0; i + 1 < n; ++i) set(i, i + 1, bond);
    };
    switch (c.family) {
      case 'A': chain(2, -1); break;
      case 'B':
        chain(4, -2);
        set(n - 1, n - 1, 2);
        break;
      case 'C':
        chain(2, -1);
        set(n - 1, n - 1, 4);
        set(n - 2, n - 1, -2);
        break;
      case 'D':
        for (int i = 0; i < n; ++i) set(i, i, 2);
        for (int i = 0; i + 2 < n; ++i) set(i, i + 1, -1);
        if (n >= 3) set(n - 3, n - 1, -1);
        break;
      case 'E':
        for (int i = 0; i < n; ++i) set(i, i, 2);
        set(0, 2, -1);
        set(1, 3, -1);
        for (int i = 2; i + 1 < n; ++i) set(i, i + 1, -1);
        break;
      case 'F':
        set(0, 0, 4); set(1, 1, 4); set(2, 2, 2); set(3, 3, 2);
        set(0, 1, -2); set(1, 2, -2); set(2, 3, -1);
        break;
      case 'G':
        set(0, 0, 2); set(1, 1, 6); set(0, 1, -3);
        break;
    }
    off += n;
  }
  return g;
}

/// Roots in the simple-root basis, the Weyl group as a permutation group on them.
///
/// Root order: positive roots by height, then by coefficient vector descending
/// (so simple root i has index i), followed by the negatives in the same order.
struct RootSystemData {
  CartanType type;
  int rank = 0;
  std::vector<std::vector<int>> gram;
  std::vector<std::vector<int>> roots;
  std::size_t num_positive = 0;
  std::vector<std::size_t> simple;
  std::shared_ptr<const FiniteGroup> weyl;  // null if only roots were requested

  std::size_t size() const { return roots.size(); }
  bool is_positive(std::size_t i) const { return i < num_positive; }
  std::size_t negate(std::size_t i) const { return i < num_positive ? i + num_positive : i - num_positive; }
  int height(std::size_t i) const { return std::accumulate(roots[i].begin(), roots[i].end(), 0); }

  std::optional<std::size_t> index_of(const std::vector<int>& v) const {
    auto it = lookup_.find(v);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  /// Index of roots[i] + roots[j], if a root.
  std::optional<std::size_t> sum(std::size_t i, std::size_t j) const {
    const auto s = sums_[i * roots.size() + j];
    if (s < 0) return std::nullopt;
    return static_cast<std::size_t>(s);
  }

  int form(const std::vector<int>& a, const std::vector<int>& b) const {
    int s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) s += a[static_cast<std::size_t>(i)] * gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(j)];
    return s;
  }
  int form(std::size_t i, std::size_t j) const { return form(roots[i], roots[j]); }
  int length_sq(std::size_t i) const { return form(i, i); }

  /// s_a(v) = v - <v, a^vee> a.
  std::vector<int> reflect(const std::vector<int>& v, const std::vector<int>& a) const {
    const int k = 2 * form(v, a) / form(a, a);
    std::vector<int> out = v;
    for (int i = 0; i < rank; ++i) out[static_cast<std::size_t>(i)] -= k * a[static_cast<std::size_t>(i)];
    return out;
  }

  /// Reflection in root a as a permutation of the root list.
  Perm reflection(std::size_t a) const {
    Perm p(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) p[i] = static_cast<std::uint16_t>(*index_of(reflect(roots[i], roots[a])));
    return p;
  }

  const FiniteGroup& weyl_group() const {
    if (!weyl) throw std::logic_error("RootSystemData: Weyl group was not enumerated");
    return *weyl;
  }

  void finish_tables() {
    lookup_.clear();
    for (std::size_t i = 0; i < roots.size(); ++i) lookup_[roots[i]] = i;
    sums_.assign(roots.size() * roots.size(), -1);
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = 0; j < roots.size(); ++j) {
        std::vector<int> s = roots[i];
        for (int k = 0; k < rank; ++k) s[static_cast<std::size_t>(k)] += roots[j][static_cast<std::size_t>(k)];
        if (auto idx = index_of(s)) sums_[i * roots.size() + j] = static_cast<int>(*idx);
      }
  }

 private:
  std::map<std::vector<int>, std::size_t> lookup_;
  std::vector<int> sums_;
};

inline constexpr std::uint64_t kWeylOrderCap = kDefaultOrderCap;

/// Builds the root system; enumerates W when with_weyl is set (|W| must be within the cap).
inline RootSystemData build_root_system(const CartanType& type, bool with_weyl = true) {
  if (type.is_data_incomplete()) throw std::invalid_argument("build: Suzuki/Ree types have no root datum here");
  RootSystemData rs;
  rs.type = type;
  rs.rank = type.rank();
  rs.gram = gram_matrix(type);
  const int r = rs.rank;
  if (with_weyl && weyl_order(type) > kWeylOrderCap)
    throw ResourceError("build: Weyl group of " + type.str() + " exceeds the enumeration cap");

  // Positive roots: closure of the simple roots under simple reflections.
  std::vector<std::vector<int>> simple(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i) simple[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  std::map<std::vector<int>, bool> seen;
  std::vector<std::vector<int>> queue = simple, all;
  for (auto& s : simple) seen[s] = true;
  while (!queue.empty()) {
    auto v = std::move(queue.back());
    queue.pop_back();
    all.push_back(v);
    for (const auto& a : simple) {
      auto w = rs.reflect(v, a);
      if (!seen.count(w)) {
        seen[w] = true;
        queue.push_back(std::move(w));
      }
    }
  }
  std::vector<std::vector<int>> pos;
  for (auto& v : all)
    if (std::all_of(v.begin(), v.end(), [](int c) { return c >= 0; })) pos.push_back(v);
  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  rs.num_positive = pos.size();
  rs.roots = pos;
  for (const auto& v : pos) {
    std::vector<int> n = v;
    for (auto& c : n) c = -c;
    rs.roots.push_back(std::move(n));
  }
  if (rs.roots.size() != root_count(type)) throw std::logic_error("build: root count mismatch");
  if (rs.roots.size() > 65535) throw ResourceError("build: too many roots");
  for (int i = 0; i < r; ++i) rs.simple.push_back(static_cast<std::size_t>(i));
  rs.finish_tables();

  if (with_weyl && !rs.roots.empty()) {
    std::vector<Perm> gens;
    for (auto s : rs.simple) gens.push_back(rs.reflection(s));
    rs.weyl = std::make_shared<const FiniteGroup>(FiniteGroup::enumerate(rs.roots.size(), gens, kWeylOrderCap));
  } else if (with_weyl) {
    std::vector<Perm> none;
    rs.weyl = std::make_shared<const FiniteGroup>(FiniteGroup::enumerate(1, none));
  }
  return rs;
}

inline RootSystemData build_root_system(const std::string& type, bool with_weyl = true) {
  return build_root_system(CartanType::parse(type), with_weyl);
}

/// Permutation of the root list induced by a diagram automorphism of the given order (2 or 3).
inline Perm diagram_automorphism(const RootSystemData& rs, int order) {
  if (order != 2 && order != 3) throw std::invalid_argument("diagram_automorphism: order must be 2 or 3");
  if (rs.type.components.size() != 1) throw std::invalid_argument("diagram_automorphism: needs an irreducible type");
  const auto& c = rs.type.components.front();
  const int n = c.rank;
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  if (order == 2 && c.family == 'A' && n >= 2) {
    for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = n - 1 - i;
  } else if (order == 2 && c.family == 'D' && n >= 4) {
    std::swap(sigma[static_cast<std::size_t>(n - 2)], sigma[static_cast<std::size_t>(n - 1)]);
  } else if (order == 2 && c.family == 'E' && n == 6) {
    sigma = {5, 1, 4, 3, 2, 0};
  } else if (order == 3 && c.family == 'D' && n == 4) {
    sigma = {2, 1, 3, 0};
  } else {
    throw std::invalid_argument("diagram_automorphism: " + rs.type.str() + " has no automorphism of order " + std::to_string(order));
  }
  Perm p(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])] = rs.roots[i][static_cast<std::size_t>(k)];
    auto idx = rs.index_of(v);
    if (!idx) throw std::logic_error("diagram_automorphism: image is not a root");
    p[i] = static_cast<std::uint16_t>(*idx);
  }
  return p;
}

}  // namespace mbound
