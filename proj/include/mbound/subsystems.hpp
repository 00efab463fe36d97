#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "mbound/errors.hpp"
#include "mbound/root_system.hpp"

namespace mbound {

/// A set of root indices, kept sorted.
using RootSubset = std::vector<std::size_t>;

struct SubsystemRecord {
  RootSubset roots;
  CartanType type;
  bool representative = true;  // chosen W-conjugacy representative
};

namespace detail {

inline RootSubset to_subset(const std::vector<char>& mask) {
  RootSubset out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace detail

/// Smallest symmetric, additively closed subset containing the given roots.
inline RootSubset closure(const RootSystemData& rs, const RootSubset& seed) {
  std::vector<char> in(rs.size(), 0);
  std::vector<std::size_t> list;
  auto add = [&](std::size_t i) {
    if (!in[i]) {
      in[i] = 1;
      list.push_back(i);
    }
  };
  for (auto i : seed) {
    add(i);
    add(rs.negate(i));
  }
  for (std::size_t head = 0; head < list.size(); ++head) {
    const auto a = list[head];
    for (std::size_t k = 0; k <= head; ++k) {
      if (auto s = rs.sum(a, list[k])) {
        add(*s);
        add(rs.negate(*s));
      }
    }
  }
  return detail::to_subset(in);
}

/// Independent check: symmetric and, whenever a+b is a root for a, b in the set, a+b is in the set.
inline bool is_closed_subsystem(const RootSystemData& rs, const RootSubset& subset) {
  std::vector<char> in(rs.size(), 0);
  for (auto i : subset) in[i] = 1;
  for (auto a : subset) {
    if (!in[rs.negate(a)]) return false;
    for (auto b : subset)
      if (auto s = rs.sum(a, b); s && !in[*s]) return false;
  }
  return true;
}

/// Lexicographically least image of the subset under W.
inline RootSubset canonical_form(const RootSystemData& rs, const RootSubset& subset) {
  const auto& W = rs.weyl_group();
  RootSubset best = subset, img(subset.size());
  for (FiniteGroup::Index w = 0; w < W.size(); ++w) {
    const auto g = W.element(w);
    for (std::size_t i = 0; i < subset.size(); ++i) img[i] = g[subset[i]];
    std::sort(img.begin(), img.end());
    if (img < best) best = img;
  }
  return best;
}

/// Simple roots of a closed subsystem: positive members that are not a sum of two positive members.
inline RootSubset subsystem_simple_roots(const RootSystemData& rs, const RootSubset& subset) {
  std::vector<char> in(rs.size(), 0);
  for (auto i : subset) in[i] = 1;
  std::vector<char> decomposable(rs.size(), 0);
  for (auto a : subset) {
    if (!rs.is_positive(a)) continue;
    for (auto b : subset) {
      if (!rs.is_positive(b)) continue;
      if (auto s = rs.sum(a, b); s && in[*s]) decomposable[*s] = 1;
    }
  }
  RootSubset out;
  for (auto a : subset)
    if (rs.is_positive(a) && !decomposable[a]) out.push_back(a);
  return out;
}

namespace detail {

// Connected components of the Dynkin graph on the given simple roots.
inline std::vector<RootSubset> dynkin_components(const RootSystemData& rs, const RootSubset& simple) {
  std::vector<int> comp(simple.size(), -1);
  std::vector<RootSubset> out;
  for (std::size_t s = 0; s < simple.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      out.back().push_back(simple[u]);
      for (std::size_t v = 0; v < simple.size(); ++v)
        if (comp[v] < 0 && rs.form(simple[u], simple[v]) != 0) {
          comp[v] = id;
          stack.push_back(v);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// Type of a connected Dynkin diagram given by simple roots.
inline CartanComponent classify_connected(const RootSystemData& rs, const RootSubset& simple, int ambient_max_len) {
  const std::size_t n = simple.size();
  CartanComponent c;
  c.rank = static_cast<int>(n);
  int max_len = 0;
  for (auto s : simple) max_len = std::max(max_len, rs.length_sq(s));
  c.short_roots = max_len < ambient_max_len;
  std::vector<std::vector<int>> bond(n, std::vector<int>(n, 0));
  std::vector<int> degree(n, 0);
  int max_bond = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int f = rs.form(simple[i], simple[j]);
      if (f == 0) continue;
      bond[i][j] = (2 * f / rs.length_sq(simple[j])) * (2 * f / rs.length_sq(simple[i]));
      ++degree[i];
      max_bond = std::max(max_bond, bond[i][j]);
    }
  if (n == 1) {
    c.family = 'A';
    return c;
  }
  if (max_bond == 3) {
    c.family = 'G';
    return c;
  }
  if (max_bond == 2) {
    if (n == 2) {
      c.family = 'B';
      return c;
    }
    // The double bond sits at an end (B/C) or in the middle (F4).
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (bond[i][j] != 2) continue;
        if (degree[i] == 1) {
          // i is the end node of a B/C chain.
          c.family = rs.length_sq(simple[i]) < rs.length_sq(simple[j]) ? 'B' : 'C';
          return c;
        }
        if (degree[i] == 2 && degree[j] == 2) {
          c.family = 'F';
          return c;
        }
      }
    throw std::logic_error("classify: unrecognized doubly laced diagram");
  }
  const auto branch = std::find(degree.begin(), degree.end(), 3);
  if (branch == degree.end()) {
    c.family = 'A';
    return c;
  }
  const std::size_t b = static_cast<std::size_t>(branch - degree.begin());
  std::vector<int> arms;
  for (std::size_t start = 0; start < n; ++start) {
    if (bond[b][start] == 0) continue;
    int len = 0;
    std::size_t prev = b, cur = start;
    while (true) {
      ++len;
      std::size_t next = n;
      for (std::size_t k = 0; k < n; ++k)
        if (k != prev && bond[cur][k] != 0) next = k;
      if (next == n) break;
      prev = cur;
      cur = next;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) throw std::logic_error("classify: unrecognized branching diagram");
  if (arms[0] == 1 && arms[1] == 1) c.family = 'D';
  else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) c.family = 'E';
  else throw std::logic_error("classify: unrecognized branching diagram");
  return c;
}

inline int ambient_max_length(const RootSystemData& rs, const RootSubset& support) {
  int m = 0;
  for (auto i : support) m = std::max(m, rs.length_sq(i));
  return m;
}

}  // namespace detail

/// Cartan type of a closed subsystem; short-root components are marked with '~'
/// relative to the irreducible component of the ambient system that contains them.
inline CartanType classify_subsystem(const RootSystemData& rs, const RootSubset& subset) {
  if (!is_closed_subsystem(rs, subset)) throw std::invalid_argument("classify_subsystem: subset is not a closed symmetric subsystem");
  const auto simple = subsystem_simple_roots(rs, subset);
  // Ambient components determine the long-root length for the tilde marker.
  RootSubset all_simple(rs.simple.begin(), rs.simple.end());
  const auto ambient_components = detail::dynkin_components(rs, all_simple);
  CartanType t;
  for (const auto& comp : detail::dynkin_components(rs, simple)) {
    int ambient_len = 0;
    for (const auto& ac : ambient_components) {
      // a root lies in the ambient component whose simple roots carry its support
      const auto& v = rs.roots[comp.front()];
      bool inside = false;
      for (auto s : ac) inside = inside || v[s] != 0;
      if (inside) {
        RootSubset members;
        for (std::size_t i = 0; i < rs.size(); ++i) {
          bool any = false;
          for (auto s : ac) any = any || rs.roots[i][s] != 0;
          if (any) members.push_back(i);
        }
        ambient_len = detail::ambient_max_length(rs, members);
      }
    }
    t.components.push_back(detail::classify_connected(rs, comp, ambient_len));
  }
  t.normalize();
  return t;
}

namespace detail {

inline std::vector<SubsystemRecord> finish_records(const RootSystemData& rs, std::map<RootSubset, bool>& found) {
  std::vector<SubsystemRecord> out;
  for (const auto& [subset, unused] : found) {
    (void)unused;
    out.push_back({subset, classify_subsystem(rs, subset), true});
  }
  std::stable_sort(out.begin(), out.end(), [](const SubsystemRecord& a, const SubsystemRecord& b) {
    if (a.roots.size() != b.roots.size()) return a.roots.size() < b.roots.size();
    return a.type < b.type;
  });
  return out;
}

}  // namespace detail

/// All closed subsystems up to W-conjugacy by growing from the empty set one root pair at a time.
inline std::vector<SubsystemRecord> closed_subsystems_exhaustive(const RootSystemData& rs) {
  std::map<RootSubset, bool> found;
  std::vector<RootSubset> queue{RootSubset{}};
  found[RootSubset{}] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const RootSubset cur = queue[head];
    std::vector<char> in(rs.size(), 0);
    for (auto i : cur) in[i] = 1;
    for (std::size_t a = 0; a < rs.num_positive; ++a) {
      if (in[a]) continue;
      RootSubset seed = cur;
      seed.push_back(a);
      auto canon = canonical_form(rs, closure(rs, seed));
      if (found.emplace(canon, true).second) queue.push_back(std::move(canon));
    }
  }
  return detail::finish_records(rs, found);
}

/// All closed subsystems up to W-conjugacy by Borel-de Siebenthal descent: each
/// subsystem is replaced, one component at a time, by the subsystems generated
/// by its simple roots minus one node, or its extended simple roots minus one node.
inline std::vector<SubsystemRecord> closed_subsystems_descent(const RootSystemData& rs) {
  std::map<RootSubset, bool> found;
  RootSubset full(rs.size());
  std::iota(full.begin(), full.end(), std::size_t{0});
  std::vector<RootSubset> queue{canonical_form(rs, full)};
  found[queue.front()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const RootSubset cur = queue[head];
    if (cur.empty()) continue;
    const auto simple = subsystem_simple_roots(rs, cur);
    const auto comps = detail::dynkin_components(rs, simple);
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      const auto& comp = comps[ci];
      RootSubset others;
      for (std::size_t cj = 0; cj < comps.size(); ++cj)
        if (cj != ci) others.insert(others.end(), comps[cj].begin(), comps[cj].end());
      // highest root of the component: its member of largest ambient height
      const auto comp_roots = closure(rs, comp);
      std::size_t theta = comp_roots.front();
      for (auto r : comp_roots)
        if (rs.height(r) > rs.height(theta)) theta = r;
      for (std::size_t drop = 0; drop < comp.size(); ++drop) {
        RootSubset levi = others, extended = others;
        for (std::size_t k = 0; k < comp.size(); ++k)
          if (k != drop) {
            levi.push_back(comp[k]);
            extended.push_back(comp[k]);
          }
        extended.push_back(rs.negate(theta));
        for (const auto& seed : {levi, extended}) {
          auto canon = canonical_form(rs, closure(rs, seed));
          if (found.emplace(canon, true).second) queue.push_back(std::move(canon));
        }
      }
    }
  }
  found.emplace(RootSubset{}, true);
  return detail::finish_records(rs, found);
}

inline constexpr int kExhaustiveRankLimit = 4;
inline constexpr int kDescentRankLimit = 6;

/// Closed subsystems up to W-conjugacy (including the empty one and the whole system).
inline std::vector<SubsystemRecord> closed_subsystems(const RootSystemData& rs) {
  if (rs.rank <= kExhaustiveRankLimit) return closed_subsystems_exhaustive(rs);
  if (rs.rank <= kDescentRankLimit) return closed_subsystems_descent(rs);
  throw ResourceError("closed_subsystems: rank " + std::to_string(rs.rank) + " exceeds the supported limit");
}

}  // namespace mbound
