#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbound/errors.hpp"
#include "mbound/numtheory.hpp"

namespace mbound {

using Perm = std::vector<std::uint16_t>;

inline constexpr std::size_t kDefaultOrderCap = 1'000'000;

/// (a*b)(i) = a(b(i)): b acts first.
inline Perm compose(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Perm invert(std::span<const std::uint16_t> a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::uint16_t>(i);
  return out;
}

inline Perm identity_perm(std::size_t degree) {
  Perm out(degree);
  std::iota(out.begin(), out.end(), std::uint16_t{0});
  return out;
}

inline bool is_permutation(std::span<const std::uint16_t> a) {
  std::vector<bool> seen(a.size(), false);
  for (auto v : a) {
    if (v >= a.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// A permutation group stored as its full element list.
///
/// Elements are numbered in breadth-first order from the identity (index 0)
/// using right multiplication by the generators.
class FiniteGroup {
 public:
  using Index = std::uint32_t;

  static FiniteGroup enumerate(std::size_t degree, std::span<const Perm> generators,
                               std::size_t order_cap = kDefaultOrderCap) {
    if (degree == 0 || degree > 65535) throw std::invalid_argument("FiniteGroup: unsupported degree");
    for (const auto& g : generators) {
      if (g.size() != degree || !is_permutation(g))
        throw std::invalid_argument("FiniteGroup: generator is not a permutation of the common degree");
    }
    FiniteGroup G;
    G.degree_ = degree;
    G.generators_.assign(generators.begin(), generators.end());
    G.insert(identity_perm(degree));
    for (std::size_t head = 0; head < G.size(); ++head) {
      for (const auto& s : G.generators_) {
        Perm y = compose(G.element(static_cast<Index>(head)), s);
        if (!G.index_of(y)) {
          if (G.size() >= order_cap)
            throw ResourceError("FiniteGroup: order exceeds cap of " + std::to_string(order_cap));
          G.insert(y);
        }
      }
    }
    return G;
  }

  static FiniteGroup enumerate(std::span<const Perm> generators, std::size_t order_cap = kDefaultOrderCap) {
    if (generators.empty()) throw std::invalid_argument("FiniteGroup: need at least one generator");
    return enumerate(generators.front().size(), generators, order_cap);
  }

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return storage_.size() / degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  std::span<const std::uint16_t> element(Index i) const {
    return {storage_.data() + static_cast<std::size_t>(i) * degree_, degree_};
  }
  Perm element_copy(Index i) const {
    auto e = element(i);
    return {e.begin(), e.end()};
  }

  std::optional<Index> index_of(std::span<const std::uint16_t> p) const {
    if (p.size() != degree_ || table_.empty()) return std::nullopt;
    std::size_t mask = table_.size() - 1;
    for (std::size_t slot = hash(p) & mask;; slot = (slot + 1) & mask) {
      const Index v = table_[slot];
      if (v == 0) return std::nullopt;
      auto e = element(v - 1);
      if (std::equal(e.begin(), e.end(), p.begin())) return v - 1;
    }
  }

  Index index_checked(std::span<const std::uint16_t> p) const {
    auto i = index_of(p);
    if (!i) throw std::invalid_argument("FiniteGroup: permutation is not a group element");
    return *i;
  }

  Index multiply(Index a, Index b) const { return index_checked(compose(element(a), element(b))); }
  Index inverse(Index a) const { return index_checked(invert(element(a))); }

  Index power(Index a, std::int64_t e) const {
    const auto n = static_cast<std::int64_t>(order_of(a));
    e = nt::mod(e, n);
    Perm acc = identity_perm(degree_);
    for (std::int64_t i = 0; i < e; ++i) acc = compose(acc, element(a));
    return index_checked(acc);
  }

  std::size_t order_of(Index a) const {
    auto e = element(a);
    std::size_t result = 1;
    std::vector<bool> seen(degree_, false);
    for (std::size_t i = 0; i < degree_; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = e[j]) { seen[j] = true; ++len; }
      result = static_cast<std::size_t>(nt::lcm(static_cast<std::int64_t>(result), static_cast<std::int64_t>(len)));
    }
    return result;
  }

  bool commute(Index a, Index b) const {
    auto x = element(a), y = element(b);
    for (std::size_t i = 0; i < degree_; ++i)
      if (x[y[i]] != y[x[i]]) return false;
    return true;
  }

 private:
  static std::size_t hash(std::span<const std::uint16_t> p) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : p) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  void insert(const Perm& p) {
    storage_.insert(storage_.end(), p.begin(), p.end());
    if (2 * size() > table_.size()) rehash(std::max<std::size_t>(16, 4 * size()));
    else place(static_cast<Index>(size() - 1));
  }

  void place(Index i) {
    std::size_t mask = table_.size() - 1;
    std::size_t slot = hash(element(i)) & mask;
    while (table_[slot] != 0) slot = (slot + 1) & mask;
    table_[slot] = i + 1;
  }

  void rehash(std::size_t min_capacity) {
    std::size_t cap = 16;
    while (cap < min_capacity) cap *= 2;
    table_.assign(cap, 0);
    for (Index i = 0; i < size(); ++i) place(i);
  }

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<std::uint16_t> storage_;
  std::vector<Index> table_;
};

/// Subgroup of elements commuting with x, as a new group on the same degree.
inline FiniteGroup centralizer(const FiniteGroup& G, FiniteGroup::Index x) {
  std::vector<FiniteGroup::Index> members;
  for (FiniteGroup::Index g = 0; g < G.size(); ++g)
    if (G.commute(g, x)) members.push_back(g);
  // Greedy generating set: add an element whenever it is not yet generated.
  std::vector<Perm> gens;
  FiniteGroup H = FiniteGroup::enumerate(G.degree(), gens);
  for (auto g : members) {
    if (H.size() == members.size()) break;
    if (H.index_of(G.element(g))) continue;
    gens.push_back(G.element_copy(g));
    H = FiniteGroup::enumerate(G.degree(), gens);
  }
  return H;
}

}  // namespace mbound
