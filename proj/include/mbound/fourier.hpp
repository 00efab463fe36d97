#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbound/character_table.hpp"
#include "mbound/cyclotomic.hpp"
#include "mbound/finite_group.hpp"

namespace mbound {

/// The finite groups attached to families: trivial, S2^e, S3, S4, S5.
struct GammaType {
  enum class Kind { Trivial, S2Power, Symmetric };
  Kind kind = Kind::Trivial;
  int param = 0;  // e for S2^e, n for S_n

  static GammaType trivial() { return {}; }
  static GammaType s2_power(int e) {
    if (e < 1) throw std::invalid_argument("GammaType: S2 power must be positive");
    return {Kind::S2Power, e};
  }
  static GammaType symmetric(int n) {
    if (n == 2) return s2_power(1);
    if (n < 3 || n > 5) throw std::invalid_argument("GammaType: only S3, S4, S5 are supported");
    return {Kind::Symmetric, n};
  }

  /// Accepts "1", "trivial", "S2", "S2^e", "S3", "S4", "S5".
  static GammaType parse(const std::string& s) {
    if (s == "1" || s == "trivial") return trivial();
    if (s.size() >= 2 && s[0] == 'S') {
      const auto caret = s.find('^');
      try {
        const int n = std::stoi(s.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        if (caret == std::string::npos) return symmetric(n);
        if (n == 2) return s2_power(std::stoi(s.substr(caret + 1)));
      } catch (const std::logic_error&) {
      }
    }
    throw std::invalid_argument("unsupported gamma type '" + s + "'");
  }

  std::string str() const {
    switch (kind) {
      case Kind::Trivial: return "1";
      case Kind::S2Power: return param == 1 ? "S2" : "S2^" + std::to_string(param);
      case Kind::Symmetric: return "S" + std::to_string(param);
    }
    return "?";
  }

  /// Number of elements of M(Gamma).
  std::size_t family_size() const {
    switch (kind) {
      case Kind::Trivial: return 1;
      case Kind::S2Power: {
        std::size_t n = 1;
        for (int i = 0; i < param; ++i) n *= 4;
        return n;
      }
      case Kind::Symmetric: return param == 3 ? 8 : param == 4 ? 21 : 39;
    }
    return 0;
  }

  friend bool operator==(const GammaType&, const GammaType&) = default;
};

/// Generators of S_n on n points.
inline std::vector<Perm> symmetric_group_generators(int n) {
  if (n < 1) throw std::invalid_argument("symmetric_group_generators: n must be positive");
  const auto d = static_cast<std::size_t>(n);
  if (n == 1) return {identity_perm(1)};
  Perm t = identity_perm(d), c(d);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < d; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % d);
  return {t, c};
}

/// Generators of S2^e as a permutation group on 2e points.
inline std::vector<Perm> s2_power_generators(int e) {
  std::vector<Perm> gens;
  const auto d = static_cast<std::size_t>(2 * e);
  for (int i = 0; i < e; ++i) {
    Perm p = identity_perm(d);
    std::swap(p[static_cast<std::size_t>(2 * i)], p[static_cast<std::size_t>(2 * i + 1)]);
    gens.push_back(p);
  }
  return gens;
}

/// An element (x, sigma) of M(Gamma): x a class representative, sigma an irreducible of C(x).
struct MSetElement {
  std::size_t cls = 0;          // class index in Gamma
  FiniteGroup::Index x = 0;     // representative element of Gamma
  std::size_t sigma = 0;        // index into the character table of C(x)
  std::string label;
};

/// Gamma with everything needed to evaluate the pairing.
struct MSetData {
  FiniteGroup group;
  ClassData classes;
  std::vector<FiniteGroup> centralizers;   // per class
  std::vector<CharacterTable> tables;      // per class
  std::vector<MSetElement> elements;

  /// Class index inside C(x_cls) of the given element of Gamma (which must commute with x).
  std::size_t centralizer_class(std::size_t cls, FiniteGroup::Index g) const {
    const auto& C = centralizers[cls];
    return tables[cls].classes->class_of[C.index_checked(group.element(g))];
  }
};

namespace detail {

inline std::string cycle_type(std::span<const std::uint16_t> p) {
  std::vector<int> lens;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  std::string s;
  for (std::size_t i = 0; i < lens.size(); ++i) {
    if (i) s += lens[i - 1] >= 10 || lens[i] >= 10 ? "," : "";
    s += std::to_string(lens[i]);
  }
  return s;
}

}  // namespace detail

/// Builds M(Gamma) ordered by class (representative index, identity first), then by the
/// fixed character-table order of the centralizer.
inline MSetData m_set_data(const FiniteGroup& gamma) {
  MSetData d{gamma, conjugacy_classes(gamma), {}, {}, {}};
  for (std::size_t c = 0; c < d.classes->num_classes(); ++c) {
    const auto x = d.classes->representatives[c];
    d.centralizers.push_back(centralizer(gamma, x));
    d.tables.push_back(character_table(d.centralizers.back()));
    const std::string xs = detail::cycle_type(gamma.element(x));
    for (std::size_t s = 0; s < d.tables.back().size(); ++s)
      d.elements.push_back({c, x, s, "(" + xs + "," + std::to_string(s) + ")"});
  }
  return d;
}

inline std::vector<MSetElement> m_set(const FiniteGroup& gamma) { return m_set_data(gamma).elements; }

/// Lusztig's pairing {(x,s),(y,t)} = |C(x)|^-1 |C(y)|^-1 sum over g with x commuting with
/// g y g^-1 of s(g y g^-1) * conj(t(g^-1 x g)).
inline Cyclotomic pairing(const MSetData& d, const MSetElement& a, const MSetElement& b) {
  const auto& G = d.group;
  std::vector<Cyclotomic> terms;
  for (FiniteGroup::Index g = 0; g < G.size(); ++g) {
    const auto gi = G.inverse(g);
    const auto y_conj = G.multiply(G.multiply(g, b.x), gi);
    if (!G.commute(a.x, y_conj)) continue;
    const auto x_conj = G.multiply(G.multiply(gi, a.x), g);
    terms.push_back(d.tables[a.cls][a.sigma][d.centralizer_class(a.cls, y_conj)] *
                    d.tables[b.cls][b.sigma][d.centralizer_class(b.cls, x_conj)].conj());
  }
  const long denom = static_cast<long>(d.centralizers[a.cls].size() * d.centralizers[b.cls].size());
  std::vector<Rational> weights(terms.size(), Rational(1L, denom));
  return linear_combination(terms, weights);
}

/// Square matrix of cyclotomic numbers, row-major.
struct FourierMatrix {
  std::size_t n = 0;
  std::vector<Cyclotomic> entries;
  std::vector<std::string> labels;

  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  Cyclotomic& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }

  static FourierMatrix identity(std::size_t n) {
    FourierMatrix m{n, std::vector<Cyclotomic>(n * n), std::vector<std::string>(n)};
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1);
    return m;
  }

  friend FourierMatrix operator*(const FourierMatrix& a, const FourierMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("FourierMatrix: size mismatch");
    FourierMatrix out{a.n, std::vector<Cyclotomic>(a.n * a.n), a.labels};
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) {
        Cyclotomic s;
        for (std::size_t k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
        out(i, j) = s;
      }
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }
  bool is_real() const {
    return std::all_of(entries.begin(), entries.end(), [](const Cyclotomic& c) { return c == c.conj(); });
  }
  bool is_involution() const {
    const auto sq = *this * *this;
    return sq.entries == identity(n).entries;
  }
};

/// Kronecker product; labels are concatenated.
inline FourierMatrix kronecker(const FourierMatrix& a, const FourierMatrix& b) {
  FourierMatrix out{a.n * b.n, std::vector<Cyclotomic>(a.n * b.n * a.n * b.n), {}};
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k = 0; k < b.n; ++k) out.labels.push_back(a.labels[i] + b.labels[k]);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      for (std::size_t k = 0; k < b.n; ++k)
        for (std::size_t l = 0; l < b.n; ++l) out(i * b.n + k, j * b.n + l) = a(i, j) * b(k, l);
  return out;
}

/// Full pairing matrix of M(Gamma) in m_set order.
inline FourierMatrix pairing_matrix(const MSetData& d) {
  const std::size_t n = d.elements.size();
  FourierMatrix m{n, std::vector<Cyclotomic>(n * n), {}};
  for (const auto& e : d.elements) m.labels.push_back(e.label);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = pairing(d, d.elements[i], d.elements[j]);
  return m;
}

inline FiniteGroup gamma_group(const GammaType& g) {
  switch (g.kind) {
    case GammaType::Kind::Trivial: return FiniteGroup::enumerate(symmetric_group_generators(1));
    case GammaType::Kind::S2Power: return FiniteGroup::enumerate(s2_power_generators(g.param));
    case GammaType::Kind::Symmetric: return FiniteGroup::enumerate(symmetric_group_generators(g.param));
  }
  throw std::invalid_argument("gamma_group: unsupported");
}

/// A(F) for the given Gamma. S2^e is the e-th Kronecker power of the S2 matrix, so
/// consecutive blocks of four indices share all but the last S2 factor.
inline FourierMatrix fourier_matrix(const GammaType& g) {
  static std::mutex mu;
  static std::map<std::string, FourierMatrix> cache;
  const std::string key = g.str();
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  FourierMatrix m;
  if (g.kind == GammaType::Kind::S2Power && g.param > 1) {
    const auto base = fourier_matrix(GammaType::s2_power(1));
    m = base;
    for (int i = 1; i < g.param; ++i) m = kronecker(m, base);
  } else {
    m = pairing_matrix(m_set_data(gamma_group(g)));
  }
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace mbound
