#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mbound/cyclotomic.hpp"
#include "mbound/finite_group.hpp"
#include "mbound/numtheory.hpp"

namespace mbound {

/// Conjugacy classes of a FiniteGroup.  Classes are ordered by their least
/// element index, which is also the class representative.
struct ConjugacyData {
  std::size_t group_order = 0;
  std::vector<std::vector<FiniteGroup::Index>> classes;
  std::vector<std::uint32_t> class_of;  // element index -> class index
  std::vector<FiniteGroup::Index> representatives;
  std::vector<std::size_t> centralizer_orders;
  std::vector<std::size_t> element_orders;  // order of the representative
  std::vector<std::uint32_t> inverse_class;
  std::size_t exponent = 1;

  std::size_t num_classes() const { return classes.size(); }
  std::size_t class_size(std::size_t c) const { return classes[c].size(); }
};

using ClassData = std::shared_ptr<const ConjugacyData>;

inline ClassData conjugacy_classes(const FiniteGroup& G) {
  auto data = std::make_shared<ConjugacyData>();
  const std::size_t n = G.size();
  data->group_order = n;
  constexpr std::uint32_t kUnset = 0xffffffffU;
  data->class_of.assign(n, kUnset);
  std::vector<Perm> gen_inv;
  for (const auto& s : G.generators()) gen_inv.push_back(invert(s));

  for (FiniteGroup::Index x = 0; x < n; ++x) {
    if (data->class_of[x] != kUnset) continue;
    const auto cls = static_cast<std::uint32_t>(data->classes.size());
    std::vector<FiniteGroup::Index> members{x};
    data->class_of[x] = cls;
    for (std::size_t head = 0; head < members.size(); ++head) {
      auto y = G.element(members[head]);
      for (std::size_t s = 0; s < gen_inv.size(); ++s) {
        const auto z = G.index_checked(compose(compose(G.generators()[s], y), gen_inv[s]));
        if (data->class_of[z] == kUnset) {
          data->class_of[z] = cls;
          members.push_back(z);
        }
      }
    }
    std::sort(members.begin(), members.end());
    data->representatives.push_back(x);
    data->centralizer_orders.push_back(n / members.size());
    data->element_orders.push_back(G.order_of(x));
    data->classes.push_back(std::move(members));
  }
  for (auto o : data->element_orders)
    data->exponent = static_cast<std::size_t>(nt::lcm(static_cast<std::int64_t>(data->exponent), static_cast<std::int64_t>(o)));
  for (auto r : data->representatives) data->inverse_class.push_back(data->class_of[G.inverse(r)]);
  return data;
}

/// A class function: one value per conjugacy class.
class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(ClassData classes, std::vector<Cyclotomic> values)
      : classes_(std::move(classes)), values_(std::move(values)) {
    if (!classes_ || values_.size() != classes_->num_classes())
      throw std::invalid_argument("ClassFunction: value count does not match class count");
  }

  static ClassFunction constant(ClassData classes, const Cyclotomic& v) {
    std::vector<Cyclotomic> vals(classes->num_classes(), v);
    return {std::move(classes), std::move(vals)};
  }

  /// Regular character: |G| at the identity, 0 elsewhere.
  static ClassFunction regular(ClassData classes) {
    std::vector<Cyclotomic> vals(classes->num_classes());
    vals[0] = Cyclotomic(static_cast<long>(classes->group_order));
    return {std::move(classes), std::move(vals)};
  }

  const ClassData& classes() const { return classes_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t c) const { return values_[c]; }
  const Cyclotomic& degree() const { return values_[0]; }
  std::size_t size() const { return values_.size(); }

  ClassFunction conj() const {
    std::vector<Cyclotomic> v;
    v.reserve(values_.size());
    for (const auto& x : values_) v.push_back(x.conj());
    return {classes_, std::move(v)};
  }

  friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
    check_same(a, b);
    std::vector<Cyclotomic> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return {a.classes_, std::move(v)};
  }
  friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
    check_same(a, b);
    std::vector<Cyclotomic> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a.values_[i] - b.values_[i];
    return {a.classes_, std::move(v)};
  }
  friend ClassFunction operator*(const Cyclotomic& s, const ClassFunction& a) {
    std::vector<Cyclotomic> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = s * a.values_[i];
    return {a.classes_, std::move(v)};
  }
  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.classes_ == b.classes_ && a.values_ == b.values_;
  }

  static void check_same(const ClassFunction& a, const ClassFunction& b) {
    if (a.classes_ != b.classes_) throw std::invalid_argument("ClassFunction: functions live on different groups");
  }

 private:
  ClassData classes_;
  std::vector<Cyclotomic> values_;
};

/// <a, b> = |G|^{-1} sum_g a(g) conj(b(g)).
inline Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  ClassFunction::check_same(a, b);
  const auto& cd = *a.classes();
  std::vector<Cyclotomic> products;
  std::vector<Rational> weights;
  products.reserve(a.size());
  weights.reserve(a.size());
  const Rational inv_order(1L, static_cast<long>(cd.group_order));
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c].is_zero() || b[c].is_zero()) continue;
    products.push_back(a[c] * b[c].conj());
    weights.push_back(Rational(static_cast<long>(cd.class_size(c))) * inv_order);
  }
  return linear_combination(products, weights);
}

/// Inner product that must be an integer (e.g. between genuine or virtual characters).
inline std::int64_t integer_inner_product(const ClassFunction& a, const ClassFunction& b) {
  auto v = inner_product(a, b).as_rational();
  if (!v || !v->is_integer()) throw std::logic_error("integer_inner_product: value is not an integer");
  return v->to_int64();
}

struct CharacterTable {
  ClassData classes;
  std::vector<ClassFunction> irreducibles;

  std::size_t size() const { return irreducibles.size(); }
  const ClassFunction& operator[](std::size_t i) const { return irreducibles[i]; }

  /// Multiplicity of each irreducible in a (virtual) character.
  std::vector<std::int64_t> decompose(const ClassFunction& chi) const {
    std::vector<std::int64_t> out;
    out.reserve(irreducibles.size());
    for (const auto& irr : irreducibles) out.push_back(integer_inner_product(chi, irr));
    return out;
  }
};

namespace detail {

class ModMatrix {
 public:
  ModMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<std::int64_t> data_;
};

// Row-reduces a list of row vectors in place; returns pivot columns.  Zero rows are dropped.
inline std::vector<std::size_t> rref(std::vector<std::vector<std::int64_t>>& rows, std::int64_t p) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const std::int64_t inv = nt::inv_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::int64_t f = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k) rows[i][k] = nt::mod(rows[i][k] - f * rows[r][k], p);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Basis of the null space of a square matrix A (as rows of the returned list).
inline std::vector<std::vector<std::int64_t>> null_space(const ModMatrix& A, std::int64_t p) {
  const std::size_t n = A.cols();
  std::vector<std::vector<std::int64_t>> rows(A.rows(), std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = A(i, j);
  auto pivots = rref(rows, p);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = nt::mod(-rows[r][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::int64_t dixon_prime(std::size_t exponent, std::size_t order) {
  const auto e = static_cast<std::int64_t>(exponent);
  for (std::int64_t p = e + 1;; p += e) {
    if (p * p > 4 * static_cast<std::int64_t>(order) && nt::is_prime(p)) return p;
  }
}

}  // namespace detail

/// Exact character table by the Dixon-Schneider method.
///
/// Class-sum structure constants are diagonalized simultaneously over F_p
/// (p = 1 mod exponent, p > 2 sqrt|G|), and each modular character value is
/// lifted to a sum of roots of unity from its eigenvalue multiplicities.
/// Irreducibles are sorted by degree, then by value sequence in class order.
inline CharacterTable character_table(const FiniteGroup& G, ClassData classes) {
  const auto& cd = *classes;
  const std::size_t k = cd.num_classes();
  const std::size_t order = cd.group_order;
  const std::int64_t p = detail::dixon_prime(cd.exponent, order);

  std::vector<FiniteGroup::Index> inverse_elt(order);
  for (FiniteGroup::Index g = 0; g < order; ++g) inverse_elt[g] = G.inverse(g);

  auto class_matrix = [&](std::size_t j) {
    detail::ModMatrix M(k, k);
    for (std::size_t b = 0; b < k; ++b) {
      auto gb = G.element(cd.representatives[b]);
      for (auto x : cd.classes[j]) {
        const auto y = G.index_checked(compose(G.element(inverse_elt[x]), gb));
        M(cd.class_of[y], b) += 1;
      }
    }
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) M(r, c) %= p;
    return M;
  };

  // Common eigenspaces, each stored as rows of an RREF basis.
  std::vector<std::vector<std::vector<std::int64_t>>> spaces;
  {
    std::vector<std::vector<std::int64_t>> full(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  auto all_split = [&] {
    return std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; });
  };

  for (std::size_t j = 1; j < k && !all_split(); ++j) {
    const auto M = class_matrix(j);
    std::vector<std::vector<std::vector<std::int64_t>>> next;
    for (auto& basis : spaces) {
      if (basis.size() == 1) { next.push_back(std::move(basis)); continue; }
      const std::size_t d = basis.size();
      std::vector<std::size_t> piv(d);
      for (std::size_t l = 0; l < d; ++l)
        piv[l] = static_cast<std::size_t>(std::find_if(basis[l].begin(), basis[l].end(), [](auto v) { return v != 0; }) - basis[l].begin());
      // Restriction of M to the subspace in pivot coordinates.
      detail::ModMatrix R(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t l = 0; l < d; ++l) {
          __int128 acc = 0;
          for (std::size_t c = 0; c < k; ++c) acc += static_cast<__int128>(M(piv[l], c)) * basis[i][c];
          R(l, i) = static_cast<std::int64_t>(acc % p);
        }
      }
      std::size_t found = 0;
      for (std::int64_t lambda = 0; lambda < p && found < d; ++lambda) {
        detail::ModMatrix S = R;
        for (std::size_t i = 0; i < d; ++i) S(i, i) = nt::mod(S(i, i) - lambda, p);
        auto ns = detail::null_space(S, p);
        if (ns.empty()) continue;
        found += ns.size();
        std::vector<std::vector<std::int64_t>> sub;
        for (const auto& y : ns) {
          std::vector<std::int64_t> v(k, 0);
          for (std::size_t l = 0; l < d; ++l)
            for (std::size_t c = 0; c < k; ++c) v[c] = (v[c] + y[l] * basis[l][c]) % p;
          sub.push_back(std::move(v));
        }
        detail::rref(sub, p);
        next.push_back(std::move(sub));
      }
      if (found != d) throw std::logic_error("character_table: class matrix not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  if (!all_split() || spaces.size() != k) throw std::logic_error("character_table: eigenspaces did not split");

  // Power maps, computed once per class.
  std::vector<std::vector<std::uint32_t>> power_class(k);
  for (std::size_t a = 0; a < k; ++a) {
    const auto o = cd.element_orders[a];
    Perm cur = identity_perm(G.degree());
    for (std::size_t l = 0; l < o; ++l) {
      power_class[a].push_back(cd.class_of[G.index_checked(cur)]);
      cur = compose(cur, G.element(cd.representatives[a]));
    }
  }

  const std::int64_t z = nt::pow_mod(nt::primitive_root(p), (p - 1) / static_cast<std::int64_t>(cd.exponent), p);
  const auto order_mod = static_cast<std::int64_t>(order) % p;
  std::vector<ClassFunction> irr;
  for (auto& s : spaces) {
    auto omega = s.front();
    const std::int64_t scale = nt::inv_mod(omega[0], p);
    for (auto& v : omega) v = v * scale % p;
    std::int64_t sum = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const std::int64_t term = omega[a] * omega[cd.inverse_class[a]] % p * nt::inv_mod(static_cast<std::int64_t>(cd.class_size(a)), p) % p;
      sum = (sum + term) % p;
    }
    const std::int64_t deg_sq = order_mod * nt::inv_mod(sum, p) % p;
    std::int64_t degree = 0;
    for (std::int64_t d = 1; d * d <= static_cast<std::int64_t>(order); ++d) {
      if (order % static_cast<std::size_t>(d) == 0 && d * d % p == deg_sq) { degree = d; break; }
    }
    if (degree == 0) throw std::logic_error("character_table: degree lift failed");
    std::vector<std::int64_t> modval(k);
    for (std::size_t a = 0; a < k; ++a)
      modval[a] = degree * omega[a] % p * nt::inv_mod(static_cast<std::int64_t>(cd.class_size(a)), p) % p;

    std::vector<Cyclotomic> values(k);
    for (std::size_t a = 0; a < k; ++a) {
      const auto o = static_cast<std::int64_t>(cd.element_orders[a]);
      const std::int64_t zo = nt::pow_mod(z, static_cast<std::int64_t>(cd.exponent) / o, p);
      const std::int64_t inv_o = nt::inv_mod(o, p);
      std::vector<Rational> mult(static_cast<std::size_t>(o));
      std::int64_t total = 0;
      for (std::int64_t e = 0; e < o; ++e) {
        std::int64_t acc = 0;
        for (std::int64_t l = 0; l < o; ++l)
          acc = (acc + modval[power_class[a][l]] * nt::pow_mod(zo, nt::mod(-e * l, o), p)) % p;
        const std::int64_t m = acc * inv_o % p;
        if (m > degree) throw std::logic_error("character_table: eigenvalue multiplicity lift failed");
        total += m;
        mult[static_cast<std::size_t>(e)] = Rational(static_cast<long>(m));
      }
      if (total != degree) throw std::logic_error("character_table: multiplicities do not sum to the degree");
      values[a] = Cyclotomic::from_dense(static_cast<int>(o), std::move(mult));
    }
    irr.emplace_back(classes, std::move(values));
  }

  std::sort(irr.begin(), irr.end(), [](const ClassFunction& x, const ClassFunction& y) {
    const auto dx = *x.degree().as_rational(), dy = *y.degree().as_rational();
    if (dx != dy) return dx < dy;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const int r = compare(x[c], y[c]);
      if (r != 0) return r < 0;
    }
    return false;
  });
  return {std::move(classes), std::move(irr)};
}

inline CharacterTable character_table(const FiniteGroup& G) { return character_table(G, conjugacy_classes(G)); }

/// Permutation character of G on {0..degree-1}: number of fixed points.
inline ClassFunction permutation_character(const FiniteGroup& G, const ClassData& classes) {
  std::vector<Cyclotomic> vals;
  for (auto r : classes->representatives) {
    auto e = G.element(r);
    long fixed = 0;
    for (std::size_t i = 0; i < e.size(); ++i) fixed += (e[i] == i);
    vals.emplace_back(fixed);
  }
  return {classes, std::move(vals)};
}

}  // namespace mbound
