#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbound/character_table.hpp"
#include "mbound/finite_field.hpp"
#include "mbound/finite_group.hpp"
#include "mbound/table_cache.hpp"

namespace mbound {

/// 2x2 matrix [[a, b], [c, d]] over a FiniteField.
struct Mat2 {
  int a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline const std::vector<int>& supported_gl2_orders() {
  static const std::vector<int> v{2, 3, 4, 5, 7, 8, 9};
  return v;
}

/// GL2(F_q) as a permutation group on the q^2 - 1 nonzero column vectors, with
/// its tori, Borel subgroup and (lazily) its character table.
class Gl2Instance {
 public:
  using Index = FiniteGroup::Index;

  Gl2Instance(int q, TableCache cache = TableCache::disabled())
      : q_(check_q(q)), F_(FiniteField::make(q)), E_(F_), cache_(std::move(cache)) {
    vec_index_.assign(static_cast<std::size_t>(q * q), -1);
    for (int y = 0; y < q; ++y)
      for (int x = 0; x < q; ++x) {
        if (x == 0 && y == 0) continue;
        vec_index_[static_cast<std::size_t>(x + q * y)] = static_cast<int>(vectors_.size());
        vectors_.push_back({x, y});
      }
    const int g = F_.generator();
    std::vector<Perm> gens{perm_of({1, 1, 0, 1}), perm_of({1, 0, 1, 1}), perm_of({g, 0, 0, 1})};
    group_ = std::make_shared<const FiniteGroup>(FiniteGroup::enumerate(gens));
    const auto expected = static_cast<std::size_t>((q * q - 1) * (q * q - q));
    if (group_->size() != expected) throw std::logic_error("Gl2Instance: generators do not give GL2");
    classes_ = conjugacy_classes(*group_);

    for (int i = 0; i < q - 1; ++i)
      for (int j = 0; j < q - 1; ++j) split_torus_.push_back(element_of({F_.pow(g, i), 0, 0, F_.pow(g, j)}));
    for (int k = 0; k < q * q - 1; ++k) {
      const auto m = E_.matrix(E_.power(E_.generator(), k));
      nonsplit_torus_.push_back(element_of({m[0], m[1], m[2], m[3]}));
    }
    for (Index e = 0; e < group_->size(); ++e) {
      const auto m = matrix_of(e);
      if (m.c == 0) borel_.push_back(e);
      if ((m.b == 0 && m.c == 0) || (m.a == 0 && m.d == 0)) normalizer_.push_back(e);
    }
  }

  int q() const { return q_; }
  const FiniteField& field() const { return F_; }
  const QuadraticExtension& extension() const { return E_; }
  const FiniteGroup& group() const { return *group_; }
  const ClassData& classes() const { return classes_; }
  const std::vector<std::pair<int, int>>& vectors() const { return vectors_; }

  /// Split torus: entry i*(q-1)+j is diag(g^i, g^j) for the field generator g.
  const std::vector<Index>& split_torus() const { return split_torus_; }
  /// Nonsplit torus: entry k is multiplication by eps^k on F_{q^2} = F_q + F_q t.
  const std::vector<Index>& nonsplit_torus() const { return nonsplit_torus_; }
  /// Upper triangular matrices.
  const std::vector<Index>& borel() const { return borel_; }
  /// Monomial matrices, the normalizer of the split torus.
  const std::vector<Index>& torus_normalizer() const { return normalizer_; }

  const CharacterTable& table() const {
    std::call_once(table_once_, [this] { table_ = std::make_shared<const CharacterTable>(cache_.get(*group_, classes_)); });
    return *table_;
  }

  Mat2 mul(const Mat2& x, const Mat2& y) const {
    return {F_.add(F_.mul(x.a, y.a), F_.mul(x.b, y.c)), F_.add(F_.mul(x.a, y.b), F_.mul(x.b, y.d)),
            F_.add(F_.mul(x.c, y.a), F_.mul(x.d, y.c)), F_.add(F_.mul(x.c, y.b), F_.mul(x.d, y.d))};
  }
  int det(const Mat2& m) const { return F_.sub(F_.mul(m.a, m.d), F_.mul(m.b, m.c)); }
  int trace(const Mat2& m) const { return F_.add(m.a, m.d); }

  std::pair<int, int> apply(const Mat2& m, std::pair<int, int> v) const {
    return {F_.add(F_.mul(m.a, v.first), F_.mul(m.b, v.second)), F_.add(F_.mul(m.c, v.first), F_.mul(m.d, v.second))};
  }

  Perm perm_of(const Mat2& m) const {
    if (det(m) == 0) throw std::invalid_argument("Gl2Instance: singular matrix");
    Perm p(vectors_.size());
    for (std::size_t i = 0; i < vectors_.size(); ++i) p[i] = static_cast<std::uint16_t>(vector_index(apply(m, vectors_[i])));
    return p;
  }

  Index element_of(const Mat2& m) const { return group_->index_checked(perm_of(m)); }

  /// Columns are the images of e1 = (1,0) and e2 = (0,1).
  Mat2 matrix_of(Index e) const {
    const auto p = group_->element(e);
    const auto c1 = vectors_[p[static_cast<std::size_t>(vector_index({1, 0}))]];
    const auto c2 = vectors_[p[static_cast<std::size_t>(vector_index({0, 1}))]];
    return {c1.first, c2.first, c1.second, c2.second};
  }

  int vector_index(std::pair<int, int> v) const {
    const int i = vec_index_[static_cast<std::size_t>(v.first + q_ * v.second)];
    if (i < 0) throw std::invalid_argument("Gl2Instance: zero vector");
    return i;
  }

  /// Lines of F_q^2 as normalized spanning vectors: (1, y) for each y, then (0, 1).
  std::vector<std::pair<int, int>> lines() const {
    std::vector<std::pair<int, int>> out;
    for (int y = 0; y < q_; ++y) out.push_back({1, y});
    out.push_back({0, 1});
    return out;
  }

 private:
  static int check_q(int q) {
    const auto& s = supported_gl2_orders();
    if (std::find(s.begin(), s.end(), q) == s.end())
      throw std::invalid_argument("GL2 oracle supports q in {2,3,4,5,7,8,9}, got " + std::to_string(q));
    return q;
  }

  int q_;
  FiniteField F_;
  QuadraticExtension E_;
  TableCache cache_;
  std::vector<std::pair<int, int>> vectors_;
  std::vector<int> vec_index_;
  std::shared_ptr<const FiniteGroup> group_;
  ClassData classes_;
  std::vector<Index> split_torus_, nonsplit_torus_, borel_, normalizer_;
  mutable std::once_flag table_once_;
  mutable std::shared_ptr<const CharacterTable> table_;
};

inline std::shared_ptr<const Gl2Instance> build_instance(int q, TableCache cache = TableCache::disabled()) {
  return std::make_shared<const Gl2Instance>(q, std::move(cache));
}

/// Process-wide memo of instances so independent callers share one table per (q, cache).
inline std::shared_ptr<const Gl2Instance> shared_instance(int q, const TableCache& cache = TableCache::disabled()) {
  static std::mutex mu;
  static std::map<std::pair<int, std::string>, std::shared_ptr<const Gl2Instance>> memo;
  const std::pair<int, std::string> key{q, cache.enabled() ? cache.directory()->string() : std::string()};
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto made = build_instance(q, cache);
  std::lock_guard lock(mu);
  return memo.emplace(key, made).first->second;
}

/// G acting on left cosets gH of a subgroup H.
struct SphericalSpace {
  static constexpr std::uint32_t kNone = 0xffffffffU;

  std::string label;
  std::vector<FiniteGroup::Index> subgroup;
  std::vector<std::uint32_t> coset_of;             // element -> coset containing it
  std::vector<FiniteGroup::Index> representatives;  // least element of each coset

  std::size_t size() const { return representatives.size(); }
  /// Image of coset x under g.
  std::uint32_t act(const FiniteGroup& G, FiniteGroup::Index g, std::uint32_t x) const {
    return coset_of[G.multiply(g, representatives[x])];
  }
};

inline const std::vector<std::string>& space_labels() {
  static const std::vector<std::string> v{"flag", "split-torus", "torus-normalizer"};
  return v;
}

inline SphericalSpace coset_space(const Gl2Instance& inst, std::string label, std::vector<FiniteGroup::Index> H) {
  const auto& G = inst.group();
  SphericalSpace s{std::move(label), std::move(H), std::vector<std::uint32_t>(G.size(), SphericalSpace::kNone), {}};
  if (s.subgroup.empty()) return s;
  for (FiniteGroup::Index g = 0; g < G.size(); ++g) {
    if (s.coset_of[g] != SphericalSpace::kNone) continue;
    const auto id = static_cast<std::uint32_t>(s.representatives.size());
    s.representatives.push_back(g);
    for (auto h : s.subgroup) {
      const auto gh = G.multiply(g, h);
      if (s.coset_of[gh] != SphericalSpace::kNone) throw std::invalid_argument("coset_space: not a subgroup");
      s.coset_of[gh] = id;
    }
  }
  return s;
}

/// flag = G/B, split-torus = G/T, torus-normalizer = G/N(T), point = G/G; "empty" has no points.
inline SphericalSpace make_space(const Gl2Instance& inst, const std::string& label) {
  if (label == "flag") return coset_space(inst, label, inst.borel());
  if (label == "split-torus") return coset_space(inst, label, inst.split_torus());
  if (label == "torus-normalizer") return coset_space(inst, label, inst.torus_normalizer());
  if (label == "point") {
    std::vector<FiniteGroup::Index> all(inst.group().size());
    for (FiniteGroup::Index g = 0; g < all.size(); ++g) all[g] = g;
    return coset_space(inst, label, std::move(all));
  }
  if (label == "empty") return coset_space(inst, label, {});
  throw std::invalid_argument("unknown space '" + label + "' (expected flag, split-torus or torus-normalizer)");
}

/// Number of cosets fixed by each class representative.
inline ClassFunction perm_character(const Gl2Instance& inst, const SphericalSpace& space) {
  const auto& cd = *inst.classes();
  std::vector<Cyclotomic> vals;
  for (auto r : cd.representatives) {
    long fixed = 0;
    for (std::uint32_t x = 0; x < space.size(); ++x) fixed += space.act(inst.group(), r, x) == x;
    vals.emplace_back(fixed);
  }
  return {inst.classes(), std::move(vals)};
}

enum class TorusKind { Split, Nonsplit };

inline std::string torus_name(TorusKind k) { return k == TorusKind::Split ? "split" : "nonsplit"; }

/// Number of characters of the torus: (q-1)^2 for split, q^2-1 for nonsplit.
inline int torus_character_count(int q, TorusKind k) { return k == TorusKind::Split ? (q - 1) * (q - 1) : q * q - 1; }

/// |{w in W(T) : w theta = theta}|: the swap for split tori, Frobenius for nonsplit.
inline std::int64_t dl_expected_norm(int q, TorusKind k, int theta) {
  if (k == TorusKind::Split) return theta / (q - 1) == theta % (q - 1) ? 2 : 1;
  return (static_cast<std::int64_t>(theta) * (q - 1)) % (q * q - 1) == 0 ? 2 : 1;
}

/// Deligne-Lusztig virtual character R_T(theta).
///
/// Split: theta = j1*(q-1) + j2 is diag(x, y) -> a(x) b(y) with a = zeta^j1, b = zeta^j2
/// on log coordinates, and R_T(theta) is induced from the Borel subgroup, so its value
/// at g sums a(lambda) b(det g / lambda) over the g-stable lines with eigenvalue lambda.
/// Nonsplit: theta = j is eps^k -> zeta_{q^2-1}^{jk}, and values follow the Deligne-Lusztig
/// sign with R_T(1) = 1 - St: (1-q) theta(z) on central z, theta(z) on z times a nontrivial
/// unipotent, 0 on noncentral split semisimple elements, theta(l) + theta(l^q) on elliptic
/// elements with eigenvalues l, l^q. The norm is checked against dl_expected_norm.
inline ClassFunction dl_character(const Gl2Instance& inst, TorusKind kind, int theta) {
  const int q = inst.q();
  const auto& F = inst.field();
  if (theta < 0 || theta >= torus_character_count(q, kind))
    throw std::invalid_argument("dl_character: character index " + std::to_string(theta) + " out of range for the " +
                                torus_name(kind) + " torus");
  const auto& cd = *inst.classes();
  std::vector<Cyclotomic> vals;
  vals.reserve(cd.num_classes());
  if (kind == TorusKind::Split) {
    const int j1 = theta / (q - 1), j2 = theta % (q - 1);
    for (auto r : cd.representatives) {
      const auto m = inst.matrix_of(r);
      const int dt = inst.det(m);
      std::vector<Cyclotomic> terms;
      for (const auto& v : inst.lines()) {
        const auto w = inst.apply(m, v);
        if (F.sub(F.mul(w.first, v.second), F.mul(w.second, v.first)) != 0) continue;
        const int lambda = v.first != 0 ? F.mul(w.first, F.inv(v.first)) : F.mul(w.second, F.inv(v.second));
        const int mu = F.mul(dt, F.inv(lambda));
        terms.push_back(Cyclotomic::root_of_unity(q - 1, j1 * F.log(lambda) + j2 * F.log(mu)));
      }
      vals.push_back(linear_combination(terms, std::vector<Rational>(terms.size(), Rational(1))));
    }
  } else {
    const int n = q * q - 1;
    // Elliptic classes are determined by (trace, det); look the exponent up on the torus.
    std::map<std::pair<int, int>, int> torus_log;
    for (int k = 0; k < n; ++k) {
      const auto m = inst.matrix_of(inst.nonsplit_torus()[static_cast<std::size_t>(k)]);
      torus_log.emplace(std::pair{inst.trace(m), inst.det(m)}, k);
    }
    const auto& E = inst.extension();
    auto theta_of_scalar = [&](int z) {
      return Cyclotomic::root_of_unity(n, static_cast<std::int64_t>(theta) * E.log({z, 0}));
    };
    for (auto r : cd.representatives) {
      const auto m = inst.matrix_of(r);
      const int tr = inst.trace(m), dt = inst.det(m);
      std::vector<int> roots;
      for (int x = 0; x < q; ++x)
        if (F.add(F.sub(F.mul(x, x), F.mul(tr, x)), dt) == 0) roots.push_back(x);
      if (roots.empty()) {
        const int k = torus_log.at({tr, dt});
        vals.push_back(Cyclotomic::root_of_unity(n, static_cast<std::int64_t>(theta) * k) +
                       Cyclotomic::root_of_unity(n, static_cast<std::int64_t>(theta) * k * q));
      } else if (roots.size() == 2) {
        vals.emplace_back(0);
      } else if (m.b == 0 && m.c == 0) {
        vals.push_back(Rational(1 - q) * theta_of_scalar(roots.front()));
      } else {
        vals.push_back(theta_of_scalar(roots.front()));
      }
    }
  }
  ClassFunction R(inst.classes(), std::move(vals));
  const auto norm = integer_inner_product(R, R);
  if (norm != dl_expected_norm(q, kind, theta))
    throw std::logic_error("dl_character: norm check failed for " + torus_name(kind) + " theta " + std::to_string(theta));
  return R;
}

/// <chi, pi> for every irreducible chi, in table order.
inline std::vector<std::int64_t> multiplicities(const Gl2Instance& inst, const SphericalSpace& space) {
  const auto m = inst.table().decompose(perm_character(inst, space));
  for (auto v : m)
    if (v < 0) throw std::logic_error("multiplicities: negative multiplicity in a permutation character");
  return m;
}

struct DlWitness {
  std::string torus;
  int theta = 0;
  std::int64_t value = 0;  // <R_T(theta), pi>
  friend bool operator==(const DlWitness&, const DlWitness&) = default;
};

struct DlBoundReport {
  int q = 0;
  std::string space;
  std::int64_t c = 0;
  std::int64_t max_abs = 0;
  DlWitness argmax;                 // first pair attaining max_abs
  std::vector<DlWitness> violations;  // pairs with |value| > c, up to kMaxViolations
  std::size_t characters_checked = 0;
  bool pass = false;

  static constexpr std::size_t kMaxViolations = 16;
  friend bool operator==(const DlBoundReport&, const DlBoundReport&) = default;
};

/// Checks |<R_T(theta), pi>| <= c over both tori and all theta.
inline DlBoundReport verify_dl_bound(const Gl2Instance& inst, const SphericalSpace& space, std::int64_t c) {
  const auto pi = perm_character(inst, space);
  DlBoundReport rep;
  rep.q = inst.q();
  rep.space = space.label;
  rep.c = c;
  bool first = true;
  for (auto kind : {TorusKind::Split, TorusKind::Nonsplit}) {
    for (int t = 0; t < torus_character_count(inst.q(), kind); ++t) {
      const auto v = integer_inner_product(dl_character(inst, kind, t), pi);
      const DlWitness w{torus_name(kind), t, v};
      ++rep.characters_checked;
      if (first || std::llabs(v) > rep.max_abs) {
        rep.max_abs = std::llabs(v);
        rep.argmax = w;
        first = false;
      }
      if (std::llabs(v) > c && rep.violations.size() < DlBoundReport::kMaxViolations) rep.violations.push_back(w);
    }
  }
  rep.pass = rep.max_abs <= c;
  return rep;
}

struct TheoremARow {
  int q = 0;
  std::int64_t max_multiplicity = 0;
  std::int64_t argmax_degree = 0;  // degree of the first irreducible attaining the maximum
  std::size_t argmax_index = 0;    // its position in the character table
  std::size_t num_irreducibles = 0;
  std::size_t space_size = 0;
  friend bool operator==(const TheoremARow&, const TheoremARow&) = default;
};

struct TheoremAReport {
  std::string space;
  std::int64_t C = 0;
  std::vector<TheoremARow> rows;
  std::int64_t max_multiplicity = 0;
  bool constant_in_q = false;
  bool pass_strict = false;     // every multiplicity < C
  bool pass_nonstrict = false;  // every multiplicity <= C
  friend bool operator==(const TheoremAReport&, const TheoremAReport&) = default;
};

inline TheoremARow theorem_a_row(const Gl2Instance& inst, const std::string& label) {
  const auto space = make_space(inst, label);
  const auto m = multiplicities(inst, space);
  TheoremARow row;
  row.q = inst.q();
  row.num_irreducibles = m.size();
  row.space_size = space.size();
  const auto it = std::max_element(m.begin(), m.end());
  row.max_multiplicity = *it;
  row.argmax_index = static_cast<std::size_t>(it - m.begin());
  row.argmax_degree = inst.table()[row.argmax_index].degree().as_rational()->to_int64();
  return row;
}

/// Maximum multiplicity per q (instances built in parallel), compared with C under both readings.
inline TheoremAReport verify_theorem_a(const std::string& label, std::vector<int> qs, std::int64_t C,
                                       const TableCache& cache = TableCache::disabled()) {
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  std::vector<std::future<TheoremARow>> jobs;
  for (int q : qs) jobs.push_back(std::async(std::launch::async, [q, &label, &cache] {
    return theorem_a_row(*shared_instance(q, cache), label);
  }));
  TheoremAReport rep;
  rep.space = label;
  rep.C = C;
  for (auto& j : jobs) rep.rows.push_back(j.get());
  for (const auto& r : rep.rows) rep.max_multiplicity = std::max(rep.max_multiplicity, r.max_multiplicity);
  rep.constant_in_q = std::all_of(rep.rows.begin(), rep.rows.end(),
                                  [&](const TheoremARow& r) { return r.max_multiplicity == rep.rows.front().max_multiplicity; });
  rep.pass_strict = rep.max_multiplicity < C;
  rep.pass_nonstrict = rep.max_multiplicity <= C;
  return rep;
}

}  // namespace mbound
