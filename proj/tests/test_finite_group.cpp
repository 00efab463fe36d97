#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mbound/character_table.hpp"
#include "mbound/finite_group.hpp"

using namespace mbound;

namespace {

std::vector<Perm> symmetric_generators(std::uint16_t n) {
  Perm t = identity_perm(n), c(n);
  std::swap(t[0], t[1]);
  for (std::uint16_t i = 0; i < n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % n);
  return {t, c};
}

// GL2(F_3) acting on the 8 nonzero vectors of F_3^2, built without the library's field code.
std::vector<Perm> gl2_f3_generators() {
  std::vector<std::pair<int, int>> vecs;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a || b) vecs.emplace_back(a, b);
  auto index = [&](int a, int b) {
    return static_cast<std::uint16_t>(std::find(vecs.begin(), vecs.end(), std::make_pair(a % 3, b % 3)) - vecs.begin());
  };
  auto from_matrix = [&](int m00, int m01, int m10, int m11) {
    Perm p(vecs.size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      auto [x, y] = vecs[i];
      p[i] = index(m00 * x + m01 * y, m10 * x + m11 * y);
    }
    return p;
  };
  return {from_matrix(1, 1, 0, 1), from_matrix(1, 0, 1, 1), from_matrix(2, 0, 0, 1)};
}

Cyclotomic direct_sum(const std::vector<Cyclotomic>& xs) {
  Cyclotomic s;
  for (const auto& x : xs) s += x;
  return s;
}

// Orthogonality relations checked exactly with plain sums (no linear_combination shortcut).
void expect_orthogonality(const CharacterTable& T) {
  const auto& cd = *T.classes;
  const std::size_t k = cd.num_classes();
  ASSERT_EQ(T.size(), k);
  Cyclotomic deg_sq;
  for (std::size_t i = 0; i < k; ++i) deg_sq += T[i].degree() * T[i].degree();
  EXPECT_EQ(deg_sq, Cyclotomic(static_cast<long>(cd.group_order)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Cyclotomic> terms;
      for (std::size_t c = 0; c < k; ++c)
        terms.push_back(Cyclotomic(static_cast<long>(cd.class_size(c))) * T[i][c] * T[j][c].conj());
      EXPECT_EQ(direct_sum(terms), Cyclotomic(i == j ? static_cast<long>(cd.group_order) : 0L)) << i << "," << j;
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      std::vector<Cyclotomic> terms;
      for (std::size_t i = 0; i < k; ++i) terms.push_back(T[i][a] * T[i][b].conj());
      EXPECT_EQ(direct_sum(terms), Cyclotomic(a == b ? static_cast<long>(cd.centralizer_orders[a]) : 0L));
    }
  }
}

}  // namespace

TEST(FiniteGroup, Enumerate) {
  Perm t{1, 0};
  std::vector<Perm> g{t};
  EXPECT_EQ(FiniteGroup::enumerate(g).size(), 2u);
  EXPECT_EQ(FiniteGroup::enumerate(symmetric_generators(3)).size(), 6u);
  EXPECT_EQ(FiniteGroup::enumerate(symmetric_generators(5)).size(), 120u);
  // |GL2(F_q)| = (q^2-1)(q^2-q)
  EXPECT_EQ(FiniteGroup::enumerate(gl2_f3_generators()).size(), static_cast<std::size_t>((9 - 1) * (9 - 3)));
}

TEST(FiniteGroup, IdentityFirstAndClosed) {
  auto G = FiniteGroup::enumerate(symmetric_generators(4));
  auto id = G.element(0);
  for (std::size_t i = 0; i < id.size(); ++i) EXPECT_EQ(id[i], i);
  for (FiniteGroup::Index a = 0; a < G.size(); ++a) {
    EXPECT_EQ(G.multiply(a, G.inverse(a)), 0u);
    for (FiniteGroup::Index b = 0; b < G.size(); b += 5) EXPECT_TRUE(G.index_of(compose(G.element(a), G.element(b))));
  }
}

TEST(FiniteGroup, Errors) {
  std::vector<Perm> bad{{0, 0}};
  EXPECT_THROW(FiniteGroup::enumerate(bad), std::invalid_argument);
  std::vector<Perm> mixed{{1, 0}, {1, 2, 0}};
  EXPECT_THROW(FiniteGroup::enumerate(mixed), std::invalid_argument);
  EXPECT_THROW(FiniteGroup::enumerate(symmetric_generators(6), 100), ResourceError);
}

TEST(ConjugacyClasses, Examples) {
  Perm id1{0};
  std::vector<Perm> trivial{id1};
  EXPECT_EQ(conjugacy_classes(FiniteGroup::enumerate(trivial))->num_classes(), 1u);

  auto s3 = conjugacy_classes(FiniteGroup::enumerate(symmetric_generators(3)));
  ASSERT_EQ(s3->num_classes(), 3u);
  std::multiset<std::size_t> sizes;
  for (std::size_t c = 0; c < 3; ++c) sizes.insert(s3->class_size(c));
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 2, 3}));
  EXPECT_EQ(s3->class_size(0), 1u);

  // q^2 - 1 classes for GL2(F_q)
  EXPECT_EQ(conjugacy_classes(FiniteGroup::enumerate(gl2_f3_generators()))->num_classes(), 8u);
}

TEST(ConjugacyClasses, OrbitStabilizer) {
  for (auto G : {FiniteGroup::enumerate(symmetric_generators(5)), FiniteGroup::enumerate(gl2_f3_generators())}) {
    auto cd = conjugacy_classes(G);
    std::size_t total = 0;
    for (std::size_t c = 0; c < cd->num_classes(); ++c) {
      EXPECT_EQ(cd->class_size(c) * cd->centralizer_orders[c], G.size());
      EXPECT_EQ(cd->representatives[c], cd->classes[c].front());
      EXPECT_EQ(centralizer(G, cd->representatives[c]).size(), cd->centralizer_orders[c]);
      total += cd->class_size(c);
    }
    EXPECT_EQ(total, G.size());
  }
}

TEST(Centralizer, Examples) {
  auto S3 = FiniteGroup::enumerate(symmetric_generators(3));
  EXPECT_EQ(centralizer(S3, 0).size(), 6u);
  Perm t{1, 0, 2};
  EXPECT_EQ(centralizer(S3, S3.index_checked(t)).size(), 2u);
  auto S5 = FiniteGroup::enumerate(symmetric_generators(5));
  Perm five{1, 2, 3, 4, 0};
  EXPECT_EQ(centralizer(S5, S5.index_checked(five)).size(), 5u);
}

TEST(CharacterTable, CyclicOfOrderTwo) {
  std::vector<Perm> g{{1, 0}};
  auto T = character_table(FiniteGroup::enumerate(g));
  ASSERT_EQ(T.size(), 2u);
  EXPECT_EQ(T[0].values(), (std::vector<Cyclotomic>{1, 1}));
  EXPECT_EQ(T[1].values(), (std::vector<Cyclotomic>{1, -1}));
}

TEST(CharacterTable, SymmetricGroups) {
  auto T3 = character_table(FiniteGroup::enumerate(symmetric_generators(3)));
  std::vector<Cyclotomic> degrees;
  for (const auto& chi : T3.irreducibles) degrees.push_back(chi.degree());
  EXPECT_EQ(degrees, (std::vector<Cyclotomic>{1, 1, 2}));
  expect_orthogonality(T3);

  auto T5 = character_table(FiniteGroup::enumerate(symmetric_generators(5)));
  std::vector<Cyclotomic> d5;
  for (const auto& chi : T5.irreducibles) d5.push_back(chi.degree());
  EXPECT_EQ(d5, (std::vector<Cyclotomic>{1, 1, 4, 4, 5, 5, 6}));
  expect_orthogonality(T5);
  // trivial character comes first
  for (const auto& v : T5[0].values()) EXPECT_EQ(v, Cyclotomic(1));
}

TEST(CharacterTable, GL2F3) {
  auto T = character_table(FiniteGroup::enumerate(gl2_f3_generators()));
  expect_orthogonality(T);
  std::multiset<long> degrees;
  for (const auto& chi : T.irreducibles) degrees.insert(chi.degree().as_rational()->to_int64());
  // q-1 linear, q-1 Steinberg twists (deg q), (q-1)(q-2)/2 principal series (deg q+1), q(q-1)/2 cuspidal (deg q-1)
  EXPECT_EQ(degrees, (std::multiset<long>{1, 1, 2, 2, 2, 3, 3, 4}));
}

TEST(CharacterTable, Deterministic) {
  auto a = character_table(FiniteGroup::enumerate(gl2_f3_generators()));
  auto b = character_table(FiniteGroup::enumerate(gl2_f3_generators()));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].values(), b[i].values());
}

TEST(InnerProduct, Examples) {
  auto G = FiniteGroup::enumerate(symmetric_generators(4));
  auto T = character_table(G);
  const auto reg = ClassFunction::regular(T.classes);
  for (const auto& chi : T.irreducibles) {
    EXPECT_EQ(inner_product(chi, chi), Cyclotomic(1));
    EXPECT_EQ(inner_product(reg, chi), chi.degree());
  }
  auto S3 = FiniteGroup::enumerate(symmetric_generators(3));
  auto cd3 = conjugacy_classes(S3);
  const auto pi = permutation_character(S3, cd3);
  EXPECT_EQ(inner_product(ClassFunction::constant(cd3, 1), pi), Cyclotomic(1));
  EXPECT_THROW(inner_product(pi, reg), std::invalid_argument);
}

TEST(InnerProduct, PermutationCharacterRankMatchesOrbitCount) {
  // S4 acting on 2-subsets of {0..3} (a coset action), rank checked by counting orbits on pairs.
  std::vector<std::pair<int, int>> subsets;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) subsets.emplace_back(i, j);
  auto act = [&](const Perm& g) {
    Perm p(subsets.size());
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      int a = g[subsets[s].first], b = g[subsets[s].second];
      if (a > b) std::swap(a, b);
      p[s] = static_cast<std::uint16_t>(std::find(subsets.begin(), subsets.end(), std::make_pair(a, b)) - subsets.begin());
    }
    return p;
  };
  std::vector<Perm> gens;
  for (const auto& g : symmetric_generators(4)) gens.push_back(act(g));
  auto G = FiniteGroup::enumerate(gens);
  auto cd = conjugacy_classes(G);
  const auto pi = permutation_character(G, cd);

  std::set<std::pair<int, int>> seen;
  int orbits = 0;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      if (seen.count({x, y})) continue;
      ++orbits;
      for (FiniteGroup::Index g = 0; g < G.size(); ++g) seen.insert({G.element(g)[x], G.element(g)[y]});
    }
  EXPECT_EQ(inner_product(pi, pi), Cyclotomic(orbits));
  EXPECT_EQ(orbits, 3);
}
