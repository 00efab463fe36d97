#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mbound/families.hpp"
#include "mbound/fourier.hpp"
#include "mbound/root_system.hpp"

using namespace mbound;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

// Exact product computed entry by entry with plain sums.
bool squares_to_identity(const FourierMatrix& m) {
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) {
      Cyclotomic s;
      for (std::size_t k = 0; k < m.n; ++k) s += m(i, k) * m(k, j);
      if (!(s == Cyclotomic(i == j ? 1 : 0))) return false;
    }
  return true;
}

// Searches for a relabeling p with a(p[i], p[j]) == b(i, j) for all i, j.
bool equal_up_to_reindexing(const FourierMatrix& a, const FourierMatrix& b) {
  if (a.n != b.n) return false;
  std::vector<std::size_t> p;
  std::vector<bool> used(a.n, false);
  std::function<bool()> extend = [&]() -> bool {
    const std::size_t i = p.size();
    if (i == a.n) return true;
    for (std::size_t c = 0; c < a.n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = a(c, p[k]) == b(i, k) && a(p[k], c) == b(k, i);
      ok = ok && a(c, c) == b(i, i);
      if (!ok) continue;
      used[c] = true;
      p.push_back(c);
      if (extend()) return true;
      p.pop_back();
      used[c] = false;
    }
    return false;
  };
  return extend();
}

std::size_t independent_m_count(const FiniteGroup& G) {
  auto cd = conjugacy_classes(G);
  std::size_t total = 0;
  for (auto r : cd->representatives) total += conjugacy_classes(centralizer(G, r))->num_classes();
  return total;
}

}  // namespace

TEST(GammaType, Parse) {
  EXPECT_EQ(GammaType::parse("1").family_size(), 1u);
  EXPECT_EQ(GammaType::parse("S2").family_size(), 4u);
  EXPECT_EQ(GammaType::parse("S2^3").family_size(), 64u);
  EXPECT_EQ(GammaType::parse("S3").family_size(), 8u);
  EXPECT_EQ(GammaType::parse("S4").family_size(), 21u);
  EXPECT_EQ(GammaType::parse("S5").family_size(), 39u);
  EXPECT_EQ(GammaType::parse("S2^2").str(), "S2^2");
  for (const char* bad : {"S6", "S1", "S2^0", "A5", "S3^2", ""}) EXPECT_THROW(GammaType::parse(bad), std::invalid_argument) << bad;
}

TEST(MSet, Cardinalities) {
  EXPECT_EQ(m_set(gamma_group(GammaType::trivial())).size(), 1u);
  EXPECT_EQ(m_set(gamma_group(GammaType::parse("S2"))).size(), 4u);
  for (int n = 3; n <= 5; ++n) {
    auto G = gamma_group(GammaType::symmetric(n));
    const auto ms = m_set(G);
    EXPECT_EQ(ms.size(), GammaType::symmetric(n).family_size());
    EXPECT_EQ(ms.size(), independent_m_count(G));
  }
}

TEST(MSet, Ordering) {
  auto d = m_set_data(gamma_group(GammaType::symmetric(3)));
  EXPECT_EQ(d.elements.front().x, 0u);
  EXPECT_EQ(d.elements.front().sigma, 0u);
  for (std::size_t i = 1; i < d.elements.size(); ++i) {
    const auto &a = d.elements[i - 1], &b = d.elements[i];
    EXPECT_TRUE(a.x < b.x || (a.x == b.x && a.sigma + 1 == b.sigma));
  }
}

TEST(Fourier, Trivial) {
  const auto m = fourier_matrix(GammaType::trivial());
  ASSERT_EQ(m.n, 1u);
  EXPECT_EQ(m(0, 0), Cyclotomic(1));
}

TEST(Fourier, S2MatchesFourByFour) {
  const auto m = fourier_matrix(GammaType::parse("S2"));
  const int sign[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  ASSERT_EQ(m.n, 4u);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), Cyclotomic(q(sign[i][j], 2))) << i << "," << j;
}

TEST(Fourier, S2PowerIsKroneckerPower) {
  const auto k = fourier_matrix(GammaType::parse("S2^2"));
  const auto base = fourier_matrix(GammaType::parse("S2"));
  ASSERT_EQ(k.n, 16u);
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) EXPECT_EQ(k(i, j), base(i / 4, j / 4) * base(i % 4, j % 4));
  // The pairing on S2 x S2 itself agrees after relabeling.
  const auto direct = pairing_matrix(m_set_data(FiniteGroup::enumerate(s2_power_generators(2))));
  EXPECT_TRUE(equal_up_to_reindexing(direct, k));
  EXPECT_EQ(fourier_matrix(GammaType::parse("S2^3")).n, 64u);
}

TEST(Fourier, MatrixAlgebra) {
  for (const char* g : {"1", "S2", "S2^2", "S3", "S4", "S5"}) {
    const auto m = fourier_matrix(GammaType::parse(g));
    EXPECT_EQ(m.n, GammaType::parse(g).family_size()) << g;
    EXPECT_TRUE(m.is_real()) << g;
    EXPECT_TRUE(m.is_symmetric()) << g;
    EXPECT_TRUE(m.is_involution()) << g;
  }
  EXPECT_TRUE(squares_to_identity(fourier_matrix(GammaType::parse("S3"))));
}

TEST(Fourier, PairingIsHermitian) {
  auto d = m_set_data(gamma_group(GammaType::symmetric(4)));
  for (std::size_t i = 0; i < d.elements.size(); i += 3)
    for (std::size_t j = 0; j < d.elements.size(); j += 2)
      EXPECT_EQ(pairing(d, d.elements[i], d.elements[j]), pairing(d, d.elements[j], d.elements[i]).conj());
}

TEST(Fourier, OriginRowIsDegreeOverCentralizer) {
  // {(1,1),(y,t)} = t(1) / |C(y)|, which is positive.
  for (int n = 3; n <= 5; ++n) {
    auto d = m_set_data(gamma_group(GammaType::symmetric(n)));
    const auto m = fourier_matrix(GammaType::symmetric(n));
    for (std::size_t j = 0; j < d.elements.size(); ++j) {
      const auto& e = d.elements[j];
      const auto deg = *d.tables[e.cls][e.sigma].degree().as_rational();
      EXPECT_EQ(m(0, j), Cyclotomic(deg / Rational(static_cast<long>(d.centralizers[e.cls].size()))));
    }
  }
  const auto s3 = fourier_matrix(GammaType::symmetric(3));
  std::vector<Cyclotomic> row;
  for (std::size_t j = 0; j < 8; ++j) row.push_back(s3(0, j));
  EXPECT_EQ(row, (std::vector<Cyclotomic>{q(1, 6), q(1, 6), q(1, 3), q(1, 2), q(1, 2), q(1, 3), q(1, 3), q(1, 3)}));
}

TEST(Families, TypeA) {
  for (const char* t : {"A1", "A2", "A3", "A4", "A5", "2A3", "2A5"}) {
    for (const auto& f : families_of_type(t)) {
      EXPECT_EQ(f.size(), 1u) << t;
      EXPECT_EQ(f.gamma, GammaType::trivial());
    }
  }
}

TEST(Families, NonSingletons) {
  auto count = [](const char* t, GammaType g, std::size_t size) {
    std::size_t hits = 0, others = 0;
    for (const auto& f : families_of_type(t)) {
      if (f.size() == 1) continue;
      if (f.gamma == g && f.size() == size) ++hits;
      else ++others;
    }
    return std::make_pair(hits, others);
  };
  EXPECT_EQ(count("B2", GammaType::parse("S2"), 4), std::make_pair(std::size_t{1}, std::size_t{0}));
  EXPECT_EQ(count("C2", GammaType::parse("S2"), 4), std::make_pair(std::size_t{1}, std::size_t{0}));
  EXPECT_EQ(count("G2", GammaType::parse("S3"), 8), std::make_pair(std::size_t{1}, std::size_t{0}));
  EXPECT_EQ(count("B3", GammaType::parse("S2"), 4), std::make_pair(std::size_t{2}, std::size_t{0}));
  EXPECT_EQ(count("C3", GammaType::parse("S2"), 4), std::make_pair(std::size_t{2}, std::size_t{0}));
  EXPECT_EQ(count("D4", GammaType::parse("S2"), 4), std::make_pair(std::size_t{1}, std::size_t{0}));
}

TEST(Families, PrincipalSeriesMatchesWeylCharacters) {
  for (const auto& t : curated_types()) {
    std::set<std::string> phis;
    std::size_t members = 0;
    for (const auto& f : families_of_type(t)) {
      for (const auto& m : f.members) {
        ++members;
        if (m.phi) {
          EXPECT_TRUE(phis.insert(*m.phi).second) << t << " duplicate " << *m.phi;
        }
      }
    }
    auto rs = build_root_system(t);
    EXPECT_EQ(phis.size(), conjugacy_classes(rs.weyl_group())->num_classes()) << t;
    EXPECT_GE(members, phis.size());
  }
}

TEST(Families, Unavailable) {
  for (const char* t : {"2D4", "3D4", "2E6", "E6", "F4", "B4", "2B2"})
    EXPECT_THROW(families_of_type(t), DataUnavailableError) << t;
  EXPECT_THROW(families_of_type("A1xA1"), std::invalid_argument);
}

TEST(PositiveRow, Examples) {
  const auto a2 = families_of_type("A2");
  const auto r = positive_row(a2[0], 0);
  EXPECT_EQ(r.coefficients, std::vector<Rational>{q(1)});

  for (const auto& f : families_of_type("B2")) {
    if (f.size() != 4) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto pr = positive_row(f, i);
      EXPECT_EQ(pr.coefficients, (std::vector<Rational>{q(1, 2), q(1, 2), q(1, 2), q(1, 2)}));
      EXPECT_TRUE(f.members[pr.row].phi.has_value());
    }
  }
  for (const auto& f : families_of_type("G2")) {
    if (f.size() != 8) continue;
    for (std::size_t i = 0; i < 8; ++i) {
      const auto pr = positive_row(f, i);
      ASSERT_EQ(pr.coefficients.size(), 8u);
      for (const auto& g : pr.coefficients) EXPECT_GT(g, q(0));
    }
  }
}

TEST(PositiveRow, AllCurated) {
  for (const auto& t : curated_types()) {
    const auto set = c_phi_set(t);
    for (const auto& f : families_of_type(t))
      for (std::size_t i = 0; i < f.size(); ++i) {
        const auto pr = positive_row(f, i);
        for (const auto& g : pr.coefficients) {
          EXPECT_GT(g, q(0));
          EXPECT_LE(g, q(1));
        }
        EXPECT_GE(pr.coefficients[f.members[i].m % pr.coefficients.size()], *set.begin());
        if (f.gamma.kind == GammaType::Kind::S2Power) {
          EXPECT_EQ(*std::min_element(pr.coefficients.begin(), pr.coefficients.end()), q(1, 2));
        }
      }
  }
}

TEST(CPhiSet, Examples) {
  for (const char* t : {"A1", "A3", "A5"}) EXPECT_EQ(c_phi_set(t), std::set<Rational>{q(1)});
  EXPECT_EQ(c_phi_set("B2"), (std::set<Rational>{q(1, 2), q(1)}));
  EXPECT_EQ(c_phi_set("A1xB2"), (std::set<Rational>{q(1, 2), q(1)}));
  EXPECT_EQ(c_phi_set("empty"), std::set<Rational>{q(1)});
  EXPECT_EQ(c_phi_set("G2"), (std::set<Rational>{q(1, 6), q(1, 3), q(1, 2), q(1)}));
}

TEST(CPhiSet, ProductRule) {
  const auto types = curated_types();
  for (const auto& a : types)
    for (const auto& b : types) {
      const auto sa = c_phi_set(a), sb = c_phi_set(b);
      std::set<Rational> expect;
      for (const auto& x : sa)
        for (const auto& y : sb) expect.insert(x * y);
      EXPECT_EQ(c_phi_set(a + "x" + b), expect) << a << "x" << b;
    }
}
