#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mbound/bounds.hpp"

using namespace mbound;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

BoundConfig with_c(std::int64_t c) {
  BoundConfig cfg;
  cfg.c_gx = c;
  return cfg;
}

}  // namespace

TEST(MPhi, Examples) {
  for (const char* t : {"A1", "A2", "A3", "A4", "A5", "2A3"}) EXPECT_EQ(m_phi(CartanType::parse(t)), q(1)) << t;
  EXPECT_EQ(m_phi(CartanType::parse("B2")), q(2));
  EXPECT_EQ(m_phi(CartanType::parse("C3")), q(2));
  // largest inverse over the positive S3 row {1/6, 1/3, 1/2}
  EXPECT_EQ(m_phi(CartanType::parse("G2")), q(6));
  EXPECT_EQ(m_phi(CartanType::parse("B2xG2")), q(12));
  EXPECT_EQ(m_phi(CartanType::parse("empty")), q(1));
}

TEST(MPhi, MissingDataAndOverrides) {
  EXPECT_THROW(m_phi(CartanType::parse("2D4")), DataUnavailableError);
  EXPECT_THROW(m_phi(CartanType::parse("F4")), DataUnavailableError);
  BoundConfig cfg;
  cfg.coefficient_overrides["2D4"] = {q(1, 4), q(1)};
  EXPECT_EQ(m_phi(CartanType::parse("2D4"), cfg), q(4));
  cfg.coefficient_overrides["F4"] = {q(1, 24), q(1)};
  EXPECT_EQ(m_phi(CartanType::parse("A1xF4"), cfg), q(24));
  cfg.coefficient_overrides["E6"] = {q(-1)};
  EXPECT_THROW(m_phi(CartanType::parse("E6"), cfg), std::invalid_argument);
}

TEST(NPhi, Examples) {
  EXPECT_EQ(n_phi(CartanType::parse("A3")), 0);
  BoundConfig cfg;
  cfg.n_phi_overrides["B2"] = 7;
  EXPECT_EQ(n_phi(CartanType::parse("B2"), cfg), 7);
  EXPECT_EQ(n_phi(CartanType::parse("G2")), 24);
  EXPECT_EQ(n_phi(CartanType::parse("B2")), 16);
  EXPECT_EQ(n_phi(CartanType::parse("A2xG2")), 24);
}

TEST(BoundUnipotent, Examples) {
  EXPECT_EQ(bound_unipotent("A1", with_c(1)).bound, q(2));
  EXPECT_EQ(bound_unipotent("B2", with_c(1)).bound, q(16));
  EXPECT_EQ(bound_unipotent("A1", with_c(2)).bound, q(4));
  const auto r = bound_unipotent("G2", with_c(3));
  EXPECT_EQ(r.bound, r.m * q(static_cast<long>(r.weyl_order)) * q(3));
  EXPECT_EQ(r.weyl_order, 12u);
  EXPECT_THROW(bound_unipotent("A1", with_c(0)), std::invalid_argument);
}

TEST(BoundSeries, Examples) {
  for (std::int64_t c : {1, 2, 5}) {
    EXPECT_EQ(bound_series("B2", "A1", with_c(c)).bound, q(8 * c));
    EXPECT_EQ(bound_series("G2", "A2", with_c(c)).bound, q(12 * c));
  }
  // Full subsystem: unipotent bound of the dual with ambient |W|.
  const auto full = bound_series("B2", "B2", with_c(2));
  EXPECT_EQ(full.bound, bound_unipotent(CartanType::parse("B2").dual(), with_c(2)).bound);
}

TEST(GlobalBound, Examples) {
  const auto a1 = global_bound("A1", with_c(3));
  EXPECT_EQ(a1.m, q(1));
  EXPECT_EQ(a1.bound, q(6));
  EXPECT_TRUE(a1.unevaluated_term.has_value());

  const auto b2 = global_bound("B2", with_c(1));
  EXPECT_EQ(b2.m, q(2));
  EXPECT_EQ(b2.bound, q(16));

  const auto g2 = global_bound("G2", with_c(1));
  std::vector<std::string> subs;
  for (std::size_t i = 1; i < g2.breakdown.size(); ++i) subs.push_back(g2.breakdown[i].subsystem);
  EXPECT_EQ(subs, (std::vector<std::string>{"empty", "A1", "~A1", "A1x~A1", "A2", "G2"}));
  EXPECT_EQ(g2.m, m_phi(CartanType::parse("G2")));
  EXPECT_EQ(g2.bound, q(6 * 12));
}

TEST(GlobalBound, DualScan) {
  // B3 scans subsystems of C3, which contain a C2 = B2 factor next to a long A1.
  const auto b3 = global_bound("B3", with_c(1));
  bool saw_b2_product = false;
  for (const auto& s : b3.breakdown) saw_b2_product = saw_b2_product || s.subsystem == "A1xB2";
  EXPECT_TRUE(saw_b2_product);
  // C3 scans subsystems of B3, which contain D3 = A3 and D2 x B1 but no closed A1 x B2.
  const auto c3 = global_bound("C3", with_c(1));
  bool saw_a3 = false, saw_a1_b2 = false, saw_d2_b1 = false;
  for (const auto& s : c3.breakdown) {
    saw_a3 = saw_a3 || s.subsystem == "A3";
    saw_a1_b2 = saw_a1_b2 || s.subsystem == "A1xB2";
    saw_d2_b1 = saw_d2_b1 || s.subsystem == "A1xA1x~A1";
  }
  EXPECT_TRUE(saw_a3);
  EXPECT_TRUE(saw_d2_b1);
  EXPECT_FALSE(saw_a1_b2);
}

TEST(GlobalBound, Properties) {
  for (const auto& t : std::vector<std::string>{"A1", "A2", "A3", "A4", "B2", "B3", "C3", "G2", "D4"}) {
    const auto type = CartanType::parse(t);
    const auto g1 = global_bound(type, with_c(1));
    const auto w = q(static_cast<long>(weyl_order(type)));
    for (std::int64_t c : {1, 2, 7}) {
      const auto g = global_bound(type, with_c(c));
      EXPECT_EQ(g.bound, g1.bound * q(c)) << t;  // linear in c
      EXPECT_GE(g.bound, w * q(c));
      for (const auto& s : g.breakdown) {
        const auto series = bound_series(type, CartanType::parse(s.subsystem), with_c(c));
        EXPECT_GE(g.bound, series.bound) << t << " " << s.subsystem;
        EXPECT_GE(series.bound, w * q(c));
      }
    }
    if (type.is_type_a()) {
      EXPECT_EQ(g1.bound, w) << t;
    }
  }
}

TEST(BoundReport, Notes) {
  BoundConfig cfg = with_c(2);
  cfg.c_estimated = true;
  const auto r = global_bound("B2", cfg);
  EXPECT_TRUE(r.c_estimated);
  EXPECT_FALSE(r.notes.empty());
  EXPECT_NE(r.validity.find("q > 16"), std::string::npos);
  cfg.n_phi_overrides["B2"] = 5;
  cfg.n_phi_overrides["A1xA1"] = 5;
  EXPECT_EQ(global_bound("B2", cfg).n, 5);
}
