#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbound/errors.hpp"
#include "mbound/gl2.hpp"
#include "mbound/rational.hpp"

namespace mbound {

/// Default limit on |X(F_q)| * |P^1(F_q)| * |G(F_q)|, the size of the triple space.
inline constexpr std::uint64_t kDefaultCountCap = 1'000'000'000ULL;

/// Number of triples (g, x, L) with g fixing x in X and the line L, computed as the
/// sum over x of the number of lines fixed by each element of Stab(x). This equals
/// the sum over pairs (x, L) of |Stab(x) ∩ Stab(L)|.
inline std::int64_t count_fixed_points(const Gl2Instance& inst, const SphericalSpace& space,
                                       std::uint64_t cap = kDefaultCountCap) {
  const auto& G = inst.group();
  const auto q = static_cast<std::uint64_t>(inst.q());
  if (space.size() * (q + 1) * G.size() > cap)
    throw ResourceError("count_fixed_points: triple space exceeds the enumeration cap");
  if (space.size() == 0) return 0;
  const auto flag = perm_character(inst, make_space(inst, "flag"));
  std::vector<std::int64_t> lines_fixed;
  for (const auto& v : flag.values()) lines_fixed.push_back(v.as_rational()->to_int64());
  const auto& cd = *inst.classes();
  std::int64_t total = 0;
  for (auto r : space.representatives) {
    const auto r_inv = G.inverse(r);
    for (auto h : space.subgroup) total += lines_fixed[cd.class_of[G.multiply(G.multiply(r, h), r_inv)]];
  }
  return total;
}

struct CountPoint {
  int q = 0;
  std::int64_t count = 0;
  friend bool operator==(const CountPoint&, const CountPoint&) = default;
};

struct CountSeries {
  std::string space;
  std::vector<CountPoint> points;

  void validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].count <= 0) throw std::invalid_argument("CountSeries: counts must be positive");
      if (i && points[i].q <= points[i - 1].q) throw std::invalid_argument("CountSeries: q values must strictly increase");
    }
  }
  friend bool operator==(const CountSeries&, const CountSeries&) = default;
};

struct ComponentEstimate {
  int d = 0;
  std::int64_t c = 0;
  Rational extrapolated;                // limit of count / q^d as q -> infinity
  Rational residual;                    // |extrapolated - c|
  Rational median_ratio;                // median of count / q^d, for comparison
  std::vector<Rational> ratios;         // count / q^d per point
  std::vector<Rational> leave_one_out;  // extrapolations with one point dropped
  bool confident = false;
  CountSeries series;
  friend bool operator==(const ComponentEstimate&, const ComponentEstimate&) = default;
};

namespace detail {

inline std::int64_t round_nearest(const Rational& x) {
  mpz_class twice_num = 2 * x.numerator() + x.denominator();
  mpz_class den = 2 * x.denominator();
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), twice_num.get_mpz_t(), den.get_mpz_t());
  if (!out.fits_slong_p()) throw std::overflow_error("round_nearest: value too large");
  return out.get_si();
}

inline Rational power(int q, int d) {
  Rational r(1);
  for (int i = 0; i < d; ++i) r *= Rational(q);
  return r;
}

/// Value at u = 0 of the polynomial through (u_i, y_i), by Neville's scheme.
inline Rational extrapolate_to_zero(const std::vector<Rational>& u, std::vector<Rational> y) {
  const std::size_t n = u.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 0; i + k < n; ++i) y[i] = (u[i + k] * y[i] - u[i] * y[i + 1]) / (u[i + k] - u[i]);
  return y.front();
}

}  // namespace detail

/// Fits count ~ c q^d. d is the rounded log-log slope through the two largest q; c is the
/// nearest integer to the polynomial extrapolation of count/q^d in 1/q to 1/q = 0. The
/// estimate is confident when at least four points are given, every leave-one-out
/// extrapolation rounds to the same c, and all of them lie within 1/4 of c.
inline ComponentEstimate estimate_components(const CountSeries& series) {
  series.validate();
  const auto& pts = series.points;
  if (pts.size() < 3) throw std::invalid_argument("estimate_components: need at least 3 points");
  ComponentEstimate est;
  est.series = series;
  const auto& a = pts[pts.size() - 2];
  const auto& b = pts.back();
  const double slope = std::log(static_cast<double>(b.count) / static_cast<double>(a.count)) /
                       std::log(static_cast<double>(b.q) / static_cast<double>(a.q));
  est.d = std::max(0, static_cast<int>(std::lround(slope)));

  std::vector<Rational> u;
  for (const auto& p : pts) {
    u.push_back(Rational(1, p.q));
    est.ratios.push_back(Rational(p.count) / detail::power(p.q, est.d));
  }
  auto sorted = est.ratios;
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  est.median_ratio = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / Rational(2);

  est.extrapolated = detail::extrapolate_to_zero(u, est.ratios);
  est.c = detail::round_nearest(est.extrapolated);
  est.residual = abs(est.extrapolated - Rational(est.c));
  const Rational tolerance(1, 4);
  est.confident = pts.size() >= 4 && est.residual < tolerance;
  for (std::size_t skip = 0; skip < pts.size(); ++skip) {
    std::vector<Rational> u2, y2;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != skip) {
        u2.push_back(u[i]);
        y2.push_back(est.ratios[i]);
      }
    const auto v = detail::extrapolate_to_zero(u2, y2);
    est.leave_one_out.push_back(v);
    if (detail::round_nearest(v) != est.c || abs(v - Rational(est.c)) >= tolerance) est.confident = false;
  }
  if (est.c < 1) est.confident = false;
  return est;
}

/// Exact counts for one space over several q, computed in parallel.
inline CountSeries count_series(const std::string& label, std::vector<int> qs, const TableCache& cache = TableCache::disabled()) {
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  std::vector<std::future<std::int64_t>> jobs;
  for (int q : qs)
    jobs.push_back(std::async(std::launch::async, [q, &label, &cache] {
      const auto inst = shared_instance(q, cache);
      return count_fixed_points(*inst, make_space(*inst, label));
    }));
  CountSeries s{label, {}};
  for (std::size_t i = 0; i < qs.size(); ++i) s.points.push_back({qs[i], jobs[i].get()});
  return s;
}

inline ComponentEstimate estimate_c_gx(const std::string& label, const std::vector<int>& qs,
                                       const TableCache& cache = TableCache::disabled()) {
  return estimate_components(count_series(label, qs, cache));
}

}  // namespace mbound
