#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mbound/errors.hpp"
#include "mbound/numtheory.hpp"
#include "mbound/rational.hpp"

namespace mbound {

/// An element of an abelian number field, written as a rational combination of
/// roots of unity of one order.
///
/// The representation is canonical: the order is the conductor (smallest n
/// with the value in Q(zeta_n), never 2 mod 4) and the coefficients are those
/// of the basis of Q(zeta_n) obtained by eliminating, for every prime power
/// p^e || n, the exponents whose p-part has leading base-p digit 0 (p odd) or
/// 1 (p = 2).  Two values are equal iff their representations are identical.
class Cyclotomic {
 public:
  using Term = std::pair<int, Rational>;

  /// Largest order handled; arithmetic is dense in the common order.
  static constexpr std::int64_t kMaxOrder = 1 << 18;

  Cyclotomic() = default;
  Cyclotomic(const Rational& r) {  // NOLINT(google-explicit-constructor)
    if (!r.is_zero()) terms_.emplace_back(0, r);
  }
  Cyclotomic(long v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int v) : Cyclotomic(Rational(v)) {}   // NOLINT(google-explicit-constructor)

  /// zeta_n^k.
  static Cyclotomic root_of_unity(std::int64_t n, std::int64_t k) {
    if (n < 1) throw std::invalid_argument("root_of_unity: order must be positive");
    check_order(n);
    std::vector<Rational> dense(static_cast<std::size_t>(n));
    dense[static_cast<std::size_t>(nt::mod(k, n))] = Rational(1);
    return from_dense(static_cast<int>(n), std::move(dense));
  }

  /// Builds sum_k coeffs[k] * zeta_n^k from an arbitrary (non-canonical) dense vector.
  static Cyclotomic from_dense(int n, std::vector<Rational> coeffs) {
    if (n < 1 || coeffs.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("Cyclotomic::from_dense: bad size");
    if (n % 4 == 2) {
      // zeta_n = -zeta_{n/2}^{(n/2+1)/2}
      const int h = n / 2;
      const int step = (h + 1) / 2;
      std::vector<Rational> half(static_cast<std::size_t>(h));
      for (int k = 0; k < n; ++k) {
        if (coeffs[k].is_zero()) continue;
        const auto target = static_cast<std::size_t>(nt::mod(static_cast<std::int64_t>(k) * step, h));
        if (k % 2 == 0) half[target] += coeffs[k];
        else half[target] -= coeffs[k];
      }
      n = h;
      coeffs = std::move(half);
    }
    reduce(n, coeffs);
    minimize(n, coeffs);
    Cyclotomic out;
    out.order_ = n;
    for (int k = 0; k < n; ++k)
      if (!coeffs[k].is_zero()) out.terms_.emplace_back(k, std::move(coeffs[k]));
    if (out.terms_.empty()) out.order_ = 1;
    return out;
  }

  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return order_ == 1; }

  std::optional<Rational> as_rational() const {
    if (order_ != 1) return std::nullopt;
    return terms_.empty() ? Rational(0) : terms_.front().second;
  }

  std::complex<double> to_complex() const {
    long double re = 0, im = 0;
    for (const auto& [k, c] : terms_) {
      const long double angle = 2.0L * std::numbers::pi_v<long double> * k / order_;
      const long double v = c.to_double();
      re += v * std::cos(angle);
      im += v * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  /// Dense coefficients in terms of zeta_n^k for a multiple n of the order.
  std::vector<Rational> lift(int n) const {
    if (n % order_ != 0) throw std::invalid_argument("Cyclotomic::lift: order does not divide target");
    std::vector<Rational> dense(static_cast<std::size_t>(n));
    const int scale = n / order_;
    for (const auto& [k, c] : terms_) dense[static_cast<std::size_t>(k * scale)] += c;
    return dense;
  }

  /// Galois automorphism zeta -> zeta^a, a coprime to the order.
  Cyclotomic galois(std::int64_t a) const {
    if (std::gcd(nt::mod(a, order_), static_cast<std::int64_t>(order_)) != 1 && order_ > 1)
      throw std::invalid_argument("Cyclotomic::galois: exponent not a unit");
    if (order_ == 1) return *this;
    std::vector<Rational> dense(static_cast<std::size_t>(order_));
    for (const auto& [k, c] : terms_) dense[static_cast<std::size_t>(nt::mod(a * k, order_))] += c;
    return from_dense(order_, std::move(dense));
  }

  Cyclotomic conj() const { return galois(-1); }

  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
    if (auto r = as_rational()) return Cyclotomic(Rational(1) / *r);
    // x^{-1} = prod_{a != 1} sigma_a(x) / N(x)
    Cyclotomic others(1);
    for (int a = 2; a < order_; ++a)
      if (std::gcd(a, order_) == 1) others *= galois(a);
    const auto norm = (*this * others).as_rational();
    if (!norm) throw std::logic_error("Cyclotomic::inverse: norm is not rational");
    return others * Cyclotomic(Rational(1) / *norm);
  }

  Cyclotomic operator-() const {
    Cyclotomic out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this * o.inverse(); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int n = static_cast<int>(check_order(nt::lcm(a.order_, b.order_)));
    std::vector<Rational> dense(static_cast<std::size_t>(n));
    a.accumulate_into(dense, n, Rational(1));
    b.accumulate_into(dense, n, Rational(1));
    return from_dense(n, std::move(dense));
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (auto r = a.as_rational()) return b.scaled(*r);
    if (auto r = b.as_rational()) return a.scaled(*r);
    const int n = static_cast<int>(check_order(nt::lcm(a.order_, b.order_)));
    const int sa = n / a.order_, sb = n / b.order_;
    std::vector<Rational> dense(static_cast<std::size_t>(n));
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) dense[static_cast<std::size_t>((ka * sa + kb * sb) % n)] += ca * cb;
    return from_dense(n, std::move(dense));
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  /// Fixed total order: by order, then exponents ascending with larger
  /// coefficients first.  Puts 1 before -1 and rationals before irrationals.
  friend int compare(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_ ? -1 : 1;
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [ka, ca] = a.terms_[i];
      const auto& [kb, cb] = b.terms_[i];
      if (ka != kb) return ka < kb ? -1 : 1;
      if (ca != cb) return ca > cb ? -1 : 1;
    }
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    return 0;
  }

  /// Adds scale * this into a dense vector of length n (n a multiple of the order).
  void accumulate_into(std::vector<Rational>& dense, int n, const Rational& scale) const {
    const int s = n / order_;
    for (const auto& [k, c] : terms_) dense[static_cast<std::size_t>(k * s)] += c * scale;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) {
    if (x.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [k, c] : x.terms_) {
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      first = false;
      const Rational m = abs(c);
      if (k == 0) { os << m; continue; }
      if (m != Rational(1)) os << m << "*";
      os << "z" << x.order_;
      if (k != 1) os << "^" << k;
    }
    return os;
  }

 static std::int64_t check_order(std::int64_t n) {
    if (n > kMaxOrder) throw ResourceError("Cyclotomic: order " + std::to_string(n) + " exceeds limit");
    return n;
  }

 private:
  Cyclotomic scaled(const Rational& r) const {
    if (r.is_zero()) return {};
    Cyclotomic out = *this;
    for (auto& t : out.terms_) t.second *= r;
    return out;
  }

  // Rewrites coeffs (order n, n odd or divisible by 4) into the canonical basis.
  static void reduce(int n, std::vector<Rational>& c) {
    for (auto [p64, e] : nt::factor(n)) {
      const int p = static_cast<int>(p64);
      int pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      const int top_unit = pe / p;
      const int shift = n / p;
      for (int k = 0; k < n; ++k) {
        if (c[k].is_zero()) continue;
        const int top = (k % pe) / top_unit;
        if (p == 2) {
          if (top != 1) continue;
          c[(k + shift) % n] -= c[k];
        } else {
          if (top != 0) continue;
          for (int j = 1; j < p; ++j) c[(k + j * shift) % n] -= c[k];
        }
        c[k] = Rational(0);
      }
    }
  }

  // Lowers n to the conductor; c must be reduced.
  static void minimize(int& n, std::vector<Rational>& c) {
    bool changed = true;
    while (changed && n > 1) {
      changed = false;
      for (auto [p64, e] : nt::factor(n)) {
        const int p = static_cast<int>(p64);
        const int m = n / p;
        std::vector<Rational> proj(static_cast<std::size_t>(m));
        if (e >= 2) {
          for (int k = 0; k < n; k += p) proj[k / p] += c[k];
        } else {
          // n = p*m with gcd(p, m) = 1; zeta_n^k = zeta_p^{kA} zeta_m^{kB}.
          const std::int64_t b = m == 1 ? 0 : nt::pow_mod(p, nt::euler_phi(m) - 1, m);
          const Rational off = Rational(-1, p - 1);
          for (int k = 0; k < n; ++k) {
            if (c[k].is_zero()) continue;
            const auto t = static_cast<std::size_t>(nt::mod(k * b, m));
            if (k % p == 0) proj[t] += c[k];
            else proj[t] += c[k] * off;
          }
        }
        // Embed back and compare.
        std::vector<Rational> back(static_cast<std::size_t>(n));
        for (int j = 0; j < m; ++j)
          if (!proj[j].is_zero()) back[static_cast<std::size_t>(j * p)] = proj[j];
        reduce(n, back);
        if (back != c) continue;
        if (m % 4 == 2) {
          Cyclotomic tmp = from_dense(m, std::move(proj));
          n = tmp.order_;
          c = tmp.lift(n);
          return;
        }
        n = m;
        reduce(n, proj);
        c = std::move(proj);
        changed = true;
        break;
      }
    }
  }

  int order_ = 1;
  std::vector<Term> terms_;
};

/// sum_i scale_i * x_i computed with a single canonicalization.
inline Cyclotomic linear_combination(std::span<const Cyclotomic> xs, std::span<const Rational> scales) {
  std::int64_t n = 1;
  for (const auto& x : xs) n = Cyclotomic::check_order(nt::lcm(n, x.order()));
  std::vector<Rational> dense(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i].accumulate_into(dense, static_cast<int>(n), scales[i]);
  return Cyclotomic::from_dense(static_cast<int>(n), std::move(dense));
}

}  // namespace mbound
