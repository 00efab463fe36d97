#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbound/numtheory.hpp"

namespace mbound {

/// GF(q) for small prime powers with elements encoded 0..q-1 as base-p digit
/// vectors of polynomials modulo a fixed irreducible polynomial.
class FiniteField {
 public:
  using Elem = int;

  static FiniteField make(int q) {
    const auto f = nt::factor(q);
    if (q < 2 || f.size() != 1) throw std::invalid_argument("FiniteField: order must be a prime power");
    const int p = static_cast<int>(f.front().first);
    const int e = f.front().second;
    // Fixed modulus x^e = sum reduction[i] x^i (coefficients of the reduction).
    std::vector<int> reduction;
    switch (q) {
      case 4: reduction = {1, 1}; break;     // x^2 + x + 1
      case 8: reduction = {1, 1, 0}; break;  // x^3 + x + 1
      case 9: reduction = {2, 0}; break;     // x^2 + 1
      default:
        if (e != 1) throw std::invalid_argument("FiniteField: no modulus tabulated for q = " + std::to_string(q));
    }
    return FiniteField(q, p, e, reduction);
  }

  int order() const { return q_; }
  int characteristic() const { return p_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
  Elem neg(Elem a) const { return neg_[static_cast<std::size_t>(a)]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
    return inv_[static_cast<std::size_t>(a)];
  }
  Elem pow(Elem a, std::int64_t k) const {
    Elem r = 1;
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  /// Fixed generator of the multiplicative group (least encoding).
  Elem generator() const { return gen_; }
  /// k with generator()^k = a, for a != 0.
  int log(Elem a) const {
    if (a == 0) throw std::domain_error("FiniteField: log of zero");
    return log_[static_cast<std::size_t>(a)];
  }

 private:
  FiniteField(int q, int p, int e, const std::vector<int>& reduction) : q_(q), p_(p) {
    auto digits = [&](int a) {
      std::vector<int> d(static_cast<std::size_t>(e));
      for (int i = 0; i < e; ++i, a /= p) d[static_cast<std::size_t>(i)] = a % p;
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int a = 0;
      for (int i = e - 1; i >= 0; --i) a = a * p + d[static_cast<std::size_t>(i)];
      return a;
    };
    const auto qs = static_cast<std::size_t>(q);
    add_.resize(qs * qs);
    mul_.resize(qs * qs);
    neg_.resize(qs);
    inv_.assign(qs, 0);
    for (int a = 0; a < q; ++a) {
      const auto da = digits(a);
      std::vector<int> dn(static_cast<std::size_t>(e));
      for (int i = 0; i < e; ++i) dn[static_cast<std::size_t>(i)] = (p - da[static_cast<std::size_t>(i)]) % p;
      neg_[static_cast<std::size_t>(a)] = encode(dn);
      for (int b = 0; b < q; ++b) {
        const auto db = digits(b);
        std::vector<int> s(static_cast<std::size_t>(e));
        for (int i = 0; i < e; ++i) s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;
        add_[static_cast<std::size_t>(a * q + b)] = encode(s);
        std::vector<int> prod(static_cast<std::size_t>(2 * e), 0);
        for (int i = 0; i < e; ++i)
          for (int j = 0; j < e; ++j)
            prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
        for (int k = 2 * e - 1; k >= e; --k) {
          const int c = prod[static_cast<std::size_t>(k)];
          if (!c) continue;
          prod[static_cast<std::size_t>(k)] = 0;
          for (int i = 0; i < e; ++i)
            prod[static_cast<std::size_t>(k - e + i)] = (prod[static_cast<std::size_t>(k - e + i)] + c * reduction[static_cast<std::size_t>(i)]) % p;
        }
        prod.resize(static_cast<std::size_t>(e));
        mul_[static_cast<std::size_t>(a * q + b)] = encode(prod);
      }
    }
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (mul(a, b) == 1) inv_[static_cast<std::size_t>(a)] = b;
    for (int g = 1; g < q; ++g) {
      std::vector<int> lg(qs, -1);
      Elem x = 1;
      bool ok = true;
      for (int k = 0; k < q - 1; ++k) {
        if (lg[static_cast<std::size_t>(x)] >= 0) {
          ok = false;
          break;
        }
        lg[static_cast<std::size_t>(x)] = k;
        x = mul(x, g);
      }
      if (ok) {
        gen_ = g;
        log_ = std::move(lg);
        break;
      }
    }
  }

  int q_ = 0, p_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_, log_;
  Elem gen_ = 1;
};

/// GF(q^2) = GF(q)[t]/(t^2 - s t - r) for the least irreducible such quadratic,
/// with elements stored as pairs (a, b) = a + b t.
class QuadraticExtension {
 public:
  using Elem = std::pair<int, int>;

  explicit QuadraticExtension(const FiniteField& base) : F_(base) {
    const int q = F_.order();
    for (int s = 0; s < q && !found_; ++s)
      for (int r = 0; r < q && !found_; ++r) {
        bool has_root = false;
        for (int x = 0; x < q && !has_root; ++x)
          has_root = F_.sub(F_.sub(F_.mul(x, x), F_.mul(s, x)), r) == 0;
        if (!has_root) {
          s_ = s;
          r_ = r;
          found_ = true;
        }
      }
    const int order = q * q - 1;
    // generator: least (a, b) in encoding a + q*b of multiplicative order q^2 - 1
    for (int code = 1; code < q * q; ++code) {
      const Elem g{code % q, code / q};
      std::vector<int> lg(static_cast<std::size_t>(q * q), -1);
      Elem x{1, 0};
      bool ok = true;
      for (int k = 0; k < order; ++k) {
        const int c = encode(x);
        if (lg[static_cast<std::size_t>(c)] >= 0) {
          ok = false;
          break;
        }
        lg[static_cast<std::size_t>(c)] = k;
        x = mul(x, g);
      }
      if (ok) {
        gen_ = g;
        log_ = std::move(lg);
        break;
      }
    }
  }

  const FiniteField& base() const { return F_; }
  /// t^2 = s t + r.
  std::pair<int, int> modulus() const { return {s_, r_}; }
  int encode(const Elem& x) const { return x.first + F_.order() * x.second; }

  Elem mul(const Elem& x, const Elem& y) const {
    const auto& [a, b] = x;
    const auto& [c, d] = y;
    const int bd = F_.mul(b, d);
    return {F_.add(F_.mul(a, c), F_.mul(bd, r_)), F_.add(F_.add(F_.mul(a, d), F_.mul(b, c)), F_.mul(bd, s_))};
  }
  Elem generator() const { return gen_; }
  Elem power(const Elem& x, std::int64_t k) const {
    Elem r{1, 0};
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }
  int log(const Elem& x) const {
    const int v = log_[static_cast<std::size_t>(encode(x))];
    if (v < 0) throw std::domain_error("QuadraticExtension: log of zero");
    return v;
  }
  /// Matrix of multiplication by x on the basis {1, t}: columns are x*1 and x*t.
  std::array<int, 4> matrix(const Elem& x) const {
    const Elem xt = mul(x, Elem{0, 1});
    return {x.first, xt.first, x.second, xt.second};
  }

 private:
  FiniteField F_;
  int s_ = 0, r_ = 0;
  bool found_ = false;
  Elem gen_{1, 0};
  std::vector<int> log_;
};

}  // namespace mbound
