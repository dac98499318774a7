#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bpd/errors.hpp"

namespace bpd {

// Arithmetic in E = GF(16) = GF(2)[x]/(x^4+x+1) and in the tower extensions
// F_q = E[y]/(mu), q = 16^m, m in {1,2,3}.
//
// An element of E is a nibble in the polynomial basis of x (bit 3 = x^3).
// An element of F_q packs its m E-coefficients into one integer, nibble i
// holding the coefficient of y^i. The packed value doubles as the canonical
// ordering used everywhere deterministic iteration is required.

namespace gf16 {

inline constexpr unsigned modulus = 0x13;  // x^4 + x + 1

constexpr uint8_t mul_notable(uint8_t a, uint8_t b) {
  unsigned acc = 0;
  unsigned aa = a;
  for (unsigned bb = b; bb != 0; bb >>= 1) {
    if (bb & 1) acc ^= aa;
    aa <<= 1;
    if (aa & 0x10) aa ^= modulus;
  }
  return static_cast<uint8_t>(acc);
}

struct Tables {
  std::array<uint8_t, 16> log{};
  std::array<uint8_t, 15> exp{};
};

constexpr Tables make_tables() {
  Tables t{};
  uint8_t v = 1;
  for (int i = 0; i < 15; ++i) {  // x is primitive mod x^4+x+1
    t.exp[static_cast<size_t>(i)] = v;
    t.log[v] = static_cast<uint8_t>(i);
    v = mul_notable(v, 2);
  }
  return t;
}

inline constexpr Tables tables = make_tables();

constexpr uint8_t mul(uint8_t a, uint8_t b) {
  if (a == 0 || b == 0) return 0;
  return tables.exp[(tables.log[a] + tables.log[b]) % 15];
}

constexpr uint8_t inv(uint8_t a) {
  if (a == 0) throw division_by_zero("gf16: inverse of zero");
  return tables.exp[(15u - tables.log[a]) % 15];
}

}  // namespace gf16

// One element of F_q = GF(16^m). Plain value type; all arithmetic lives on
// FieldTower since it depends on the extension polynomial.
struct Elem {
  uint16_t bits = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr bool operator<(Elem a, Elem b) { return a.bits < b.bits; }
};

class FieldTower {
 public:
  // Tower with the lexicographically least monic irreducible mu of degree m
  // over E (coefficients compared high-degree-first by nibble value).
  static FieldTower build(int m) {
    if (m < 1 || m > 3) throw invalid_parameter("tower degree must be 1, 2 or 3");
    if (m == 1) return FieldTower(1, {0, 0, 0});  // mu = y
    std::array<uint8_t, 3> mu{};
    if (m == 2) {
      for (int c1 = 0; c1 < 16; ++c1)
        for (int c0 = 0; c0 < 16; ++c0) {
          mu = {static_cast<uint8_t>(c0), static_cast<uint8_t>(c1), 0};
          if (!has_root(mu, 2)) return FieldTower(2, mu);
        }
    } else {
      for (int c2 = 0; c2 < 16; ++c2)
        for (int c1 = 0; c1 < 16; ++c1)
          for (int c0 = 0; c0 < 16; ++c0) {
            mu = {static_cast<uint8_t>(c0), static_cast<uint8_t>(c1),
                  static_cast<uint8_t>(c2)};
            if (!has_root(mu, 3)) return FieldTower(3, mu);
          }
    }
    throw error("no irreducible polynomial found");  // unreachable
  }

  // Tower with an explicit mu (low m coefficients; leading coefficient is 1).
  FieldTower(int m, std::array<uint8_t, 3> mu) : m_(m), mu_(mu) {
    if (m < 1 || m > 3) throw invalid_parameter("tower degree must be 1, 2 or 3");
    if (m >= 2 && has_root(mu, m))
      throw invalid_parameter("extension polynomial is reducible over GF(16)");
  }

  int ext_degree() const { return m_; }
  unsigned order() const { return 1u << (4 * m_); }
  const std::array<uint8_t, 3>& ext_poly() const { return mu_; }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }

  Elem embed(uint8_t e) const { return Elem{e}; }

  Elem from_value(unsigned v) const {
    if (v >= order()) throw invalid_parameter("element value out of range");
    return Elem{static_cast<uint16_t>(v)};
  }

  static constexpr uint8_t coeff(Elem x, int i) {
    return static_cast<uint8_t>((x.bits >> (4 * i)) & 0xF);
  }

  bool in_subfield(Elem x) const { return (x.bits & 0xFFF0) == 0; }

  static Elem add(Elem x, Elem y) { return Elem{static_cast<uint16_t>(x.bits ^ y.bits)}; }

  Elem mul(Elem x, Elem y) const {
    std::array<uint8_t, 5> prod{};
    for (int i = 0; i < m_; ++i) {
      uint8_t xi = coeff(x, i);
      if (xi == 0) continue;
      for (int j = 0; j < m_; ++j) prod[static_cast<size_t>(i + j)] ^= gf16::mul(xi, coeff(y, j));
    }
    // y^m = sum_i mu_i y^i (characteristic 2)
    for (int d = 2 * m_ - 2; d >= m_; --d) {
      uint8_t c = prod[static_cast<size_t>(d)];
      if (c == 0) continue;
      prod[static_cast<size_t>(d)] = 0;
      for (int i = 0; i < m_; ++i) prod[static_cast<size_t>(d - m_ + i)] ^= gf16::mul(c, mu_[static_cast<size_t>(i)]);
    }
    uint16_t bits = 0;
    for (int i = 0; i < m_; ++i) bits |= static_cast<uint16_t>(prod[static_cast<size_t>(i)] << (4 * i));
    return Elem{bits};
  }

  Elem pow(Elem x, uint64_t e) const {
    Elem acc = one();
    Elem base = x;
    while (e != 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Elem inv(Elem x) const {
    if (x == zero()) throw division_by_zero("inverse of zero");
    return pow(x, order() - 2);
  }

  // Degree of the minimal polynomial of x over E: the least d | m with
  // x^(16^d) = x.
  int min_poly_degree(Elem x) const {
    for (int d = 1; d <= m_; ++d) {
      if (m_ % d != 0) continue;
      Elem y = x;
      for (int i = 0; i < d; ++i) y = pow(y, 16);
      if (y == x) return d;
    }
    return m_;  // unreachable: d = m always satisfies the Frobenius fixpoint
  }

  // --- serialization: ceil(4m/8) bytes, nibbles packed little-endian by
  // power of y; hex rendering is the bytes in order, two digits each.

  int byte_size() const { return m_ == 1 ? 1 : (m_ == 2 ? 1 : 2); }

  void write_bytes(Elem x, uint8_t* out) const {
    out[0] = static_cast<uint8_t>(x.bits & 0xFF);
    if (byte_size() == 2) out[1] = static_cast<uint8_t>(x.bits >> 8);
  }

  Elem read_bytes(const uint8_t* in) const {
    uint16_t bits = in[0];
    if (byte_size() == 2) bits |= static_cast<uint16_t>(in[1] << 8);
    if (bits >= order()) throw format_error("element encoding out of range");
    return Elem{bits};
  }

  std::string to_hex(Elem x) const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    uint8_t buf[2];
    write_bytes(x, buf);
    for (int i = 0; i < byte_size(); ++i) {
      s.push_back(digits[buf[i] >> 4]);
      s.push_back(digits[buf[i] & 0xF]);
    }
    return s;
  }

  Elem from_hex(const std::string& s) const {
    if (static_cast<int>(s.size()) != 2 * byte_size())
      throw format_error("bad element hex length");
    uint8_t buf[2] = {0, 0};
    for (int i = 0; i < byte_size(); ++i) {
      int hi = hex_digit(s[static_cast<size_t>(2 * i)]);
      int lo = hex_digit(s[static_cast<size_t>(2 * i + 1)]);
      buf[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return read_bytes(buf);
  }

  friend bool operator==(const FieldTower& a, const FieldTower& b) {
    return a.m_ == b.m_ && a.mu_ == b.mu_;
  }

 private:
  static bool has_root(const std::array<uint8_t, 3>& mu, int m) {
    for (uint8_t e = 0;; ++e) {
      uint8_t acc = 1;  // e^m + c_{m-1} e^{m-1} + ... + c_0, Horner
      for (int i = m - 1; i >= 0; --i) acc = gf16::mul(acc, e) ^ mu[static_cast<size_t>(i)];
      if (acc == 0) return true;
      if (e == 15) return false;
    }
  }

  static int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw format_error("bad hex digit");
  }

  int m_;
  std::array<uint8_t, 3> mu_;
};

// Univariate polynomial over E, indexed by power of the indeterminate.
// Arithmetic is exact; the coefficient vector never carries a zero leading
// coefficient.
class EPoly {
 public:
  EPoly() = default;

  static EPoly constant(uint8_t c) {
    EPoly p;
    if (c != 0) p.c_.push_back(c);
    return p;
  }

  static EPoly monomial(uint8_t c, int deg) {
    EPoly p;
    if (c != 0) {
      p.c_.assign(static_cast<size_t>(deg) + 1, 0);
      p.c_.back() = c;
    }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

  uint8_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : 0;
  }

  friend EPoly operator+(const EPoly& a, const EPoly& b) {
    EPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = static_cast<uint8_t>(a.coeff(static_cast<int>(i)) ^ b.coeff(static_cast<int>(i)));
    r.trim();
    return r;
  }

  friend EPoly operator*(const EPoly& a, const EPoly& b) {
    if (a.is_zero() || b.is_zero()) return EPoly();
    EPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] ^= gf16::mul(a.c_[i], b.c_[j]);
    }
    r.trim();
    return r;
  }

  friend bool operator==(const EPoly&, const EPoly&) = default;

  // Coefficients embed into F_q, then Horner.
  Elem eval(const FieldTower& t, Elem lambda) const {
    Elem acc = FieldTower::zero();
    for (int i = degree(); i >= 0; --i)
      acc = FieldTower::add(t.mul(acc, lambda), t.embed(c_[static_cast<size_t>(i)]));
    return acc;
  }

  const std::vector<uint8_t>& coeffs() const { return c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<uint8_t> c_;
};

}  // namespace bpd
