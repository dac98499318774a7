#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bpd/gf.hpp"

using namespace bpd;

namespace {

// Oracle: multiply in GF(2)[x] and reduce mod x^4+x+1, no tables.
uint8_t mul_reduce_oracle(uint8_t a, uint8_t b) {
  unsigned prod = 0;
  for (int i = 0; i < 4; ++i)
    if (b >> i & 1) prod ^= static_cast<unsigned>(a) << i;
  for (int d = 6; d >= 4; --d)
    if (prod >> d & 1) prod ^= 0x13u << (d - 4);
  return static_cast<uint8_t>(prod);
}

}  // namespace

TEST_CASE("gf16 multiplication matches the polynomial oracle") {
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b)
      CHECK(gf16::mul(static_cast<uint8_t>(a), static_cast<uint8_t>(b)) ==
            mul_reduce_oracle(static_cast<uint8_t>(a), static_cast<uint8_t>(b)));
  CHECK(gf16::mul(0x2, 0x8) == 0x3);  // x * x^3 = x^4 = x + 1
}

TEST_CASE("tower construction picks the least irreducible polynomial") {
  const FieldTower t1 = FieldTower::build(1);
  CHECK(t1.ext_poly() == std::array<uint8_t, 3>{0, 0, 0});  // mu = y
  CHECK(t1.order() == 16);

  // Oracle: rootlessness over all 16 elements decides irreducibility for
  // degrees 2 and 3; scan the same lexicographic order independently.
  const auto rootless = [](std::array<uint8_t, 3> mu, int m) {
    for (unsigned e = 0; e < 16; ++e) {
      uint8_t acc = 1;
      for (int i = m - 1; i >= 0; --i)
        acc = static_cast<uint8_t>(mul_reduce_oracle(acc, static_cast<uint8_t>(e)) ^ mu[static_cast<size_t>(i)]);
      if (acc == 0) return false;
    }
    return true;
  };

  std::array<uint8_t, 3> expect2{};
  bool found = false;
  for (uint8_t c1 = 0; c1 < 16 && !found; ++c1)
    for (uint8_t c0 = 0; c0 < 16 && !found; ++c0)
      if (rootless({c0, c1, 0}, 2)) {
        expect2 = {c0, c1, 0};
        found = true;
      }
  const FieldTower t2 = FieldTower::build(2);
  CHECK(t2.ext_poly() == expect2);
  CHECK(t2.ext_poly() == std::array<uint8_t, 3>{8, 1, 0});  // y^2 + y + x^3
  CHECK(t2.order() == 256);

  const FieldTower t3 = FieldTower::build(3);
  CHECK(rootless(t3.ext_poly(), 3));
  CHECK(t3.ext_poly() == std::array<uint8_t, 3>{2, 0, 0});  // y^3 + x
  CHECK(t3.order() == 4096);

  CHECK_THROWS_AS(FieldTower::build(0), invalid_parameter);
  CHECK_THROWS_AS(FieldTower::build(4), invalid_parameter);

  // deterministic across invocations
  CHECK(FieldTower::build(2) == FieldTower::build(2));
  CHECK_THROWS_AS(FieldTower(2, {0, 0, 0}), invalid_parameter);  // y^2 has a root
}

TEST_CASE("240 elements of F_256 lie outside the subfield") {
  const FieldTower t = FieldTower::build(2);
  int outside = 0;
  for (unsigned v = 0; v < t.order(); ++v)
    if (!t.in_subfield(t.from_value(v))) ++outside;
  CHECK(outside == 240);
}

TEST_CASE("field axioms hold in every tower") {
  for (int m = 1; m <= 3; ++m) {
    const FieldTower t = FieldTower::build(m);
    std::mt19937_64 rng(42u + static_cast<unsigned>(m));
    std::uniform_int_distribution<unsigned> dist(0, t.order() - 1);

    for (int it = 0; it < 1000; ++it) {
      const Elem a = t.from_value(dist(rng));
      const Elem b = t.from_value(dist(rng));
      const Elem c = t.from_value(dist(rng));
      CHECK(t.mul(a, t.mul(b, c)) == t.mul(t.mul(a, b), c));
      CHECK(t.mul(a, b) == t.mul(b, a));
      CHECK(t.mul(a, FieldTower::add(b, c)) ==
            FieldTower::add(t.mul(a, b), t.mul(a, c)));
      CHECK(t.mul(FieldTower::one(), a) == a);
      CHECK(FieldTower::add(a, a) == FieldTower::zero());
      if (!(a == FieldTower::zero())) CHECK(t.mul(a, t.inv(a)) == FieldTower::one());
    }
    CHECK_THROWS_AS(t.inv(FieldTower::zero()), division_by_zero);
  }
}

TEST_CASE("inverses are total over F_256") {
  const FieldTower t = FieldTower::build(2);
  for (unsigned v = 1; v < t.order(); ++v) {
    const Elem x = t.from_value(v);
    CHECK(t.mul(x, t.inv(x)) == FieldTower::one());
  }
}

TEST_CASE("Frobenius fixes exactly the subfield") {
  for (int m = 2; m <= 3; ++m) {
    const FieldTower t = FieldTower::build(m);
    for (unsigned v = 0; v < 16; ++v) {
      const Elem x = t.embed(static_cast<uint8_t>(v));
      CHECK(t.pow(x, 16) == x);
      CHECK(t.min_poly_degree(x) == 1);
    }
    // sample non-subfield elements
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<unsigned> dist(16, t.order() - 1);
    for (int it = 0; it < 200; ++it) {
      Elem x = t.from_value(dist(rng));
      if (t.in_subfield(x)) continue;
      CHECK(t.min_poly_degree(x) == m);
      Elem y = x;
      for (int d = 0; d < m; ++d) y = t.pow(y, 16);
      CHECK(y == x);
    }
  }
}

TEST_CASE("epoly evaluation is a ring homomorphism") {
  const FieldTower t = FieldTower::build(2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<unsigned> nib(0, 15);
  std::uniform_int_distribution<unsigned> el(0, 255);
  std::uniform_int_distribution<int> deg(0, 5);

  const auto random_poly = [&] {
    EPoly p;
    const int d = deg(rng);
    for (int i = 0; i <= d; ++i)
      p = p + EPoly::monomial(static_cast<uint8_t>(nib(rng)), i);
    return p;
  };

  for (int it = 0; it < 1000; ++it) {
    const EPoly p = random_poly();
    const EPoly q = random_poly();
    const Elem lam = t.from_value(el(rng));
    CHECK((p * q).eval(t, lam) == t.mul(p.eval(t, lam), q.eval(t, lam)));
    CHECK((p + q).eval(t, lam) == FieldTower::add(p.eval(t, lam), q.eval(t, lam)));
  }

  CHECK(EPoly().eval(t, t.from_value(200)) == FieldTower::zero());
  CHECK(EPoly::constant(9).eval(t, t.from_value(100)) == t.embed(9));
  const Elem lam0 = t.from_value(171);
  CHECK(EPoly::monomial(1, 1).eval(t, lam0) == lam0);
}

TEST_CASE("element bytes and hex round-trip") {
  for (int m = 1; m <= 3; ++m) {
    const FieldTower t = FieldTower::build(m);
    CHECK(t.byte_size() == (m == 3 ? 2 : 1));
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<unsigned> dist(0, t.order() - 1);
    for (int it = 0; it < 300; ++it) {
      const Elem x = t.from_value(dist(rng));
      uint8_t buf[2];
      t.write_bytes(x, buf);
      CHECK(t.read_bytes(buf) == x);
      CHECK(t.from_hex(t.to_hex(x)) == x);
    }
  }
  // m = 3 keeps the top nibble clear
  const FieldTower t3 = FieldTower::build(3);
  uint8_t buf[2];
  t3.write_bytes(t3.from_value(4095), buf);
  CHECK((buf[1] & 0xF0) == 0);
}
