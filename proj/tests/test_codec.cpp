#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bpd/codec.hpp"

using namespace bpd;

namespace {

BpdCode code96() {
  static const BpdCode code = build_code(9, 6);
  return code;
}

Elem parity_dot(const BpdCode& code, int j, const std::vector<Elem>& data) {
  Elem acc = FieldTower::zero();
  for (int i = 1; i <= code.params().k; ++i)
    acc = FieldTower::add(
        acc, code.tower.mul(code.tower.embed(code.base.at(i, j)), data[static_cast<size_t>(i - 1)]));
  return acc;
}

}  // namespace

TEST_CASE("encoding matches the worked (9,6) node contents") {
  const BpdCode code = code96();
  const FieldTower& t = code.tower;
  std::mt19937_64 rng(2024);
  const Stripe s = random_stripe(code, rng);
  const Codeword cw = encode(code, s);

  for (int i = 1; i <= 6; ++i) {
    CHECK(cw.node(i).first == s.a[static_cast<size_t>(i - 1)]);
    CHECK(cw.node(i).second == s.b[static_cast<size_t>(i - 1)]);
  }
  // node 7: clean parities
  CHECK(cw.node(7).first == parity_dot(code, 1, s.a));
  CHECK(cw.node(7).second == parity_dot(code, 1, s.b));
  // node 8: (P_2^T a + lambda b_4, P_2^T b + a_1)
  CHECK(cw.node(8).first ==
        FieldTower::add(parity_dot(code, 2, s.a), t.mul(code.lambda, s.b[3])));
  CHECK(cw.node(8).second == FieldTower::add(parity_dot(code, 2, s.b), s.a[0]));
  // node 9: (P_3^T a + lambda (b_5+b_6), P_3^T b + a_2 + a_3)
  CHECK(cw.node(9).first ==
        FieldTower::add(parity_dot(code, 3, s.a),
                        t.mul(code.lambda, FieldTower::add(s.b[4], s.b[5]))));
  CHECK(cw.node(9).second ==
        FieldTower::add(parity_dot(code, 3, s.b), FieldTower::add(s.a[1], s.a[2])));
}

TEST_CASE("zero stripe encodes to the zero codeword, encoding is linear") {
  const BpdCode code = code96();
  Stripe zero;
  zero.a.assign(6, FieldTower::zero());
  zero.b.assign(6, FieldTower::zero());
  for (const SymbolPair& sp : encode(code, zero).nodes) {
    CHECK(sp.first == FieldTower::zero());
    CHECK(sp.second == FieldTower::zero());
  }

  std::mt19937_64 rng(77);
  for (int it = 0; it < 1000; ++it) {
    const Stripe x = random_stripe(code, rng);
    const Stripe y = random_stripe(code, rng);
    Stripe sum;
    sum.a.resize(6);
    sum.b.resize(6);
    for (int i = 0; i < 6; ++i) {
      sum.a[static_cast<size_t>(i)] = FieldTower::add(x.a[static_cast<size_t>(i)], y.a[static_cast<size_t>(i)]);
      sum.b[static_cast<size_t>(i)] = FieldTower::add(x.b[static_cast<size_t>(i)], y.b[static_cast<size_t>(i)]);
    }
    const Codeword cx = encode(code, x);
    const Codeword cy = encode(code, y);
    const Codeword cs = encode(code, sum);
    for (int nd = 1; nd <= 9; ++nd) {
      CHECK(cs.node(nd).first == FieldTower::add(cx.node(nd).first, cy.node(nd).first));
      CHECK(cs.node(nd).second == FieldTower::add(cx.node(nd).second, cy.node(nd).second));
    }
  }

  Stripe bad;
  bad.a.assign(5, FieldTower::zero());
  bad.b.assign(6, FieldTower::zero());
  CHECK_THROWS_AS(encode(code, bad), invalid_parameter);
}

TEST_CASE("any k nodes decode back to the stripe") {
  const BpdCode code = code96();
  std::mt19937_64 rng(31337);

  SECTION("systematic nodes pass through") {
    const Stripe s = random_stripe(code, rng);
    const Codeword cw = encode(code, s);
    std::map<int, SymbolPair> avail;
    for (int i = 1; i <= 6; ++i) avail[i] = cw.node(i);
    CHECK(decode_any_k(code, avail) == s);
  }

  SECTION("exhaustive over all 84 subsets") {
    const Stripe s = random_stripe(code, rng);
    const Codeword cw = encode(code, s);
    detail::for_each_subset(9, 6, [&](const std::vector<int>& nodes) {
      std::map<int, SymbolPair> avail;
      for (int nd : nodes) avail[nd] = cw.node(nd);
      CHECK(decode_any_k(code, avail) == s);
    });
  }

  SECTION("insufficient nodes throw") {
    const Stripe s = random_stripe(code, rng);
    const Codeword cw = encode(code, s);
    std::map<int, SymbolPair> avail;
    for (int i = 1; i <= 5; ++i) avail[i] = cw.node(i);
    CHECK_THROWS_AS(decode_any_k(code, avail), insufficient_data);
  }
}

TEST_CASE("(14,10) decodes from 500 random 10-subsets") {
  const BpdCode code = build_code(14, 10);
  CHECK(code.tower.ext_degree() == 2);  // F_256 suffices
  CHECK(verify_mds_by_decoding(code, 500));
}

TEST_CASE("(9,6) repair downloads are 7,8,8,7,8,8") {
  const BpdCode code = code96();
  std::mt19937_64 rng(4);
  const Stripe s = random_stripe(code, rng);
  const Codeword cw = encode(code, s);

  const std::vector<int> expected = {7, 8, 8, 7, 8, 8};
  int total = 0;
  for (int i = 1; i <= 6; ++i) {
    const RepairReport rep = repair_systematic(code, i, cw);
    CHECK(rep.ok);
    CHECK(rep.failed == i);
    CHECK(rep.symbols_downloaded == expected[static_cast<size_t>(i - 1)]);
    CHECK(rep.symbols_downloaded == static_cast<int>(rep.reads.size()));
    CHECK(rep.recovered == cw.node(i));
    for (const RepairRead& rd : rep.reads) CHECK(rd.node != i);  // no reads from the failed node
    total += rep.symbols_downloaded;
  }
  CHECK(total == 46);  // average 23/3

  CHECK_THROWS_AS(repair_systematic(code, 0, cw), unsupported_operation);
  CHECK_THROWS_AS(repair_systematic(code, 7, cw), unsupported_operation);
}

TEST_CASE("repair recovers every node of every grid code at the exact cost") {
  std::mt19937_64 rng(5150);
  for (int r = 2; r <= 4; ++r)
    for (int k = r + 1; k + r <= (r <= 3 ? 16 : 15); k += 2) {
      const BpdCode code = build_code(k + r, k);
      const CodeParams& p = code.params();
      const Stripe s = random_stripe(code, rng);
      const Codeword cw = encode(code, s);
      long first_half_total = 0;
      long second_half_total = 0;
      for (int i = 1; i <= k; ++i) {
        const RepairReport rep = repair_systematic(code, i, cw);
        CHECK(rep.ok);
        CHECK(rep.recovered == cw.node(i));
        // step 1 costs k, step 2 the size of i's part
        const auto& target = i <= p.alpha1 ? code.plan.a_target : code.plan.b_target;
        int part_size = 0;
        for (int q = 1; q <= k; ++q)
          if (target[static_cast<size_t>(q)] == target[static_cast<size_t>(i)]) ++part_size;
        CHECK(rep.symbols_downloaded == k + part_size);
        (i <= p.alpha1 ? first_half_total : second_half_total) += rep.symbols_downloaded;
      }
      CHECK(first_half_total == (k + p.u1) * p.alpha1 + p.v1 * (p.u1 + 1));
      CHECK(second_half_total == (k + p.u2) * p.alpha2 + p.v2 * (p.u2 + 1));
    }
}

TEST_CASE("repair reads only listed positions and counts each one") {
  const BpdCode code = code96();
  std::mt19937_64 rng(88);
  const Stripe s = random_stripe(code, rng);
  const Codeword cw = encode(code, s);

  // node 2's part is {2,3} on column 3: expect reads of b_j (j != 2), the
  // column-1 b-parity, the piggybacked column-3 b-parity, and a_3
  const RepairReport rep = repair_systematic(code, 2, cw);
  std::map<std::pair<int, int>, int> seen;
  for (const RepairRead& rd : rep.reads) ++seen[{rd.node, rd.coord}];
  for (const auto& [pos, count] : seen) CHECK(count == 1);
  CHECK(seen.count({7, 1}) == 1);   // P_1^T b
  CHECK(seen.count({9, 1}) == 1);   // P_3^T b + a_2 + a_3
  CHECK(seen.count({3, 0}) == 1);   // a_3
  CHECK(seen.count({2, 0}) == 0);
  CHECK(seen.count({2, 1}) == 0);
  CHECK(rep.symbols_downloaded == 8);
}

TEST_CASE("build_code picks the practical tower and respects overrides") {
  const BpdCode c96 = build_code(9, 6);
  CHECK(c96.tower.ext_degree() == 2);
  CHECK(!code96().tower.in_subfield(c96.lambda));
  CHECK(c96.gen.lambda.has_value());

  const BpdCode c96rs = build_code(9, 6, BaseTag::rs_systematic);
  CHECK(c96rs.base.tag == BaseTag::rs_systematic);
  CHECK(verify_mds_by_decoding(c96rs));

  const BpdCode big = build_code(15, 11, BaseTag::cauchy, 3);
  CHECK(big.tower.ext_degree() == 3);
  CHECK(big.tower.min_poly_degree(big.lambda) == 3);
  CHECK(verify_mds(big.gen, big.lambda, big.tower).pass);
}
