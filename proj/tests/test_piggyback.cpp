#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "bpd/piggyback.hpp"

using namespace bpd;

namespace {

template <typename F>
void for_each_params(F&& f) {
  for (int r = 2; r <= 4; ++r)
    for (int k = r + 1; k + r <= 16; ++k) f(make_params(k + r, k));
}

}  // namespace

TEST_CASE("plan for (9,6)") {
  const PiggybackPlan plan = make_plan(make_params(9, 6));
  CHECK(plan.a_target == std::vector<int>{0, 2, 3, 3, 0, 0, 0});
  CHECK(plan.b_target == std::vector<int>{0, 0, 0, 0, 2, 3, 3});
}

TEST_CASE("plan for (8,6) puts everything on the single free column") {
  const PiggybackPlan plan = make_plan(make_params(8, 6));
  CHECK(plan.a_target == std::vector<int>{0, 2, 2, 2, 0, 0, 0});
  CHECK(plan.b_target == std::vector<int>{0, 0, 0, 0, 2, 2, 2});
}

TEST_CASE("plan for (14,10) spreads parts of sizes 1,2,2") {
  const PiggybackPlan plan = make_plan(make_params(14, 10));
  CHECK(plan.a_target == std::vector<int>{0, 2, 3, 3, 4, 4, 0, 0, 0, 0, 0});
  CHECK(plan.b_target == std::vector<int>{0, 0, 0, 0, 0, 0, 2, 3, 3, 4, 4});
}

TEST_CASE("plan column loads are u or u+1 per half, never column 1, no reuse") {
  for_each_params([](const CodeParams& p) {
    const PiggybackPlan plan = make_plan(p);
    std::map<int, int> load_a;
    std::map<int, int> load_b;
    for (int i = 1; i <= p.k; ++i) {
      const int a = plan.a_target[static_cast<size_t>(i)];
      const int b = plan.b_target[static_cast<size_t>(i)];
      CHECK(!(a != 0 && b != 0));  // no symbol is piggybacked twice
      if (i <= p.alpha1) {
        CHECK(a >= 2);
        CHECK(a <= p.r);
        CHECK(b == 0);
        ++load_a[a];
      } else {
        CHECK(b >= 2);
        CHECK(b <= p.r);
        CHECK(a == 0);
        ++load_b[b];
      }
    }
    int total_a = 0;
    for (int j = 2; j <= p.r; ++j) {
      CHECK(load_a[j] >= p.u1);
      CHECK(load_a[j] <= p.u1 + 1);
      CHECK(load_b[j] >= p.u2);
      CHECK(load_b[j] <= p.u2 + 1);
      total_a += load_a[j];
    }
    CHECK(total_a == p.alpha1);
  });
}

TEST_CASE("expanded generator reproduces the (9,6) block pattern") {
  const CodeParams params = make_params(9, 6);
  const ParityMatrix p = build_cauchy_parity(params);
  const BlockGenerator g = expand_generator(p, make_plan(params));

  // expected off-diagonal: (row, col) -> 'u' upper one / 'l' lower lambda
  const std::map<std::pair<int, int>, char> expected = {
      {{1, 2}, 'u'}, {{2, 3}, 'u'}, {{3, 3}, 'u'},
      {{4, 2}, 'l'}, {{5, 3}, 'l'}, {{6, 3}, 'l'},
  };

  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 3; ++j) {
      const Block2& blk = g.block(i, j);
      const EPoly diag = EPoly::constant(p.at(i, j));
      CHECK(blk.e[0][0] == diag);
      CHECK(blk.e[1][1] == diag);
      const auto it = expected.find({i, j});
      if (it == expected.end()) {
        CHECK(blk.e[0][1].is_zero());
        CHECK(blk.e[1][0].is_zero());
      } else if (it->second == 'u') {
        CHECK(blk.e[0][1] == EPoly::constant(1));
        CHECK(blk.e[1][0].is_zero());
      } else {
        CHECK(blk.e[0][1].is_zero());
        CHECK(blk.e[1][0] == EPoly::monomial(1, 1));
      }
    }
}

TEST_CASE("every row block has exactly one off-diagonal entry, none in column 1") {
  for_each_params([](const CodeParams& p) {
    const ParityMatrix base = build_cauchy_parity(p);
    const BlockGenerator g = expand_generator(base, make_plan(p));
    for (int i = 1; i <= p.k; ++i) {
      int off = 0;
      for (int j = 1; j <= p.r; ++j) {
        const Block2& blk = g.block(i, j);
        if (!blk.e[0][1].is_zero()) ++off;
        if (!blk.e[1][0].is_zero()) ++off;
        if (j == 1) {
          CHECK(blk.e[0][1].is_zero());
          CHECK(blk.e[1][0].is_zero());
        }
      }
      CHECK(off == 1);
    }
  });
}

TEST_CASE("distinct plans expand to distinct block patterns") {
  const CodeParams params = make_params(9, 6);
  const ParityMatrix p = build_cauchy_parity(params);
  PiggybackPlan plan = make_plan(params);
  const BlockGenerator g1 = expand_generator(p, plan);
  plan.a_target[1] = 3;  // move a_1 to the other column
  const BlockGenerator g2 = expand_generator(p, plan);

  bool same = true;
  for (int i = 1; i <= 6 && same; ++i)
    for (int j = 1; j <= 3 && same; ++j) {
      const Block2& x = g1.block(i, j);
      const Block2& y = g2.block(i, j);
      if (!(x.e[0][1] == y.e[0][1]) || !(x.e[1][0] == y.e[1][0])) same = false;
    }
  CHECK_FALSE(same);

  PiggybackPlan wrong = make_plan(make_params(8, 6));
  wrong.k = 5;
  CHECK_THROWS_AS(expand_generator(p, wrong), invalid_parameter);
}
