#pragma once

#include <optional>
#include <vector>

#include "bpd/base_code.hpp"

namespace bpd {

// Which data symbol rides on which parity column. a_target maps the first
// alpha1 data indices to a column in [2,r] of the second substripe's
// parities; b_target maps the last alpha2 indices to a column in [2,r] of
// the first substripe's parities (scaled by lambda there). Both arrays are
// 1-based over [1,k]; entry 0 means the index is not piggybacked.
struct PiggybackPlan {
  int k = 0;
  std::vector<int> a_target;  // size k+1
  std::vector<int> b_target;  // size k+1

  friend bool operator==(const PiggybackPlan&, const PiggybackPlan&) = default;
};

// Contiguous runs over columns 2..r: the first r-1-v parts take u indices,
// the last v parts take u+1. Smaller parts land on lower-numbered columns.
inline PiggybackPlan make_plan(const CodeParams& p) {
  PiggybackPlan plan;
  plan.k = p.k;
  plan.a_target.assign(static_cast<size_t>(p.k) + 1, 0);
  plan.b_target.assign(static_cast<size_t>(p.k) + 1, 0);

  const auto assign = [&](std::vector<int>& target, int first, int u, int v) {
    int next = first;
    for (int part = 0; part < p.r - 1; ++part) {
      const int size = part < (p.r - 1 - v) ? u : u + 1;
      for (int s = 0; s < size; ++s) target[static_cast<size_t>(next++)] = 2 + part;
    }
  };
  assign(plan.a_target, 1, p.u1, p.v1);
  assign(plan.b_target, p.alpha1 + 1, p.u2, p.v2);
  return plan;
}

// One 2x2 block of the expanded parity part. e[0][0] and e[1][1] carry the
// base entry; e[0][1] is 1 where an a-symbol is piggybacked, e[1][0] is the
// lambda monomial where a b-symbol is.
struct Block2 {
  EPoly e[2][2];
};

// The 2k x 2r parity part of the expanded generator, seen as a k x r matrix
// of 2x2 blocks with entries in E[lambda]. lambda stays symbolic until a
// concrete value is selected.
struct BlockGenerator {
  CodeParams params;
  std::vector<Block2> blocks;  // row-major k x r
  std::optional<Elem> lambda;

  const Block2& block(int i, int j) const {  // i in [1,k], j in [1,r]
    return blocks[static_cast<size_t>((i - 1) * params.r + (j - 1))];
  }
};

inline BlockGenerator expand_generator(const ParityMatrix& p, const PiggybackPlan& plan) {
  if (plan.k != p.params.k) throw invalid_parameter("plan does not match the parity matrix");
  BlockGenerator g;
  g.params = p.params;
  g.blocks.resize(static_cast<size_t>(p.params.k) * static_cast<size_t>(p.params.r));
  for (int i = 1; i <= p.params.k; ++i)
    for (int j = 1; j <= p.params.r; ++j) {
      Block2 b;
      const EPoly d = EPoly::constant(p.at(i, j));
      b.e[0][0] = d;
      b.e[1][1] = d;
      if (plan.a_target[static_cast<size_t>(i)] == j) b.e[0][1] = EPoly::constant(1);
      if (plan.b_target[static_cast<size_t>(i)] == j) b.e[1][0] = EPoly::monomial(1, 1);
      g.blocks[static_cast<size_t>((i - 1) * p.params.r + (j - 1))] = std::move(b);
    }
  return g;
}

}  // namespace bpd
