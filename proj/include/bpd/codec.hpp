#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "bpd/mds_check.hpp"

namespace bpd {

// A fully constructed (n,k;2) code: base parity over E, piggyback plan,
// expanded generator and a concrete lambda in the tower field.
struct BpdCode {
  FieldTower tower;
  ParityMatrix base;
  PiggybackPlan plan;
  BlockGenerator gen;
  Elem lambda;

  const CodeParams& params() const { return base.params; }
};

inline BpdCode make_code(FieldTower tower, ParityMatrix base, PiggybackPlan plan, Elem lambda) {
  BlockGenerator gen = expand_generator(base, plan);
  gen.lambda = lambda;
  return BpdCode{std::move(tower), std::move(base), std::move(plan), std::move(gen), lambda};
}

// Full pipeline: params, base matrix, plan, tower selection and lambda
// search. The tower degree defaults to floor(r/2)+1; for r = 4 the one-byte
// field F_256 is tried first and F_16^3 is the fallback.
inline BpdCode build_code(int n, int k, BaseTag tag = BaseTag::cauchy,
                          std::optional<int> m_override = std::nullopt) {
  const CodeParams params = make_params(n, k);
  ParityMatrix base = tag == BaseTag::cauchy ? build_cauchy_parity(params) : build_rs_parity(params);
  const PiggybackPlan plan = make_plan(params);
  BlockGenerator gen = expand_generator(base, plan);

  std::vector<int> degrees;
  if (m_override) {
    degrees = {*m_override};
  } else if (params.r / 2 + 1 == 3) {
    degrees = {2, 3};
  } else {
    degrees = {params.r / 2 + 1};
  }

  for (size_t i = 0; i < degrees.size(); ++i) {
    FieldTower tower = FieldTower::build(degrees[i]);
    try {
      const LambdaSearchResult found = find_lambda(gen, tower);
      gen.lambda = found.lambda;
      return BpdCode{std::move(tower), std::move(base), plan, std::move(gen), found.lambda};
    } catch (const no_valid_lambda&) {
      if (i + 1 == degrees.size()) throw;
    }
  }
  throw no_valid_lambda("lambda search failed");  // unreachable
}

struct Stripe {
  std::vector<Elem> a;  // a[i-1] is the paper's a_i
  std::vector<Elem> b;

  friend bool operator==(const Stripe&, const Stripe&) = default;
};

struct SymbolPair {
  Elem first;   // a-substripe coordinate
  Elem second;  // b-substripe coordinate

  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

struct Codeword {
  std::vector<SymbolPair> nodes;  // nodes[i-1] is node i, i in [1,n]

  const SymbolPair& node(int i) const { return nodes[static_cast<size_t>(i - 1)]; }
};

inline Stripe random_stripe(const BpdCode& code, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> dist(0, code.tower.order() - 1);
  Stripe s;
  s.a.resize(static_cast<size_t>(code.params().k));
  s.b.resize(static_cast<size_t>(code.params().k));
  for (auto& x : s.a) x = code.tower.from_value(dist(rng));
  for (auto& x : s.b) x = code.tower.from_value(dist(rng));
  return s;
}

inline Codeword encode(const BpdCode& code, const Stripe& stripe) {
  const CodeParams& p = code.params();
  if (static_cast<int>(stripe.a.size()) != p.k || static_cast<int>(stripe.b.size()) != p.k)
    throw invalid_parameter("stripe dimensions do not match k");
  const FieldTower& t = code.tower;

  Codeword cw;
  cw.nodes.resize(static_cast<size_t>(p.n));
  for (int i = 1; i <= p.k; ++i)
    cw.nodes[static_cast<size_t>(i - 1)] = {stripe.a[static_cast<size_t>(i - 1)],
                                            stripe.b[static_cast<size_t>(i - 1)]};
  for (int j = 1; j <= p.r; ++j) {
    Elem pa = FieldTower::zero();  // P_j^T a
    Elem pb = FieldTower::zero();  // P_j^T b
    Elem piggy_b = FieldTower::zero();
    Elem piggy_a = FieldTower::zero();
    for (int i = 1; i <= p.k; ++i) {
      const Elem pij = t.embed(code.base.at(i, j));
      pa = FieldTower::add(pa, t.mul(pij, stripe.a[static_cast<size_t>(i - 1)]));
      pb = FieldTower::add(pb, t.mul(pij, stripe.b[static_cast<size_t>(i - 1)]));
      if (code.plan.b_target[static_cast<size_t>(i)] == j)
        piggy_b = FieldTower::add(piggy_b, stripe.b[static_cast<size_t>(i - 1)]);
      if (code.plan.a_target[static_cast<size_t>(i)] == j)
        piggy_a = FieldTower::add(piggy_a, stripe.a[static_cast<size_t>(i - 1)]);
    }
    cw.nodes[static_cast<size_t>(p.k + j - 1)] = {
        FieldTower::add(pa, t.mul(code.lambda, piggy_b)),
        FieldTower::add(pb, piggy_a)};
  }
  return cw;
}

namespace detail {

// 2k x 2k system from the expanded generator columns of the chosen nodes.
// Unknowns are interleaved (a_1, b_1, ..., a_k, b_k).
inline std::optional<Stripe> try_decode(const BpdCode& code,
                                        const std::vector<std::pair<int, SymbolPair>>& nodes) {
  const CodeParams& p = code.params();
  const FieldTower& t = code.tower;
  const int dim = 2 * p.k;

  std::vector<std::vector<Elem>> a;
  std::vector<Elem> y;
  a.reserve(static_cast<size_t>(dim));
  y.reserve(static_cast<size_t>(dim));
  for (const auto& [node, sym] : nodes) {
    for (int coord = 0; coord < 2; ++coord) {
      std::vector<Elem> row(static_cast<size_t>(dim), FieldTower::zero());
      if (node <= p.k) {
        row[static_cast<size_t>(2 * (node - 1) + coord)] = FieldTower::one();
      } else {
        const int j = node - p.k;
        for (int i = 1; i <= p.k; ++i) {
          const Block2& blk = code.gen.block(i, j);
          row[static_cast<size_t>(2 * (i - 1))] = blk.e[0][coord].eval(t, code.lambda);
          row[static_cast<size_t>(2 * (i - 1) + 1)] = blk.e[1][coord].eval(t, code.lambda);
        }
      }
      a.push_back(std::move(row));
      y.push_back(coord == 0 ? sym.first : sym.second);
    }
  }
  auto sol = solve_linear(t, std::move(a), std::move(y));
  if (!sol) return std::nullopt;
  Stripe s;
  s.a.resize(static_cast<size_t>(p.k));
  s.b.resize(static_cast<size_t>(p.k));
  for (int i = 0; i < p.k; ++i) {
    s.a[static_cast<size_t>(i)] = (*sol)[static_cast<size_t>(2 * i)];
    s.b[static_cast<size_t>(i)] = (*sol)[static_cast<size_t>(2 * i + 1)];
  }
  return s;
}

}  // namespace detail

// Reconstruct the stripe from any k of the n nodes (the first k available in
// node order are used). Keys are 1-based node indices.
inline Stripe decode_any_k(const BpdCode& code, const std::map<int, SymbolPair>& available) {
  const CodeParams& p = code.params();
  if (static_cast<int>(available.size()) < p.k)
    throw insufficient_data("decoding needs at least k nodes");
  std::vector<std::pair<int, SymbolPair>> chosen;
  for (const auto& [node, sym] : available) {
    if (static_cast<int>(chosen.size()) == p.k) break;
    if (node < 1 || node > p.n) throw invalid_parameter("node index out of range");
    chosen.emplace_back(node, sym);
  }
  auto s = detail::try_decode(code, chosen);
  if (!s) throw error("decode system unexpectedly singular");  // impossible for an MDS code
  return *s;
}

struct RepairRead {
  int node = 0;   // 1-based
  int coord = 0;  // 0 = a-substripe symbol, 1 = b-substripe symbol

  friend bool operator==(const RepairRead&, const RepairRead&) = default;
};

struct RepairReport {
  int failed = 0;
  std::vector<RepairRead> reads;
  int symbols_downloaded = 0;
  SymbolPair recovered;
  bool ok = false;
};

// Repair one systematic node, reading only from the surviving nodes.
//
// First the failed node's clean-substripe symbol is rebuilt from the k
// untouched symbols of that substripe ({companions} plus the column-1
// parity), which also yields every P_j^T of it. Then the piggybacked parity
// holding the failed node's other symbol is read together with the rest of
// its part, and the symbol is peeled out. Downloads: k + (part size).
inline RepairReport repair_systematic(const BpdCode& code, int failed, const Codeword& cw) {
  const CodeParams& p = code.params();
  if (failed < 1 || failed > p.k)
    throw unsupported_operation("only systematic nodes (1..k) are repairable");
  const FieldTower& t = code.tower;

  RepairReport rep;
  rep.failed = failed;
  const auto read = [&](int node, int coord) -> Elem {
    rep.reads.push_back(RepairRead{node, coord});
    return coord == 0 ? cw.node(node).first : cw.node(node).second;
  };

  const bool first_half = failed <= p.alpha1;
  // coordinate of the substripe that is decoded in step 1 (the one whose
  // column-1 parity is clean for this direction)
  const int clean = first_half ? 1 : 0;

  std::map<int, Elem> known;
  for (int i = 1; i <= p.k; ++i)
    if (i != failed) known[i] = read(i, clean);
  known[p.k + 1] = read(p.k + 1, clean);
  const std::vector<Elem> sub = decode_substripe(code.base, known, t);
  const Elem step1 = sub[static_cast<size_t>(failed - 1)];

  const auto& target = first_half ? code.plan.a_target : code.plan.b_target;
  const int j = target[static_cast<size_t>(failed)];

  // P_j^T of the decoded substripe
  Elem pj = FieldTower::zero();
  for (int i = 1; i <= p.k; ++i)
    pj = FieldTower::add(pj, t.mul(t.embed(code.base.at(i, j)), sub[static_cast<size_t>(i - 1)]));

  // the piggybacked parity, then peel off the other members of the part
  Elem acc = FieldTower::add(read(p.k + j, clean), pj);
  for (int i = 1; i <= p.k; ++i)
    if (i != failed && target[static_cast<size_t>(i)] == j)
      acc = FieldTower::add(acc, first_half ? read(i, 0) : t.mul(code.lambda, read(i, 1)));
  const Elem step2 = first_half ? acc : t.mul(t.inv(code.lambda), acc);

  rep.recovered = first_half ? SymbolPair{step2, step1} : SymbolPair{step1, step2};
  rep.symbols_downloaded = static_cast<int>(rep.reads.size());
  rep.ok = rep.recovered == cw.node(failed);
  return rep;
}

// Independent MDS oracle: encode random stripes and decode them back from
// k-subsets of nodes. Exhaustive over all subsets for n <= 10, otherwise
// `trials` random subsets.
inline bool verify_mds_by_decoding(const BpdCode& code, int trials = 500,
                                   uint64_t seed = 0x9e3779b97f4a7c15ull) {
  const CodeParams& p = code.params();
  std::mt19937_64 rng(seed);

  const auto roundtrip = [&](const std::vector<int>& nodes) {
    const Stripe s = random_stripe(code, rng);
    const Codeword cw = encode(code, s);
    std::vector<std::pair<int, SymbolPair>> chosen;
    chosen.reserve(nodes.size());
    for (int nd : nodes) chosen.emplace_back(nd, cw.node(nd));
    const auto decoded = detail::try_decode(code, chosen);
    return decoded && *decoded == s;
  };

  bool ok = true;
  if (p.n <= 10) {
    detail::for_each_subset(p.n, p.k, [&](const std::vector<int>& nodes) {
      if (ok && !roundtrip(nodes)) ok = false;
    });
  } else {
    std::vector<int> all(static_cast<size_t>(p.n));
    for (int i = 0; i < p.n; ++i) all[static_cast<size_t>(i)] = i + 1;
    for (int tr = 0; tr < trials && ok; ++tr) {
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<int> nodes(all.begin(), all.begin() + p.k);
      std::sort(nodes.begin(), nodes.end());
      if (!roundtrip(nodes)) ok = false;
    }
  }
  return ok;
}

}  // namespace bpd
