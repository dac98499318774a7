#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bpd/piggyback.hpp"

namespace bpd {

// A t x t selection of 2x2 blocks from the expanded parity part, flattened
// to its 2t x 2t entry matrix over E[lambda]. Row/column block indices are
// 1-based.
struct BlockSubmatrix {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<EPoly> entries;  // row-major 2t x 2t

  int dim() const { return 2 * static_cast<int>(rows.size()); }
  const EPoly& at(int a, int b) const {  // 0-based into the 2t x 2t matrix
    return entries[static_cast<size_t>(a * dim() + b)];
  }
};

inline BlockSubmatrix take_block_submatrix(const BlockGenerator& g,
                                           std::vector<int> rows,
                                           std::vector<int> cols) {
  BlockSubmatrix s;
  const int t = static_cast<int>(rows.size());
  s.rows = std::move(rows);
  s.cols = std::move(cols);
  s.entries.resize(static_cast<size_t>(4 * t * t));
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b) {
      const Block2& blk = g.block(s.rows[static_cast<size_t>(a)], s.cols[static_cast<size_t>(b)]);
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          s.entries[static_cast<size_t>((2 * a + x) * 2 * t + (2 * b + y))] = blk.e[x][y];
    }
  return s;
}

namespace detail {

// Cofactor expansion over E[lambda]; characteristic 2, so no sign bookkeeping.
// Expands along the live row with the fewest live nonzero entries, which
// keeps the recursion shallow on these mostly-diagonal blocks.
inline EPoly det_epoly(const std::vector<EPoly>& m, int dim, unsigned live_rows,
                       unsigned live_cols, int size) {
  if (size == 0) return EPoly::constant(1);

  int best_row = -1;
  int best_count = size + 1;
  for (int rr = 0; rr < dim; ++rr) {
    if (!(live_rows >> rr & 1)) continue;
    int cnt = 0;
    for (int c = 0; c < dim; ++c)
      if ((live_cols >> c & 1) && !m[static_cast<size_t>(rr * dim + c)].is_zero()) ++cnt;
    if (cnt < best_count) {
      best_count = cnt;
      best_row = rr;
    }
  }
  if (best_count == 0) return EPoly();

  EPoly acc;
  for (int c = 0; c < dim; ++c) {
    if (!(live_cols >> c & 1)) continue;
    const EPoly& e = m[static_cast<size_t>(best_row * dim + c)];
    if (e.is_zero()) continue;
    acc = acc + e * det_epoly(m, dim, live_rows & ~(1u << best_row),
                              live_cols & ~(1u << c), size - 1);
  }
  return acc;
}

inline int env_thread_budget() {
  if (const char* s = std::getenv("BPD_THREADS")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc != 0 ? static_cast<int>(hc) : 1;
}

// Apply f(i) for i in [0,count) across the thread budget. Each index is
// touched exactly once, so results written to disjoint slots are identical
// regardless of the number of workers.
template <typename F>
void parallel_for(int count, F&& f) {
  const int workers = std::min(env_thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

inline EPoly symbolic_det(const BlockSubmatrix& r) {
  const int dim = r.dim();
  return detail::det_epoly(r.entries, dim, (1u << dim) - 1, (1u << dim) - 1, dim);
}

// f_R for one enumerated submatrix, plus the facts the lemma checks need.
struct SubDet {
  std::vector<int> rows;
  std::vector<int> cols;
  EPoly f;
  bool triangular_only = false;  // no block mixes upper with lower orientation
};

inline std::vector<SubDet> collect_block_dets(const BlockGenerator& g) {
  const int k = g.params.k;
  const int r = g.params.r;
  std::vector<SubDet> out;
  for (int t = 1; t <= std::min(k, r); ++t)
    detail::for_each_subset(k, t, [&](const std::vector<int>& rows) {
      detail::for_each_subset(r, t, [&](const std::vector<int>& cols) {
        BlockSubmatrix s = take_block_submatrix(g, rows, cols);
        bool has_upper = false;
        bool has_lower = false;
        for (int a = 0; a < t; ++a)
          for (int b = 0; b < t; ++b) {
            const Block2& blk = g.block(rows[static_cast<size_t>(a)], cols[static_cast<size_t>(b)]);
            if (!blk.e[0][1].is_zero()) has_upper = true;
            if (!blk.e[1][0].is_zero()) has_lower = true;
          }
        out.push_back(SubDet{rows, cols, symbolic_det(s), !(has_upper && has_lower)});
      });
    });
  return out;
}

struct MdsWitness {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<uint8_t> f_coeffs;
};

struct MdsReport {
  bool pass = false;
  long submatrices_checked = 0;
  int max_degree_seen = 0;
  std::optional<MdsWitness> witness;
};

inline MdsReport verify_mds(const std::vector<SubDet>& dets, Elem lambda,
                            const FieldTower& tower) {
  MdsReport rep;
  rep.pass = true;
  for (const SubDet& d : dets) {
    ++rep.submatrices_checked;
    rep.max_degree_seen = std::max(rep.max_degree_seen, std::max(d.f.degree(), 0));
    if (d.f.eval(tower, lambda) == FieldTower::zero() && !rep.witness) {
      rep.pass = false;
      rep.witness = MdsWitness{d.rows, d.cols, d.f.coeffs()};
    }
  }
  return rep;
}

// Enumerates every square block submatrix of the expanded parity part and
// checks f_R(lambda) != 0. A failure is reported with its witness, never
// thrown.
inline MdsReport verify_mds(const BlockGenerator& g, Elem lambda, const FieldTower& tower) {
  return verify_mds(collect_block_dets(g), lambda, tower);
}

inline std::string to_string(const MdsReport& r) {
  std::string s = r.pass ? "MDS: pass" : "MDS: FAIL";
  s += " (submatrices=" + std::to_string(r.submatrices_checked);
  s += ", max_degree=" + std::to_string(r.max_degree_seen) + ")";
  if (r.witness) {
    s += " witness rows=[";
    for (size_t i = 0; i < r.witness->rows.size(); ++i)
      s += (i ? "," : "") + std::to_string(r.witness->rows[i]);
    s += "] cols=[";
    for (size_t i = 0; i < r.witness->cols.size(); ++i)
      s += (i ? "," : "") + std::to_string(r.witness->cols[i]);
    s += "]";
  }
  return s;
}

using MdsVerifier = std::function<bool(Elem)>;

struct LambdaSearchResult {
  Elem lambda;
  int candidates_tried = 0;
};

// Least element of F_q generating F_q over E for which the verifier accepts.
// Candidates run in canonical value order; with the default verifier the
// symbolic determinants are collected once and re-evaluated per candidate.
inline LambdaSearchResult find_lambda(const BlockGenerator& g, const FieldTower& tower,
                                      const MdsVerifier& verifier = {}) {
  if (tower.ext_degree() < 2)
    throw invalid_parameter("lambda search needs a proper extension (m >= 2)");

  std::vector<Elem> candidates;
  for (unsigned v = 0; v < tower.order(); ++v) {
    const Elem x = tower.from_value(v);
    if (tower.min_poly_degree(x) == tower.ext_degree()) candidates.push_back(x);
  }

  MdsVerifier accept = verifier;
  std::vector<SubDet> dets;
  if (!accept) {
    dets = collect_block_dets(g);
    accept = [&](Elem lam) { return verify_mds(dets, lam, tower).pass; };
  }

  const int count = static_cast<int>(candidates.size());
  std::vector<uint8_t> passed(static_cast<size_t>(count), 0);
  detail::parallel_for(count, [&](int i) {
    passed[static_cast<size_t>(i)] = accept(candidates[static_cast<size_t>(i)]) ? 1 : 0;
  });
  for (int i = 0; i < count; ++i)
    if (passed[static_cast<size_t>(i)])
      return LambdaSearchResult{candidates[static_cast<size_t>(i)], i + 1};
  throw no_valid_lambda("no generator of the extension passes the MDS check");
}

struct LambdaCensus {
  int total = 0;
  int passing = 0;
  int failing = 0;
  std::optional<Elem> first_passing;
};

// Classify every candidate lambda (all elements whose minimal polynomial over
// E has full degree m) by the MDS check.
inline LambdaCensus lambda_census(const BlockGenerator& g, const FieldTower& tower) {
  if (tower.ext_degree() < 2)
    throw invalid_parameter("lambda census needs a proper extension (m >= 2)");
  std::vector<Elem> candidates;
  for (unsigned v = 0; v < tower.order(); ++v) {
    const Elem x = tower.from_value(v);
    if (tower.min_poly_degree(x) == tower.ext_degree()) candidates.push_back(x);
  }
  const std::vector<SubDet> dets = collect_block_dets(g);

  const int count = static_cast<int>(candidates.size());
  std::vector<uint8_t> passed(static_cast<size_t>(count), 0);
  detail::parallel_for(count, [&](int i) {
    passed[static_cast<size_t>(i)] =
        verify_mds(dets, candidates[static_cast<size_t>(i)], tower).pass ? 1 : 0;
  });

  LambdaCensus c;
  c.total = count;
  for (int i = 0; i < count; ++i) {
    if (passed[static_cast<size_t>(i)]) {
      ++c.passing;
      if (!c.first_passing) c.first_passing = candidates[static_cast<size_t>(i)];
    } else {
      ++c.failing;
    }
  }
  return c;
}

}  // namespace bpd
