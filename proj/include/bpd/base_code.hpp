#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpd/gf.hpp"

namespace bpd {

// Parameters of an (n,k;2) code and the derived split quantities. The k data
// positions are divided into a first half of alpha1 and a second half of
// alpha2 symbols; each half is spread over the r-1 piggybackable parity
// columns in parts of size u or u+1 (v parts get the extra symbol).
struct CodeParams {
  int n = 0;
  int k = 0;
  int r = 0;
  int alpha1 = 0;
  int alpha2 = 0;
  int u1 = 0;
  int v1 = 0;
  int u2 = 0;
  int v2 = 0;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

inline CodeParams make_params(int n, int k) {
  const int r = n - k;
  if (r < 2) throw invalid_parameter("need at least two parity columns (n-k >= 2)");
  if (k <= r) throw invalid_parameter("need k > n-k");
  if (n > 16) throw invalid_parameter("n exceeds 16, the ground field size");
  CodeParams p;
  p.n = n;
  p.k = k;
  p.r = r;
  p.alpha1 = k / 2;
  p.alpha2 = k - k / 2;
  p.u1 = p.alpha1 / (r - 1);
  p.v1 = p.alpha1 - (r - 1) * p.u1;
  p.u2 = p.alpha2 / (r - 1);
  p.v2 = p.alpha2 - (r - 1) * p.u2;
  return p;
}

enum class BaseTag { cauchy, rs_systematic };

inline std::string to_string(BaseTag t) {
  return t == BaseTag::cauchy ? "cauchy" : "rs";
}

// The k x r parity part of the systematic generator (I | P) of one original
// substripe. Entries live in E; every square submatrix must be invertible.
struct ParityMatrix {
  CodeParams params;
  BaseTag tag = BaseTag::cauchy;
  std::vector<uint8_t> points;   // generating / evaluation points in E
  std::vector<uint8_t> entries;  // row-major k x r

  uint8_t at(int i, int j) const {  // i in [1,k], j in [1,r]
    return entries[static_cast<size_t>((i - 1) * params.r + (j - 1))];
  }
};

namespace detail {

// f(subset) for every size-t subset of {1,...,n}, in lexicographic order
template <typename F>
void for_each_subset(int n, int t, F&& f) {
  std::vector<int> idx(static_cast<size_t>(t));
  for (int i = 0; i < t; ++i) idx[static_cast<size_t>(i)] = i + 1;
  while (true) {
    f(const_cast<const std::vector<int>&>(idx));
    int i = t - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - t + i + 1) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < t; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

// determinant over E, Gaussian elimination, dim <= 4 here but generic
inline uint8_t det16(std::vector<uint8_t> m, int dim) {
  uint8_t det = 1;
  for (int c = 0; c < dim; ++c) {
    int piv = -1;
    for (int rr = c; rr < dim; ++rr)
      if (m[static_cast<size_t>(rr * dim + c)] != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c)
      for (int j = 0; j < dim; ++j)
        std::swap(m[static_cast<size_t>(piv * dim + j)], m[static_cast<size_t>(c * dim + j)]);
    const uint8_t d = m[static_cast<size_t>(c * dim + c)];
    det = gf16::mul(det, d);
    const uint8_t dinv = gf16::inv(d);
    for (int rr = c + 1; rr < dim; ++rr) {
      const uint8_t f = gf16::mul(m[static_cast<size_t>(rr * dim + c)], dinv);
      if (f == 0) continue;
      for (int j = c; j < dim; ++j)
        m[static_cast<size_t>(rr * dim + j)] ^= gf16::mul(f, m[static_cast<size_t>(c * dim + j)]);
    }
  }
  return det;
}

// Solve A x = y over F_q. Returns nothing if A is singular.
inline std::optional<std::vector<Elem>> solve_linear(const FieldTower& t,
                                                     std::vector<std::vector<Elem>> a,
                                                     std::vector<Elem> y) {
  const int dim = static_cast<int>(y.size());
  for (int c = 0; c < dim; ++c) {
    int piv = -1;
    for (int rr = c; rr < dim; ++rr)
      if (!(a[static_cast<size_t>(rr)][static_cast<size_t>(c)] == FieldTower::zero())) {
        piv = rr;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(c)]);
    std::swap(y[static_cast<size_t>(piv)], y[static_cast<size_t>(c)]);
    const Elem dinv = t.inv(a[static_cast<size_t>(c)][static_cast<size_t>(c)]);
    for (int j = c; j < dim; ++j)
      a[static_cast<size_t>(c)][static_cast<size_t>(j)] = t.mul(a[static_cast<size_t>(c)][static_cast<size_t>(j)], dinv);
    y[static_cast<size_t>(c)] = t.mul(y[static_cast<size_t>(c)], dinv);
    for (int rr = 0; rr < dim; ++rr) {
      if (rr == c) continue;
      const Elem f = a[static_cast<size_t>(rr)][static_cast<size_t>(c)];
      if (f == FieldTower::zero()) continue;
      for (int j = c; j < dim; ++j)
        a[static_cast<size_t>(rr)][static_cast<size_t>(j)] = FieldTower::add(
            a[static_cast<size_t>(rr)][static_cast<size_t>(j)],
            t.mul(f, a[static_cast<size_t>(c)][static_cast<size_t>(j)]));
      y[static_cast<size_t>(rr)] =
          FieldTower::add(y[static_cast<size_t>(rr)], t.mul(f, y[static_cast<size_t>(c)]));
    }
  }
  return y;
}

}  // namespace detail

inline bool verify_superregular(const ParityMatrix& p) {
  const int k = p.params.k;
  const int r = p.params.r;
  const int tmax = std::min(k, r);
  for (int t = 1; t <= tmax; ++t) {
    bool ok = true;
    detail::for_each_subset(k, t, [&](const std::vector<int>& rows) {
      if (!ok) return;
      detail::for_each_subset(r, t, [&](const std::vector<int>& cols) {
        if (!ok) return;
        std::vector<uint8_t> sub(static_cast<size_t>(t) * static_cast<size_t>(t));
        for (int a = 0; a < t; ++a)
          for (int b = 0; b < t; ++b)
            sub[static_cast<size_t>(a * t + b)] =
                p.at(rows[static_cast<size_t>(a)], cols[static_cast<size_t>(b)]);
        if (detail::det16(std::move(sub), t) == 0) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

// Cauchy parity: P[i][j] = 1/(x_i + y_j) with x_1..x_k, y_1..y_r the first n
// elements of E in value order. Superregular for any choice of distinct
// points, so this is the default base matrix.
inline ParityMatrix build_cauchy_parity(const CodeParams& params) {
  if (params.n > 16) throw field_too_small("Cauchy construction needs n distinct points in GF(16)");
  ParityMatrix p;
  p.params = params;
  p.tag = BaseTag::cauchy;
  p.points.resize(static_cast<size_t>(params.n));
  for (int i = 0; i < params.n; ++i) p.points[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
  p.entries.resize(static_cast<size_t>(params.k) * static_cast<size_t>(params.r));
  for (int i = 1; i <= params.k; ++i)
    for (int j = 1; j <= params.r; ++j) {
      const uint8_t xi = p.points[static_cast<size_t>(i - 1)];
      const uint8_t yj = p.points[static_cast<size_t>(params.k + j - 1)];
      p.entries[static_cast<size_t>((i - 1) * params.r + (j - 1))] = gf16::inv(xi ^ yj);
    }
  if (!verify_superregular(p)) throw error("Cauchy parity failed the superregularity check");
  return p;
}

// Parity part of the systematic generator of the [n,k] Reed-Solomon code with
// the given evaluation points: row-reduce the k x n Vandermonde generator so
// its first k columns become the identity.
inline ParityMatrix build_rs_parity(const CodeParams& params, std::vector<uint8_t> pts) {
  const int n = params.n;
  const int k = params.k;
  const int r = params.r;
  if (static_cast<int>(pts.size()) != n) throw invalid_parameter("need exactly n evaluation points");
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] > 15) throw invalid_parameter("evaluation points must lie in GF(16)");
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw invalid_parameter("duplicate evaluation point");
  }

  // g[i][j] = pts[j]^i
  std::vector<uint8_t> g(static_cast<size_t>(k) * static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    uint8_t pw = 1;
    for (int i = 0; i < k; ++i) {
      g[static_cast<size_t>(i * n + j)] = pw;
      pw = gf16::mul(pw, pts[static_cast<size_t>(j)]);
    }
  }
  // Gauss-Jordan on the first k columns
  for (int c = 0; c < k; ++c) {
    int piv = -1;
    for (int rr = c; rr < k; ++rr)
      if (g[static_cast<size_t>(rr * n + c)] != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) throw invalid_parameter("evaluation points give a singular systematic part");
    if (piv != c)
      for (int j = 0; j < n; ++j)
        std::swap(g[static_cast<size_t>(piv * n + j)], g[static_cast<size_t>(c * n + j)]);
    const uint8_t dinv = gf16::inv(g[static_cast<size_t>(c * n + c)]);
    for (int j = 0; j < n; ++j)
      g[static_cast<size_t>(c * n + j)] = gf16::mul(g[static_cast<size_t>(c * n + j)], dinv);
    for (int rr = 0; rr < k; ++rr) {
      if (rr == c) continue;
      const uint8_t f = g[static_cast<size_t>(rr * n + c)];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j)
        g[static_cast<size_t>(rr * n + j)] ^= gf16::mul(f, g[static_cast<size_t>(c * n + j)]);
    }
  }

  ParityMatrix p;
  p.params = params;
  p.tag = BaseTag::rs_systematic;
  p.points = std::move(pts);
  p.entries.resize(static_cast<size_t>(k) * static_cast<size_t>(r));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r; ++j)
      p.entries[static_cast<size_t>(i * r + j)] = g[static_cast<size_t>(i * n + (k + j))];
  if (!verify_superregular(p)) throw error("RS parity failed the superregularity check");
  return p;
}

inline ParityMatrix build_rs_parity(const CodeParams& params) {
  std::vector<uint8_t> pts(static_cast<size_t>(params.n));
  for (int i = 0; i < params.n; ++i) pts[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
  return build_rs_parity(params, std::move(pts));
}

// Recover one substripe's k data symbols from any k known codeword positions.
// Positions are 1-based over [1,n]: 1..k systematic, k+j the j-th parity.
// Values may live in the extension field even though P is over E.
inline std::vector<Elem> decode_substripe(const ParityMatrix& p,
                                          const std::map<int, Elem>& known,
                                          const FieldTower& tower) {
  const int k = p.params.k;
  if (static_cast<int>(known.size()) < k)
    throw insufficient_data("substripe decode needs at least k known positions");

  std::vector<std::vector<Elem>> a;
  std::vector<Elem> y;
  a.reserve(static_cast<size_t>(k));
  y.reserve(static_cast<size_t>(k));
  for (const auto& [pos, val] : known) {
    if (static_cast<int>(a.size()) == k) break;
    if (pos < 1 || pos > p.params.n) throw invalid_parameter("position out of range");
    std::vector<Elem> row(static_cast<size_t>(k), FieldTower::zero());
    if (pos <= k) {
      row[static_cast<size_t>(pos - 1)] = FieldTower::one();
    } else {
      for (int i = 1; i <= k; ++i) row[static_cast<size_t>(i - 1)] = tower.embed(p.at(i, pos - k));
    }
    a.push_back(std::move(row));
    y.push_back(val);
  }
  auto sol = detail::solve_linear(tower, std::move(a), std::move(y));
  if (!sol) throw error("substripe system unexpectedly singular");  // impossible when P is superregular
  return *sol;
}

}  // namespace bpd
