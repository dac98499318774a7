#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bpd/codec.hpp"
#include "json.hpp"

namespace bpd {

// Self-contained description of a constructed code. Serializes to JSON with
// a fixed field order so that save -> load -> save is byte-identical.
struct CodeDescriptor {
  int format_version = 1;
  int n = 0;
  int k = 0;
  int m = 0;
  std::string mu;       // hex nibbles, high degree first, leading 1 included
  std::string base_tag; // "cauchy" | "rs"
  std::string points;   // n hex nibbles
  std::vector<std::string> p_rows;  // k strings of r hex nibbles
  std::string lambda;   // element hex (see FieldTower serialization)
  std::vector<int> a_target;  // length k, 0 = not piggybacked
  std::vector<int> b_target;

  friend bool operator==(const CodeDescriptor&, const CodeDescriptor&) = default;
};

namespace detail {

inline char nibble_hex(uint8_t v) { return "0123456789abcdef"[v & 0xF]; }

inline uint8_t hex_nibble(char c) {
  if (c >= '0' && c <= '9') return static_cast<uint8_t>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<uint8_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'F') return static_cast<uint8_t>(c - 'A' + 10);
  throw format_error("bad hex digit");
}

}  // namespace detail

inline CodeDescriptor describe(const BpdCode& code) {
  const CodeParams& p = code.params();
  CodeDescriptor d;
  d.n = p.n;
  d.k = p.k;
  d.m = code.tower.ext_degree();
  d.mu.push_back('1');
  for (int i = d.m - 1; i >= 0; --i)
    d.mu.push_back(detail::nibble_hex(code.tower.ext_poly()[static_cast<size_t>(i)]));
  d.base_tag = to_string(code.base.tag);
  for (uint8_t pt : code.base.points) d.points.push_back(detail::nibble_hex(pt));
  d.p_rows.resize(static_cast<size_t>(p.k));
  for (int i = 1; i <= p.k; ++i)
    for (int j = 1; j <= p.r; ++j)
      d.p_rows[static_cast<size_t>(i - 1)].push_back(detail::nibble_hex(code.base.at(i, j)));
  d.lambda = code.tower.to_hex(code.lambda);
  d.a_target.assign(code.plan.a_target.begin() + 1, code.plan.a_target.end());
  d.b_target.assign(code.plan.b_target.begin() + 1, code.plan.b_target.end());
  return d;
}

// Rebuild the full code from a descriptor, validating every field.
inline BpdCode realize(const CodeDescriptor& d) {
  if (d.format_version != 1) throw format_error("unsupported descriptor version");
  const CodeParams params = make_params(d.n, d.k);
  if (d.m < 1 || d.m > 3) throw format_error("bad tower degree");
  if (static_cast<int>(d.mu.size()) != d.m + 1 || d.mu[0] != '1')
    throw format_error("bad extension polynomial encoding");
  std::array<uint8_t, 3> mu{};
  for (int i = 0; i < d.m; ++i)
    mu[static_cast<size_t>(i)] = detail::hex_nibble(d.mu[static_cast<size_t>(d.m - i)]);
  FieldTower tower(d.m, mu);

  if (static_cast<int>(d.points.size()) != d.n) throw format_error("bad points length");
  std::vector<uint8_t> pts;
  pts.reserve(static_cast<size_t>(d.n));
  for (char c : d.points) pts.push_back(detail::hex_nibble(c));

  ParityMatrix base;
  base.params = params;
  if (d.base_tag == "cauchy")
    base.tag = BaseTag::cauchy;
  else if (d.base_tag == "rs")
    base.tag = BaseTag::rs_systematic;
  else
    throw format_error("unknown base tag");
  base.points = std::move(pts);
  if (static_cast<int>(d.p_rows.size()) != d.k) throw format_error("bad parity row count");
  base.entries.reserve(static_cast<size_t>(d.k) * static_cast<size_t>(params.r));
  for (const std::string& row : d.p_rows) {
    if (static_cast<int>(row.size()) != params.r) throw format_error("bad parity row length");
    for (char c : row) base.entries.push_back(detail::hex_nibble(c));
  }

  PiggybackPlan plan;
  plan.k = d.k;
  if (static_cast<int>(d.a_target.size()) != d.k || static_cast<int>(d.b_target.size()) != d.k)
    throw format_error("bad plan length");
  plan.a_target.assign(static_cast<size_t>(d.k) + 1, 0);
  plan.b_target.assign(static_cast<size_t>(d.k) + 1, 0);
  for (int i = 1; i <= d.k; ++i) {
    const int a = d.a_target[static_cast<size_t>(i - 1)];
    const int b = d.b_target[static_cast<size_t>(i - 1)];
    if (a != 0 && (a < 2 || a > params.r)) throw format_error("plan target out of range");
    if (b != 0 && (b < 2 || b > params.r)) throw format_error("plan target out of range");
    plan.a_target[static_cast<size_t>(i)] = a;
    plan.b_target[static_cast<size_t>(i)] = b;
  }

  const Elem lambda = tower.from_hex(d.lambda);
  return make_code(std::move(tower), std::move(base), std::move(plan), lambda);
}

inline std::string to_json(const CodeDescriptor& d) {
  nlohmann::ordered_json j;
  j["format"] = d.format_version;
  j["n"] = d.n;
  j["k"] = d.k;
  j["tower"] = {{"m", d.m}, {"mu", d.mu}};
  j["base"] = {{"tag", d.base_tag}, {"points", d.points}, {"p", d.p_rows}};
  j["lambda"] = d.lambda;
  j["plan"] = {{"a_target", d.a_target}, {"b_target", d.b_target}};
  return j.dump(2) + "\n";
}

inline CodeDescriptor from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw format_error("descriptor is not valid JSON");
  }
  CodeDescriptor d;
  try {
    d.format_version = j.at("format").get<int>();
    d.n = j.at("n").get<int>();
    d.k = j.at("k").get<int>();
    d.m = j.at("tower").at("m").get<int>();
    d.mu = j.at("tower").at("mu").get<std::string>();
    d.base_tag = j.at("base").at("tag").get<std::string>();
    d.points = j.at("base").at("points").get<std::string>();
    d.p_rows = j.at("base").at("p").get<std::vector<std::string>>();
    d.lambda = j.at("lambda").get<std::string>();
    d.a_target = j.at("plan").at("a_target").get<std::vector<int>>();
    d.b_target = j.at("plan").at("b_target").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    throw format_error("descriptor is missing required fields");
  }
  return d;
}

inline void save_descriptor(const CodeDescriptor& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open " + path + " for writing");
  out << to_json(d);
}

inline CodeDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

// ---- stripe / codeword binary files: "BPD2", version, n, k, m, then the
// symbol pairs in node order (k pairs for a stripe, n pairs for a codeword).

namespace detail {

inline void write_pairs_file(const std::string& path, const BpdCode& code,
                             const std::vector<SymbolPair>& pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open " + path + " for writing");
  const CodeParams& p = code.params();
  const char magic[4] = {'B', 'P', 'D', '2'};
  out.write(magic, 4);
  const uint8_t hdr[4] = {1, static_cast<uint8_t>(p.n), static_cast<uint8_t>(p.k),
                          static_cast<uint8_t>(code.tower.ext_degree())};
  out.write(reinterpret_cast<const char*>(hdr), 4);
  uint8_t buf[2];
  for (const SymbolPair& sp : pairs) {
    code.tower.write_bytes(sp.first, buf);
    out.write(reinterpret_cast<const char*>(buf), code.tower.byte_size());
    code.tower.write_bytes(sp.second, buf);
    out.write(reinterpret_cast<const char*>(buf), code.tower.byte_size());
  }
}

inline std::vector<SymbolPair> read_pairs_file(const std::string& path, const BpdCode& code,
                                               int expected_pairs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "BPD2")
    throw format_error("bad magic; not a BPD2 file");
  uint8_t hdr[4];
  if (!in.read(reinterpret_cast<char*>(hdr), 4)) throw format_error("truncated header");
  if (hdr[0] != 1) throw format_error("unsupported file version");
  const CodeParams& p = code.params();
  if (hdr[1] != p.n || hdr[2] != p.k || hdr[3] != code.tower.ext_degree())
    throw format_error("file parameters do not match the code descriptor");
  std::vector<SymbolPair> pairs(static_cast<size_t>(expected_pairs));
  uint8_t buf[2];
  for (SymbolPair& sp : pairs) {
    if (!in.read(reinterpret_cast<char*>(buf), code.tower.byte_size()))
      throw format_error("truncated symbol data");
    sp.first = code.tower.read_bytes(buf);
    if (!in.read(reinterpret_cast<char*>(buf), code.tower.byte_size()))
      throw format_error("truncated symbol data");
    sp.second = code.tower.read_bytes(buf);
  }
  if (in.read(reinterpret_cast<char*>(buf), 1)) throw format_error("trailing bytes");
  return pairs;
}

}  // namespace detail

inline void write_stripe(const std::string& path, const BpdCode& code, const Stripe& s) {
  std::vector<SymbolPair> pairs(static_cast<size_t>(code.params().k));
  for (int i = 0; i < code.params().k; ++i)
    pairs[static_cast<size_t>(i)] = {s.a[static_cast<size_t>(i)], s.b[static_cast<size_t>(i)]};
  detail::write_pairs_file(path, code, pairs);
}

inline Stripe read_stripe(const std::string& path, const BpdCode& code) {
  const auto pairs = detail::read_pairs_file(path, code, code.params().k);
  Stripe s;
  s.a.resize(pairs.size());
  s.b.resize(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    s.a[i] = pairs[i].first;
    s.b[i] = pairs[i].second;
  }
  return s;
}

inline void write_codeword(const std::string& path, const BpdCode& code, const Codeword& cw) {
  detail::write_pairs_file(path, code, cw.nodes);
}

inline Codeword read_codeword(const std::string& path, const BpdCode& code) {
  Codeword cw;
  cw.nodes = detail::read_pairs_file(path, code, code.params().n);
  return cw;
}

}  // namespace bpd
