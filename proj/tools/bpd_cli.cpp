// bpd: construct, inspect and exercise (n,k;2) bidirectional piggyback codes.
//
// Exit codes: 0 success, 2 invalid input, 3 verification failure,
// 4 construction failure.

#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "bpd/bpd.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitConstructFailed = 4;

bpd::BaseTag parse_tag(const std::string& s) {
  if (s == "cauchy") return bpd::BaseTag::cauchy;
  if (s == "rs") return bpd::BaseTag::rs_systematic;
  throw bpd::invalid_parameter("unknown base tag: " + s);
}

ordered_json rational_json(const bpd::Rational& r) {
  return ordered_json{{"num", r.num}, {"den", r.den}, {"percent", r.percent()}};
}

ordered_json mds_json(const bpd::MdsReport& rep) {
  ordered_json j;
  j["pass"] = rep.pass;
  j["submatrices"] = rep.submatrices_checked;
  j["max_degree"] = rep.max_degree_seen;
  if (rep.witness) {
    ordered_json w;
    w["rows"] = rep.witness->rows;
    w["cols"] = rep.witness->cols;
    w["f_coeffs"] = rep.witness->f_coeffs;
    j["witness"] = w;
  }
  return j;
}

ordered_json repair_json(const bpd::BpdCode& code, const bpd::RepairReport& rep) {
  ordered_json j;
  j["failed"] = rep.failed;
  ordered_json reads = ordered_json::array();
  for (const bpd::RepairRead& rd : rep.reads)
    reads.push_back(ordered_json{{"node", rd.node}, {"coord", rd.coord}});
  j["reads"] = reads;
  j["downloaded"] = rep.symbols_downloaded;
  j["ok"] = rep.ok;
  j["recovered"] = {{"a", code.tower.to_hex(rep.recovered.first)},
                    {"b", code.tower.to_hex(rep.recovered.second)}};
  return j;
}

std::vector<int> parse_node_list(const std::string& s) {
  std::vector<int> nodes;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    try {
      nodes.push_back(std::stoi(s.substr(pos, comma - pos)));
    } catch (const std::exception&) {
      throw bpd::invalid_parameter("bad node list: " + s);
    }
    pos = comma + 1;
  }
  if (nodes.empty()) throw bpd::invalid_parameter("empty node list");
  return nodes;
}

int cmd_construct(int n, int k, const std::string& base, std::optional<int> m,
                  const std::string& out, bool json) {
  std::optional<bpd::BpdCode> built;
  try {
    built = bpd::build_code(n, k, parse_tag(base), m);
  } catch (const bpd::no_valid_lambda& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitConstructFailed;
  }
  const bpd::BpdCode& code = *built;
  const bpd::MdsReport rep = bpd::verify_mds(code.gen, code.lambda, code.tower);
  if (!out.empty()) bpd::save_descriptor(bpd::describe(code), out);
  if (json) {
    ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["base"] = bpd::to_string(code.base.tag);
    j["m"] = code.tower.ext_degree();
    j["lambda"] = code.tower.to_hex(code.lambda);
    j["mds"] = mds_json(rep);
    if (!out.empty()) j["descriptor"] = out;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "(" << n << "," << k << ";2) BPD code over GF(16^"
              << code.tower.ext_degree() << "), lambda = 0x"
              << code.tower.to_hex(code.lambda) << "\n"
              << bpd::to_string(rep) << "\n";
    if (!out.empty()) std::cout << "descriptor written to " << out << "\n";
  }
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const std::string& code_path, int trials, bool json) {
  const bpd::BpdCode code = bpd::realize(bpd::load_descriptor(code_path));
  const bpd::MdsReport rep = bpd::verify_mds(code.gen, code.lambda, code.tower);
  const bool decoded_ok = bpd::verify_mds_by_decoding(code, trials);
  if (json) {
    ordered_json j;
    j["mds"] = mds_json(rep);
    j["decode_oracle"] = decoded_ok;
    j["agree"] = rep.pass == decoded_ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << bpd::to_string(rep) << "\n"
              << "decode oracle: " << (decoded_ok ? "pass" : "FAIL") << "\n";
  }
  return rep.pass && decoded_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_encode(const std::string& code_path, const std::string& stripe_path,
               const std::string& out) {
  const bpd::BpdCode code = bpd::realize(bpd::load_descriptor(code_path));
  const bpd::Stripe s = bpd::read_stripe(stripe_path, code);
  bpd::write_codeword(out, code, bpd::encode(code, s));
  return kExitOk;
}

int cmd_decode(const std::string& code_path, const std::string& in,
               const std::string& nodes_arg, const std::string& out) {
  const bpd::BpdCode code = bpd::realize(bpd::load_descriptor(code_path));
  const bpd::Codeword cw = bpd::read_codeword(in, code);
  std::map<int, bpd::SymbolPair> avail;
  if (nodes_arg.empty()) {
    for (int i = 1; i <= code.params().n; ++i) avail[i] = cw.node(i);
  } else {
    for (int i : parse_node_list(nodes_arg)) {
      if (i < 1 || i > code.params().n)
        throw bpd::invalid_parameter("node index out of range: " + std::to_string(i));
      avail[i] = cw.node(i);
    }
  }
  bpd::write_stripe(out, code, bpd::decode_any_k(code, avail));
  return kExitOk;
}

int cmd_repair(const std::string& code_path, const std::string& in, int node) {
  const bpd::BpdCode code = bpd::realize(bpd::load_descriptor(code_path));
  const bpd::Codeword cw = bpd::read_codeword(in, code);
  const bpd::RepairReport rep = bpd::repair_systematic(code, node, cw);
  std::cout << repair_json(code, rep).dump(2) << "\n";
  return rep.ok ? kExitOk : kExitVerifyFailed;
}

int cmd_arbr(int n, int k, const std::string& base, bool json) {
  const bpd::BpdCode code = bpd::build_code(n, k, parse_tag(base));
  const bpd::ArbrResult r = bpd::measure_arbr(code);
  if (json) {
    ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["formula"] = rational_json(r.formula_rho);
    j["empirical"] = rational_json(r.empirical_rho);
    j["gamma_bar"] = rational_json(r.gamma_bar);
    j["savings"] = rational_json(r.savings);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "(" << n << "," << k << "): rho = " << r.formula_rho.to_string()
              << " = " << r.formula_rho.percent()
              << " (measured " << r.empirical_rho.to_string()
              << "), avg downloads " << r.gamma_bar.to_string()
              << ", savings " << r.savings.percent() << "\n";
  }
  if (!(r.formula_rho == r.empirical_rho)) return kExitVerifyFailed;
  return kExitOk;
}

int cmd_table3(bool json) {
  const std::vector<bpd::TableRow> rows = bpd::reference_table();
  bool all_match = true;
  if (json) {
    ordered_json arr = ordered_json::array();
    for (const bpd::TableRow& row : rows) {
      ordered_json j;
      j["code"] = "(" + std::to_string(row.n) + "," + std::to_string(row.k) + ")";
      j["baseline"] = rational_json(row.baseline);
      j["bpd"] = rational_json(row.bpd);
      j["matches_cited"] = row.matches_cited;
      arr.push_back(j);
      all_match = all_match && row.matches_cited;
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "RS(n,k)    piggybacking   this construction\n";
    for (const bpd::TableRow& row : rows) {
      std::string name = "(" + std::to_string(row.n) + "," + std::to_string(row.k) + ")";
      name.resize(11, ' ');
      std::string base_pct = row.baseline.percent();
      base_pct.resize(15, ' ');
      std::cout << name << base_pct << row.bpd.percent() << " = "
                << row.bpd.to_string()
                << (row.matches_cited ? "" : "   ** differs from citation **") << "\n";
      all_match = all_match && row.matches_cited;
    }
  }
  return all_match ? kExitOk : kExitVerifyFailed;
}

int cmd_lambda_census(int n, int k, const std::string& base, bool json) {
  const bpd::CodeParams params = bpd::make_params(n, k);
  const bpd::ParityMatrix parity = parse_tag(base) == bpd::BaseTag::cauchy
                                       ? bpd::build_cauchy_parity(params)
                                       : bpd::build_rs_parity(params);
  const bpd::BlockGenerator gen = bpd::expand_generator(parity, bpd::make_plan(params));
  const bpd::FieldTower tower = bpd::FieldTower::build(2);
  const bpd::LambdaCensus c = bpd::lambda_census(gen, tower);
  if (json) {
    ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["field"] = "GF(256)";
    j["total"] = c.total;
    j["passing"] = c.passing;
    j["failing"] = c.failing;
    j["first_passing"] =
        c.first_passing ? ordered_json(tower.to_hex(*c.first_passing)) : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "(" << n << "," << k << ") over GF(256): " << c.total
              << " candidates outside GF(16), " << c.passing << " passing, "
              << c.failing << " failing";
    if (c.first_passing)
      std::cout << ", least passing lambda = 0x" << tower.to_hex(*c.first_passing);
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_mkstripe(const std::string& code_path, const std::string& out, uint64_t seed) {
  const bpd::BpdCode code = bpd::realize(bpd::load_descriptor(code_path));
  std::mt19937_64 rng(seed);
  bpd::write_stripe(out, code, bpd::random_stripe(code, rng));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(n,k;2) bidirectional piggyback codes: construction, MDS "
               "verification, coding, repair and bandwidth analysis"};
  app.require_subcommand(1);

  int n = 0;
  int k = 0;
  int node = 0;
  std::optional<int> m_override;
  std::string base = "cauchy";
  std::string code_path;
  std::string stripe_path;
  std::string in_path;
  std::string out_path;
  std::string nodes_arg;
  uint64_t seed = 1;
  int trials = 500;
  bool json = false;

  auto* construct = app.add_subcommand("construct", "build a code and write its descriptor");
  construct->add_option("--n", n, "total node count")->required();
  construct->add_option("--k", k, "systematic node count")->required();
  construct->add_option("--base", base, "base parity family: cauchy | rs");
  construct->add_option("--m", m_override, "tower degree override (1..3)");
  construct->add_option("--out", out_path, "descriptor output path");
  construct->add_flag("--json", json, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "re-check a descriptor with both verifiers");
  verify->add_option("--code", code_path, "descriptor path")->required();
  verify->add_option("--trials", trials, "decode-oracle subsets when n > 10");
  verify->add_flag("--json", json, "machine-readable output");

  auto* encode = app.add_subcommand("encode", "encode a stripe file into a codeword file");
  encode->add_option("--code", code_path, "descriptor path")->required();
  encode->add_option("--stripe", stripe_path, "stripe input path")->required();
  encode->add_option("--out", out_path, "codeword output path")->required();

  auto* decode = app.add_subcommand("decode", "rebuild the stripe from k or more nodes");
  decode->add_option("--code", code_path, "descriptor path")->required();
  decode->add_option("--in", in_path, "codeword input path")->required();
  decode->add_option("--nodes", nodes_arg, "comma-separated 1-based node subset");
  decode->add_option("--out", out_path, "stripe output path")->required();

  auto* repair = app.add_subcommand("repair", "repair one systematic node, print the report");
  repair->add_option("--code", code_path, "descriptor path")->required();
  repair->add_option("--in", in_path, "codeword input path")->required();
  repair->add_option("--node", node, "failed node (1-based)")->required();

  auto* arbr = app.add_subcommand("arbr", "repair-bandwidth ratio, formula and measured");
  arbr->add_option("--n", n, "total node count")->required();
  arbr->add_option("--k", k, "systematic node count")->required();
  arbr->add_option("--base", base, "base parity family: cauchy | rs");
  arbr->add_flag("--json", json, "machine-readable output");

  auto* table3 = app.add_subcommand("table3", "reproduce the published ARBR comparison");
  table3->add_flag("--json", json, "machine-readable output");

  auto* census = app.add_subcommand("lambda_census",
                                    "classify every GF(256) lambda candidate");
  census->add_option("--n", n, "total node count")->required();
  census->add_option("--k", k, "systematic node count")->required();
  census->add_option("--base", base, "base parity family: cauchy | rs");
  census->add_flag("--json", json, "machine-readable output");

  auto* mkstripe = app.add_subcommand("mkstripe", "write a random stripe file for a code");
  mkstripe->add_option("--code", code_path, "descriptor path")->required();
  mkstripe->add_option("--out", out_path, "stripe output path")->required();
  mkstripe->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (construct->parsed()) return cmd_construct(n, k, base, m_override, out_path, json);
    if (verify->parsed()) return cmd_verify(code_path, trials, json);
    if (encode->parsed()) return cmd_encode(code_path, stripe_path, out_path);
    if (decode->parsed()) return cmd_decode(code_path, in_path, nodes_arg, out_path);
    if (repair->parsed()) return cmd_repair(code_path, in_path, node);
    if (arbr->parsed()) return cmd_arbr(n, k, base, json);
    if (table3->parsed()) return cmd_table3(json);
    if (census->parsed()) return cmd_lambda_census(n, k, base, json);
    if (mkstripe->parsed()) return cmd_mkstripe(code_path, out_path, seed);
  } catch (const bpd::no_valid_lambda& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstructFailed;
  } catch (const bpd::invalid_parameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const bpd::field_too_small& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const bpd::insufficient_data& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const bpd::unsupported_operation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const bpd::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const bpd::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
