// trex: command-line front end for the extractor toolkit. Subcommands bind
// the library modules one-to-one: plan, design, encode, extract, verify,
// reconstruct, rac, field-table, bench. Reports are JSON documents on
// stdout; raw bit payloads are binary files, LSB-first within each byte.
// Exit codes: 0 success, 1 usage or input error, 2 infeasible parameters,
// 3 verification or reconstruction failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <trex/bitstring.hpp>
#include <trex/code.hpp>
#include <trex/design.hpp>
#include <trex/dist.hpp>
#include <trex/gf2e.hpp>
#include <trex/oracles.hpp>
#include <trex/rac.hpp>
#include <trex/rational.hpp>
#include <trex/reconstruct.hpp>
#include <trex/rng.hpp>
#include <trex/trevisan.hpp>
#include <trex/util.hpp>
#include <trex/verify.hpp>

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kFailed = 3;

std::uint64_t parse_seed(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty --rng-seed");
  std::size_t pos = 0;
  const int base = s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0 ? 16 : 10;
  const std::uint64_t v = std::stoull(s, &pos, base);
  if (pos != s.size()) throw std::invalid_argument("bad --rng-seed: " + s);
  return v;
}

trex::BitString read_bits_file(const std::string& path, std::size_t nbits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<std::uint8_t> bytes((nbits + 7) / 8);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size())
    throw std::invalid_argument(path + ": expected at least " +
                                std::to_string(bytes.size()) + " bytes");
  return trex::BitString::from_bytes(bytes, nbits);
}

void write_bits_file(const std::string& path, const trex::BitString& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path);
  const auto bytes = bits.to_bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::invalid_argument("write failed: " + path);
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

/// Accepts three spellings of an nbits-long bit payload:
///   - "0x..." hex integer, bit i of the value = bit i of the string
///   - a literal string of exactly nbits '0'/'1' characters (char 0 = bit 0)
///   - anything else: a path to a binary file, LSB-first within bytes.
trex::BitString parse_bits_arg(const std::string& arg, std::size_t nbits) {
  if (arg.rfind("0x", 0) == 0 || arg.rfind("0X", 0) == 0) {
    const std::string hex = arg.substr(2);
    if (hex.empty()) throw std::invalid_argument("empty hex payload");
    trex::BitString out(nbits);
    for (std::size_t i = 0; i < 4 * hex.size(); ++i) {
      const int d = hex_digit(hex[hex.size() - 1 - i / 4]);
      if (d < 0) throw std::invalid_argument("bad hex payload: " + arg);
      const int bit = (d >> (i % 4)) & 1;
      if (i < nbits)
        out.set(i, bit);
      else if (bit)
        throw std::invalid_argument("hex payload wider than " +
                                    std::to_string(nbits) + " bits");
    }
    return out;
  }
  if (arg.size() == nbits &&
      arg.find_first_not_of("01") == std::string::npos)
    return trex::BitString::from_string(arg);
  return read_bits_file(arg, nbits);
}

std::string modulus_string(std::uint32_t mod) {
  std::string s = "0b";
  bool seen = false;
  for (int b = 31; b >= 0; --b) {
    if ((mod >> b) & 1) seen = true;
    if (seen) s += static_cast<char>('0' + ((mod >> b) & 1));
  }
  return seen ? s : "0b0";
}

std::uint32_t parse_modulus(const std::string& s) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  if (s.rfind("0b", 0) == 0 || s.rfind("0B", 0) == 0)
    v = std::stoull(s.substr(2), &pos, 2), pos += 2;
  else if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
    v = std::stoull(s, &pos, 16);
  else
    v = std::stoull(s, &pos, 10);
  if (pos != s.size() || v > UINT32_MAX)
    throw std::invalid_argument("bad modulus: " + s);
  return static_cast<std::uint32_t>(v);
}

std::string rational_string(const trex::Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

json code_json(const trex::CodeParams& c) {
  return json{{"n", c.n},
              {"delta", c.delta},
              {"s", c.s},
              {"modulus", modulus_string(c.ctx.modulus())},
              {"d", c.d},
              {"h", c.h},
              {"degree", c.degree},
              {"log2_nbar", c.log2_nbar},
              {"nbar", c.nbar}};
}

trex::CodeParams code_from_json(const json& j) {
  auto p = trex::code_params_from(
      j.at("n").get<std::uint64_t>(), j.at("delta").get<double>(),
      j.at("s").get<int>(), j.at("d").get<std::uint32_t>(),
      j.at("h").get<std::uint32_t>());
  const auto mod = parse_modulus(j.at("modulus").get<std::string>());
  if (mod != p.ctx.modulus())
    throw std::invalid_argument(
        "params file uses a non-standard field modulus");
  return p;
}

json design_json(const trex::DesignFamily& d) {
  return json{{"t", d.t},
              {"l", d.l},
              {"r", d.r},
              {"m", d.sets.size()},
              {"sets", d.sets}};
}

trex::DesignFamily design_from_json(const json& j) {
  trex::DesignFamily d;
  d.t = j.at("t").get<std::uint32_t>();
  d.l = j.at("l").get<std::uint32_t>();
  d.r = j.at("r").get<std::uint32_t>();
  d.sets = j.at("sets").get<std::vector<std::vector<std::uint32_t>>>();
  return d;
}

json params_json(const trex::ExtractorParams& p) {
  return json{{"feasible", true},
              {"n", p.n},
              {"k", p.k},
              {"b", p.b},
              {"eps", p.eps},
              {"m", p.m},
              {"c", p.c_exponent},
              {"t", p.t},
              {"design", json{{"t", p.design.t},
                              {"l", p.design.l},
                              {"r", p.design.r}}},
              {"code", code_json(p.code)}};
}

/// Rebuild extractor parameters from a plan report. The design sets are
/// regrown deterministically unless a design JSON (from `trex design`) is
/// supplied alongside.
trex::ExtractorParams params_from_json(const json& j,
                                       const json* design_doc) {
  trex::ExtractorParams p;
  p.n = j.at("n").get<std::uint64_t>();
  p.k = j.at("k").get<std::uint64_t>();
  p.b = j.at("b").get<std::uint64_t>();
  p.eps = j.at("eps").get<double>();
  p.m = j.at("m").get<std::uint32_t>();
  p.c_exponent = j.at("c").get<std::uint32_t>();
  p.code = code_from_json(j.at("code"));
  const auto dj = j.at("design");
  const auto l = dj.at("l").get<std::uint32_t>();
  const auto r = dj.at("r").get<std::uint32_t>();
  if (l != p.code.log2_nbar)
    throw std::invalid_argument("params file: design l != log2 nbar");
  if (design_doc != nullptr) {
    p.design = design_from_json(*design_doc);
    if (p.design.l != l || p.design.r != r ||
        p.design.sets.size() != p.m || !trex::verify_design(p.design))
      throw std::invalid_argument(
          "design file does not match the plan or fails verification");
  } else {
    p.design = trex::make_design(p.m, l, r);
  }
  p.t = p.design.t;
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct BenchClock {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "trex: Trevisan extractor toolkit (designs, codes, extraction, "
      "verification, reconstruction, random access codes)"};
  app.require_subcommand(1);

  std::string seed_str = "1";

  // ---- plan ----
  auto* plan = app.add_subcommand(
      "plan", "Choose extractor parameters for (n, k, b, eps)");
  std::uint64_t pl_n = 0, pl_k = 0, pl_b = 0;
  double pl_eps = 0.1, pl_mult = 1.0, pl_cfield = 1.0;
  std::uint32_t pl_c = 15;
  plan->add_option("--n", pl_n, "source length in bits")->required();
  plan->add_option("--k", pl_k, "min-entropy bound")->required();
  plan->add_option("--b", pl_b, "adversary storage bound in bits")
      ->required();
  plan->add_option("--eps", pl_eps, "target error")->required();
  plan->add_option("--c", pl_c, "output-length exponent (m ~ (k/b)^(1/c))");
  plan->add_option("--multiplier", pl_mult,
                   "scale on the output-length formula");
  plan->add_option("--c-field", pl_cfield,
                   "field-size constant (0 pins the smallest legal field)");
  plan->add_option("--rng-seed", seed_str, "unused; accepted for symmetry");

  // ---- design ----
  auto* design = app.add_subcommand(
      "design", "Grow and print a (t, l, r) weak design for m sets");
  std::uint32_t dg_m = 0, dg_l = 0, dg_r = 0;
  std::string dg_params;
  design->add_option("--m", dg_m, "number of sets");
  design->add_option("--l", dg_l, "set size");
  design->add_option("--r", dg_r, "max pairwise intersection");
  design->add_option("--params", dg_params,
                     "plan JSON; supplies (m, l, r) when flags are absent");
  design->add_option("--rng-seed", seed_str, "unused; accepted for symmetry");

  // ---- encode ----
  auto* encode = app.add_subcommand(
      "encode", "Encode an n-bit message with the concatenated code");
  std::uint64_t en_n = 0;
  double en_delta = 0.25, en_cfield = 1.0;
  std::string en_msg, en_params, en_out;
  std::int64_t en_bit = -1;
  encode->add_option("--n", en_n, "message length");
  encode->add_option("--delta", en_delta, "list-decoding radius offset");
  encode->add_option("--c-field", en_cfield, "field-size constant");
  encode->add_option("--params", en_params,
                     "plan JSON; supplies the code instead of --n/--delta");
  encode->add_option("--message", en_msg,
                     "message bits: 0x-hex, 01-string, or file path")
      ->required();
  encode->add_option("--bit", en_bit,
                     "emit only codeword position j (JSON field \"bit\")");
  encode->add_option("--out", en_out, "write the full codeword here");
  encode->add_option("--rng-seed", seed_str, "unused; accepted for symmetry");

  // ---- extract ----
  auto* extract = app.add_subcommand(
      "extract", "Run the extractor on an input and a seed");
  std::string ex_params, ex_design, ex_input, ex_seed, ex_out;
  extract->add_option("--params", ex_params, "plan JSON")->required();
  extract->add_option("--design", ex_design,
                      "design JSON (default: regrow deterministically)");
  extract->add_option("--input", ex_input,
                      "n source bits: 0x-hex, 01-string, or file path")
      ->required();
  extract->add_option("--seed", ex_seed,
                      "t seed bits: 0x-hex, 01-string, or file path")
      ->required();
  extract->add_option("--out", ex_out, "write output bits here as binary");
  extract->add_option("--rng-seed", seed_str,
                      "unused; accepted for symmetry");

  // ---- verify ----
  auto* verify = app.add_subcommand(
      "verify", "Check designs, extractor distances, storage advantage");
  verify->require_subcommand(1);
  auto* vd = verify->add_subcommand("design", "verify a design JSON");
  std::string vd_file;
  vd->add_option("--file", vd_file, "design JSON (default: stdin)");

  auto* ve = verify->add_subcommand(
      "extractor", "exact distance of flat sources, worst-case search");
  std::string ve_kind = "hash", ve_support, ve_params;
  std::uint32_t ve_n = 4, ve_m = 1;
  std::int64_t ve_k = -1;
  double ve_eps = -1.0;
  bool ve_exhaustive = false;
  std::uint64_t ve_budget = 1024;
  ve->add_option("--kind", ve_kind, "hash | trevisan | bitselect | constant")
      ->check(CLI::IsMember({"hash", "trevisan", "bitselect", "constant"}));
  ve->add_option("--n", ve_n, "source length");
  ve->add_option("--m", ve_m, "output length (hash/constant kinds)");
  ve->add_option("--params", ve_params, "plan JSON (trevisan kind)");
  ve->add_option("--support", ve_support,
                 "comma-separated support values; exact distance mode");
  ve->add_option("--k", ve_k, "min-entropy; search worst size-2^k source");
  ve->add_option("--eps", ve_eps, "bound to check (exit 3 on violation)");
  ve->add_flag("--exhaustive", ve_exhaustive,
               "enumerate every support of size 2^k");
  ve->add_option("--budget", ve_budget,
                 "sampled sources, or exhaustive-enumeration cap");
  ve->add_option("--rng-seed", seed_str, "sampled-search seed");

  auto* vs = verify->add_subcommand(
      "storage", "classical bounded-storage advantage of a flat source");
  std::string vs_kind = "hash", vs_support, vs_params;
  std::uint32_t vs_n = 4, vs_m = 1, vs_b = 1;
  double vs_bound = -1.0;
  std::uint64_t vs_budget = 100000;
  vs->add_option("--kind", vs_kind, "hash | trevisan | bitselect | constant")
      ->check(CLI::IsMember({"hash", "trevisan", "bitselect", "constant"}));
  vs->add_option("--n", vs_n, "source length");
  vs->add_option("--m", vs_m, "output length (hash/constant kinds)");
  vs->add_option("--params", vs_params, "plan JSON (trevisan kind)");
  vs->add_option("--support", vs_support, "comma-separated support values")
      ->required();
  vs->add_option("--b", vs_b, "storage bits");
  vs->add_option("--bound", vs_bound, "bound to check (exit 3 on violation)");
  vs->add_option("--budget", vs_budget,
                 "max enumerated maps before sampling");
  vs->add_option("--rng-seed", seed_str, "sampled-search seed");

  // ---- reconstruct ----
  auto* rec = app.add_subcommand(
      "reconstruct", "Play the reconstruction game against a distinguisher");
  std::string rc_mode, rc_f;
  std::uint64_t rc_n = 16;
  std::uint32_t rc_m = 2;
  double rc_eps = 0.6, rc_cfield = 0.0, rc_noise = 0.0;
  trex::WorstCaseBudgets rc_budgets;
  rec->add_option("--mode", rc_mode, "avg | worst")
      ->required()
      ->check(CLI::IsMember({"avg", "worst"}));
  rec->add_option("--n", rc_n, "source length (toy scale: n <= 20)");
  rec->add_option("--m", rc_m, "output length");
  rec->add_option("--eps", rc_eps, "distinguisher advantage bound");
  rec->add_option("--c-field", rc_cfield, "field-size constant");
  rec->add_option("--f", rc_f,
                  "the hidden string: 0x-hex, 01-string, or file path "
                  "(default: seeded random)");
  rec->add_option("--noise", rc_noise,
                  "flip the distinguisher's answer with this probability");
  rec->add_option("--fixings", rc_budgets.search.fixings,
                  "seed fixings tried per hybrid index");
  rec->add_option("--samples-per-candidate",
                  rc_budgets.search.samples_per_candidate,
                  "positions per candidate during the advice search");
  rec->add_option("--final-samples", rc_budgets.search.final_samples,
                  "fresh positions for the winner's re-estimate");
  rec->add_option("--rm-points", rc_budgets.rm_points,
                  "outer evaluation points (worst mode)");
  rec->add_option("--inner-delta-frac", rc_budgets.inner_delta_frac,
                  "inner list radius as a fraction of delta (worst mode)");
  rec->add_option("--inner-conf", rc_budgets.inner_conf,
                  "per-point list-decoder confidence (worst mode)");
  rec->add_option("--survivor-frac", rc_budgets.survivor_frac,
                  "outer membership threshold (worst mode)");
  rec->add_option("--advantage-trials", rc_budgets.advantage_trials,
                  "trials for the advantage estimate (worst mode)");
  rec->add_option("--agreement-samples", rc_budgets.agreement_samples,
                  "positions for the final agreement check (worst mode)");
  rec->add_option("--rng-seed", seed_str, "game seed");

  // ---- rac ----
  auto* rac = app.add_subcommand(
      "rac", "Random-access-code experiments: amplify, regev, avgcase");
  std::string ra_mode;
  double ra_base = 0.6, ra_eps = 0.1;
  std::uint64_t ra_trials = 2000, ra_n = 64, ra_queries = 10000;
  std::uint32_t ra_range = 10;
  rac->add_option("--mode", ra_mode, "amplify | regev | avgcase")
      ->required()
      ->check(CLI::IsMember({"amplify", "regev", "avgcase"}));
  rac->add_option("--base-success", ra_base,
                  "per-answer success probability (amplify)");
  rac->add_option("--eps", ra_eps, "target failure probability (amplify)");
  rac->add_option("--trials", ra_trials, "Monte-Carlo trials");
  rac->add_option("--n", ra_n, "string length (regev: a perfect square)");
  rac->add_option("--range", ra_range, "hash range (regev)");
  rac->add_option("--queries", ra_queries, "sampled positions (regev)");
  rac->add_option("--rng-seed", seed_str, "experiment seed");

  // ---- field-table ----
  auto* field = app.add_subcommand(
      "field-table", "Print a GF(2^s) context and, for s <= 6, its tables");
  int ft_s = 0;
  std::string ft_mod;
  field->add_option("--s", ft_s, "field degree, 1..16")->required();
  field->add_option("--modulus", ft_mod,
                    "irreducible modulus (0b/0x/decimal); default: smallest");
  field->add_option("--rng-seed", seed_str, "unused; accepted for symmetry");

  // ---- bench ----
  auto* bench = app.add_subcommand(
      "bench", "Time the core operations (timings go to stderr)");
  std::string bn_suite = "all";
  std::uint32_t bn_threads =
      std::getenv("TREX_THREADS") != nullptr
          ? static_cast<std::uint32_t>(
                std::strtoul(std::getenv("TREX_THREADS"), nullptr, 10))
          : 1;
  bench->add_option("--suite", bn_suite, "design | code | extract | gl | all")
      ->check(CLI::IsMember({"design", "code", "extract", "gl", "all"}));
  bench->add_option("--threads", bn_threads,
                    "worker cap (mirrors TREX_THREADS)");
  bench->add_option("--rng-seed", seed_str, "bench seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const std::uint64_t seed = parse_seed(seed_str);
    trex::Rng rng(seed);

    if (plan->parsed()) {
      const auto result = trex::plan_params(pl_n, pl_k, pl_b, pl_eps, pl_c,
                                            pl_mult, pl_cfield);
      if (std::holds_alternative<trex::InfeasibilityReport>(result)) {
        const auto& rep = std::get<trex::InfeasibilityReport>(result);
        emit(json{{"feasible", false},
                  {"m_tilde", rep.m_tilde},
                  {"reason", rep.reason}});
        return kInfeasible;
      }
      emit(params_json(std::get<trex::ExtractorParams>(result)));
      return kOk;
    }

    if (design->parsed()) {
      if (!dg_params.empty()) {
        const json j = load_json_file(dg_params);
        if (dg_m == 0) dg_m = j.at("m").get<std::uint32_t>();
        if (dg_l == 0) dg_l = j.at("design").at("l").get<std::uint32_t>();
        if (dg_r == 0) dg_r = j.at("design").at("r").get<std::uint32_t>();
      }
      if (dg_m == 0 || dg_l == 0 || dg_r == 0)
        throw std::invalid_argument(
            "design needs --m, --l, --r (directly or via --params)");
      const auto d = trex::make_design(dg_m, dg_l, dg_r);
      emit(design_json(d));
      return kOk;
    }

    if (encode->parsed()) {
      trex::CodeParams code;
      if (!en_params.empty()) {
        code = code_from_json(load_json_file(en_params).at("code"));
      } else {
        if (en_n == 0)
          throw std::invalid_argument("encode needs --n or --params");
        code = trex::code_params(en_n, en_delta, en_cfield);
      }
      const auto f = parse_bits_arg(en_msg, code.n);
      json out = {{"code", code_json(code)}};
      if (en_bit >= 0) {
        if (code.nbar == 0 ||
            static_cast<std::uint64_t>(en_bit) >= code.nbar)
          throw std::invalid_argument("--bit out of range");
        out["bit_index"] = en_bit;
        out["bit"] = trex::encode_bit(
            f, code, static_cast<std::uint64_t>(en_bit));
      } else {
        const auto cw = trex::encode_all(f, code);
        out["weight"] = cw.count_ones();
        out["nbar"] = cw.size();
        if (!en_out.empty()) {
          write_bits_file(en_out, cw);
          out["out_file"] = en_out;
        } else if (cw.size() <= 4096) {
          out["codeword_bits"] = cw.to_string();
        } else {
          throw std::invalid_argument(
              "codeword longer than 4096 bits: pass --out FILE");
        }
      }
      emit(out);
      return kOk;
    }

    if (extract->parsed()) {
      const json pj = load_json_file(ex_params);
      json dj;
      if (!ex_design.empty()) dj = load_json_file(ex_design);
      const auto p =
          params_from_json(pj, ex_design.empty() ? nullptr : &dj);
      const auto x = parse_bits_arg(ex_input, p.n);
      const auto y = parse_bits_arg(ex_seed, p.t);
      const auto z = trex::extract(x, y, p);
      json out = {{"n", p.n}, {"m", p.m}, {"t", p.t},
                  {"output_bits", z.to_string()}};
      if (!ex_out.empty()) {
        write_bits_file(ex_out, z);
        out["out_file"] = ex_out;
      }
      emit(out);
      return kOk;
    }

    if (vd->parsed()) {
      json j;
      if (vd_file.empty())
        std::cin >> j;
      else
        j = load_json_file(vd_file);
      const auto d = design_from_json(j);
      const bool ok = trex::verify_design(d);
      std::uint32_t worst = 0;
      for (std::size_t a = 0; a < d.sets.size(); ++a)
        for (std::size_t b = a + 1; b < d.sets.size(); ++b) {
          std::uint32_t inter = 0;
          for (auto v : d.sets[a])
            for (auto w : d.sets[b]) inter += v == w;
          worst = std::max(worst, inter);
        }
      emit(json{{"ok", ok},
                {"m", d.sets.size()},
                {"t", d.t},
                {"l", d.l},
                {"r", d.r},
                {"max_intersection", worst}});
      return ok ? kOk : kFailed;
    }

    auto parse_support = [](const std::string& arg, std::uint32_t n) {
      std::vector<trex::BitString> support;
      std::stringstream ss(arg);
      std::string tok;
      while (std::getline(ss, tok, ','))
        support.push_back(
            trex::BitString::from_uint(std::stoull(tok), n));
      return trex::FlatSource(std::move(support));
    };
    auto make_extractor_fn = [&](const std::string& kind, std::uint32_t n,
                                 std::uint32_t m, const std::string& params,
                                 trex::ExtractorParams& storage) {
      if (kind == "hash") return trex::extractor_fn_hash(n, m);
      if (kind == "bitselect") return trex::extractor_fn_bitselect(n);
      if (kind == "constant")
        return trex::extractor_fn_constant(n, 1, m);
      if (params.empty())
        throw std::invalid_argument("kind=trevisan needs --params");
      storage = params_from_json(load_json_file(params), nullptr);
      return trex::extractor_fn_trevisan(storage);
    };

    if (ve->parsed()) {
      trex::ExtractorParams holder;
      const auto E =
          make_extractor_fn(ve_kind, ve_n, ve_m, ve_params, holder);
      json out = {{"kind", ve_kind}, {"n", E.n}, {"m", E.m}, {"t", E.t}};
      trex::Rational dist(0);
      if (!ve_support.empty()) {
        const auto X = parse_support(ve_support, E.n);
        dist = trex::extractor_distance_exact(E, X);
        out["support_size"] = X.support().size();
        out["min_entropy"] = X.min_entropy();
      } else {
        if (ve_k < 0)
          throw std::invalid_argument(
              "verify extractor needs --support or --k");
        const auto res = trex::worst_flat_source(
            E, E.n, static_cast<std::uint32_t>(ve_k), ve_exhaustive,
            ve_budget, rng);
        dist = res.distance;
        out["k"] = ve_k;
        out["exhaustive"] = res.exhaustive;
        out["sources_checked"] = res.sources_checked;
        std::vector<std::string> sup;
        for (const auto& x : res.support) sup.push_back(x.to_string());
        out["worst_support"] = sup;
      }
      out["distance"] = rational_string(dist);
      out["distance_double"] = dist.to_double();
      bool ok = true;
      if (ve_eps >= 0.0) {
        ok = !(dist.to_double() > ve_eps);
        out["eps"] = ve_eps;
        out["ok"] = ok;
      }
      emit(out);
      return ok ? kOk : kFailed;
    }

    if (vs->parsed()) {
      trex::ExtractorParams holder;
      const auto E =
          make_extractor_fn(vs_kind, vs_n, vs_m, vs_params, holder);
      const auto X = parse_support(vs_support, E.n);
      const auto res =
          trex::classical_storage_advantage(E, X, vs_b, vs_budget, rng);
      json out = {{"kind", vs_kind},
                  {"n", E.n},
                  {"m", E.m},
                  {"t", E.t},
                  {"b", vs_b},
                  {"support_size", X.support().size()},
                  {"advantage", rational_string(res.advantage)},
                  {"advantage_double", res.advantage.to_double()},
                  {"exhaustive", res.exhaustive},
                  {"maps_checked", res.maps_checked}};
      bool ok = true;
      if (vs_bound >= 0.0) {
        ok = !(res.advantage.to_double() > vs_bound);
        out["bound"] = vs_bound;
        out["ok"] = ok;
      }
      emit(out);
      return ok ? kOk : kFailed;
    }

    if (rec->parsed()) {
      const auto p =
          trex::make_extractor_params(rc_n, rc_m, rc_eps, rc_cfield);
      trex::BitString f = rc_f.empty()
                              ? trex::BitString(rc_n)
                              : parse_bits_arg(rc_f, rc_n);
      if (rc_f.empty()) {
        trex::Rng fs = rng.child("f");
        for (std::uint64_t i = 0; i < rc_n; ++i)
          f.set(i, static_cast<int>(fs.below(2)));
      }
      trex::ExactMatchDistinguisher exact(f, p);
      trex::NoisyDistinguisher noisy(exact, rc_noise, rng.child("noise"));
      trex::Distinguisher& T =
          rc_noise > 0.0 ? static_cast<trex::Distinguisher&>(noisy)
                         : static_cast<trex::Distinguisher&>(exact);
      json out = {{"mode", rc_mode},
                  {"n", p.n},
                  {"m", p.m},
                  {"eps", p.eps},
                  {"t", p.t},
                  {"log2_nbar", p.code.log2_nbar},
                  {"noise", rc_noise},
                  {"f", f.to_string()}};
      if (rc_mode == "avg") {
        const auto res =
            trex::avg_case_reconstruct(T, f, p, rc_budgets.search, rng);
        out["ok"] = res.ok;
        out["error"] = res.error;
        out["success"] = res.success;
        out["threshold"] = res.threshold;
        out["slack"] = res.slack;
        out["i_star"] = res.advice.i_star;
        out["orientation"] = res.advice.orientation;
        out["advice_bits"] = res.advice.total_bits();
        out["search_queries"] = res.search_queries;
        out["final_queries"] = res.final_queries;
        emit(out);
        return res.ok ? kOk : kFailed;
      }
      const auto res = trex::worst_case_reconstruct(T, f, p, rc_budgets, rng);
      out["ok"] = res.ok;
      out["error"] = res.error;
      out["recovered"] = res.recovered.size() ? res.recovered.to_string()
                                              : std::string();
      out["advantage"] = res.advantage;
      out["predictor_success"] = res.predictor_success;
      out["survivors"] = res.survivors;
      out["list_index"] = res.list_index;
      out["advice_bits"] = res.advice_bits;
      out["decode_queries"] = res.decode_queries;
      out["queries_per_point_max"] = res.queries_per_point_max;
      out["points_used"] = res.points_used;
      out["candidate_agreement"] = res.candidate_agreement;
      emit(out);
      return res.ok ? kOk : kFailed;
    }

    if (rac->parsed()) {
      if (ra_mode == "amplify") {
        const auto res = trex::amplify(ra_base, ra_eps, ra_trials, rng);
        emit(json{{"mode", "amplify"},
                  {"T", res.T},
                  {"base_success", res.base_success},
                  {"eps", ra_eps},
                  {"trials", res.trials},
                  {"measured", res.measured},
                  {"exact", trex::majority_tail_exact(res.T, ra_base)}});
        return kOk;
      }
      if (ra_mode == "regev") {
        const auto root = static_cast<std::uint32_t>(
            std::llround(std::sqrt(static_cast<double>(ra_n))));
        if (static_cast<std::uint64_t>(root) * root != ra_n)
          throw std::invalid_argument("regev needs a perfect-square --n");
        trex::BitString f(ra_n);
        trex::Rng fs = rng.child("regev-f");
        for (std::uint32_t blk = 0; blk < root; ++blk)
          f.set(blk * root + fs.below(root), 1);
        trex::Rng es = rng.child("regev-encode");
        const auto enc = trex::regev_encode(f, ra_n, ra_range, es);
        trex::Rng qs = rng.child("regev-queries");
        std::uint64_t correct = 0;
        for (std::uint64_t i = 0; i < ra_queries; ++i) {
          const std::uint64_t pos = qs.below(ra_n);
          correct += trex::regev_decode(enc, pos) == f.get(pos);
        }
        emit(json{{"mode", "regev"},
                  {"n", ra_n},
                  {"root", enc.root},
                  {"range", enc.range},
                  {"q", enc.q},
                  {"bit_length", enc.bit_length()},
                  {"queries", ra_queries},
                  {"measured",
                   static_cast<double>(correct) /
                       static_cast<double>(ra_queries)}});
        return kOk;
      }
      const auto res = trex::avgcase_counterexample(ra_n, ra_trials, rng);
      emit(json{{"mode", "avgcase"},
                {"n", res.n},
                {"weight", res.weight},
                {"exact_success", rational_string(res.exact_success)},
                {"exact_success_double", res.exact_success.to_double()},
                {"measured", res.measured},
                {"worst_case_success", res.worst_case_success}});
      return kOk;
    }

    if (field->parsed()) {
      const auto ctx = ft_mod.empty()
                           ? trex::FieldCtx::standard(ft_s)
                           : trex::FieldCtx(ft_s, parse_modulus(ft_mod));
      json out = {{"s", ctx.s()},
                  {"modulus", modulus_string(ctx.modulus())},
                  {"order", std::uint64_t{1} << ctx.s()}};
      if (ctx.s() <= 6) {
        const std::uint32_t q = 1u << ctx.s();
        std::vector<std::vector<std::uint32_t>> mul(q);
        for (std::uint32_t a = 0; a < q; ++a) {
          mul[a].resize(q);
          for (std::uint32_t b = 0; b < q; ++b) mul[a][b] = ctx.mul(a, b);
        }
        out["mul_table"] = mul;
      }
      emit(out);
      return kOk;
    }

    if (bench->parsed()) {
      json out = {{"suites", json::array()}};
      const bool all = bn_suite == "all";
      if (all || bn_suite == "design") {
        BenchClock clk;
        const auto d = trex::make_design(256, 32, 8);
        std::cerr << "design m=256 l=32 r=8: t=" << d.t << " in "
                  << clk.ms() << " ms\n";
        out["suites"].push_back(
            json{{"suite", "design"}, {"m", 256}, {"l", 32}, {"r", 8},
                 {"t", d.t}});
      }
      if (all || bn_suite == "code") {
        const auto code = trex::code_params(16, 0.125, 0.0);
        trex::BitString f(16);
        trex::Rng fs = rng.child("bench-code");
        for (int i = 0; i < 16; ++i)
          f.set(i, static_cast<int>(fs.below(2)));
        BenchClock clk;
        const auto cw = trex::encode_all(f, code);
        std::cerr << "encode n=16 nbar=2^" << code.log2_nbar << ": "
                  << clk.ms() << " ms\n";
        out["suites"].push_back(json{{"suite", "code"},
                                     {"n", 16},
                                     {"log2_nbar", code.log2_nbar},
                                     {"weight", cw.count_ones()}});
      }
      if (all || bn_suite == "extract") {
        const auto p = trex::make_extractor_params(16, 2, 0.6, 0.0);
        trex::Rng fs = rng.child("bench-extract");
        trex::BitString f(16), y(p.t);
        for (int i = 0; i < 16; ++i)
          f.set(i, static_cast<int>(fs.below(2)));
        for (std::uint32_t i = 0; i < p.t; ++i)
          y.set(i, static_cast<int>(fs.below(2)));
        BenchClock clk;
        constexpr int kReps = 1000;
        std::uint32_t acc = 0;
        std::vector<std::uint32_t> outs(kReps);
        trex::parallel_for(
            kReps,
            [&](std::size_t i) {
              auto yy = y;
              yy.set(i % p.t, 1 - yy.get(i % p.t));
              outs[i] = static_cast<std::uint32_t>(
                  trex::extract(f, yy, p).to_uint());
            },
            bn_threads);
        for (auto v : outs) acc ^= v;
        std::cerr << "extract n=16 m=2 x" << kReps << ": " << clk.ms()
                  << " ms total\n";
        out["suites"].push_back(json{{"suite", "extract"},
                                     {"n", 16},
                                     {"m", p.m},
                                     {"t", p.t},
                                     {"xor_of_outputs", acc},
                                     {"reps", kReps}});
      }
      if (all || bn_suite == "gl") {
        trex::Rng ws = rng.child("bench-gl");
        const std::uint32_t truth =
            static_cast<std::uint32_t>(ws.below(256));
        trex::BitString w(256);
        for (std::uint32_t j = 0; j < 256; ++j) {
          int bit = trex::parity64(truth & j);
          if (ws.unit() < 0.2) bit ^= 1;
          w.set(j, bit);
        }
        trex::WordOracle O(w);
        BenchClock clk;
        const auto res = trex::gl_decode(O, 8, 0.25, 0.99, rng);
        std::cerr << "gl s=8 delta=0.25: " << clk.ms() << " ms, list="
                  << res.list.size() << "\n";
        bool hit = false;
        for (auto c : res.list) hit = hit || c == truth;
        out["suites"].push_back(json{{"suite", "gl"},
                                     {"s", 8},
                                     {"list_size", res.list.size()},
                                     {"queries", res.queries},
                                     {"truth_in_list", hit}});
      }
      emit(out);
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
