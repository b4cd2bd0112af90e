#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lx/attack.hpp"
#include "lx/encode.hpp"
#include "lx/error.hpp"
#include "lx/ff.hpp"
#include "lx/io.hpp"
#include "lx/kernels.hpp"
#include "lx/prf.hpp"
#include "lx/stats.hpp"

namespace {

using KV = std::vector<std::pair<std::string, std::string>>;

std::string kv_text(const KV& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += ": ";
    out += v;
    out += '\n';
  }
  return out;
}

std::string kv_json(const KV& kv) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : kv) j[k] = v;
  return j.dump(2) + "\n";
}

void emit(const KV& kv, const std::string& format, const std::string& out_path) {
  const std::string payload = format == "structured" ? kv_json(kv) : kv_text(kv);
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    lx::io::write_file(out_path, payload);
  }
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::optional<std::vector<std::uint64_t>> parse_irreducible(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::vector<std::uint64_t> coeffs;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      coeffs.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      lx::fail(lx::Errc::BadFormat, "bad --irreducible coefficient '" + tok + "'");
    }
  }
  return coeffs;
}

struct FieldFlags {
  std::uint64_t p = 0;
  std::uint32_t r = 0;
  std::string irreducible;

  lx::ff::FieldParams build() const { return lx::ff::make_field(p, r, parse_irreducible(irreducible)); }
};

void add_field_flags(CLI::App* cmd, FieldFlags& f) {
  cmd->add_option("--p", f.p, "base prime (odd)")->required();
  cmd->add_option("--r", f.r, "extension degree")->required();
  cmd->add_option("--irreducible", f.irreducible,
                  "monic irreducible as c0,c1,...,cr (default: smallest)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Legendre PRF cryptanalysis workbench over extension fields"};
  app.require_subcommand(1);
  int rc = 0;

  // field-info
  auto* info = app.add_subcommand("field-info", "construct a field and print its parameters");
  FieldFlags info_field;
  std::uint64_t info_seed = 0;
  std::string info_format = "text", info_out;
  add_field_flags(info, info_field);
  info->add_option("--seed", info_seed, "generator search seed");
  info->add_option("--format", info_format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  info->add_option("--out", info_out, "write report to file instead of stdout");
  info->callback([&] {
    const auto fp = info_field.build();
    lx::SplitMix64 rng(info_seed);
    const auto gen = lx::ff::find_generator(fp, rng);
    KV kv;
    kv.emplace_back("field", fp.describe());
    kv.emplace_back("order", std::to_string(fp.order));
    kv.emplace_back("half_order", std::to_string(fp.half_order));
    std::string factors;
    for (std::size_t i = 0; i < fp.order_factors.size(); ++i) {
      if (i) factors += ',';
      factors += std::to_string(fp.order_factors[i]);
    }
    kv.emplace_back("order_minus_one_factors", factors);
    kv.emplace_back("generator", lx::io::element_to_string(gen));
    kv.emplace_back("kernel", lx::kernels::pick(fp).name);
    emit(kv, info_format, info_out);
  });

  // keygen
  auto* keygen = app.add_subcommand("keygen", "draw a uniform random key and write a key file");
  FieldFlags kg_field;
  std::uint32_t kg_degree = 1;
  std::uint64_t kg_seed = 0;
  std::string kg_out;
  add_field_flags(keygen, kg_field);
  keygen->add_option("--degree", kg_degree, "key degree d (d=1 draws a nonzero K)");
  keygen->add_option("--seed", kg_seed, "rng seed");
  keygen->add_option("--out", kg_out, "key file path")->required();
  keygen->callback([&] {
    const auto fp = kg_field.build();
    lx::SplitMix64 rng(kg_seed);
    const auto key = lx::prf::random_key(fp, kg_degree, rng);
    lx::io::write_key_file(kg_out, key, fp);
    std::cout << "wrote " << kg_out << "\n";
  });

  // keystream
  auto* stream = app.add_subcommand("keystream", "generate a keystream file from a key file");
  std::string st_key, st_mode = "counter", st_out;
  std::uint64_t st_start = 0, st_count = 0, st_seed = 0;
  stream->add_option("--key", st_key, "key file")->required();
  stream->add_option("--mode", st_mode, "counter|geometric")
      ->check(CLI::IsMember({"counter", "geometric"}));
  stream->add_option("--start", st_start, "counter start index");
  stream->add_option("--count", st_count, "number of bits M")->required();
  stream->add_option("--seed", st_seed, "generator search seed (geometric mode)");
  stream->add_option("--out", st_out, "keystream file path")->required();
  stream->callback([&] {
    const auto kf = lx::io::read_key_file(st_key);
    lx::prf::Keystream ks;
    if (st_mode == "counter") {
      ks = lx::prf::keystream_counter(kf.key, st_start, st_count, kf.params);
    } else {
      lx::SplitMix64 rng(st_seed);
      const auto gen = lx::ff::find_generator(kf.params, rng);
      ks = lx::prf::keystream_geometric(kf.key, gen, st_count, kf.params);
    }
    lx::io::write_keystream_file(st_out, ks);
    std::cout << "wrote " << st_out << "\n";
  });

  // attack passive|active
  auto* attack = app.add_subcommand("attack", "run a key-recovery attack on a keystream file");
  attack->require_subcommand(1);
  struct AttackFlags {
    std::string keystream, out, key_out, format = "text";
    std::uint32_t window = 0;
    std::uint64_t seed = 0, max_guesses = 0;
    std::uint32_t workers = 0;
  } at;
  for (const char* name : {"passive", "active"}) {
    auto* sub = attack->add_subcommand(
        name, std::string(name) == "passive" ? "differential-signature bucketing attack"
                                             : "geometric table-collision attack");
    sub->add_option("--keystream", at.keystream, "keystream file")->required();
    sub->add_option("--window", at.window, "window bits U (default: min(M, ceil(log2 p^r)+6))");
    sub->add_option("--seed", at.seed, "guess rng seed");
    sub->add_option("--max-guesses", at.max_guesses,
                    "guess budget (default: passive 50*p^r, active 50*p^r/M)");
    sub->add_option("--workers", at.workers, "worker threads (default: available parallelism)");
    sub->add_option("--out", at.out, "write report to file instead of stdout");
    sub->add_option("--format", at.format, "text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--key-out", at.key_out, "write the recovered key as a key file");
    sub->callback([&, name] {
      const auto ks = lx::io::read_keystream_file(at.keystream);
      const std::uint32_t window =
          at.window ? at.window : lx::attack::default_window_bits(ks.params, ks.length);
      lx::attack::Options opt;
      opt.seed = at.seed;
      opt.max_guesses = at.max_guesses;
      opt.workers = at.workers;
      lx::attack::AttackReport rep;
      if (std::string(name) == "passive") {
        rep = lx::attack::passive_recover(ks, window, opt);
      } else {
        rep = lx::attack::active_recover(ks, window, opt);
      }
      const std::string payload = at.format == "structured" ? lx::attack::report_json(rep, ks)
                                                            : lx::attack::report_text(rep, ks);
      if (at.out.empty()) {
        std::cout << payload;
      } else {
        lx::io::write_file(at.out, payload);
      }
      if (rep.recovered_key && !at.key_out.empty()) {
        lx::io::write_key_file(at.key_out, *rep.recovered_key, ks.params);
      }
      rc = rep.recovered_key ? 0 : 1;
    });
  }

  // verify
  auto* verify = app.add_subcommand("verify", "check that a key reproduces a keystream file");
  std::string vf_key, vf_stream;
  verify->add_option("--key", vf_key, "key file")->required();
  verify->add_option("--keystream", vf_stream, "keystream file")->required();
  verify->callback([&] {
    const auto kf = lx::io::read_key_file(vf_key);
    const auto ks = lx::io::read_keystream_file(vf_stream);
    if (kf.params.describe() != ks.params.describe()) {
      lx::fail(lx::Errc::FieldMismatch, "key and keystream use different fields");
    }
    const bool ok = lx::prf::reproduces(kf.key, ks);
    std::cout << "match: " << (ok ? "yes" : "no") << "\n";
    rc = ok ? 0 : 1;
  });

  // stats census|weil|period
  auto* stats = app.add_subcommand("stats", "statistical and periodicity checks");
  stats->require_subcommand(1);

  auto* census = stats->add_subcommand("census", "sliding-window pattern counts");
  std::string cs_stream, cs_format = "text", cs_out;
  std::uint32_t cs_l = 0;
  census->add_option("--keystream", cs_stream, "keystream file")->required();
  census->add_option("--window", cs_l, "pattern length l <= min(M, 24)")->required();
  census->add_option("--format", cs_format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  census->add_option("--out", cs_out, "write report to file instead of stdout");
  census->callback([&] {
    const auto ks = lx::io::read_keystream_file(cs_stream);
    const auto counts = lx::stats::pattern_census(ks, cs_l);
    KV kv;
    kv.emplace_back("l", std::to_string(cs_l));
    kv.emplace_back("stream_length", std::to_string(ks.length));
    kv.emplace_back("windows", std::to_string(ks.length - cs_l + 1));
    for (std::uint64_t v = 0; v < counts.size(); ++v) {
      if (counts[v] == 0) continue;
      std::string pat(cs_l, '0');
      for (std::uint32_t t = 0; t < cs_l; ++t) {
        if ((v >> t) & 1) pat[t] = '1';
      }
      kv.emplace_back("pattern_" + pat, std::to_string(counts[v]));
    }
    emit(kv, cs_format, cs_out);
  });

  auto* weil = stats->add_subcommand("weil", "full-period pattern-frequency deviation check");
  std::string wl_key, wl_format = "text", wl_out;
  std::uint32_t wl_l = 0;
  weil->add_option("--key", wl_key, "key file")->required();
  weil->add_option("--window", wl_l, "pattern length l")->required();
  weil->add_option("--format", wl_format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  weil->add_option("--out", wl_out, "write report to file instead of stdout");
  weil->callback([&] {
    const auto kf = lx::io::read_key_file(wl_key);
    if (kf.params.order > 1000000) {
      lx::fail(lx::Errc::OutOfRange, "full-period check is limited to p^r <= 10^6");
    }
    const auto ks = lx::prf::keystream_counter(kf.key, 0, kf.params.order, kf.params);
    const auto rep = lx::stats::weil_check(ks, wl_l);
    KV kv;
    kv.emplace_back("field", kf.params.describe());
    kv.emplace_back("l", std::to_string(rep.l));
    kv.emplace_back("order", std::to_string(rep.order));
    kv.emplace_back("windows", std::to_string(rep.windows));
    kv.emplace_back("expected", fmt_double(rep.expected));
    kv.emplace_back("max_deviation", fmt_double(rep.max_deviation));
    kv.emplace_back("tolerance_constant", fmt_double(rep.constant));
    kv.emplace_back("bound", fmt_double(rep.bound));
    kv.emplace_back("pass", rep.pass ? "yes" : "no");
    emit(kv, wl_format, wl_out);
    rc = rep.pass ? 0 : 1;
  });

  auto* period = stats->add_subcommand("period", "minimal period of the wrapped counter stream");
  std::string pd_key, pd_format = "text", pd_out;
  std::uint64_t pd_periods = 2;
  period->add_option("--key", pd_key, "key file")->required();
  period->add_option("--count", pd_periods, "periods to generate (>= 2)");
  period->add_option("--format", pd_format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  period->add_option("--out", pd_out, "write report to file instead of stdout");
  period->callback([&] {
    const auto kf = lx::io::read_key_file(pd_key);
    if (pd_periods < 2 || pd_periods > 1000) {
      lx::fail(lx::Errc::OutOfRange, "--count (periods) must lie in [2, 1000]");
    }
    const std::uint64_t measured =
        lx::stats::period_probe(kf.key, kf.params, static_cast<std::uint32_t>(pd_periods));
    KV kv;
    kv.emplace_back("field", kf.params.describe());
    kv.emplace_back("order", std::to_string(kf.params.order));
    kv.emplace_back("periods_generated", std::to_string(pd_periods));
    kv.emplace_back("measured_period", std::to_string(measured));
    kv.emplace_back("divides_order", kf.params.order % measured == 0 ? "yes" : "no");
    kv.emplace_back("full_period", measured == kf.params.order ? "yes" : "no");
    emit(kv, pd_format, pd_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const lx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
