#include "lx/attack.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "lx/error.hpp"
#include "lx/io.hpp"
#include "lx/kernels.hpp"

namespace lx::attack {

namespace {

struct GuessResult {
  std::uint64_t checked = 0;
  std::uint64_t false_hits = 0;
  std::optional<prf::PrfKey> key;
};

struct HitRecord {
  std::uint64_t index;
  std::uint64_t checked;
  std::uint64_t false_hits;
  std::optional<prf::PrfKey> key;
};

struct SearchOutcome {
  std::uint64_t guesses = 0;
  std::uint64_t checked = 0;
  std::uint64_t false_hits = 0;
  std::optional<prf::PrfKey> key;
};

// Deterministic parallel scan over guess indices 1..max_guesses. Guess i
// derives all randomness from subseed(seed, i), workers claim fixed chunks
// in order, and the lowest verified index wins, so the outcome (key and all
// counters) is exactly what a sequential scan would produce, for any worker
// count.
template <typename MakeGuessFn>
SearchOutcome parallel_search(std::uint64_t max_guesses, std::uint32_t workers,
                              MakeGuessFn make_guess) {
  constexpr std::uint64_t kChunk = 64;
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::mutex mu;
  std::vector<HitRecord> records;

  auto work = [&]() {
    auto guess = make_guess();
    for (;;) {
      const std::uint64_t chunk = next_chunk.fetch_add(1);
      const std::uint64_t lo = chunk * kChunk + 1;
      if (lo > max_guesses || lo > best.load()) return;
      const std::uint64_t hi = std::min(max_guesses, lo + kChunk - 1);
      for (std::uint64_t idx = lo; idx <= hi; ++idx) {
        GuessResult g = guess(idx);
        const bool found = g.key.has_value();
        if (g.checked || found) {
          std::lock_guard<std::mutex> lk(mu);
          records.push_back(HitRecord{idx, g.checked, g.false_hits, std::move(g.key)});
        }
        if (found) {
          std::uint64_t cur = best.load();
          while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
          }
          break;  // rest of this chunk lies above idx
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SearchOutcome out;
  std::uint64_t best_idx = UINT64_MAX;
  const HitRecord* best_rec = nullptr;
  for (const auto& rec : records) {
    if (rec.key && rec.index < best_idx) {
      best_idx = rec.index;
      best_rec = &rec;
    }
  }
  if (best_rec) {
    out.guesses = best_idx;
    out.key = best_rec->key;
    for (const auto& rec : records) {
      if (rec.index <= best_idx) {
        out.checked += rec.checked;
        out.false_hits += rec.false_hits;
      }
    }
  } else {
    out.guesses = max_guesses;
    for (const auto& rec : records) {
      out.checked += rec.checked;
      out.false_hits += rec.false_hits;
    }
  }
  return out;
}

std::uint32_t resolve_workers(std::uint32_t requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void check_window(std::uint64_t length, std::uint32_t window) {
  if (window < 1 || window > length) {
    fail(Errc::WindowTooLong, "window of " + std::to_string(window) +
                                  " bits does not fit a stream of " + std::to_string(length));
  }
  if (window > 64) fail(Errc::WindowTooLong, "window exceeds the 64-bit packing limit");
}

}  // namespace

std::uint32_t default_window_bits(const ff::FieldParams& fp, std::uint64_t length) {
  const std::uint64_t formula = std::bit_width(fp.order - 1) + 6;
  return static_cast<std::uint32_t>(std::min<std::uint64_t>({length, formula, 64}));
}

std::uint64_t packed_window(const prf::Keystream& ks, std::uint64_t start, std::uint32_t window) {
  std::uint64_t v = 0;
  for (std::uint32_t t = 0; t < window; ++t) {
    v |= static_cast<std::uint64_t>(ks.bit(start + t)) << t;
  }
  return v;
}

std::map<std::string, WindowTable> bucket_windows(const prf::Keystream& ks, std::uint32_t window) {
  if (!ks.is_counter()) {
    fail(Errc::BadFormat, "signature bucketing requires a counter-mode keystream");
  }
  check_window(ks.length, window);
  const std::uint64_t start = std::get<prf::CounterMode>(ks.mode).start;
  std::map<std::string, WindowTable> buckets;
  for (std::uint64_t w = 0; w + window <= ks.length; ++w) {
    encode::DifferentialSignature sig = encode::signature(start + w, window, ks.params);
    WindowTable& bucket = buckets[sig.canonical_key];
    if (!bucket.signature) {
      bucket.window_bits = window;
      bucket.signature = std::move(sig);
    }
    bucket.entries[packed_window(ks, w, window)].push_back(start + w);
    ++bucket.population;
  }
  return buckets;
}

WindowTable build_target_table(const prf::Keystream& ks, std::uint32_t window) {
  if (ks.is_counter()) {
    fail(Errc::BadFormat, "target table requires a geometric-mode keystream");
  }
  check_window(ks.length, window);
  WindowTable table;
  table.window_bits = window;
  for (std::uint64_t w = 0; w + window <= ks.length; ++w) {
    table.entries[packed_window(ks, w, window)].push_back(w + 1);
    ++table.population;
  }
  return table;
}

AttackReport passive_recover(const prf::Keystream& ks, std::uint32_t window, const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const ff::FieldParams& fp = ks.params;
  auto buckets = bucket_windows(ks, window);

  const WindowTable* chosen = nullptr;
  std::uint64_t total_windows = 0;
  for (const auto& [key, bucket] : buckets) {
    total_windows += bucket.population;
    if (!chosen || bucket.population > chosen->population) chosen = &bucket;
  }

  AttackReport rep;
  rep.mode = "passive";
  rep.window_bits = window;
  rep.seed = opt.seed;
  rep.workers = resolve_workers(opt.workers);
  rep.max_guesses = opt.max_guesses ? opt.max_guesses
                                    : (fp.order > UINT64_MAX / 50 ? UINT64_MAX : 50 * fp.order);
  rep.table_windows = total_windows;
  rep.bucket_population = chosen->population;
  const kernels::Kernel& kern = kernels::pick(fp);
  rep.kernel = kern.name;

  // Flatten the bucket's signature deltas once; each guess adds them to Z.
  const std::uint32_t r = fp.r;
  std::vector<std::uint64_t> delta_flat(static_cast<std::size_t>(window) * r);
  for (std::uint32_t t = 0; t < window; ++t) {
    const auto& d = chosen->signature->deltas[t].coeffs;
    std::copy(d.begin(), d.end(), delta_flat.begin() + static_cast<std::size_t>(t) * r);
  }

  const auto make_guess = [&]() {
    return [&, args = std::vector<std::uint64_t>(static_cast<std::size_t>(window) * r),
            symbols = std::vector<std::int8_t>(window)](std::uint64_t idx) mutable {
      GuessResult g;
      SplitMix64 rng(subseed(opt.seed, idx));
      const ff::FieldElement z = fp.element_from_uint(rng.below(fp.order));
      for (std::uint32_t t = 0; t < window; ++t) {
        for (std::uint32_t c = 0; c < r; ++c) {
          std::uint64_t s = z.coeffs[c] + delta_flat[static_cast<std::size_t>(t) * r + c];
          if (s >= fp.p) s -= fp.p;
          args[static_cast<std::size_t>(t) * r + c] = s;
        }
      }
      kern.legendre_batch(fp, args.data(), window, symbols.data());
      std::uint64_t packed = 0;
      for (std::uint32_t t = 0; t < window; ++t) {
        packed |= static_cast<std::uint64_t>(symbols[t] == -1) << t;
      }
      const auto it = chosen->entries.find(packed);
      if (it != chosen->entries.end()) {
        for (std::uint64_t n : it->second) {
          ++g.checked;
          prf::PrfKey cand{1, {fp.sub(z, fp.element_from_uint(n))}};
          if (prf::reproduces(cand, ks)) {
            g.key = std::move(cand);
            break;
          }
          ++g.false_hits;
        }
      }
      return g;
    };
  };

  SearchOutcome res = parallel_search(rep.max_guesses, rep.workers, make_guess);
  rep.guesses = res.guesses;
  rep.collisions_checked = res.checked;
  rep.false_collisions = res.false_hits;
  rep.recovered_key = std::move(res.key);
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

AttackReport active_recover(const prf::Keystream& ks, std::uint32_t window, const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const ff::FieldParams& fp = ks.params;
  if (ks.is_counter()) {
    fail(Errc::BadFormat, "active recovery requires a geometric-mode keystream");
  }
  const ff::FieldElement& gen = std::get<prf::GeometricMode>(ks.mode).generator;
  if (!ff::is_primitive(fp, gen)) {
    fail(Errc::NotPrimitive, "keystream generator is not primitive");
  }
  WindowTable table = build_target_table(ks, window);

  AttackReport rep;
  rep.mode = "active";
  rep.window_bits = window;
  rep.seed = opt.seed;
  rep.workers = resolve_workers(opt.workers);
  rep.max_guesses =
      opt.max_guesses
          ? opt.max_guesses
          : std::max<std::uint64_t>(
                1, (fp.order > UINT64_MAX / 50 ? UINT64_MAX / ks.length : 50 * fp.order / ks.length));
  rep.table_windows = table.population;
  rep.bucket_population = table.population;
  const kernels::Kernel& kern = kernels::pick(fp);
  rep.kernel = kern.name;

  const std::uint32_t r = fp.r;
  const std::uint64_t group = fp.order - 1;
  const std::uint64_t mask = window == 64 ? ~0ull : (1ull << window) - 1;

  const auto make_guess = [&]() {
    return [&, args = std::vector<std::uint64_t>(static_cast<std::size_t>(window) * r),
            symbols = std::vector<std::int8_t>(window)](std::uint64_t idx) mutable {
      GuessResult g;
      SplitMix64 rng(subseed(opt.seed, idx));
      const std::uint64_t m = 1 + rng.below(group);
      // Reference window bits via one power and U-1 follow-on multiplies;
      // exponent wrap is exact because the reference has period p^r - 1.
      ff::FieldElement power = fp.pow(gen, m);
      for (std::uint32_t t = 0; t < window; ++t) {
        for (std::uint32_t c = 0; c < r; ++c) {
          std::uint64_t s = power.coeffs[c] + (c == 0 ? 1 : 0);
          if (s >= fp.p) s -= fp.p;
          args[static_cast<std::size_t>(t) * r + c] = s;
        }
        if (t + 1 < window) power = fp.mul(power, gen);
      }
      kern.legendre_batch(fp, args.data(), window, symbols.data());
      std::uint64_t packed = 0;
      for (std::uint32_t t = 0; t < window; ++t) {
        packed |= static_cast<std::uint64_t>(symbols[t] == -1) << t;
      }

      const auto try_candidates = [&](std::uint64_t key_bits) -> bool {
        const auto it = table.entries.find(key_bits);
        if (it == table.entries.end()) return false;
        for (std::uint64_t i : it->second) {
          ++g.checked;
          const std::uint64_t j = (m + group - i) % group;
          prf::PrfKey cand{1, {fp.inv(fp.pow(gen, j))}};
          if (prf::reproduces(cand, ks)) {
            g.key = std::move(cand);
            return true;
          }
          ++g.false_hits;
        }
        return false;
      };

      if (!try_candidates(packed) && opt.use_complement) {
        try_candidates(~packed & mask);
      }
      return g;
    };
  };

  SearchOutcome res = parallel_search(rep.max_guesses, rep.workers, make_guess);
  rep.guesses = res.guesses;
  rep.collisions_checked = res.checked;
  rep.false_collisions = res.false_hits;
  rep.recovered_key = std::move(res.key);
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

void describe_stream(const prf::Keystream& ks, std::vector<std::pair<std::string, std::string>>& kv) {
  kv.emplace_back("field", ks.params.describe());
  if (ks.is_counter()) {
    kv.emplace_back("stream_mode", "counter");
    kv.emplace_back("stream_start", std::to_string(std::get<prf::CounterMode>(ks.mode).start));
  } else {
    kv.emplace_back("stream_mode", "geometric");
    kv.emplace_back("stream_generator",
                    io::element_to_string(std::get<prf::GeometricMode>(ks.mode).generator));
  }
  kv.emplace_back("stream_length", std::to_string(ks.length));
}

std::vector<std::pair<std::string, std::string>> report_fields(const AttackReport& rep,
                                                               const prf::Keystream& ks) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("mode", rep.mode);
  describe_stream(ks, kv);
  kv.emplace_back("window_bits", std::to_string(rep.window_bits));
  kv.emplace_back("window_default_formula", "min(M, ceil(log2 p^r) + 6)");
  kv.emplace_back("seed", std::to_string(rep.seed));
  kv.emplace_back("workers", std::to_string(rep.workers));
  kv.emplace_back("max_guesses", std::to_string(rep.max_guesses));
  kv.emplace_back("max_guesses_default_formula", "passive: 50*p^r, active: 50*p^r/M");
  kv.emplace_back("kernel", rep.kernel);
  kv.emplace_back("table_windows", std::to_string(rep.table_windows));
  kv.emplace_back("bucket_population", std::to_string(rep.bucket_population));
  kv.emplace_back("recovered", rep.recovered_key ? "yes" : "no");
  if (rep.recovered_key) {
    kv.emplace_back("key_degree", std::to_string(rep.recovered_key->degree));
    for (std::uint32_t i = 0; i < rep.recovered_key->degree; ++i) {
      kv.emplace_back("key_coeffs_" + std::to_string(i),
                      io::element_to_string(rep.recovered_key->coeffs[i]));
    }
  }
  kv.emplace_back("guesses", std::to_string(rep.guesses));
  kv.emplace_back("collisions_checked", std::to_string(rep.collisions_checked));
  kv.emplace_back("false_collisions", std::to_string(rep.false_collisions));
  return kv;
}

}  // namespace

std::string report_text(const AttackReport& rep, const prf::Keystream& ks) {
  std::string out;
  for (const auto& [k, v] : report_fields(rep, ks)) {
    out += k;
    out += ": ";
    out += v;
    out += '\n';
  }
  out += "elapsed_seconds: " + std::to_string(rep.elapsed_seconds) + "\n";
  return out;
}

std::string report_json(const AttackReport& rep, const prf::Keystream& ks) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : report_fields(rep, ks)) j[k] = v;
  j["elapsed_seconds"] = rep.elapsed_seconds;
  return j.dump(2) + "\n";
}

}  // namespace lx::attack
