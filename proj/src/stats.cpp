#include "lx/stats.hpp"

#include <cmath>

#include "lx/encode.hpp"
#include "lx/error.hpp"

namespace lx::stats {

std::vector<std::uint64_t> pattern_census(const prf::Keystream& ks, std::uint32_t l) {
  if (l < 1 || l > ks.length || l > 24) {
    fail(Errc::WindowTooLong, "pattern length must satisfy 1 <= l <= min(M, 24)");
  }
  std::vector<std::uint64_t> counts(1ull << l, 0);
  const std::uint64_t mask = (1ull << l) - 1;
  std::uint64_t window = 0;
  for (std::uint64_t i = 0; i < ks.length; ++i) {
    window = (window >> 1) | (static_cast<std::uint64_t>(ks.bit(i)) << (l - 1));
    if (i + 1 >= l) ++counts[window & mask];
  }
  return counts;
}

WeilReport weil_check(const prf::Keystream& ks, std::uint32_t l) {
  if (!ks.is_counter() || std::get<prf::CounterMode>(ks.mode).start != 0 ||
      ks.length != ks.params.order) {
    fail(Errc::NotFullPeriod, "weil_check needs a counter stream with start 0 and M = p^r");
  }
  const auto counts = pattern_census(ks, l);
  WeilReport rep;
  rep.l = l;
  rep.order = ks.params.order;
  rep.windows = ks.length - l + 1;
  rep.expected = static_cast<double>(ks.params.order) / static_cast<double>(1ull << l);
  for (std::uint64_t c : counts) {
    rep.max_deviation = std::max(rep.max_deviation,
                                 std::abs(static_cast<double>(c) - rep.expected));
  }
  rep.constant = static_cast<double>(l);
  rep.bound = rep.constant * std::sqrt(static_cast<double>(ks.params.order));
  rep.pass = rep.max_deviation <= rep.bound;
  return rep;
}

std::uint64_t period_probe(const prf::PrfKey& key, const ff::FieldParams& fp,
                           std::uint32_t periods) {
  if (periods < 2) fail(Errc::OutOfRange, "period_probe needs at least 2 periods");
  if (fp.order > 100000) fail(Errc::OutOfRange, "period_probe is limited to p^r <= 10^5");
  const std::uint64_t total = static_cast<std::uint64_t>(periods) * fp.order;

  // The one sanctioned wrap: evaluate at n mod p^r, bit by bit.
  std::vector<std::uint8_t> bits(total);
  for (std::uint64_t n = 0; n < total; ++n) {
    bits[n] = prf::prf_eval(key, encode::encode_counter(n % fp.order, fp), fp);
  }

  // Minimal period via the prefix function; with >= 2 periods generated it
  // must divide p^r (Fine-Wilf).
  std::vector<std::uint64_t> pi(total, 0);
  for (std::uint64_t i = 1; i < total; ++i) {
    std::uint64_t k = pi[i - 1];
    while (k > 0 && bits[i] != bits[k]) k = pi[k - 1];
    if (bits[i] == bits[k]) ++k;
    pi[i] = k;
  }
  const std::uint64_t period = total - pi[total - 1];
  if (fp.order % period != 0) {
    fail(Errc::InternalError, "measured period does not divide p^r");
  }
  return period;
}

}  // namespace lx::stats
