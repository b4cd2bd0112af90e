#include "lx/prf.hpp"

#include <algorithm>

#include "lx/encode.hpp"
#include "lx/error.hpp"
#include "lx/kernels.hpp"

namespace lx::prf {

namespace {

constexpr std::size_t kBlock = 256;  // arguments per kernel call

void append_bits(std::vector<std::uint8_t>& bytes, std::uint64_t base_index,
                 const std::int8_t* symbols, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit_index = base_index + i;
    if (symbols[i] == -1) bytes[bit_index >> 3] |= static_cast<std::uint8_t>(1u << (bit_index & 7));
  }
}

}  // namespace

PrfKey make_key(std::uint32_t degree, std::vector<ff::FieldElement> coeffs,
                const ff::FieldParams& fp) {
  if (degree < 1) fail(Errc::OutOfRange, "key degree must be at least 1");
  if (coeffs.size() != degree) {
    fail(Errc::DegreeMismatch, "key needs exactly d coefficient elements");
  }
  for (const auto& c : coeffs) fp.check_element(c);
  return PrfKey{degree, std::move(coeffs)};
}

PrfKey random_key(const ff::FieldParams& fp, std::uint32_t degree, SplitMix64& rng) {
  if (degree < 1) fail(Errc::OutOfRange, "key degree must be at least 1");
  std::vector<ff::FieldElement> coeffs;
  coeffs.reserve(degree);
  coeffs.push_back(fp.element_from_uint(1 + rng.below(fp.order - 1)));  // K_{d-1} nonzero
  for (std::uint32_t i = 1; i < degree; ++i) {
    coeffs.push_back(fp.element_from_uint(rng.below(fp.order)));
  }
  return PrfKey{degree, std::move(coeffs)};
}

ff::FieldElement eval_argument(const PrfKey& key, const ff::FieldElement& x,
                               const ff::FieldParams& fp) {
  // Horner on the monic polynomial: ((x + K_{d-1}) x + K_{d-2}) x + ...
  ff::FieldElement acc = fp.add(x, key.coeffs[0]);
  for (std::uint32_t i = 1; i < key.degree; ++i) {
    acc = fp.add(fp.mul(acc, x), key.coeffs[i]);
  }
  return acc;
}

std::uint8_t prf_eval(const PrfKey& key, const ff::FieldElement& x, const ff::FieldParams& fp) {
  return bit_of_symbol(fp.legendre(eval_argument(key, x, fp)));
}

Keystream keystream_counter(const PrfKey& key, std::uint64_t start, std::uint64_t length,
                            const ff::FieldParams& fp) {
  if (start > fp.order || length > fp.order - start) {
    fail(Errc::OutOfRange, "counter keystream needs start + M <= p^r (no silent wrap)");
  }
  Keystream ks;
  ks.params = fp;
  ks.mode = CounterMode{start};
  ks.length = length;
  ks.bits.assign((length + 7) / 8, 0);

  const kernels::Kernel& kern = kernels::pick(fp);
  std::vector<std::uint64_t> args(kBlock * fp.r);
  std::vector<std::int8_t> symbols(kBlock);
  for (std::uint64_t done = 0; done < length; done += kBlock) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, length - done));
    for (std::size_t i = 0; i < n; ++i) {
      const ff::FieldElement arg =
          eval_argument(key, encode::encode_counter(start + done + i, fp), fp);
      std::copy(arg.coeffs.begin(), arg.coeffs.end(), args.begin() + i * fp.r);
    }
    kern.legendre_batch(fp, args.data(), n, symbols.data());
    append_bits(ks.bits, done, symbols.data(), n);
  }
  return ks;
}

Keystream keystream_geometric(const PrfKey& key, const ff::FieldElement& generator,
                              std::uint64_t length, const ff::FieldParams& fp) {
  if (length < 1 || length > fp.order - 1) {
    fail(Errc::OutOfRange, "geometric keystream needs 1 <= M <= p^r - 1");
  }
  if (!ff::is_primitive(fp, generator)) {
    fail(Errc::NotPrimitive, "geometric mode requires a primitive generator");
  }
  Keystream ks;
  ks.params = fp;
  ks.mode = GeometricMode{generator};
  ks.length = length;
  ks.bits.assign((length + 7) / 8, 0);

  const kernels::Kernel& kern = kernels::pick(fp);
  std::vector<std::uint64_t> args(kBlock * fp.r);
  std::vector<std::int8_t> symbols(kBlock);
  ff::FieldElement power = generator;  // g^(i+1) carried across blocks
  for (std::uint64_t done = 0; done < length; done += kBlock) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, length - done));
    for (std::size_t i = 0; i < n; ++i) {
      const ff::FieldElement arg = eval_argument(key, power, fp);
      std::copy(arg.coeffs.begin(), arg.coeffs.end(), args.begin() + i * fp.r);
      power = fp.mul(power, generator);
    }
    kern.legendre_batch(fp, args.data(), n, symbols.data());
    append_bits(ks.bits, done, symbols.data(), n);
  }
  return ks;
}

std::uint8_t reference_bit(std::uint64_t m, const ff::FieldElement& generator,
                           const ff::FieldParams& fp) {
  if (m < 1 || m > fp.order - 1) {
    fail(Errc::OutOfRange, "reference index must lie in [1, p^r - 1]");
  }
  const ff::FieldElement arg = fp.add(fp.pow(generator, m), fp.one());
  return bit_of_symbol(fp.legendre(arg));
}

bool reproduces(const PrfKey& key, const Keystream& ks) {
  Keystream regen;
  if (ks.is_counter()) {
    regen = keystream_counter(key, std::get<CounterMode>(ks.mode).start, ks.length, ks.params);
  } else {
    if (ks.length == 0) return true;
    regen = keystream_geometric(key, std::get<GeometricMode>(ks.mode).generator, ks.length,
                                ks.params);
  }
  return regen.bits == ks.bits;
}

}  // namespace lx::prf
