#include "lx/encode.hpp"

#include <unordered_set>

#include "lx/error.hpp"

namespace lx::encode {

namespace {

// MSB-first bit packer for canonical keys.
class BitWriter {
 public:
  void append(std::uint64_t value, std::uint32_t width) {
    for (std::uint32_t i = width; i-- > 0;) {
      const bool bit = (value >> i) & 1;
      if (pos_ == 0) bytes_.push_back('\0');
      bytes_.back() = static_cast<char>((static_cast<unsigned char>(bytes_.back()) << 1) | bit);
      pos_ = (pos_ + 1) & 7;
    }
  }
  std::string finish() {
    if (pos_ != 0) bytes_.back() = static_cast<char>(static_cast<unsigned char>(bytes_.back())
                                                     << (8 - pos_));
    return std::move(bytes_);
  }

 private:
  std::string bytes_;
  std::uint32_t pos_ = 0;
};

std::uint32_t valuation(std::uint64_t n, std::uint64_t p) {
  std::uint32_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
  std::uint64_t acc = 1;
  while (e--) acc *= b;
  return acc;
}

}  // namespace

ff::FieldElement encode_counter(std::uint64_t n, const ff::FieldParams& fp) {
  if (n >= fp.order) {
    fail(Errc::OutOfRange, "counter " + std::to_string(n) + " outside [0, p^r)");
  }
  return fp.element_from_uint(n);
}

ff::FieldElement counter_delta(std::uint64_t n, const ff::FieldParams& fp) {
  if (n >= fp.order - 1) {
    fail(Errc::OutOfRange, "counter_delta needs n < p^r - 1");
  }
  const std::uint32_t k = valuation(n + 1, fp.p);
  ff::FieldElement d = fp.zero();
  for (std::uint32_t i = 0; i <= k; ++i) d.coeffs[i] = 1;
  return d;
}

std::string canonical_key_of(const std::vector<ff::FieldElement>& deltas,
                             const ff::FieldParams& fp) {
  BitWriter w;
  for (const auto& d : deltas) {
    for (std::uint64_t c : d.coeffs) w.append(c, fp.coeff_bits);
  }
  return w.finish();
}

DifferentialSignature signature(std::uint64_t n, std::uint32_t window, const ff::FieldParams& fp) {
  if (window < 1) fail(Errc::OutOfRange, "window length must be at least 1");
  if (n >= fp.order || window - 1 >= fp.order - n) {
    fail(Errc::OutOfRange, "window [" + std::to_string(n) + ", +" + std::to_string(window) +
                               ") would wrap past p^r - 1");
  }
  DifferentialSignature sig;
  sig.deltas.reserve(window);
  const ff::FieldElement base = fp.element_from_uint(n);
  for (std::uint32_t i = 0; i < window; ++i) {
    sig.deltas.push_back(fp.sub(fp.element_from_uint(n + i), base));
  }
  sig.canonical_key = canonical_key_of(sig.deltas, fp);
  return sig;
}

namespace detail {

std::uint64_t class_count_enumerated(std::uint32_t window, const ff::FieldParams& fp) {
  std::unordered_set<std::string> keys;
  for (std::uint64_t n = 0; n + window - 1 < fp.order; ++n) {
    keys.insert(signature(n, window, fp).canonical_key);
  }
  return keys.size();
}

std::uint64_t class_count_residue(std::uint32_t window, const ff::FieldParams& fp) {
  if (fp.r == 1) return 1;  // deltas are the constants 0..U-1 for every start
  std::uint32_t level = 0;
  while (pow_u64(fp.p, level) < window) ++level;
  if (level >= fp.r) return class_count_enumerated(window, fp);

  const std::uint64_t block = pow_u64(fp.p, level);
  std::unordered_set<std::string> keys;
  // Starts whose window stays inside one block: signature depends on the
  // residue alone.
  for (std::uint64_t a = 0; a + window - 1 < block; ++a) {
    keys.insert(signature(a, window, fp).canonical_key);
  }
  // Starts whose window crosses a block boundary: the carry cascades
  // v_p(b+1) digits past the block, so one representative per (residue,
  // cascade depth) pair covers every valid start. Depth r-level only occurs
  // in the top block, where such windows wrap and are invalid.
  for (std::uint64_t a = block - window + 1; a < block; ++a) {
    for (std::uint32_t k = 0; k < fp.r - level; ++k) {
      const std::uint64_t n = a + (pow_u64(fp.p, k) - 1) * block;
      if (n + window - 1 < fp.order) {
        keys.insert(signature(n, window, fp).canonical_key);
      }
    }
  }
  return keys.size();
}

}  // namespace detail

std::uint64_t signature_class_count(std::uint32_t window, const ff::FieldParams& fp) {
  if (window < 1 || window >= fp.order) {
    fail(Errc::OutOfRange, "window length must satisfy 1 <= U < p^r");
  }
  if (fp.order <= 1000000) return detail::class_count_enumerated(window, fp);
  return detail::class_count_residue(window, fp);
}

}  // namespace lx::encode
