#include "lx/kernels.hpp"

#ifdef LX_ENABLE_AVX2

#include <immintrin.h>

#include <cstring>

#include "lx/error.hpp"

namespace lx::kernels {

namespace {

// Four independent elements per pass, one per 64-bit lane, coefficients in
// Montgomery form with R = 2^32. Sound for odd p < 2^31: reduced values stay
// below 2^31, so every _mm256_mul_epu32 operand is a true 32-bit value and
// t + m*p < 2^64.
struct MontConsts {
  std::uint64_t p;
  std::uint64_t pinv32;  // -p^{-1} mod 2^32
  std::uint64_t r1;      // 2^32 mod p  (Montgomery image of 1)
  std::uint64_t r2;      // 2^64 mod p  (conversion factor)
};

MontConsts mont_consts(std::uint64_t p) {
  std::uint64_t inv = p;  // Newton iteration for p^{-1} mod 2^32 (p odd)
  for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
  inv &= 0xFFFFFFFFull;
  MontConsts mc;
  mc.p = p;
  mc.pinv32 = (~inv + 1) & 0xFFFFFFFFull;
  mc.r1 = (1ull << 32) % p;
  mc.r2 = static_cast<std::uint64_t>(((static_cast<unsigned __int128>(mc.r1) * mc.r1) % p));
  return mc;
}

inline __m256i reduce_once(__m256i v, __m256i vp) {
  const __m256i ge = _mm256_or_si256(_mm256_cmpgt_epi64(v, vp), _mm256_cmpeq_epi64(v, vp));
  return _mm256_sub_epi64(v, _mm256_and_si256(ge, vp));
}

inline __m256i mont_mul(__m256i a, __m256i b, __m256i vp, __m256i vpinv, __m256i lo32) {
  const __m256i t = _mm256_mul_epu32(a, b);
  const __m256i m = _mm256_and_si256(_mm256_mul_epu32(t, vpinv), lo32);
  const __m256i u = _mm256_srli_epi64(_mm256_add_epi64(t, _mm256_mul_epu32(m, vp)), 32);
  return reduce_once(u, vp);
}

inline __m256i add_mod(__m256i a, __m256i b, __m256i vp) {
  return reduce_once(_mm256_add_epi64(a, b), vp);
}

inline __m256i sub_mod(__m256i a, __m256i b, __m256i vp) {
  const __m256i d = _mm256_sub_epi64(a, b);
  const __m256i neg = _mm256_cmpgt_epi64(_mm256_setzero_si256(), d);
  return _mm256_add_epi64(d, _mm256_and_si256(neg, vp));
}

constexpr std::uint32_t kMaxR = ff::detail::kMaxDegree;

struct LaneCtx {
  MontConsts mc;
  __m256i vp, vpinv, lo32;
  __m256i irr_mont[kMaxR];  // Montgomery image of the non-leading I coefficients
  std::uint32_t r;
  std::uint64_t half_order;
};

// out = a * b mod (I, p), all length-r arrays of lane vectors.
inline void poly_mul(const LaneCtx& cx, const __m256i* a, const __m256i* b, __m256i* out) {
  __m256i w[2 * kMaxR + 1];
  const std::uint32_t r = cx.r;
  for (std::uint32_t k = 0; k < 2 * r - 1; ++k) w[k] = _mm256_setzero_si256();
  for (std::uint32_t i = 0; i < r; ++i) {
    for (std::uint32_t j = 0; j < r; ++j) {
      w[i + j] = add_mod(w[i + j], mont_mul(a[i], b[j], cx.vp, cx.vpinv, cx.lo32), cx.vp);
    }
  }
  for (std::uint32_t k = 2 * r - 2; k >= r && k < 2 * r; --k) {
    const __m256i c = w[k];
    for (std::uint32_t t = 0; t < r; ++t) {
      w[k - r + t] =
          sub_mod(w[k - r + t], mont_mul(c, cx.irr_mont[t], cx.vp, cx.vpinv, cx.lo32), cx.vp);
    }
  }
  for (std::uint32_t t = 0; t < r; ++t) out[t] = w[t];
}

void legendre_batch_avx2(const ff::FieldParams& fp, const std::uint64_t* coeffs, std::size_t n,
                         std::int8_t* out) {
  LaneCtx cx;
  cx.mc = mont_consts(fp.p);
  cx.vp = _mm256_set1_epi64x(static_cast<long long>(fp.p));
  cx.vpinv = _mm256_set1_epi64x(static_cast<long long>(cx.mc.pinv32));
  cx.lo32 = _mm256_set1_epi64x(0xFFFFFFFFll);
  cx.r = fp.r;
  cx.half_order = fp.half_order;
  const __m256i vr2 = _mm256_set1_epi64x(static_cast<long long>(cx.mc.r2));
  for (std::uint32_t t = 0; t < fp.r; ++t) {
    const std::uint64_t im = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(fp.irreducible[t]) << 32) % fp.p);
    cx.irr_mont[t] = _mm256_set1_epi64x(static_cast<long long>(im));
  }

  const std::uint32_t r = fp.r;
  __m256i base[kMaxR], acc[kMaxR];
  alignas(32) std::uint64_t lane_buf[4];

  for (std::size_t pos = 0; pos < n; pos += 4) {
    const std::size_t lanes = n - pos < 4 ? n - pos : 4;
    // Transpose 4 elements into lane vectors and convert to Montgomery form.
    for (std::uint32_t j = 0; j < r; ++j) {
      for (std::size_t l = 0; l < 4; ++l) {
        lane_buf[l] = l < lanes ? coeffs[(pos + l) * r + j] : 0;
      }
      base[j] = mont_mul(_mm256_load_si256(reinterpret_cast<const __m256i*>(lane_buf)), vr2,
                         cx.vp, cx.vpinv, cx.lo32);
    }
    // acc = 1, then shared-exponent square-and-multiply (the exponent is the
    // field's half order, identical in every lane).
    acc[0] = _mm256_set1_epi64x(static_cast<long long>(cx.mc.r1));
    for (std::uint32_t j = 1; j < r; ++j) acc[j] = _mm256_setzero_si256();
    std::uint64_t e = cx.half_order;
    while (e) {
      if (e & 1) poly_mul(cx, acc, base, acc);
      e >>= 1;
      if (e) poly_mul(cx, base, base, base);
    }
    // Classify each lane: 0, Mont(1), or Mont(-1) as a constant polynomial.
    const std::uint64_t mont_one = cx.mc.r1;
    const std::uint64_t mont_minus_one = fp.p - cx.mc.r1;
    alignas(32) std::uint64_t res[kMaxR][4];
    for (std::uint32_t j = 0; j < r; ++j) {
      _mm256_store_si256(reinterpret_cast<__m256i*>(res[j]), acc[j]);
    }
    for (std::size_t l = 0; l < lanes; ++l) {
      bool tail_zero = true;
      for (std::uint32_t j = 1; j < r; ++j) {
        if (res[j][l] != 0) {
          tail_zero = false;
          break;
        }
      }
      const std::uint64_t c0 = res[0][l];
      std::int8_t v;
      if (tail_zero && c0 == 0) {
        v = 0;
      } else if (tail_zero && c0 == mont_one) {
        v = 1;
      } else if (tail_zero && c0 == mont_minus_one) {
        v = -1;
      } else {
        fail(Errc::InternalError, "Euler criterion produced a value other than 0, 1, -1");
      }
      out[pos + l] = v;
    }
  }
}

}  // namespace

const Kernel& avx2_kernel() {
  static const Kernel k{"avx2", &detail::avx2_supports, &legendre_batch_avx2};
  return k;
}

}  // namespace lx::kernels

#endif  // LX_ENABLE_AVX2
