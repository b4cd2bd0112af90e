#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lx/ff.hpp"

namespace lx::kernels {

// Batch quadratic-character evaluation: the one data-parallel inner loop the
// whole workbench hangs off (candidate windows, reference windows, keystream
// generation). Input is n elements stored contiguously, element i occupying
// coeffs[i*r .. i*r + r); output is n values in {-1, 0, +1}.
//
// Every kernel must produce bit-identical results; the scalar kernel is the
// reference, the SIMD kernels are equivalence-tested against it.
using LegendreBatchFn = void (*)(const ff::FieldParams& fp, const std::uint64_t* coeffs,
                                 std::size_t n, std::int8_t* out);

struct Kernel {
  const char* name;
  bool (*supports)(const ff::FieldParams& fp);
  LegendreBatchFn legendre_batch;
};

const Kernel& scalar_kernel();

#ifdef LX_ENABLE_AVX2
// Montgomery arithmetic in 4x64-bit lanes; valid for odd p < 2^31 on CPUs
// with AVX2.
const Kernel& avx2_kernel();

namespace detail {
// Lives in a TU compiled without -mavx2 so the probe itself cannot fault
// on machines lacking AVX.
bool avx2_supports(const ff::FieldParams& fp);
}  // namespace detail
#endif

// Registry of compiled-in kernels (scalar first).
const std::vector<const Kernel*>& all_kernels();

// Runtime selection: best supported kernel for fp, honoring an LX_KERNEL
// environment override ("scalar" or "avx2"; unknown or unsupported values
// are an error).
const Kernel& pick(const ff::FieldParams& fp);

}  // namespace lx::kernels
