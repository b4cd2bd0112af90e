#include "lx/kernels.hpp"

namespace lx::kernels {

namespace {

void legendre_batch_scalar(const ff::FieldParams& fp, const std::uint64_t* coeffs, std::size_t n,
                           std::int8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::int8_t>(ff::detail::raw_legendre(fp, coeffs + i * fp.r));
  }
}

bool supports_any(const ff::FieldParams&) { return true; }

}  // namespace

const Kernel& scalar_kernel() {
  static const Kernel k{"scalar", &supports_any, &legendre_batch_scalar};
  return k;
}

}  // namespace lx::kernels
