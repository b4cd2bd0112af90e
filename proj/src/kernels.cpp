#include "lx/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "lx/error.hpp"

namespace lx::kernels {

#ifdef LX_ENABLE_AVX2
namespace detail {
bool avx2_supports(const ff::FieldParams& fp) {
  return __builtin_cpu_supports("avx2") && fp.p < (1ull << 31);
}
}  // namespace detail
#endif

const std::vector<const Kernel*>& all_kernels() {
  static const std::vector<const Kernel*> ks = [] {
    std::vector<const Kernel*> v;
    v.push_back(&scalar_kernel());
#ifdef LX_ENABLE_AVX2
    v.push_back(&avx2_kernel());
#endif
    return v;
  }();
  return ks;
}

const Kernel& pick(const ff::FieldParams& fp) {
  if (const char* env = std::getenv("LX_KERNEL")) {
    for (const Kernel* k : all_kernels()) {
      if (std::strcmp(k->name, env) == 0) {
        if (!k->supports(fp)) {
          fail(Errc::BadFormat, std::string("LX_KERNEL=") + env +
                                    " is not usable for this field on this machine");
        }
        return *k;
      }
    }
    fail(Errc::BadFormat, std::string("unknown LX_KERNEL value '") + env + "'");
  }
  const Kernel* best = &scalar_kernel();
  for (const Kernel* k : all_kernels()) {
    if (k->supports(fp)) best = k;  // registry orders fastest last
  }
  return *best;
}

}  // namespace lx::kernels
