#include "mlwalk/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "mlwalk/error.hpp"

namespace mlwalk::kernels {

#if MLWALK_HAVE_AVX2
const KernelSet* avx2_kernels_impl();
#endif

const KernelSet* avx2() {
#if MLWALK_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelSet* best() {
  if (const KernelSet* k = avx2()) return k;
  return &scalar();
}

const KernelSet* by_name(std::string_view name) {
  if (name == "auto") return best();
  if (name == "scalar") return &scalar();
  if (name == "avx2") return avx2();
  return nullptr;
}

std::atomic<const KernelSet*>& slot() {
  static std::atomic<const KernelSet*> current = [] {
    const char* env = std::getenv("MLWALK_KERNELS");
    if (env == nullptr || *env == '\0') return best();
    const KernelSet* chosen = by_name(env);
    if (chosen == nullptr) {
      throw Error(ErrorCode::ConfigError,
                  "MLWALK_KERNELS='" + std::string(env) + "' is not available");
    }
    return chosen;
  }();
  return current;
}

}  // namespace

const KernelSet& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelSet* chosen = by_name(name);
  if (chosen == nullptr) return false;
  slot().store(chosen, std::memory_order_release);
  return true;
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> names{scalar().name};
  if (avx2()) names.push_back(avx2()->name);
  return names;
}

}  // namespace mlwalk::kernels
