#include <atomic>
#include <cstdlib>
#include <cstring>

#include "sdq/simd/kernels.hpp"

namespace sdq::simd {
namespace {

const KernelTable* select_initial() noexcept {
  const char* env = std::getenv("SDQ_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table();
  if (cpu_has_avx2() && avx2_table() != nullptr) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> table{select_initial()};
  return table;
}

}  // namespace

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

bool force_level(Level level) noexcept {
  if (level == Level::scalar) {
    slot().store(&scalar_table());
    return true;
  }
  if (!cpu_has_avx2() || avx2_table() == nullptr) return false;
  slot().store(avx2_table());
  return true;
}

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace sdq::simd
