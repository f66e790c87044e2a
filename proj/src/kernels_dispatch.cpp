#include "bigrasp/kernels.hpp"

#include <cstdlib>

namespace bigrasp::kernels {

const KernelTable* avx2_table_impl();  // kernels_avx2.cpp; null when not compiled

bool avx2_compiled() { return avx2_table_impl() != nullptr; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2_compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* table_by_name(const std::string& name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2" && avx2_supported()) return avx2_table_impl();
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    if (const char* env = std::getenv("BIGRASP_KERNEL")) {
      if (const KernelTable* t = table_by_name(env)) return t;
      return &scalar_table();
    }
    return avx2_supported() ? avx2_table_impl() : &scalar_table();
  }();
  return *chosen;
}

}  // namespace bigrasp::kernels
