#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "rchlab/kernels.hpp"

namespace rchlab::kernels {

#if defined(RCHLAB_HAVE_AVX2)
const Ops& avx2_ops();  // defined in avx2.cpp
#endif

bool avx2_supported() {
#if defined(RCHLAB_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops* resolve(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &scalar_ops();
    case Backend::Avx2:
#if defined(RCHLAB_HAVE_AVX2)
      if (avx2_supported()) return &avx2_ops();
#endif
      throw std::runtime_error("avx2 backend requested but not available");
    case Backend::Auto:
    default:
#if defined(RCHLAB_HAVE_AVX2)
      if (avx2_supported()) return &avx2_ops();
#endif
      return &scalar_ops();
  }
}

Backend env_backend() {
  const char* v = std::getenv("RCH_LAB_SIMD");
  if (v == nullptr || std::strcmp(v, "auto") == 0) return Backend::Auto;
  if (std::strcmp(v, "scalar") == 0) return Backend::Scalar;
  if (std::strcmp(v, "avx2") == 0) return Backend::Avx2;
  throw std::runtime_error("RCH_LAB_SIMD must be auto, scalar or avx2");
}

std::atomic<const Ops*> g_ops{nullptr};

}  // namespace

const Ops& ops() {
  const Ops* p = g_ops.load(std::memory_order_acquire);
  if (p == nullptr) {
    p = resolve(env_backend());
    g_ops.store(p, std::memory_order_release);
  }
  return *p;
}

void select_backend(Backend b) {
  g_ops.store(resolve(b), std::memory_order_release);
}

}  // namespace rchlab::kernels
