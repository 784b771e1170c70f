#include "ga/kernels.hpp"

namespace ga::kernels {

const Backend* avx2_backend_impl();  // defined in kernels_avx2.cpp

const Backend* avx2() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return avx2_backend_impl();
#endif
  return nullptr;
}

const Backend& active() {
  static const Backend* selected = [] {
    if (const Backend* v = avx2()) return v;
    return &scalar();
  }();
  return *selected;
}

}  // namespace ga::kernels
