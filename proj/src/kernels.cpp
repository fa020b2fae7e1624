#include "gcdmd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gcdmd::kernels {

namespace {

Isa detect() {
  const char* env = std::getenv("GCDMD_ISA");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double dot(const double* a, const double* b, std::size_t n) {
  return active_isa() == Isa::avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

double sum_sq(const double* a, std::size_t n) {
  return active_isa() == Isa::avx2 ? avx2::sum_sq(a, n) : scalar::sum_sq(a, n);
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  return active_isa() == Isa::avx2 ? avx2::sum_sq_diff(a, b, n) : scalar::sum_sq_diff(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  if (active_isa() == Isa::avx2)
    avx2::axpy(alpha, x, y, n);
  else
    scalar::axpy(alpha, x, y, n);
}

}
