#pragma once

#include <cstddef>

namespace gcdmd::kernels {

enum class Isa { scalar, avx2 };

// Runtime selection. Defaults to the best ISA the CPU reports.
Isa active_isa();
void set_isa(Isa isa);
bool avx2_available();
const char* isa_name(Isa isa);

double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}

}
