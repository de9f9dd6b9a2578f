#pragma once

// Data-parallel reduction kernels for the quadrature inner loops.
//
// Scalar reference implementations live in impulsive::kernels::scalar and are
// always available. On x86-64, AVX2/FMA variants are compiled into a separate
// translation unit and selected once at startup via cpuid; everything else
// falls back to scalar. The two backends are equivalence-tested against each
// other (they may differ by summation order, i.e. O(n·eps) relative).

#include <cstddef>
#include <span>

namespace impulsive::kernels {

// Name of the backend behind the dispatched entry points: "scalar" or "avx2".
const char* active_backend();

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

// sum_i a[i] * b[i] * c[i]   (quadrature weight x integrand x basis value)
double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c);

// sum_i a[i] * b[i] * c[i] * d[i]
double dot4(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<const double> d);

// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// out[i] = a[i] * b[i]
void hadamard(std::span<const double> a, std::span<const double> b,
              std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c);
double dot4(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<const double> d);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void hadamard(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
// True when the running CPU supports AVX2+FMA and the variants were compiled in.
bool available();
double dot(std::span<const double> a, std::span<const double> b);
double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c);
double dot4(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<const double> d);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void hadamard(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
} // namespace avx2
#endif

} // namespace impulsive::kernels
