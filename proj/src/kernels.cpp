#include "impulsive/kernels.hpp"

#include <cassert>

namespace impulsive::kernels {

namespace scalar {

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c) {
    assert(a.size() == b.size() && a.size() == c.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * c[i];
    return s;
}

double dot4(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<const double> d) {
    assert(a.size() == b.size() && a.size() == c.size() && a.size() == d.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * c[i] * d[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void hadamard(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

} // namespace scalar

namespace {

struct Backend {
    const char* name;
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*dot3)(std::span<const double>, std::span<const double>,
                   std::span<const double>);
    double (*dot4)(std::span<const double>, std::span<const double>,
                   std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*hadamard)(std::span<const double>, std::span<const double>,
                     std::span<double>);
};

Backend select_backend() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(IMPULSE_HAVE_AVX2_TU)
    if (avx2::available()) {
        return {"avx2", &avx2::dot, &avx2::dot3, &avx2::dot4, &avx2::axpy,
                &avx2::hadamard};
    }
#endif
    return {"scalar", &scalar::dot, &scalar::dot3, &scalar::dot4, &scalar::axpy,
            &scalar::hadamard};
}

const Backend& backend() {
    static const Backend b = select_backend();
    return b;
}

} // namespace

const char* active_backend() { return backend().name; }

double dot(std::span<const double> a, std::span<const double> b) {
    return backend().dot(a, b);
}

double dot3(std::span<const double> a, std::span<const double> b,
            std::span<const double> c) {
    return backend().dot3(a, b, c);
}

double dot4(std::span<const double> a, std::span<const double> b,
            std::span<const double> c, std::span<const double> d) {
    return backend().dot4(a, b, c, d);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    backend().axpy(alpha, x, y);
}

void hadamard(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
    backend().hadamard(a, b, out);
}

} // namespace impulsive::kernels
