#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aelt {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec scaled(std::span<const double> a, double c) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline void axpy(double c, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

// Deterministic low-discrepancy scalar sequence (van der Corput).
inline double van_der_corput(std::uint64_t n, std::uint64_t base) {
    double q = 0.0, bk = 1.0 / static_cast<double>(base);
    while (n > 0) {
        q += static_cast<double>(n % base) * bk;
        n /= base;
        bk /= static_cast<double>(base);
    }
    return q;
}

// Halton point in [0,1)^d, d <= 10.
inline Vec halton(std::uint64_t n, int d) {
    static constexpr std::uint64_t primes[10] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    Vec x(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] = van_der_corput(n + 1, primes[k]);
    return x;
}

}  // namespace aelt
