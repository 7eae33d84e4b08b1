#pragma once

#include <bit>
#include <complex>
#include <numbers>
#include <vector>

namespace bergman::detail {

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 FFT, sign convention X_k = sum_t x_t e^{-2 pi i k t / n};
/// inverse applies the opposite sign and no 1/n scaling.
inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl = std::polar(1.0, ang);
        for (int i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (int k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

inline int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace bergman::detail
