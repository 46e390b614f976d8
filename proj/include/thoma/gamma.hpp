#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace thoma {

/// log Gamma(z) for complex z via the Lanczos approximation (g = 7, n = 9)
/// with the reflection formula for Re z < 1/2.  Relative accuracy ~1e-13.
inline std::complex<double> lgamma_complex(std::complex<double> z) {
    static constexpr double coeffs[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(pi) - std::log(std::sin(pi * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> a = coeffs[0];
    std::complex<double> t = z + 7.5;
    for (int i = 1; i < 9; ++i) a += coeffs[i] / (z + static_cast<double>(i));
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

/// |Gamma(z)|; returns +infinity at the poles (nonpositive integers).
inline double abs_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        return std::numeric_limits<double>::infinity();
    return std::exp(lgamma_complex(z).real());
}

}  // namespace thoma
