#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace thoma {

/// Exact arbitrary-precision integer / rational scalars used by the exact
/// arithmetic mode.  The floating mode uses plain double throughout.
using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a configured cap (enumeration size, grid size, truncation
/// level) would be exceeded.  The CLI maps it to its own exit code.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Half-integer stored as its numerator over an implicit denominator 2.
/// Elements of the lattice Z' = Z + 1/2 have odd numerator.
struct HalfInt {
    std::int64_t num = 0;  // value = num / 2

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(std::int64_t numerator) : num(numerator) {}
    static constexpr HalfInt from_int(std::int64_t n) { return HalfInt{2 * n}; }

    constexpr bool is_odd_half() const { return num % 2 != 0; }
    double value() const { return 0.5 * static_cast<double>(num); }
    Rational rational() const { return Rational(num, 2); }
    constexpr HalfInt operator-() const { return HalfInt{-num}; }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.num + b.num}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.num - b.num}; }

    std::string str() const {
        std::ostringstream os;
        if (num % 2 == 0) os << num / 2;
        else os << num << "/2";
        return os.str();
    }
};

/// Complex parameter z = re + i*im held in the active scalar mode.  Exact
/// mode restricts z to Gaussian rationals so that every |z + c|^2 with
/// integer content c is again rational.
template <class S>
struct ComplexParam {
    S re{};
    S im{};

    S abs_sq() const { return re * re + im * im; }
    /// |z + c|^2 for an integer shift c (a box content).
    S abs_sq_shifted(std::int64_t c) const {
        S sr = re + S(c);
        return sr * sr + im * im;
    }
    bool is_zero() const { return re == S(0) && im == S(0); }
};

using ZExact = ComplexParam<Rational>;
using ZFloat = ComplexParam<double>;

inline ZFloat to_float(const ZExact& z) { return ZFloat{to_double(z.re), to_double(z.im)}; }

/// t (t+1) ... (t+n-1); empty product for n = 0.
template <class S>
S rising_factorial(const S& t, unsigned n) {
    S acc(1);
    for (unsigned k = 0; k < n; ++k) acc *= t + S(k);
    return acc;
}

template <class S>
S pow_int(const S& base, int e) {
    if (e < 0) return S(1) / pow_int(base, -e);
    S acc(1), b = base;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

}  // namespace thoma
