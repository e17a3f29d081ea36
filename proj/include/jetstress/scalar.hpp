#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>

namespace jetstress {

/// Exact rational coefficient ring.
using Rational = mpq_class;

/// Coefficient rings supported by every numeric kernel.
template <typename T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

/// Raised when an argument lies outside an operation's domain (bad index,
/// degree overflow, dimension mismatch, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return std::fabs(x); }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

template <Scalar T> T from_rational(const Rational& x);
template <> inline Rational from_rational<Rational>(const Rational& x) { return x; }
template <> inline double from_rational<double>(const Rational& x) { return x.get_d(); }

/// Integer power of a scalar; exponent must be non-negative.
template <Scalar T> T ipow(const T& base, int exponent)
{
    T result = 1;
    T b = base;
    while (exponent > 0) {
        if (exponent & 1) result *= b;
        b *= b;
        exponent >>= 1;
    }
    return result;
}

/// (-1)^k for any integer k.
constexpr int minus_one_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

/// Parses `p`, `p/q`, or a decimal literal such as `0.25` into an exact rational.
Rational parse_rational(const std::string& text);

std::string format_scalar(const Rational& x);
std::string format_scalar(double x);

}  // namespace jetstress
