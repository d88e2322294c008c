#ifndef LAPPERTURB_NUMBER_HPP
#define LAPPERTURB_NUMBER_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>

namespace lapperturb {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, Real>;

// Floating types the eigensolver accepts.
template <class T>
concept Floating = std::same_as<T, double> || std::same_as<T, Real>;

struct NumberDomain {
    enum class Mode { exact_rational, floating };

    Mode mode = Mode::exact_rational;
    unsigned precision_bits = 128;

    static NumberDomain exact() { return {Mode::exact_rational, 128}; }
    static NumberDomain floating(unsigned bits = 128) { return {Mode::floating, bits}; }

    bool is_exact() const { return mode == Mode::exact_rational; }
    std::string describe() const;
};

// Decimal digits carried by a binary precision of `bits`.
unsigned digits10_for_bits(unsigned bits);

// Sets the process-wide Real precision for the lifetime of the object.
// Boost's mpfr backend keeps one global default, so set this before spawning threads.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

// Accepts "p/q", integers, and plain decimals such as "-2.5" or "1e-3".
Rational parse_rational(std::string_view text);

// Always "p/q", with "/1" for integers so the output is uniform.
std::string to_fraction_string(const Rational& value);
// "p" for integers, "p/q" otherwise.
std::string to_compact_string(const Rational& value);

// Fixed-point decimal rendering with `decimals` digits after the point.
std::string to_decimal_string(const Rational& value, int decimals);
std::string to_decimal_string(const Real& value, int decimals);

// Scientific rendering with `significant` digits.
std::string to_scientific_string(const Real& value, int significant);

// Rational rounded to `decimals` digits after the point, half away from zero.
Rational round_to_decimals(const Rational& value, int decimals);

std::size_t numerator_bits(const Rational& value);
std::size_t denominator_bits(const Rational& value);

template <Scalar T>
T from_rational(const Rational& value) {
    return T(value);
}

// Exponentiation by squaring; Boost offers no pow for rationals.
template <class T>
T ipow(T base, std::size_t e) {
    T out(1);
    while (e) {
        if (e & 1) out *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return out;
}

inline Real to_real(const Rational& value) { return Real(value); }
inline const Real& to_real(const Real& value) { return value; }

inline double to_double(const Rational& value) { return value.convert_to<double>(); }
inline double to_double(const Real& value) { return value.convert_to<double>(); }
inline double to_double(double value) { return value; }

template <Scalar T>
std::string to_output_string(const T& value, int digits) {
    if constexpr (std::same_as<T, Rational>) {
        (void)digits;
        return to_fraction_string(value);
    } else {
        return to_scientific_string(value, digits);
    }
}

}  // namespace lapperturb

#endif
