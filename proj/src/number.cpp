#include "lapperturb/number.hpp"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <ios>
#include <sstream>
#include <stdexcept>

namespace lapperturb {

namespace mp = boost::multiprecision;

std::string NumberDomain::describe() const {
    if (is_exact()) return "exact";
    return "float" + std::to_string(precision_bits);
}

unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
    if (bits < 24) throw std::invalid_argument("precision below 24 bits");
    Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    // A leading 0 would make Boost read the digits as octal.
    const auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

Integer pow10(unsigned e) {
    return mp::pow(Integer(10), e);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    text = trim(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(text.substr(0, slash), whole);
        Integer den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
        value = Rational(num, den);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            std::string exp_text(text.substr(e + 1));
            std::size_t used = 0;
            try {
                exponent = std::stol(exp_text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != exp_text.size() || exp_text.empty())
                throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
            text = text.substr(0, e);
        }
        std::string digits;
        long scale = 0;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
            scale = static_cast<long>(text.size() - dot - 1);
            if (digits.empty()) throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
        } else {
            digits = std::string(text);
        }
        Integer num = parse_integer(digits, whole);
        long shift = exponent - scale;
        if (shift >= 0)
            value = Rational(num * pow10(static_cast<unsigned>(shift)));
        else
            value = Rational(num, pow10(static_cast<unsigned>(-shift)));
    }
    return negative ? Rational(-value) : value;
}

std::string to_fraction_string(const Rational& value) {
    return mp::numerator(value).str() + "/" + mp::denominator(value).str();
}

std::string to_compact_string(const Rational& value) {
    if (mp::denominator(value) == 1) return mp::numerator(value).str();
    return to_fraction_string(value);
}

Rational round_to_decimals(const Rational& value, int decimals) {
    if (decimals < 0) throw std::invalid_argument("negative decimal count");
    const Integer scale = pow10(static_cast<unsigned>(decimals));
    Rational scaled = mp::abs(value) * scale + Rational(1, 2);
    Integer rounded = mp::numerator(scaled) / mp::denominator(scaled);
    if (value < 0) rounded = -rounded;
    return Rational(rounded, scale);
}

std::string to_decimal_string(const Rational& value, int decimals) {
    Rational r = round_to_decimals(value, decimals);
    const Rational shifted = r * pow10(static_cast<unsigned>(decimals));
    Integer scaled = mp::numerator(shifted);
    const bool negative = scaled < 0;
    std::string digits = Integer(mp::abs(scaled)).str();
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals))
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return negative ? "-" + digits : digits;
}

std::string to_decimal_string(const Real& value, int decimals) {
    if (decimals < 0) throw std::invalid_argument("negative decimal count");
    // Boost reads 0 digits as "all digits".
    std::string out = decimals == 0 ? Integer(mp::round(value)).str() : value.str(decimals, std::ios_base::fixed);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string to_scientific_string(const Real& value, int significant) {
    if (significant < 1) significant = 1;
    // Boost counts digits after the point in scientific mode, and 0 there means all of them.
    if (significant == 1) {
        std::ostringstream os;
        os << std::scientific << std::setprecision(0) << value.convert_to<long double>();
        return os.str();
    }
    return value.str(significant - 1, std::ios_base::scientific);
}

std::size_t numerator_bits(const Rational& value) {
    const Integer n = mp::abs(mp::numerator(value));
    return n == 0 ? 0 : mp::msb(n) + 1;
}

std::size_t denominator_bits(const Rational& value) {
    return mp::msb(mp::denominator(value)) + 1;
}

}  // namespace lapperturb
