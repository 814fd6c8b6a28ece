#include "qreg/rational.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cctype>
#include <iomanip>
#include <sstream>

namespace qreg {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view digits, std::string_view whole)
{
    if (digits.empty())
        throw RationalFormatError("missing digits in rational '" + std::string(whole) + "'");
    cpp_int value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw RationalFormatError("invalid character in rational '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    if (text.empty())
        throw RationalFormatError("empty rational");

    bool negative = false;
    if (text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        cpp_int num = parse_digits(text.substr(0, slash), whole);
        cpp_int den = parse_digits(text.substr(slash + 1), whole);
        if (den == 0)
            throw RationalFormatError("zero denominator in '" + std::string(whole) + "'");
        result = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty())
            throw RationalFormatError("malformed decimal '" + std::string(whole) + "'");
        cpp_int num = int_part.empty() ? cpp_int(0) : parse_digits(int_part, whole);
        cpp_int den = 1;
        for (char c : frac_part) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw RationalFormatError("invalid character in decimal '" + std::string(whole) + "'");
            num = num * 10 + (c - '0');
            den *= 10;
        }
        result = Rational(num, den);
    } else {
        result = Rational(parse_digits(text, whole));
    }
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& r)
{
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, int digits)
{
    using Float = boost::multiprecision::cpp_dec_float_50;
    Float value = Float(boost::multiprecision::numerator(r)) / Float(boost::multiprecision::denominator(r));
    std::ostringstream out;
    if (value != 0 && abs(value) < Float("1e-4"))
        out << std::scientific << std::setprecision(digits - 1) << value;
    else
        out << std::setprecision(digits) << value;
    return out.str();
}

Rational power(const Rational& base, unsigned exp)
{
    Rational result = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1u)
            result *= b;
        b *= b;
        exp >>= 1u;
    }
    return result;
}

} // namespace qreg
