#include "qam/rational.hpp"

#include <cctype>

#include "qam/errors.hpp"

namespace qam {

std::string to_string(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw FormatError("malformed number '" + std::string(whole) + "'");
    BigInt out = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw FormatError("malformed number '" + std::string(whole) + "'");
        }
        out = out * 10 + (c - '0');
    }
    return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational out;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(body.substr(0, slash), text);
        const BigInt den = parse_integer(body.substr(slash + 1), text);
        if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
        out = Rational(num, den);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = body.substr(0, dot);
        const std::string_view frac_part = body.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw FormatError("malformed number '" + std::string(text) + "'");
        const BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        const BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
        out = Rational(whole * scale + frac, scale);
    } else {
        out = Rational(parse_integer(body, text));
    }
    return negative ? Rational(-out) : out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace qam
