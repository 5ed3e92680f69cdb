#include "online/rational.hpp"

#include "online/error.hpp"

#include <cctype>

namespace online {

namespace {

bool is_integer_text(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    if (start == text.size()) {
        return false;
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view text) {
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    return mpz_class(std::string(text), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d = parse_integer(den);
    if (d == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational value(parse_integer(num), d);
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

Rational pow2(long exponent) {
    mpz_class power = 1;
    unsigned long magnitude = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                           : static_cast<unsigned long>(exponent);
    mpz_mul_2exp(power.get_mpz_t(), power.get_mpz_t(), magnitude);
    if (exponent < 0) {
        return Rational(mpz_class(1), power);
    }
    return Rational(power);
}

bool is_dyadic(const Rational& value) {
    const mpz_class& den = value.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

Rational abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

} // namespace online
