#include "ptower/decimal.hpp"

#include <cctype>
#include <cstdlib>

#include "ptower/error.hpp"

namespace ptower
{

mpq_class parse_decimal(std::string_view text)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            any_digit = true;
            if (seen_point) {
                ++frac_len;
            }
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw domain_error("not a decimal number: '" + std::string(text) + "'");
    }
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        const std::string rest(text.substr(i));
        char *end = nullptr;
        exp10 = std::strtol(rest.c_str(), &end, 10);
        if (end == rest.c_str() || *end != '\0') {
            throw domain_error("bad exponent in decimal number: '" + std::string(text) + "'");
        }
        i = text.size();
    }
    if (i != text.size()) {
        throw domain_error("trailing characters in decimal number: '" + std::string(text) + "'");
    }
    mpz_class mant(digits, 10);
    if (negative) {
        mant = -mant;
    }
    const long shift = exp10 - frac_len;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift >= 0 ? mpq_class(mant * p) : mpq_class(mant, p);
    q.canonicalize();
    return q;
}

std::string trim_mantissa_zeros(const std::string &sci)
{
    const auto e = sci.find_first_of("eE");
    const auto dot = sci.find('.');
    if (dot == std::string::npos || (e != std::string::npos && dot > e)) {
        return sci;
    }
    const std::size_t mant_end = e == std::string::npos ? sci.size() : e;
    std::size_t last = mant_end;
    while (last > dot + 1 && sci[last - 1] == '0') {
        --last;
    }
    if (last == dot + 1) {
        last = dot;
    }
    return sci.substr(0, last) + sci.substr(mant_end);
}

} // namespace ptower
