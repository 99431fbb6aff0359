#ifndef MORSETWIST_RATIONAL_HPP
#define MORSETWIST_RATIONAL_HPP

//! \file
//! \brief Arbitrary-precision integer and rational scalars with the "p/q" text form.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace morsetwist {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for malformed textual input of any kind (rationals, ring elements, files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline std::string to_string(const Integer& n) { return n.str(); }

/// Canonical rendering: "n" for integers, "p/q" otherwise (q > 0, lowest terms).
inline std::string to_string(const Rational& r)
{
    if (is_integral(r))
        return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

inline Integer parse_integer(std::string_view s)
{
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw ParseError("expected an integer");
    Integer value = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ParseError("invalid digit '" + std::string(1, c) + "' in integer");
        value = value * 10 + (c - '0');
    }
    return negative ? Integer(-value) : value;
}

} // namespace detail

/// Parses "n", "-n" or "p/q". Decimal points and exponents are rejected: all
/// periods must be exact rationals.
inline Rational parse_rational(std::string_view text)
{
    auto s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(s));
    Integer num = detail::parse_integer(s.substr(0, slash));
    auto den_text = detail::trim(s.substr(slash + 1));
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
        throw ParseError("denominator must be unsigned in '" + std::string(text) + "'");
    Integer den = detail::parse_integer(den_text);
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

/// Converts to a machine integer; throws std::overflow_error when out of range.
inline std::int64_t to_int64(const Integer& n)
{
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + n.str());
    return n.convert_to<std::int64_t>();
}

inline Integer magnitude(const Integer& n) { return n < 0 ? Integer(-n) : n; }

} // namespace morsetwist

#endif
