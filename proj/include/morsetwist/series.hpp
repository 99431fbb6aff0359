#ifndef MORSETWIST_SERIES_HPP
#define MORSETWIST_SERIES_HPP

//! \file
//! \brief Shared machinery for finitely supported sums c_i * t^(a_i) with rational exponents.
//!
//! Term lists are kept sorted by exponent, strictly descending, without zero
//! coefficients. Both ExpSum (rational coefficients) and NovElem (integer
//! coefficients) are thin wrappers over these helpers.

#include "rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace morsetwist {

template <typename Coeff>
struct Term {
    Coeff coeff;
    Rational exponent;

    friend bool operator==(const Term&, const Term&) = default;
};

namespace series {

template <typename Coeff>
using Terms = std::vector<Term<Coeff>>;

/// Merges equal exponents, drops zeros, sorts descending.
template <typename Coeff>
Terms<Coeff> normalize(Terms<Coeff> raw)
{
    std::stable_sort(raw.begin(), raw.end(),
                     [](const auto& a, const auto& b) { return a.exponent > b.exponent; });
    Terms<Coeff> out;
    out.reserve(raw.size());
    for (auto& term : raw) {
        if (!out.empty() && out.back().exponent == term.exponent)
            out.back().coeff += term.coeff;
        else
            out.push_back(std::move(term));
    }
    std::erase_if(out, [](const auto& t) { return t.coeff == 0; });
    return out;
}

/// Merge of two sorted lists; `sign` = -1 gives a - b.
template <typename Coeff>
Terms<Coeff> add(const Terms<Coeff>& a, const Terms<Coeff>& b, int sign = 1)
{
    Terms<Coeff> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].exponent > b[j].exponent)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].exponent > a[i].exponent) {
            out.push_back({Coeff(sign * b[j].coeff), b[j].exponent});
            ++j;
        } else {
            Coeff c = a[i].coeff + Coeff(sign * b[j].coeff);
            if (c != 0)
                out.push_back({c, a[i].exponent});
            ++i;
            ++j;
        }
    }
    return out;
}

template <typename Coeff>
Terms<Coeff> multiply(const Terms<Coeff>& a, const Terms<Coeff>& b)
{
    Terms<Coeff> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            raw.push_back({Coeff(x.coeff * y.coeff), x.exponent + y.exponent});
    return normalize(std::move(raw));
}

template <typename Coeff>
Terms<Coeff> scale_exponents(const Terms<Coeff>& a, const Rational& s)
{
    Terms<Coeff> out = a;
    for (auto& t : out)
        t.exponent *= s;
    if (s < 0)
        std::reverse(out.begin(), out.end());
    return out;
}

template <typename Coeff>
std::string render_term(const Coeff& c, const Rational& exponent)
{
    if (exponent == 0)
        return to_string(c);
    std::string mono = "t^(" + to_string(exponent) + ")";
    if (c == 1)
        return mono;
    if (c == -1)
        return "-" + mono;
    return to_string(c) + "*" + mono;
}

/// "3*t^(1/2) - t^(-1) + 2"; the empty list renders as "0".
template <typename Coeff>
std::string render(const Terms<Coeff>& terms)
{
    if (terms.empty())
        return "0";
    std::string out = render_term(terms.front().coeff, terms.front().exponent);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (t.coeff < 0)
            out += " - " + render_term(Coeff(-t.coeff), t.exponent);
        else
            out += " + " + render_term(t.coeff, t.exponent);
    }
    return out;
}

struct Parsed {
    Terms<Rational> terms;
    std::optional<Rational> floor;
};

/// Recursive-descent reader for the rendering grammar above, plus an optional
/// trailing "O(t^(r))" truncation marker.
class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    Parsed parse()
    {
        Parsed out;
        skip_ws();
        if (at_end())
            throw ParseError("empty ring element");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (!first) {
                if (peek() == '+')
                    ++pos_;
                else if (peek() == '-') {
                    sign = -1;
                    ++pos_;
                } else
                    fail("expected '+' or '-'");
                skip_ws();
            } else if (peek() == '-') {
                sign = -1;
                ++pos_;
                skip_ws();
            }
            first = false;
            if (lookahead("O(")) {
                if (sign < 0)
                    fail("truncation marker cannot be negated");
                pos_ += 2;
                expect("t^(");
                out.floor = rational_until(')');
                expect("))");
                skip_ws();
                if (!at_end())
                    fail("truncation marker must come last");
                break;
            }
            Rational coeff = 1;
            Rational exponent = 0;
            if (peek() == 't') {
                exponent = monomial();
            } else {
                coeff = number();
                skip_ws();
                if (!at_end() && peek() == '*') {
                    ++pos_;
                    skip_ws();
                    exponent = monomial();
                }
            }
            out.terms.push_back({Rational(sign * coeff), exponent});
            skip_ws();
        }
        out.terms = normalize(std::move(out.terms));
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    bool lookahead(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void skip_ws()
    {
        while (!at_end() && (peek() == ' ' || peek() == '\t'))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void expect(std::string_view s)
    {
        if (!lookahead(s))
            fail("expected '" + std::string(s) + "'");
        pos_ += s.size();
    }

    Rational rational_until(char stop)
    {
        auto end = text_.find(stop, pos_);
        if (end == std::string_view::npos)
            fail("unterminated exponent");
        Rational r = parse_rational(text_.substr(pos_, end - pos_));
        pos_ = end;
        return r;
    }

    Rational monomial()
    {
        expect("t");
        if (at_end() || peek() != '^')
            return 1;
        ++pos_;
        expect("(");
        Rational r = rational_until(')');
        expect(")");
        return r;
    }

    Rational number()
    {
        std::size_t start = pos_;
        while (!at_end() && ((peek() >= '0' && peek() <= '9') || peek() == '/'))
            ++pos_;
        if (start == pos_)
            fail("expected a coefficient");
        return parse_rational(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace series
} // namespace morsetwist

#endif
