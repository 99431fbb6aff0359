#ifndef MORSETWIST_EXPSUM_HPP
#define MORSETWIST_EXPSUM_HPP

//! \file
//! \brief Formal exponential sums: the group ring Q[t^Q] in which the
//! line-bundle twisted boundaries live. t^a stands for e^a.

#include "series.hpp"

#include <cmath>
#include <ostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace morsetwist {

class ExpSum {
public:
    using Coeff = Rational;
    using TermType = Term<Rational>;

    ExpSum() = default;
    ExpSum(int c) : ExpSum(Rational(c), Rational(0)) {}
    ExpSum(const Rational& c, const Rational& exponent)
    {
        if (c != 0)
            terms_.push_back({c, exponent});
    }

    /// Merges duplicate exponents and drops zero coefficients.
    static ExpSum normalize(std::vector<TermType> raw)
    {
        ExpSum out;
        out.terms_ = series::normalize(std::move(raw));
        return out;
    }

    static ExpSum monomial(const Rational& exponent, const Rational& c = 1) { return ExpSum(c, exponent); }

    const std::vector<TermType>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    const TermType& top() const
    {
        if (terms_.empty())
            throw std::domain_error("zero ExpSum has no leading term");
        return terms_.front();
    }

    friend ExpSum operator+(const ExpSum& a, const ExpSum& b) { return from(series::add(a.terms_, b.terms_)); }
    friend ExpSum operator-(const ExpSum& a, const ExpSum& b) { return from(series::add(a.terms_, b.terms_, -1)); }
    friend ExpSum operator*(const ExpSum& a, const ExpSum& b) { return from(series::multiply(a.terms_, b.terms_)); }
    ExpSum operator-() const { return ExpSum() - *this; }
    ExpSum& operator+=(const ExpSum& b) { return *this = *this + b; }
    ExpSum& operator-=(const ExpSum& b) { return *this = *this - b; }
    ExpSum& operator*=(const ExpSum& b) { return *this = *this * b; }
    friend bool operator==(const ExpSum&, const ExpSum&) = default;

    /// Multiplies every exponent by s > 0 (t -> t^s, a ring automorphism).
    ExpSum rescale(const Rational& s) const
    {
        if (s <= 0)
            throw std::domain_error("NonpositiveScale: exponent rescaling needs s > 0");
        return from(series::scale_exponents(terms_, s));
    }

    /// The involution t -> t^(-1); inverts every monomial transport.
    ExpSum conjugate() const { return from(series::scale_exponents(terms_, Rational(-1))); }

    /// Exact quotient a / b when b divides a in Q[t^Q], otherwise nullopt.
    friend std::optional<ExpSum> divide_exact(const ExpSum& a, const ExpSum& b)
    {
        if (b.is_zero())
            throw std::domain_error("division by zero ExpSum");
        if (a.is_zero())
            return ExpSum();
        const Rational lowest = a.terms_.back().exponent - b.terms_.back().exponent;
        const auto& lead = b.terms_.front();
        std::vector<TermType> quotient;
        auto remainder = a.terms_;
        while (!remainder.empty()) {
            Rational e = remainder.front().exponent - lead.exponent;
            if (e < lowest)
                return std::nullopt;
            Rational c = remainder.front().coeff / lead.coeff;
            quotient.push_back({c, e});
            remainder = series::add(remainder, series::multiply(std::vector<TermType>{{c, e}}, b.terms_), -1);
        }
        return from(std::move(quotient));
    }

    /// Numerical value at t = base. Diagnostic only; ranks never go through this.
    double evaluate(double base = std::exp(1.0)) const
    {
        double sum = 0.0;
        for (const auto& t : terms_)
            sum += t.coeff.convert_to<double>() * std::pow(base, t.exponent.convert_to<double>());
        return sum;
    }

    std::string str() const { return series::render(terms_); }

    static ExpSum parse(std::string_view text)
    {
        auto parsed = series::Scanner(text).parse();
        if (parsed.floor)
            throw ParseError("ExpSum cannot carry a truncation marker");
        return from(std::move(parsed.terms));
    }

private:
    static ExpSum from(std::vector<TermType> sorted)
    {
        ExpSum out;
        out.terms_ = std::move(sorted);
        return out;
    }

    std::vector<TermType> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const ExpSum& e) { return os << e.str(); }

inline ExpSum rescale_exponents(const ExpSum& e, const Rational& s) { return e.rescale(s); }

} // namespace morsetwist

#endif
