#ifndef MORSETWIST_NOVIKOV_HPP
#define MORSETWIST_NOVIKOV_HPP

//! \file
//! \brief Elements of the Novikov ring over the exponent group Q.
//!
//! A NovElem stores finitely many integer-coefficient terms above an optional
//! truncation floor F. With a floor, every coefficient at an exponent <= F is
//! unknown; without one the element is an exact finite sum.

#include "series.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace morsetwist {

class ZeroElement : public std::domain_error {
public:
    ZeroElement() : std::domain_error("ZeroElement: element has no known leading term") {}
};

class NotAUnit : public std::domain_error {
public:
    explicit NotAUnit(const std::string& what) : std::domain_error("NotAUnit: " + what) {}
};

class NovElem {
public:
    using Coeff = Integer;
    using TermType = Term<Integer>;

    NovElem() = default;
    NovElem(int c) : NovElem(Integer(c), Rational(0)) {}
    NovElem(const Integer& c, const Rational& exponent)
    {
        if (c != 0)
            terms_.push_back({c, exponent});
    }

    static NovElem monomial(const Rational& exponent, const Integer& c = 1) { return NovElem(c, exponent); }

    static NovElem normalize(std::vector<TermType> raw, std::optional<Rational> floor = std::nullopt)
    {
        return from(series::normalize(std::move(raw)), std::move(floor));
    }

    const std::vector<TermType>& terms() const { return terms_; }
    const std::optional<Rational>& truncation_floor() const { return floor_; }
    bool is_exact() const { return !floor_.has_value(); }

    /// Exact zero. A truncated element without known terms is not zero, only unknown.
    bool is_zero() const { return terms_.empty() && !floor_; }
    bool has_known_top() const { return !terms_.empty(); }

    /// Leading (largest-exponent) term.
    const TermType& top() const
    {
        if (terms_.empty())
            throw ZeroElement();
        return terms_.front();
    }

    /// A Novikov element is invertible iff its top coefficient is +1 or -1.
    bool is_unit() const { return !terms_.empty() && magnitude(terms_.front().coeff) == 1; }

    bool is_monomial() const { return terms_.size() == 1 && !floor_; }

    friend NovElem operator+(const NovElem& a, const NovElem& b)
    {
        return from(series::add(a.terms_, b.terms_), max_floor(a.floor_, b.floor_));
    }
    friend NovElem operator-(const NovElem& a, const NovElem& b)
    {
        return from(series::add(a.terms_, b.terms_, -1), max_floor(a.floor_, b.floor_));
    }
    friend NovElem operator*(const NovElem& a, const NovElem& b)
    {
        if (a.is_zero() || b.is_zero())
            return NovElem();
        std::optional<Rational> floor;
        if (a.floor_)
            floor = max_floor(floor, *a.floor_ + b.known_ceiling());
        if (b.floor_)
            floor = max_floor(floor, *b.floor_ + a.known_ceiling());
        return from(series::multiply(a.terms_, b.terms_), floor);
    }
    NovElem operator-() const { return NovElem() - *this; }
    NovElem& operator+=(const NovElem& b) { return *this = *this + b; }
    NovElem& operator-=(const NovElem& b) { return *this = *this - b; }
    NovElem& operator*=(const NovElem& b) { return *this = *this * b; }
    friend bool operator==(const NovElem&, const NovElem&) = default;

    /// Forgets every term at or below `floor`.
    NovElem truncated(const Rational& floor) const { return from(terms_, max_floor(floor_, floor)); }

    NovElem rescale(const Rational& s) const
    {
        if (s <= 0)
            throw std::domain_error("NonpositiveScale: exponent rescaling needs s > 0");
        std::optional<Rational> floor;
        if (floor_)
            floor = *floor_ * s;
        return from(series::scale_exponents(terms_, s), floor);
    }

    /// t -> t^(-1). Only exact elements have a conjugate inside Nov.
    NovElem conjugate() const
    {
        if (floor_)
            throw std::domain_error("cannot conjugate a truncated Novikov element");
        return from(series::scale_exponents(terms_, Rational(-1)), std::nullopt);
    }

    std::string str() const
    {
        if (!floor_)
            return series::render(terms_);
        std::string marker = "O(t^(" + to_string(*floor_) + "))";
        return terms_.empty() ? marker : series::render(terms_) + " + " + marker;
    }

    static NovElem parse(std::string_view text)
    {
        auto parsed = series::Scanner(text).parse();
        std::vector<TermType> terms;
        for (auto& t : parsed.terms) {
            if (!is_integral(t.coeff))
                throw ParseError("Novikov coefficients must be integers in '" + std::string(text) + "'");
            terms.push_back({numerator_of(t.coeff), t.exponent});
        }
        if (parsed.floor)
            for (const auto& t : terms)
                if (t.exponent <= *parsed.floor)
                    throw ParseError("term below the truncation floor in '" + std::string(text) + "'");
        return from(std::move(terms), parsed.floor);
    }

private:
    static std::optional<Rational> max_floor(const std::optional<Rational>& a, const std::optional<Rational>& b)
    {
        if (!a)
            return b;
        if (!b)
            return a;
        return std::max(*a, *b);
    }

    // Largest exponent at which this element might be nonzero.
    Rational known_ceiling() const { return terms_.empty() ? *floor_ : terms_.front().exponent; }

    static NovElem from(std::vector<TermType> sorted, std::optional<Rational> floor)
    {
        NovElem out;
        if (floor)
            std::erase_if(sorted, [&](const TermType& t) { return t.exponent <= *floor; });
        out.terms_ = std::move(sorted);
        out.floor_ = std::move(floor);
        return out;
    }

    std::vector<TermType> terms_;
    std::optional<Rational> floor_;
};

inline std::ostream& operator<<(std::ostream& os, const NovElem& e) { return os << e.str(); }

/// Leading (coefficient, exponent) pair; throws ZeroElement on zero.
inline std::pair<Integer, Rational> nov_top(const NovElem& e)
{
    const auto& t = e.top();
    return {t.coeff, t.exponent};
}

inline bool nov_is_unit(const NovElem& e) { return e.is_unit(); }

/// Inverse of a unit, known down to `depth` below its leading exponent.
///
/// Writes e = c t^g (1 + r) with c = +-1 and r supported on negative
/// exponents, then sums the geometric series of -r. Monomials invert exactly.
inline NovElem nov_invert(const NovElem& e, const Rational& depth)
{
    if (depth <= 0)
        throw std::domain_error("inversion depth must be positive");
    if (!e.is_unit())
        throw NotAUnit(e.str());
    const auto [c, g] = nov_top(e);
    const NovElem lead_inverse = NovElem::monomial(-g, c); // c^-1 = c for c = +-1
    const NovElem rest = e * lead_inverse - NovElem(1);      // r, all exponents < 0
    if (rest.is_zero())
        return lead_inverse;

    const Rational relative_floor = -depth;
    const NovElem step = (-rest).truncated(relative_floor);
    NovElem sum(1);
    NovElem power(1);
    while (true) {
        power = (power * step).truncated(relative_floor);
        if (!power.has_known_top())
            break;
        sum += power;
    }
    return (sum.truncated(relative_floor)) * lead_inverse;
}

inline NovElem rescale_exponents(const NovElem& e, const Rational& s) { return e.rescale(s); }

} // namespace morsetwist

#endif
