#ifndef MORSETWIST_COMPLEX_HPP
#define MORSETWIST_COMPLEX_HPP

//! \file
//! \brief Graded chain and cochain complexes of free modules, with homology.

#include "expsum.hpp"
#include "linalg.hpp"
#include "nov_reduce.hpp"
#include "novikov.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace morsetwist {

enum class Regime { Int, ExpSum, Nov };

inline std::string regime_name(Regime r)
{
    switch (r) {
    case Regime::Int: return "Z";
    case Regime::ExpSum: return "R";
    case Regime::Nov: return "Nov";
    }
    return "?";
}

template <typename R> struct regime_of;
template <> struct regime_of<Integer> { static constexpr Regime value = Regime::Int; };
template <> struct regime_of<ExpSum> { static constexpr Regime value = Regime::ExpSum; };
template <> struct regime_of<NovElem> { static constexpr Regime value = Regime::Nov; };

inline std::string entry_str(const Integer& n) { return to_string(n); }
inline std::string entry_str(const ExpSum& e) { return e.str(); }
inline std::string entry_str(const NovElem& e) { return e.str(); }

class InvalidComplex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonInvertibleEntry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class Indeterminate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Free modules in degrees 0..m joined by m differentials.
///
/// link(k), k = 1..m, connects degrees k-1 and k. In a chain complex it is
/// the boundary d_k (rows = degree k-1 generators, columns = degree k
/// generators). In a cochain complex it is the coboundary from degree k-1 to
/// degree k (rows = degree k, columns = degree k-1). Empty degrees keep their
/// zero-sized matrices so composition checks stay uniform.
template <typename R>
class ChainComplex {
public:
    ChainComplex() = default;

    ChainComplex(std::vector<std::vector<std::string>> generators, std::vector<Matrix<R>> links, bool cochain = false)
        : generators_(std::move(generators)), links_(std::move(links)), cochain_(cochain)
    {
        if (generators_.empty())
            throw std::invalid_argument("a complex needs at least degree 0");
        if (links_.size() + 1 != generators_.size())
            throw std::invalid_argument("need exactly one differential per positive degree");
        for (std::size_t k = 1; k < generators_.size(); ++k) {
            const auto& M = links_[k - 1];
            std::size_t lower = generators_[k - 1].size(), upper = generators_[k].size();
            bool ok = cochain_ ? (M.rows() == upper && M.cols() == lower) : (M.rows() == lower && M.cols() == upper);
            if (!ok)
                throw std::invalid_argument("differential " + std::to_string(k) + " has the wrong shape");
        }
    }

    static constexpr Regime regime = regime_of<R>::value;

    std::size_t dimension() const { return generators_.size() - 1; }
    bool is_cochain() const { return cochain_; }
    const std::vector<std::vector<std::string>>& generators() const { return generators_; }
    const std::vector<std::string>& generators(std::size_t k) const { return generators_.at(k); }
    std::size_t rank(std::size_t k) const { return generators_.at(k).size(); }

    /// Differential between degrees k-1 and k (1 <= k <= m).
    const Matrix<R>& link(std::size_t k) const { return links_.at(k - 1); }

    /// The differential leaving degree k, if any.
    const Matrix<R>* outgoing(std::size_t k) const
    {
        if (cochain_)
            return k < dimension() ? &link(k + 1) : nullptr;
        return k >= 1 ? &link(k) : nullptr;
    }

    /// The differential arriving in degree k, if any.
    const Matrix<R>* incoming(std::size_t k) const
    {
        if (cochain_)
            return k >= 1 ? &link(k) : nullptr;
        return k < dimension() ? &link(k + 1) : nullptr;
    }

private:
    std::vector<std::vector<std::string>> generators_;
    std::vector<Matrix<R>> links_;
    bool cochain_ = false;
};

using AnyComplex = std::variant<ChainComplex<Integer>, ChainComplex<ExpSum>, ChainComplex<NovElem>>;

struct ComplexViolation {
    std::size_t degree; ///< degree of the lower map in the offending composite
    std::size_t row;
    std::size_t col;
    std::string entry;
};

/// Checks that consecutive differentials compose to zero. Reports the first
/// nonzero entry of the first failing composite.
template <typename R>
std::optional<ComplexViolation> validate_complex(const ChainComplex<R>& C)
{
    for (std::size_t k = 1; k < C.dimension(); ++k) {
        const Matrix<R> composite = C.is_cochain() ? C.link(k + 1) * C.link(k) : C.link(k) * C.link(k + 1);
        for (std::size_t i = 0; i < composite.rows(); ++i)
            for (std::size_t j = 0; j < composite.cols(); ++j)
                if (!(composite(i, j) == R()))
                    return ComplexViolation{k, i, j, entry_str(composite(i, j))};
    }
    return std::nullopt;
}

inline std::optional<ComplexViolation> validate_complex(const AnyComplex& C)
{
    return std::visit([](const auto& c) { return validate_complex(c); }, C);
}

struct DegreeHomology {
    std::size_t betti = 0;
    /// Z: invariant factors > 1. Nov: non-unit invariants (q_k = size). R: empty.
    InvariantFactorList torsion;
    bool stuck = false;

    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologySummary {
    Regime regime = Regime::Int;
    bool cohomology = false;
    std::vector<DegreeHomology> degrees;

    bool complete() const
    {
        for (const auto& d : degrees)
            if (d.stuck)
                return false;
        return true;
    }

    std::vector<std::size_t> betti() const
    {
        std::vector<std::size_t> out;
        for (const auto& d : degrees)
            out.push_back(d.betti);
        return out;
    }

    bool vanishes() const
    {
        for (const auto& d : degrees)
            if (d.betti != 0 || !d.torsion.empty())
                return false;
        return true;
    }

    friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

/// "Z^2 + Z/2", "R", "Nov + Nov/3", "0", or "?" when a reduction is stuck.
/// Nov/n stands for Nov/(n * unit).
inline std::string group_str(const DegreeHomology& d, Regime r)
{
    if (d.stuck)
        return "?";
    std::string out;
    if (d.betti > 0)
        out = regime_name(r) + (d.betti > 1 ? "^" + std::to_string(d.betti) : "");
    for (const auto& n : d.torsion)
        out += std::string(out.empty() ? "" : " + ") + (r == Regime::Nov ? "Nov/" : "Z/") + to_string(n);
    return out.empty() ? "0" : out;
}

/// Degrees joined by ", ", lowest first.
inline std::string summary_str(const HomologySummary& s)
{
    std::string out;
    for (std::size_t k = 0; k < s.degrees.size(); ++k)
        out += (k ? ", " : "") + group_str(s.degrees[k], s.regime);
    return out;
}

struct NovOptions {
    Rational depth = default_nov_depth;
    std::size_t max_iter = default_nov_max_iter;
};

namespace detail {

struct LinkData {
    std::size_t rank = 0;
    InvariantFactorList torsion;
    bool stuck = false;
};

inline LinkData analyze(const Matrix<Integer>& M, const NovOptions&)
{
    auto snf = snf_int(M);
    return {snf.rank, std::move(snf.invariant_factors), false};
}

inline LinkData analyze(const Matrix<ExpSum>& M, const NovOptions&) { return {rank_expsum(M), {}, false}; }

inline LinkData analyze(const Matrix<NovElem>& M, const NovOptions& opts)
{
    auto red = nov_reduce(M, opts.depth, opts.max_iter);
    return {red.rank(), std::move(red.nonunit_invariants), !red.complete()};
}

} // namespace detail

/// Homology (or cohomology, for a cochain complex) degree by degree:
/// betti_k = n_k - rank(out_k) - rank(in_k), torsion from the incoming map.
template <typename R>
HomologySummary homology(const ChainComplex<R>& C, const NovOptions& opts = {})
{
    if (auto v = validate_complex(C))
        throw InvalidComplex("composite of differentials is nonzero at degree " + std::to_string(v->degree));
    std::vector<detail::LinkData> links;
    for (std::size_t k = 1; k <= C.dimension(); ++k)
        links.push_back(detail::analyze(C.link(k), opts));
    auto link_data = [&](const Matrix<R>* M) -> const detail::LinkData* {
        if (!M)
            return nullptr;
        for (std::size_t k = 1; k <= C.dimension(); ++k)
            if (&C.link(k) == M)
                return &links[k - 1];
        return nullptr;
    };

    HomologySummary out;
    out.regime = ChainComplex<R>::regime;
    out.cohomology = C.is_cochain();
    for (std::size_t k = 0; k <= C.dimension(); ++k) {
        const auto* out_link = link_data(C.outgoing(k));
        const auto* in_link = link_data(C.incoming(k));
        DegreeHomology d;
        std::size_t used = (out_link ? out_link->rank : 0) + (in_link ? in_link->rank : 0);
        d.betti = C.rank(k) >= used ? C.rank(k) - used : 0;
        if (in_link)
            d.torsion = in_link->torsion;
        d.stuck = (out_link && out_link->stuck) || (in_link && in_link->stuck);
        out.degrees.push_back(std::move(d));
    }
    return out;
}

inline HomologySummary homology(const AnyComplex& C, const NovOptions& opts = {})
{
    return std::visit([&](const auto& c) { return homology(c, opts); }, C);
}

namespace detail {
inline Integer invert_transport(const Integer& n) { return n; }
inline ExpSum invert_transport(const ExpSum& e) { return e.conjugate(); }
inline NovElem invert_transport(const NovElem& e)
{
    if (!e.is_exact())
        throw NonInvertibleEntry("NonInvertibleEntry: truncated entry " + e.str() + " cannot be dualized");
    return e.conjugate();
}
} // namespace detail

/// Cochain complex: each coboundary is the transpose of the matching boundary
/// with every monomial transport replaced by its inverse; signs unchanged.
/// Integer entries are sums of +-1 transports, which are self-inverse.
template <typename R>
ChainComplex<R> dualize(const ChainComplex<R>& C)
{
    if (C.is_cochain())
        throw std::invalid_argument("dualize expects a chain complex");
    std::vector<Matrix<R>> links;
    for (std::size_t k = 1; k <= C.dimension(); ++k)
        links.push_back(C.link(k).map([](const R& e) { return detail::invert_transport(e); }).transpose());
    return ChainComplex<R>(C.generators(), std::move(links), true);
}

inline AnyComplex dualize(const AnyComplex& C)
{
    return std::visit([](const auto& c) -> AnyComplex { return dualize(c); }, C);
}

template <typename R>
long euler_cells(const ChainComplex<R>& C)
{
    long chi = 0;
    for (std::size_t k = 0; k <= C.dimension(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(C.rank(k));
    return chi;
}

inline long euler_cells(const AnyComplex& C)
{
    return std::visit([](const auto& c) { return euler_cells(c); }, C);
}

inline long euler_homology(const HomologySummary& S)
{
    if (!S.complete())
        throw Indeterminate("Indeterminate: some degree has a stuck reduction");
    long chi = 0;
    for (std::size_t k = 0; k < S.degrees.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(S.degrees[k].betti);
    return chi;
}

inline Regime regime_of_complex(const AnyComplex& C)
{
    return std::visit([](const auto& c) { return std::decay_t<decltype(c)>::regime; }, C);
}

} // namespace morsetwist

#endif
