#ifndef MORSETWIST_INVARIANTS_HPP
#define MORSETWIST_INVARIANTS_HPP

//! \file
//! \brief Novikov numbers, Morse-Novikov inequalities, and the H-space and
//! parallel-form obstructions.

#include "morse.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace morsetwist {

class ZeroClass : public std::invalid_argument {
public:
    ZeroClass() : std::invalid_argument("ZeroClass: the class vector is zero") {}
};

struct NovikovDegree {
    std::size_t b = 0;
    std::size_t q = 0; ///< a lower bound when !complete
    bool complete = true;

    friend bool operator==(const NovikovDegree&, const NovikovDegree&) = default;
};

struct NovikovNumbers {
    std::vector<Rational> class_vector;
    std::vector<NovikovDegree> degrees;

    bool complete() const
    {
        for (const auto& d : degrees)
            if (!d.complete)
                return false;
        return true;
    }

    std::vector<std::size_t> b() const
    {
        std::vector<std::size_t> out;
        for (const auto& d : degrees)
            out.push_back(d.b);
        return out;
    }

    std::vector<std::size_t> q() const
    {
        std::vector<std::size_t> out;
        for (const auto& d : degrees)
            out.push_back(d.q);
        return out;
    }
};

inline NovikovNumbers novikov_from_summary(const HomologySummary& s, std::vector<Rational> cls)
{
    if (s.regime != Regime::Nov)
        throw std::invalid_argument("Novikov numbers need a Nov summary");
    NovikovNumbers out{std::move(cls), {}};
    for (const auto& d : s.degrees)
        out.degrees.push_back({d.betti, d.torsion.size(), !d.stuck});
    return out;
}

inline NovikovNumbers novikov_numbers(const MorseDatum& d, const std::vector<Rational>& cls, const NovOptions& opts = {})
{
    return novikov_from_summary(homology(build_complex(d, LocalSystem::nov(cls)), opts), cls);
}

struct InequalityReport {
    std::vector<long> slack; ///< c_k - b_k - q_k - q_(k-1)
    bool pass = true;
};

inline InequalityReport check_inequalities(const std::vector<std::size_t>& zeros, const NovikovNumbers& n)
{
    if (!n.complete())
        throw Indeterminate("Indeterminate: some degree has a stuck reduction");
    if (zeros.size() != n.degrees.size())
        throw std::invalid_argument("need one zero count per degree (" + std::to_string(n.degrees.size()) + ")");
    InequalityReport out;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        long s = static_cast<long>(zeros[k]) - static_cast<long>(n.degrees[k].b) - static_cast<long>(n.degrees[k].q) -
                 (k ? static_cast<long>(n.degrees[k - 1].q) : 0L);
        out.slack.push_back(s);
        out.pass = out.pass && s >= 0;
    }
    return out;
}

struct ObstructionVerdict {
    enum class Kind { HSpace, ParallelForm };
    Kind kind = Kind::HSpace;
    bool triggered = false;
    std::string witness;
};

inline std::string verdict_kind_name(ObstructionVerdict::Kind k)
{
    return k == ObstructionVerdict::Kind::HSpace ? "h-space" : "parallel-form";
}

inline std::string holonomy_str(const LoopHolonomy& h, Regime r)
{
    if (r == Regime::Int)
        return std::to_string(h.unit);
    return NovElem::monomial(h.exponent).str();
}

/// First degree with nonzero (co)homology, described; empty when it all vanishes.
/// Without `count_torsion` only ranks are seen, as after tensoring with a field.
inline std::string nonzero_degree(const HomologySummary& s, bool count_torsion = true)
{
    const std::string name = s.cohomology ? "H^" : "H_";
    for (std::size_t k = 0; k < s.degrees.size(); ++k) {
        const auto& d = s.degrees[k];
        if (d.betti != 0)
            return name + std::to_string(k) + " has rank " + std::to_string(d.betti) + " over " +
                   regime_name(s.regime);
        if (count_torsion && !d.torsion.empty())
            return name + std::to_string(k) + " has torsion over " + regime_name(s.regime);
    }
    return "";
}

/// Triggered when a detected loop has nontrivial holonomy and the twisted
/// homology is nonzero in some degree. A +-1 system is read with real fiber,
/// so only ranks count there; over Nov torsion counts too.
inline ObstructionVerdict hspace_obstruction(const MorseDatum& d, const LocalSystem& sys, const NovOptions& opts = {})
{
    ObstructionVerdict v{ObstructionVerdict::Kind::HSpace, false, ""};
    const auto loop = nonsimplicity_witness(d, sys);
    if (!loop)
        return v;
    const auto summary = homology(build_complex(d, sys), opts);
    const std::string degree = nonzero_degree(summary, summary.regime == Regime::Nov);
    if (degree.empty())
        return v;
    const auto h = loop_holonomy(*loop, sys);
    v.triggered = true;
    v.witness = "system is not simple: loop via " + loop->via + " has holonomy " + holonomy_str(h, sys.regime()) +
                "; " + degree;
    if (sys.flavor == LocalSystem::Flavor::Nov)
        v.witness += "; t^(" + to_string(h.exponent) + ") - 1 is a unit in Nov";
    return v;
}

inline bool is_zero_class(const std::vector<Rational>& cls)
{
    for (const auto& c : cls)
        if (c != 0)
            return false;
    return true;
}

/// Triggered when the cochain complex twisted by the class has nonzero
/// cohomology; a nonzero Euler number forces this for every nonzero class.
inline ObstructionVerdict parallel_form_obstruction(const MorseDatum& d, const std::vector<Rational>& cls)
{
    if (is_zero_class(cls))
        throw ZeroClass();
    const AnyComplex cochain = build_cochain(d, LocalSystem::exp(cls));
    const auto summary = homology(cochain);
    ObstructionVerdict v{ObstructionVerdict::Kind::ParallelForm, false, ""};
    const std::string degree = nonzero_degree(summary);
    if (degree.empty())
        return v;
    v.triggered = true;
    v.witness = degree;
    if (const long chi = euler_cells(cochain); chi != 0)
        v.witness += "; Euler number " + std::to_string(chi) + " is nonzero, so every nonzero class obstructs";
    return v;
}

/// Rank of the group generated by the class's periods on detected loops (0 or 1).
inline std::size_t rank_of_class(const MorseDatum& d, const std::vector<Rational>& cls)
{
    check_compatible(d, LocalSystem::exp(cls));
    for (const auto& loop : detected_loops(d))
        if (dot(cls, loop.periods) != 0)
            return 1;
    return 0;
}

} // namespace morsetwist

#endif
