#ifndef MORSETWIST_MORSE_HPP
#define MORSETWIST_MORSE_HPP

//! \file
//! \brief Combinatorial Morse data, local systems on them, and the twisted
//! Morse-Smale-Witten complexes they assemble into.
//!
//! A flow line q -> p carries its sign, the integral of every basis 1-form
//! along the flow direction, and optionally a +-1 transport (unit tag) and a
//! deck-group label. Conventions:
//!   - Exp(class):  weight t^(+a), a = class . periods;
//!   - Nov(class):  weight t^(-a);
//!   - UnitRep:     weight = unit tag;
//!   - cochains use the inverse weight.

#include "complex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsetwist {

class DatumError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MissingUnitTag : public DatumError {
public:
    explicit MissingUnitTag(const std::string& flow)
        : DatumError("MissingUnitTag: flow line " + flow + " has no unit tag")
    {
    }
};

class Disconnected : public std::runtime_error {
public:
    Disconnected() : std::runtime_error("Disconnected: not every index-0 point is reachable through the 1-skeleton") {}
};

class NonUnit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CriticalPoint {
    std::string id;
    std::size_t index = 0;

    friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

struct FlowLine {
    std::string from; ///< index k point
    std::string to;   ///< index k-1 point
    int sign = 1;
    std::vector<Rational> periods;
    std::optional<int> unit_tag;
    std::optional<std::string> deck_tag;

    std::string label() const { return from + "->" + to; }

    friend bool operator==(const FlowLine&, const FlowLine&) = default;
};

/// Finite group given by its element labels and full multiplication table.
struct DeckGroup {
    std::vector<std::string> elements;
    std::vector<std::vector<std::string>> table; ///< table[i][j] = elements[i] * elements[j]

    std::size_t position(const std::string& g) const
    {
        auto it = std::find(elements.begin(), elements.end(), g);
        if (it == elements.end())
            throw DatumError("UnknownGroupElement: '" + g + "'");
        return static_cast<std::size_t>(it - elements.begin());
    }

    bool contains(const std::string& g) const
    {
        return std::find(elements.begin(), elements.end(), g) != elements.end();
    }

    std::string multiply(const std::string& a, const std::string& b) const { return table[position(a)][position(b)]; }

    /// Closure, identity and associativity; inverses follow for finite tables
    /// with cancellation, which is checked as the Latin-square property.
    void validate() const
    {
        const std::size_t n = elements.size();
        if (n == 0)
            throw DatumError("deck group has no elements");
        if (std::set<std::string>(elements.begin(), elements.end()).size() != n)
            throw DatumError("deck group element labels repeat");
        if (table.size() != n)
            throw DatumError("deck group table must be " + std::to_string(n) + "x" + std::to_string(n));
        for (const auto& row : table) {
            if (row.size() != n)
                throw DatumError("deck group table must be square");
            for (const auto& g : row)
                position(g);
            if (std::set<std::string>(row.begin(), row.end()).size() != n)
                throw DatumError("deck group table rows must be permutations");
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::set<std::string> column;
            for (std::size_t i = 0; i < n; ++i)
                column.insert(table[i][j]);
            if (column.size() != n)
                throw DatumError("deck group table columns must be permutations");
        }
        bool has_identity = false;
        for (std::size_t e = 0; e < n && !has_identity; ++e) {
            has_identity = true;
            for (std::size_t i = 0; i < n; ++i)
                if (table[e][i] != elements[i] || table[i][e] != elements[i])
                    has_identity = false;
        }
        if (!has_identity)
            throw DatumError("deck group table has no identity");
        for (const auto& a : elements)
            for (const auto& b : elements)
                for (const auto& c : elements)
                    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
                        throw DatumError("deck group table is not associative");
    }

    friend bool operator==(const DeckGroup&, const DeckGroup&) = default;
};

struct MorseDatum {
    std::string name;
    std::size_t dimension = 0;
    std::vector<std::string> basis_forms;
    std::vector<CriticalPoint> points;
    std::vector<FlowLine> flows;
    std::optional<DeckGroup> deck_group;

    const CriticalPoint& point(const std::string& id) const
    {
        for (const auto& p : points)
            if (p.id == id)
                return p;
        throw DatumError("unknown critical point '" + id + "'");
    }

    /// Points of index k, in input order.
    std::vector<std::string> points_of_index(std::size_t k) const
    {
        std::vector<std::string> out;
        for (const auto& p : points)
            if (p.index == k)
                out.push_back(p.id);
        return out;
    }

    /// Structural invariants: unique ids, index bounds, flow endpoints one index
    /// apart, signs and unit tags in {+1,-1}, period vectors sized to the basis,
    /// deck tags inside the declared group.
    void validate() const
    {
        std::set<std::string> ids;
        for (const auto& p : points) {
            if (!ids.insert(p.id).second)
                throw DatumError("duplicate critical point id '" + p.id + "'");
            if (p.index > dimension)
                throw DatumError("point '" + p.id + "' has index above the dimension");
        }
        if (deck_group)
            deck_group->validate();
        for (const auto& f : flows) {
            const auto& from = point(f.from);
            const auto& to = point(f.to);
            if (from.index != to.index + 1)
                throw DatumError("flow line " + f.label() + " must drop the index by exactly one");
            if (f.sign != 1 && f.sign != -1)
                throw DatumError("flow line " + f.label() + " has sign other than +-1");
            if (f.periods.size() != basis_forms.size())
                throw DatumError("flow line " + f.label() + " needs " + std::to_string(basis_forms.size()) +
                                 " periods");
            if (f.unit_tag && *f.unit_tag != 1 && *f.unit_tag != -1)
                throw DatumError("flow line " + f.label() + " has a unit tag outside {+1,-1}");
            if (f.deck_tag) {
                if (!deck_group)
                    throw DatumError("flow line " + f.label() + " has a deck tag but no deck group is declared");
                if (!deck_group->contains(*f.deck_tag))
                    throw DatumError("UnknownGroupElement: '" + *f.deck_tag + "' on " + f.label());
            }
        }
    }

    friend bool operator==(const MorseDatum&, const MorseDatum&) = default;
};

struct LocalSystem {
    enum class Flavor { Trivial, UnitRep, Exp, Nov };

    Flavor flavor = Flavor::Trivial;
    std::vector<Rational> form_class; ///< coefficients in the datum's basis forms (Exp/Nov)

    static LocalSystem trivial() { return {Flavor::Trivial, {}}; }
    static LocalSystem unit_rep() { return {Flavor::UnitRep, {}}; }
    static LocalSystem exp(std::vector<Rational> c) { return {Flavor::Exp, std::move(c)}; }
    static LocalSystem nov(std::vector<Rational> c) { return {Flavor::Nov, std::move(c)}; }

    bool uses_class() const { return flavor == Flavor::Exp || flavor == Flavor::Nov; }

    Regime regime() const
    {
        switch (flavor) {
        case Flavor::Exp: return Regime::ExpSum;
        case Flavor::Nov: return Regime::Nov;
        default: return Regime::Int;
        }
    }

    friend bool operator==(const LocalSystem&, const LocalSystem&) = default;
};

inline std::string flavor_name(LocalSystem::Flavor f)
{
    switch (f) {
    case LocalSystem::Flavor::Trivial: return "trivial";
    case LocalSystem::Flavor::UnitRep: return "unit-rep";
    case LocalSystem::Flavor::Exp: return "exp";
    case LocalSystem::Flavor::Nov: return "nov";
    }
    return "?";
}

/// "trivial", "unit-rep", "exp(1,0)", "nov(-1/2)".
inline std::string system_str(const LocalSystem& sys)
{
    std::string out = flavor_name(sys.flavor);
    if (sys.uses_class()) {
        out += "(";
        for (std::size_t i = 0; i < sys.form_class.size(); ++i)
            out += (i ? "," : "") + to_string(sys.form_class[i]);
        out += ")";
    }
    return out;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    if (a.size() != b.size())
        throw DatumError("class vector has " + std::to_string(a.size()) + " entries, expected " +
                         std::to_string(b.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Checks that `sys` can be bound to `d`.
inline void check_compatible(const MorseDatum& d, const LocalSystem& sys)
{
    if (sys.uses_class() && sys.form_class.size() != d.basis_forms.size())
        throw DatumError("class vector has " + std::to_string(sys.form_class.size()) + " entries but the datum has " +
                         std::to_string(d.basis_forms.size()) + " basis forms");
    if (sys.flavor == LocalSystem::Flavor::UnitRep)
        for (const auto& f : d.flows)
            if (!f.unit_tag)
                throw MissingUnitTag(f.label());
}

/// Integral of the class along the flow direction.
inline Rational flow_period(const FlowLine& f, const LocalSystem& sys) { return dot(sys.form_class, f.periods); }

inline Integer flow_weight_int(const FlowLine& f, const LocalSystem& sys)
{
    if (sys.flavor == LocalSystem::Flavor::UnitRep) {
        if (!f.unit_tag)
            throw MissingUnitTag(f.label());
        return *f.unit_tag;
    }
    return 1;
}

inline ExpSum flow_weight_exp(const FlowLine& f, const LocalSystem& sys)
{
    return ExpSum::monomial(flow_period(f, sys));
}

inline NovElem flow_weight_nov(const FlowLine& f, const LocalSystem& sys)
{
    return NovElem::monomial(-flow_period(f, sys));
}

namespace detail {

template <typename R, typename Weight>
ChainComplex<R> assemble(const MorseDatum& d, Weight&& weight)
{
    std::vector<std::vector<std::string>> gens(d.dimension + 1);
    std::map<std::string, std::size_t> slot;
    for (std::size_t k = 0; k <= d.dimension; ++k) {
        gens[k] = d.points_of_index(k);
        for (std::size_t i = 0; i < gens[k].size(); ++i)
            slot[gens[k][i]] = i;
    }
    std::vector<Matrix<R>> links;
    for (std::size_t k = 1; k <= d.dimension; ++k)
        links.emplace_back(gens[k - 1].size(), gens[k].size());
    for (const auto& f : d.flows) {
        const std::size_t k = d.point(f.from).index;
        R w = weight(f);
        links[k - 1](slot.at(f.to), slot.at(f.from)) += f.sign > 0 ? w : R() - w;
    }
    return ChainComplex<R>(std::move(gens), std::move(links));
}

} // namespace detail

/// Twisted boundary: entry (p, q) sums sign * weight over the flow lines q -> p.
inline AnyComplex build_complex(const MorseDatum& d, const LocalSystem& sys)
{
    d.validate();
    check_compatible(d, sys);
    switch (sys.flavor) {
    case LocalSystem::Flavor::Exp:
        return detail::assemble<ExpSum>(d, [&](const FlowLine& f) { return flow_weight_exp(f, sys); });
    case LocalSystem::Flavor::Nov:
        return detail::assemble<NovElem>(d, [&](const FlowLine& f) { return flow_weight_nov(f, sys); });
    default:
        return detail::assemble<Integer>(d, [&](const FlowLine& f) { return flow_weight_int(f, sys); });
    }
}

inline AnyComplex build_cochain(const MorseDatum& d, const LocalSystem& sys) { return dualize(build_complex(d, sys)); }

/// Fiberwise change of basis by a +-1 unit per critical point:
/// a flow q -> p gets tag g(p) * tag * g(q)^-1.
inline MorseDatum gauge_transform(const MorseDatum& d, const std::map<std::string, int>& gauge)
{
    check_compatible(d, LocalSystem::unit_rep());
    for (const auto& p : d.points) {
        auto it = gauge.find(p.id);
        if (it == gauge.end())
            throw NonUnit("NonUnit: gauge does not assign a unit to '" + p.id + "'");
        if (it->second != 1 && it->second != -1)
            throw NonUnit("NonUnit: gauge value " + std::to_string(it->second) + " at '" + p.id + "'");
    }
    MorseDatum out = d;
    for (auto& f : out.flows)
        *f.unit_tag = gauge.at(f.to) * *f.unit_tag * gauge.at(f.from); // g^-1 = g for +-1
    return out;
}

/// Shifts the periods of every flow q -> p by h(q) - h(p): the combinatorial
/// effect of adding an exact form dh. Points missing from `h` get potential 0.
inline MorseDatum shift_potential(const MorseDatum& d, const std::map<std::string, std::vector<Rational>>& h)
{
    const std::vector<Rational> zero(d.basis_forms.size(), Rational(0));
    auto value = [&](const std::string& id) -> const std::vector<Rational>& {
        auto it = h.find(id);
        return it == h.end() ? zero : it->second;
    };
    MorseDatum out = d;
    for (auto& f : out.flows) {
        const auto& hq = value(f.from);
        const auto& hp = value(f.to);
        if (hq.size() != zero.size() || hp.size() != zero.size())
            throw DatumError("potential vectors must match the basis forms");
        for (std::size_t i = 0; i < f.periods.size(); ++i)
            f.periods[i] += hq[i] - hp[i];
    }
    return out;
}

/// Pulls the datum back to the finite cover determined by the deck tags.
/// Point (x, g) is labelled "x~g"; a flow q -> p tagged h lifts to
/// (q, g) -> (p, g*h) with the same sign. The result is untwisted.
inline MorseDatum lift_cover(const MorseDatum& d)
{
    d.validate();
    if (!d.deck_group)
        throw DatumError("lift_cover needs a declared deck group");
    const DeckGroup& group = *d.deck_group;
    auto lifted_id = [](const std::string& x, const std::string& g) { return x + "~" + g; };

    MorseDatum out;
    out.name = d.name + "-lift";
    out.dimension = d.dimension;
    for (const auto& p : d.points)
        for (const auto& g : group.elements)
            out.points.push_back({lifted_id(p.id, g), p.index});
    for (const auto& f : d.flows) {
        if (!f.deck_tag)
            throw DatumError("MissingDeckTag: flow line " + f.label() + " has no deck tag");
        for (const auto& g : group.elements)
            out.flows.push_back({lifted_id(f.from, g), lifted_id(f.to, group.multiply(g, *f.deck_tag)), f.sign, {}, {}, {}});
    }
    return out;
}

/// A closed walk through flow lines, summarized by its holonomy data.
struct DetectedLoop {
    int unit = 1;                  ///< product of unit tags (1 when untagged)
    std::vector<Rational> periods; ///< signed sum of flow periods around the walk
    std::string via;               ///< the flow line closing the loop
};

/// Loops read off the datum: the fundamental cycles of the graph whose
/// vertices are the index 0 and 1 points and whose edges are the flow lines
/// between them, plus one loop per extra parallel flow line in higher index
/// (down one line, back up the first line sharing its endpoints).
inline std::vector<DetectedLoop> detected_loops(const MorseDatum& d)
{
    d.validate();
    const auto base = d.points_of_index(0);
    if (base.empty())
        throw Disconnected();
    const std::size_t nforms = d.basis_forms.size();

    struct Potential {
        int unit = 1;
        std::vector<Rational> periods;
    };
    std::map<std::string, Potential> reached;
    std::map<std::string, std::vector<std::size_t>> incident;
    std::vector<bool> tree(d.flows.size(), false);
    for (std::size_t e = 0; e < d.flows.size(); ++e) {
        const auto& f = d.flows[e];
        if (d.point(f.from).index != 1)
            continue;
        incident[f.from].push_back(e);
        incident[f.to].push_back(e);
    }

    reached[base.front()] = {1, std::vector<Rational>(nforms, Rational(0))};
    std::queue<std::string> frontier;
    frontier.push(base.front());
    while (!frontier.empty()) {
        const std::string x = frontier.front();
        frontier.pop();
        for (std::size_t e : incident[x]) {
            const auto& f = d.flows[e];
            const bool forward = f.from == x; // walking q -> p along the flow
            const std::string y = forward ? f.to : f.from;
            if (reached.count(y))
                continue;
            Potential p = reached[x];
            p.unit *= f.unit_tag.value_or(1);
            for (std::size_t i = 0; i < nforms; ++i)
                p.periods[i] += forward ? f.periods[i] : Rational(-f.periods[i]);
            reached[y] = std::move(p);
            tree[e] = true;
            frontier.push(y);
        }
    }
    for (const auto& p : base)
        if (!reached.count(p))
            throw Disconnected();

    std::vector<DetectedLoop> loops;
    for (std::size_t e = 0; e < d.flows.size(); ++e) {
        const auto& f = d.flows[e];
        if (tree[e] || d.point(f.from).index != 1 || !reached.count(f.from))
            continue;
        const auto& q = reached[f.from];
        const auto& p = reached[f.to];
        DetectedLoop loop;
        loop.unit = q.unit * f.unit_tag.value_or(1) * p.unit;
        loop.periods.resize(nforms);
        for (std::size_t i = 0; i < nforms; ++i)
            loop.periods[i] = q.periods[i] + f.periods[i] - p.periods[i];
        loop.via = f.label();
        loops.push_back(std::move(loop));
    }

    std::map<std::pair<std::string, std::string>, std::size_t> first_parallel;
    for (std::size_t e = 0; e < d.flows.size(); ++e) {
        const auto& f = d.flows[e];
        if (d.point(f.from).index < 2)
            continue;
        auto [it, fresh] = first_parallel.try_emplace({f.from, f.to}, e);
        if (fresh)
            continue;
        const auto& g = d.flows[it->second];
        DetectedLoop loop;
        loop.unit = f.unit_tag.value_or(1) * g.unit_tag.value_or(1);
        loop.periods.resize(nforms);
        for (std::size_t i = 0; i < nforms; ++i)
            loop.periods[i] = f.periods[i] - g.periods[i];
        loop.via = f.label();
        loops.push_back(std::move(loop));
    }
    return loops;
}

/// Holonomy of a loop under a rank-one system: a sign for Int-valued systems,
/// an exponent of t for Exp/Nov (Nov uses the opposite direction).
struct LoopHolonomy {
    int unit = 1;
    Rational exponent = 0;

    bool is_identity() const { return unit == 1 && exponent == 0; }
};

inline LoopHolonomy loop_holonomy(const DetectedLoop& loop, const LocalSystem& sys)
{
    switch (sys.flavor) {
    case LocalSystem::Flavor::Trivial: return {};
    case LocalSystem::Flavor::UnitRep: return {loop.unit, 0};
    case LocalSystem::Flavor::Exp: return {1, dot(sys.form_class, loop.periods)};
    case LocalSystem::Flavor::Nov: return {1, Rational(-dot(sys.form_class, loop.periods))};
    }
    return {};
}

/// Sound but incomplete simplicity test: the system is declared non-simple
/// when some detected loop has nontrivial holonomy.
inline std::optional<DetectedLoop> nonsimplicity_witness(const MorseDatum& d, const LocalSystem& sys)
{
    check_compatible(d, sys);
    for (const auto& loop : detected_loops(d))
        if (!loop_holonomy(loop, sys).is_identity())
            return loop;
    return std::nullopt;
}

/// A cyclic group, or the fiber itself, or zero.
struct GroupDescriptor {
    enum class Kind { Zero, Fiber, Cyclic };
    Kind kind = Kind::Zero;
    Regime fiber = Regime::Int;
    Integer order = 0; ///< for Cyclic

    std::string str() const
    {
        switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Fiber: return regime_name(fiber);
        case Kind::Cyclic: return "Z/" + to_string(order);
        }
        return "?";
    }

    friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// Degree-0 homology as the fiber modulo the span of (1 - u) over loop holonomies u.
inline GroupDescriptor h0_quotient(const MorseDatum& d, const LocalSystem& sys)
{
    check_compatible(d, sys);
    const auto loops = detected_loops(d);
    const Regime fiber = sys.regime();
    bool twisted = false;
    for (const auto& loop : loops)
        twisted = twisted || !loop_holonomy(loop, sys).is_identity();
    if (!twisted)
        return {GroupDescriptor::Kind::Fiber, fiber, 0};
    if (fiber == Regime::Int) // (1 - (-1)) Z = 2Z
        return {GroupDescriptor::Kind::Cyclic, fiber, 2};
    // Over R, 1 - e^a is invertible for a != 0; over Nov, 1 - t^a has top coefficient +-1.
    return {GroupDescriptor::Kind::Zero, fiber, 0};
}

/// Degree-0 cohomology as the subgroup of the fiber fixed by every loop holonomy.
inline GroupDescriptor h0_cohomology(const MorseDatum& d, const LocalSystem& sys)
{
    check_compatible(d, sys);
    const auto loops = detected_loops(d);
    for (const auto& loop : loops)
        if (!loop_holonomy(loop, sys).is_identity())
            return {GroupDescriptor::Kind::Zero, sys.regime(), 0};
    return {GroupDescriptor::Kind::Fiber, sys.regime(), 0};
}

} // namespace morsetwist

#endif
