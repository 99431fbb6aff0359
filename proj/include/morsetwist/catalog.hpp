#ifndef MORSETWIST_CATALOG_HPP
#define MORSETWIST_CATALOG_HPP

//! \file
//! \brief Built-in examples with pinned flow data and expected results.

#include "cw.hpp"
#include "invariants.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsetwist {

class UnknownExample : public std::invalid_argument {
public:
    explicit UnknownExample(const std::string& name)
        : std::invalid_argument("UnknownExample: '" + name + "'")
    {
    }
};

struct Expectation {
    enum class Kind { Homology, Cohomology, Novikov, LiftHomology, HSpace, ParallelForm, Euler };

    std::string label;
    Kind kind = Kind::Homology;
    LocalSystem system;
    std::string expected;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    MorseDatum datum;
    std::optional<RegularCW> cw;
    std::optional<FacetList> facets;
    std::vector<Expectation> expectations;
};

namespace catalog {

inline std::vector<Rational> ratios(std::initializer_list<const char*> xs)
{
    std::vector<Rational> out;
    for (const char* x : xs)
        out.push_back(parse_rational(x));
    return out;
}

inline FlowLine flow(std::string from, std::string to, int sign, std::vector<Rational> periods,
                     std::optional<int> unit = std::nullopt, std::optional<std::string> deck = std::nullopt)
{
    return {std::move(from), std::move(to), sign, std::move(periods), unit, std::move(deck)};
}

inline std::vector<Rational> unit_vector(std::size_t n, std::size_t i, int value = 1)
{
    std::vector<Rational> v(n, Rational(0));
    v[i] = value;
    return v;
}

inline Expectation homology_of(std::string label, LocalSystem sys, std::string expected)
{
    return {std::move(label), Expectation::Kind::Homology, std::move(sys), std::move(expected)};
}

inline Expectation cohomology_of(std::string label, LocalSystem sys, std::string expected)
{
    return {std::move(label), Expectation::Kind::Cohomology, std::move(sys), std::move(expected)};
}

inline Expectation novikov_of(std::string label, std::vector<Rational> cls, std::string expected)
{
    return {std::move(label), Expectation::Kind::Novikov, LocalSystem::nov(std::move(cls)), std::move(expected)};
}

inline Expectation hspace_of(std::string label, LocalSystem sys, bool triggered)
{
    return {std::move(label), Expectation::Kind::HSpace, std::move(sys), triggered ? "triggered" : "not triggered"};
}

inline std::string novikov_str(const NovikovNumbers& n)
{
    auto tuple = [](const std::vector<std::size_t>& xs) {
        std::string out = "(";
        for (std::size_t i = 0; i < xs.size(); ++i)
            out += (i ? "," : "") + std::to_string(xs[i]);
        return out + ")";
    };
    return "b=" + tuple(n.b()) + " q=" + tuple(n.q()) + (n.complete() ? "" : " incomplete");
}

inline CatalogEntry circle_std()
{
    MorseDatum d;
    d.name = "circle-std";
    d.dimension = 1;
    d.basis_forms = {"dtheta"};
    d.points = {{"p", 0}, {"q", 1}};
    d.flows = {flow("q", "p", 1, ratios({"-1/2"}), 1), flow("q", "p", -1, ratios({"1/2"}), -1)};
    return {"circle-std",
            "height function on the round circle: one minimum, one maximum, two flow lines",
            d,
            std::nullopt,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), "Z, Z"),
             homology_of("sign system", LocalSystem::unit_rep(), "Z/2, 0"),
             homology_of("exact class", LocalSystem::exp(ratios({"0"})), "R, R"),
             homology_of("angular form", LocalSystem::exp(ratios({"1"})), "0, 0"),
             novikov_of("novikov, exact class", ratios({"0"}), "b=(1,1) q=(0,0)"),
             novikov_of("novikov, angular form", ratios({"1"}), "b=(0,0) q=(0,0)"),
             hspace_of("h-space, sign system", LocalSystem::unit_rep(), false),
             {"euler", Expectation::Kind::Euler, LocalSystem::trivial(), "0"}}};
}

inline RegularCW circle_regular_cw()
{
    RegularCW cw;
    cw.name = "circle-regular";
    cw.dimension = 1;
    cw.basis_forms = {"dtheta"};
    cw.cells = {{"p1", "p2"}, {"q1", "q2"}};
    cw.incidences = {{"q1", "p2", 1, ratios({"0"}), 1},
                     {"q1", "p1", -1, ratios({"0"}), 1},
                     {"q2", "p2", 1, ratios({"0"}), 1},
                     {"q2", "p1", -1, ratios({"1"}), -1}};
    return cw;
}

inline CatalogEntry circle_regular()
{
    const RegularCW cw = circle_regular_cw();
    return {"circle-regular",
            "circle with two minima and two maxima: a regular CW structure",
            cw_to_morse(cw),
            cw,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), "Z, Z"),
             homology_of("sign system", LocalSystem::unit_rep(), "Z/2, 0"),
             homology_of("exact class", LocalSystem::exp(ratios({"0"})), "R, R"),
             homology_of("angular form", LocalSystem::exp(ratios({"1"})), "0, 0"),
             novikov_of("novikov, angular form", ratios({"1"}), "b=(0,0) q=(0,0)")}};
}

inline MorseDatum rp2_datum(bool deck_tags)
{
    MorseDatum d;
    d.name = deck_tags ? "rp2-lift" : "rp2";
    d.dimension = 2;
    d.basis_forms = {"dh"};
    d.points = {{"p", 0}, {"q", 1}, {"r", 2}};
    auto tag = [&](const char* g) { return deck_tags ? std::optional<std::string>(g) : std::nullopt; };
    d.flows = {flow("r", "q", 1, ratios({"1"}), 1, tag("e")), flow("r", "q", 1, ratios({"1"}), -1, tag("s")),
               flow("q", "p", 1, ratios({"1"}), 1, tag("e")), flow("q", "p", -1, ratios({"1"}), -1, tag("s"))};
    if (deck_tags)
        d.deck_group = DeckGroup{{"e", "s"}, {{"e", "s"}, {"s", "e"}}};
    return d;
}

inline CatalogEntry rp2()
{
    return {"rp2",
            "projective plane with one critical point of each index",
            rp2_datum(false),
            std::nullopt,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), "Z, Z/2, 0"),
             homology_of("sign system", LocalSystem::unit_rep(), "Z/2, 0, Z"),
             homology_of("exp, class 1", LocalSystem::exp(ratios({"1"})), "R, 0, 0"),
             homology_of("exp, class -3/7", LocalSystem::exp(ratios({"-3/7"})), "R, 0, 0"),
             novikov_of("novikov, class 0", ratios({"0"}), "b=(1,0,0) q=(0,1,0)"),
             hspace_of("h-space, sign system", LocalSystem::unit_rep(), true),
             {"euler", Expectation::Kind::Euler, LocalSystem::trivial(), "1"}}};
}

inline CatalogEntry rp2_lift()
{
    return {"rp2-lift",
            "projective plane with deck labels for the double cover by the sphere",
            rp2_datum(true),
            std::nullopt,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), "Z, Z/2, 0"),
             {"double cover", Expectation::Kind::LiftHomology, LocalSystem::trivial(), "Z, 0, Z"}}};
}

/// x0..xn, two flow lines between consecutive points with unit tags (+1, -1);
/// their signs agree for even k and differ for odd k.
inline MorseDatum rpn_datum(std::size_t n)
{
    MorseDatum d;
    d.name = "rpn(" + std::to_string(n) + ")";
    d.dimension = n;
    for (std::size_t k = 0; k <= n; ++k)
        d.points.push_back({"x" + std::to_string(k), k});
    for (std::size_t k = 1; k <= n; ++k) {
        const std::string from = "x" + std::to_string(k), to = "x" + std::to_string(k - 1);
        d.flows.push_back(flow(from, to, 1, {}, 1));
        d.flows.push_back(flow(from, to, k % 2 == 0 ? 1 : -1, {}, -1));
    }
    return d;
}

/// Closed forms of the cellular homology of RP^n, untwisted and with the
/// orientation sign system.
inline std::string rpn_expected(std::size_t n, bool twisted)
{
    std::string out;
    for (std::size_t k = 0; k <= n; ++k) {
        // Untwisted boundaries are 2 in even degree, 0 in odd; twisting swaps them.
        const bool in_is_two = (k + 1 <= n) && (((k + 1) % 2 == 0) != twisted);
        const bool out_is_two = k >= 1 && ((k % 2 == 0) != twisted);
        std::string g;
        if (out_is_two)
            g = "0";
        else if (in_is_two)
            g = "Z/2";
        else
            g = "Z";
        out += (k ? ", " : "") + g;
    }
    return out;
}

inline CatalogEntry rpn(std::size_t n)
{
    if (n == 0 || n > 64)
        throw UnknownExample("rpn(" + std::to_string(n) + ")");
    return {"rpn(" + std::to_string(n) + ")",
            "real projective space with one critical point per index",
            rpn_datum(n),
            std::nullopt,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), rpn_expected(n, false)),
             homology_of("sign system", LocalSystem::unit_rep(), rpn_expected(n, true)),
             hspace_of("h-space, sign system", LocalSystem::unit_rep(), n % 2 == 0)}};
}

inline CatalogEntry torus()
{
    MorseDatum d;
    d.name = "torus";
    d.dimension = 2;
    d.basis_forms = {"dtheta1", "dtheta2"};
    d.points = {{"p", 0}, {"q", 1}, {"r", 1}, {"s", 2}};
    d.flows = {flow("q", "p", 1, ratios({"-1/2", "0"})), flow("q", "p", -1, ratios({"1/2", "0"})),
               flow("r", "p", 1, ratios({"0", "-1/2"})), flow("r", "p", -1, ratios({"0", "1/2"})),
               flow("s", "q", 1, ratios({"0", "1/2"})),  flow("s", "q", -1, ratios({"0", "-1/2"})),
               flow("s", "r", 1, ratios({"-1/2", "0"})), flow("s", "r", -1, ratios({"1/2", "0"}))};
    return {"torus",
            "product of two circle height functions",
            d,
            std::nullopt,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), "Z, Z^2, Z"),
             homology_of("exp, class (1,0)", LocalSystem::exp(ratios({"1", "0"})), "0, 0, 0"),
             cohomology_of("exp, class (1,0)", LocalSystem::exp(ratios({"1", "0"})), "0, 0, 0"),
             novikov_of("novikov, class 0", ratios({"0", "0"}), "b=(1,2,1) q=(0,0,0)"),
             novikov_of("novikov, class (1,0)", ratios({"1", "0"}), "b=(0,0,0) q=(0,0,0)"),
             novikov_of("novikov, class (2/3,-5)", ratios({"2/3", "-5"}), "b=(0,0,0) q=(0,0,0)"),
             hspace_of("h-space, exp (1,0)", LocalSystem::exp(ratios({"1", "0"})), false),
             {"parallel form, (1,0)", Expectation::Kind::ParallelForm, LocalSystem::exp(ratios({"1", "0"})),
              "not triggered"},
             {"euler", Expectation::Kind::Euler, LocalSystem::trivial(), "0"}}};
}

inline CatalogEntry klein()
{
    MorseDatum d;
    d.name = "klein";
    d.dimension = 2;
    d.basis_forms = {"dtheta"};
    d.points = {{"p", 0}, {"q", 1}, {"r", 1}, {"s", 2}};
    d.flows = {flow("q", "p", 1, ratios({"0"})),    flow("q", "p", -1, ratios({"0"})),
               flow("r", "p", 1, ratios({"-1/2"})), flow("r", "p", -1, ratios({"1/2"})),
               flow("s", "q", -1, ratios({"-1/2"})), flow("s", "q", -1, ratios({"1/2"})),
               flow("s", "r", 1, ratios({"0"})),    flow("s", "r", -1, ratios({"0"}))};
    return {"klein",
            "Klein bottle with one critical point of index 0 and 2, two of index 1",
            d,
            std::nullopt,
            std::nullopt,
            {homology_of("untwisted", LocalSystem::trivial(), "Z, Z + Z/2, 0"),
             novikov_of("novikov, class 0", ratios({"0"}), "b=(1,1,0) q=(0,1,0)"),
             novikov_of("novikov, class 1", ratios({"1"}), "b=(0,0,0) q=(0,0,0)"),
             novikov_of("novikov, class -7/4", ratios({"-7/4"}), "b=(0,0,0) q=(0,0,0)"),
             {"euler", Expectation::Kind::Euler, LocalSystem::trivial(), "0"}}};
}

/// Genus-2 surface. Each index-1 point has a + line with period 0 and a - line
/// with period loop_sign * e_i. The index-2 lines to p1_i close the
/// loop e_sigma(i), sigma = (1 2)(3 4), on the - line for odd i and on the
/// + line for even i, which makes the composite boundary vanish.
inline MorseDatum genus2_datum(int loop_sign = 1)
{
    MorseDatum d;
    d.name = "genus2";
    d.dimension = 2;
    d.basis_forms = {"eta1", "eta2", "eta3", "eta4"};
    d.points = {{"p0", 0}, {"p1_1", 1}, {"p1_2", 1}, {"p1_3", 1}, {"p1_4", 1}, {"p2", 2}};
    const std::vector<Rational> zero(4, Rational(0));
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string id = "p1_" + std::to_string(i + 1);
        d.flows.push_back(flow(id, "p0", 1, zero));
        d.flows.push_back(flow(id, "p0", -1, unit_vector(4, i, loop_sign)));
    }
    const std::size_t sigma[] = {1, 0, 3, 2};
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string id = "p1_" + std::to_string(i + 1);
        const auto loop = unit_vector(4, sigma[i], loop_sign);
        if (i % 2 == 0) {
            d.flows.push_back(flow("p2", id, 1, zero));
            d.flows.push_back(flow("p2", id, -1, loop));
        } else {
            d.flows.push_back(flow("p2", id, 1, loop));
            d.flows.push_back(flow("p2", id, -1, zero));
        }
    }
    return d;
}

inline CatalogEntry genus2()
{
    CatalogEntry e{"genus2",
                   "closed orientable surface of genus two with a perfect Morse function",
                   genus2_datum(),
                   std::nullopt,
                   std::nullopt,
                   {homology_of("untwisted", LocalSystem::trivial(), "Z, Z^4, Z"),
                    cohomology_of("exp, class 0", LocalSystem::exp(ratios({"0", "0", "0", "0"})), "R, R^4, R")}};
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string name = "eta" + std::to_string(i + 1);
        e.expectations.push_back(cohomology_of("exp, " + name, LocalSystem::exp(unit_vector(4, i)), "0, R^2, 0"));
    }
    e.expectations.push_back(
        cohomology_of("exp, class (1,-2,1/3,0)", LocalSystem::exp(ratios({"1", "-2", "1/3", "0"})), "0, R^2, 0"));
    e.expectations.push_back(novikov_of("novikov, class 0", ratios({"0", "0", "0", "0"}), "b=(1,4,1) q=(0,0,0)"));
    e.expectations.push_back(novikov_of("novikov, eta1", unit_vector(4, 0), "b=(0,2,0) q=(0,0,0)"));
    e.expectations.push_back(hspace_of("h-space, exp eta1", LocalSystem::exp(unit_vector(4, 0)), true));
    e.expectations.push_back(
        {"parallel form, eta1", Expectation::Kind::ParallelForm, LocalSystem::exp(unit_vector(4, 0)), "triggered"});
    e.expectations.push_back({"euler", Expectation::Kind::Euler, LocalSystem::trivial(), "-2"});
    return e;
}

/// Six-vertex triangulation of the projective plane: the cone on the pentagon
/// 1..5 from vertex 0, with the five outer triangles glued antipodally.
inline FacetList rp2_six_vertex_facets()
{
    return {6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}, {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}}};
}

inline FacetList tetrahedron_boundary_facets() { return {4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}}; }

inline CatalogEntry triangulated(std::string name, std::string description, FacetList facets, std::string homology,
                                 std::string euler)
{
    const RegularCW cw = from_simplicial(facets, name);
    return {name,
            std::move(description),
            cw_to_morse(cw),
            cw,
            std::move(facets),
            {homology_of("untwisted", LocalSystem::trivial(), std::move(homology)),
             {"euler", Expectation::Kind::Euler, LocalSystem::trivial(), std::move(euler)}}};
}

inline CatalogEntry rp2_triangulated()
{
    return triangulated("rp2-triangulated", "minimal six-vertex triangulation of the projective plane",
                        rp2_six_vertex_facets(), "Z, Z/2, 0", "1");
}

inline CatalogEntry s2_triangulated()
{
    return triangulated("s2-triangulated", "boundary of the tetrahedron", tetrahedron_boundary_facets(), "Z, 0, Z",
                        "2");
}

} // namespace catalog

/// Names accepted by get_example; "rpn(N)" takes any N from 1 to 64.
inline std::vector<std::string> example_names()
{
    return {"circle-std", "circle-regular", "rp2",   "rp2-lift",         "rpn(N)",
            "torus",      "klein",          "genus2", "rp2-triangulated", "s2-triangulated"};
}

inline CatalogEntry get_example(const std::string& name)
{
    if (name == "circle-std")
        return catalog::circle_std();
    if (name == "circle-regular")
        return catalog::circle_regular();
    if (name == "rp2")
        return catalog::rp2();
    if (name == "rp2-lift")
        return catalog::rp2_lift();
    if (name == "torus")
        return catalog::torus();
    if (name == "klein")
        return catalog::klein();
    if (name == "genus2")
        return catalog::genus2();
    if (name == "rp2-triangulated")
        return catalog::rp2_triangulated();
    if (name == "s2-triangulated")
        return catalog::s2_triangulated();
    if (name.size() > 5 && name.rfind("rpn(", 0) == 0 && name.back() == ')') {
        const std::string digits = name.substr(4, name.size() - 5);
        if (!digits.empty() && digits.size() <= 2 && digits.find_first_not_of("0123456789") == std::string::npos)
            return catalog::rpn(std::stoul(digits));
    }
    throw UnknownExample(name);
}

/// Entries evaluated by run_all: every fixed example plus rpn(1..5).
inline std::vector<CatalogEntry> default_catalog()
{
    std::vector<CatalogEntry> out;
    for (const auto& name : example_names())
        if (name != "rpn(N)")
            out.push_back(get_example(name));
    for (std::size_t n = 1; n <= 5; ++n)
        out.push_back(catalog::rpn(n));
    return out;
}

struct ExpectationResult {
    std::string entry;
    std::string label;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Systems whose complexes must square to zero: every system named by an
/// expectation, plus the untwisted one.
inline std::vector<LocalSystem> declared_systems(const CatalogEntry& e)
{
    std::vector<LocalSystem> out{LocalSystem::trivial()};
    for (const auto& x : e.expectations)
        if (std::find(out.begin(), out.end(), x.system) == out.end())
            out.push_back(x.system);
    return out;
}

inline std::string evaluate(const CatalogEntry& e, const Expectation& x, const NovOptions& opts)
{
    switch (x.kind) {
    case Expectation::Kind::Homology: return summary_str(homology(build_complex(e.datum, x.system), opts));
    case Expectation::Kind::Cohomology: return summary_str(homology(build_cochain(e.datum, x.system), opts));
    case Expectation::Kind::Novikov:
        return catalog::novikov_str(novikov_numbers(e.datum, x.system.form_class, opts));
    case Expectation::Kind::LiftHomology:
        return summary_str(homology(build_complex(lift_cover(e.datum), x.system), opts));
    case Expectation::Kind::HSpace:
        return hspace_obstruction(e.datum, x.system, opts).triggered ? "triggered" : "not triggered";
    case Expectation::Kind::ParallelForm:
        return parallel_form_obstruction(e.datum, x.system.form_class).triggered ? "triggered" : "not triggered";
    case Expectation::Kind::Euler: return std::to_string(euler_cells(build_complex(e.datum, x.system)));
    }
    return "";
}

/// Checks d^2 = 0 for every declared system and evaluates every expectation.
/// Failures are reported, never thrown.
inline std::vector<ExpectationResult> run_entries(const std::vector<CatalogEntry>& entries, const NovOptions& opts = {})
{
    std::vector<ExpectationResult> out;
    for (const auto& e : entries) {
        for (const auto& sys : declared_systems(e)) {
            ExpectationResult r{e.name, "d^2 = 0, " + system_str(sys), "ok", "", false};
            try {
                const AnyComplex C = build_complex(e.datum, sys);
                auto v = validate_complex(C);
                if (!v)
                    v = validate_complex(dualize(C));
                r.actual = v ? "nonzero composite at degree " + std::to_string(v->degree) + ": " + v->entry : "ok";
            } catch (const std::exception& ex) {
                r.actual = ex.what();
            }
            r.pass = r.actual == r.expected;
            out.push_back(std::move(r));
        }
        for (const auto& x : e.expectations) {
            ExpectationResult r{e.name, x.label, x.expected, "", false};
            try {
                r.actual = evaluate(e, x, opts);
            } catch (const std::exception& ex) {
                r.actual = ex.what();
            }
            r.pass = r.actual == r.expected;
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline std::vector<ExpectationResult> run_all(const NovOptions& opts = {}) { return run_entries(default_catalog(), opts); }

} // namespace morsetwist

#endif
