#ifndef MORSETWIST_CW_HPP
#define MORSETWIST_CW_HPP

//! \file
//! \brief Regular CW complexes: validation, Steenrod's twisted boundary,
//! simplicial input, and conversion to Morse data.

#include "morse.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsetwist {

class NotRegular : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MissingHolonomy : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MalformedFacets : public ParseError {
public:
    using ParseError::ParseError;
};

struct Incidence {
    std::string upper; ///< k-cell
    std::string lower; ///< (k-1)-cell
    int value = 1;
    std::vector<Rational> periods;
    std::optional<int> unit_tag;

    friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct RegularCW {
    std::string name;
    std::size_t dimension = 0;
    std::vector<std::string> basis_forms;
    std::vector<std::vector<std::string>> cells; ///< cells[k] = k-cells in order
    std::vector<Incidence> incidences;

    friend bool operator==(const RegularCW&, const RegularCW&) = default;
};

struct RegularityViolation {
    std::string upper;
    std::string lower;
    std::string message;

    std::string str() const
    {
        if (upper.empty())
            return message;
        return message + " (" + upper + ", " + lower + ")";
    }
};

/// Checks the regular-complex axioms on the combinatorial data: incidences
/// are +-1 with one record per incident pair, each 1-cell has two boundary
/// vertices, every interval e^k < e^(k+2) has exactly two middle cells, and
/// the signed incidence matrices compose to zero.
inline std::optional<RegularityViolation> validate_regular(const RegularCW& cw)
{
    std::map<std::string, std::size_t> degree;
    if (cw.cells.size() != cw.dimension + 1)
        return RegularityViolation{"", "", "cell lists must cover degrees 0.." + std::to_string(cw.dimension)};
    for (std::size_t k = 0; k < cw.cells.size(); ++k)
        for (const auto& c : cw.cells[k])
            if (!degree.emplace(c, k).second)
                return RegularityViolation{c, c, "cell label repeats"};

    std::map<std::string, std::map<std::string, int>> faces;
    for (const auto& inc : cw.incidences) {
        auto up = degree.find(inc.upper), low = degree.find(inc.lower);
        if (up == degree.end() || low == degree.end())
            return RegularityViolation{inc.upper, inc.lower, "incidence names an unknown cell"};
        if (up->second != low->second + 1)
            return RegularityViolation{inc.upper, inc.lower, "incidence must join consecutive degrees"};
        if (inc.value != 1 && inc.value != -1)
            return RegularityViolation{inc.upper, inc.lower,
                                       "incidence number " + std::to_string(inc.value) + " is not +-1"};
        if (inc.periods.size() != cw.basis_forms.size())
            return RegularityViolation{inc.upper, inc.lower, "period vector does not match the basis forms"};
        if (inc.unit_tag && *inc.unit_tag != 1 && *inc.unit_tag != -1)
            return RegularityViolation{inc.upper, inc.lower, "unit tag outside {+1,-1}"};
        if (!faces[inc.upper].emplace(inc.lower, inc.value).second)
            return RegularityViolation{inc.upper, inc.lower, "more than one incidence record for the pair"};
    }

    if (cw.dimension >= 1)
        for (const auto& e : cw.cells[1]) {
            const auto& f = faces[e];
            if (f.size() != 2)
                return RegularityViolation{e, f.empty() ? "" : f.begin()->first,
                                           "1-cell must have exactly two boundary vertices"};
            if (f.begin()->second + std::next(f.begin())->second != 0)
                return RegularityViolation{e, f.begin()->first, "1-cell endpoints must carry opposite incidences"};
        }

    for (std::size_t k = 2; k <= cw.dimension; ++k)
        for (const auto& top : cw.cells[k]) {
            std::map<std::string, std::vector<std::string>> middles;
            std::map<std::string, int> composite;
            for (const auto& [mid, a] : faces[top])
                for (const auto& [bottom, b] : faces[mid]) {
                    middles[bottom].push_back(mid);
                    composite[bottom] += a * b;
                }
            for (const auto& [bottom, via] : middles) {
                if (via.size() != 2)
                    return RegularityViolation{top, bottom,
                                               "interval has " + std::to_string(via.size()) +
                                                   " intermediate cells instead of two"};
                if (composite[bottom] != 0)
                    return RegularityViolation{top, bottom, "signed incidences do not compose to zero"};
            }
        }
    return std::nullopt;
}

inline void require_regular(const RegularCW& cw)
{
    if (auto v = validate_regular(cw))
        throw NotRegular("NotRegular: " + v->str());
}

/// Steenrod's boundary with local coefficients: entry (e^(k-1), e^k) is the
/// incidence number times the transport along the incidence.
inline AnyComplex steenrod_boundary(const RegularCW& cw, const LocalSystem& sys)
{
    require_regular(cw);
    if (sys.uses_class() && sys.form_class.size() != cw.basis_forms.size())
        throw DatumError("class vector does not match the basis forms");
    for (const auto& inc : cw.incidences)
        if (sys.flavor == LocalSystem::Flavor::UnitRep && !inc.unit_tag)
            throw MissingHolonomy("MissingHolonomy: incidence (" + inc.upper + ", " + inc.lower + ") has no unit tag");

    std::map<std::string, std::pair<std::size_t, std::size_t>> where;
    for (std::size_t k = 0; k < cw.cells.size(); ++k)
        for (std::size_t i = 0; i < cw.cells[k].size(); ++i)
            where[cw.cells[k][i]] = {k, i};

    auto assemble = [&](auto zero, auto&& weight) {
        using R = decltype(zero);
        std::vector<Matrix<R>> links;
        for (std::size_t k = 1; k <= cw.dimension; ++k)
            links.emplace_back(cw.cells[k - 1].size(), cw.cells[k].size());
        for (const auto& inc : cw.incidences) {
            const auto [k, col] = where.at(inc.upper);
            const std::size_t row = where.at(inc.lower).second;
            R w = weight(inc);
            links[k - 1](row, col) += inc.value > 0 ? w : R() - w;
        }
        return AnyComplex(ChainComplex<R>(cw.cells, std::move(links)));
    };

    switch (sys.flavor) {
    case LocalSystem::Flavor::Exp:
        return assemble(ExpSum(), [&](const Incidence& inc) {
            return ExpSum::monomial(dot(sys.form_class, inc.periods));
        });
    case LocalSystem::Flavor::Nov:
        return assemble(NovElem(), [&](const Incidence& inc) {
            return NovElem::monomial(-dot(sys.form_class, inc.periods));
        });
    case LocalSystem::Flavor::UnitRep:
        return assemble(Integer(), [](const Incidence& inc) { return Integer(*inc.unit_tag); });
    default:
        return assemble(Integer(), [](const Incidence&) { return Integer(1); });
    }
}

/// One critical point per cell and one flow line per incidence.
inline MorseDatum cw_to_morse(const RegularCW& cw)
{
    require_regular(cw);
    MorseDatum d;
    d.name = cw.name;
    d.dimension = cw.dimension;
    d.basis_forms = cw.basis_forms;
    for (std::size_t k = 0; k < cw.cells.size(); ++k)
        for (const auto& c : cw.cells[k])
            d.points.push_back({c, k});
    for (const auto& inc : cw.incidences)
        d.flows.push_back({inc.upper, inc.lower, inc.value, inc.periods, inc.unit_tag, std::nullopt});
    return d;
}

struct FacetList {
    std::size_t vertex_count = 0;
    std::vector<std::vector<std::size_t>> facets;

    friend bool operator==(const FacetList&, const FacetList&) = default;
};

/// "vertices N" followed by one facet per line; '#' starts a comment.
inline FacetList parse_facets(const std::string& text)
{
    FacetList out;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        std::istringstream words(line);
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!header) {
            std::string keyword;
            long long n = -1;
            std::string rest;
            const bool ok = static_cast<bool>(words >> keyword >> n) && !(words >> rest);
            if (!ok || keyword != "vertices" || n < 0)
                throw MalformedFacets("MalformedFacets: " + where + "expected 'vertices N'");
            out.vertex_count = static_cast<std::size_t>(n);
            header = true;
            continue;
        }
        std::vector<std::size_t> facet;
        std::string word;
        while (words >> word) {
            if (word.find_first_not_of("0123456789") != std::string::npos)
                throw MalformedFacets("MalformedFacets: " + where + "'" + word + "' is not a vertex index");
            facet.push_back(static_cast<std::size_t>(std::stoull(word)));
        }
        out.facets.push_back(std::move(facet));
    }
    if (!header)
        throw MalformedFacets("MalformedFacets: missing 'vertices N' header");
    return out;
}

inline std::string render_facets(const FacetList& f)
{
    std::string out = "vertices " + std::to_string(f.vertex_count) + "\n";
    for (const auto& facet : f.facets) {
        for (std::size_t i = 0; i < facet.size(); ++i)
            out += (i ? " " : "") + std::to_string(facet[i]);
        out += "\n";
    }
    return out;
}

inline std::string simplex_label(const std::vector<std::size_t>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "_" : "") + std::to_string(s[i]);
    return out;
}

/// Closes the facets under faces. A k-simplex v0 < ... < vk meets the face
/// omitting vi with incidence (-1)^i.
inline RegularCW from_simplicial(const FacetList& f, const std::string& name = "simplicial")
{
    if (f.facets.empty())
        throw MalformedFacets("MalformedFacets: no facets");
    std::set<std::vector<std::size_t>> seen_facets;
    std::vector<std::set<std::vector<std::size_t>>> simplices;
    for (const auto& raw : f.facets) {
        if (raw.empty())
            throw MalformedFacets("MalformedFacets: empty facet");
        std::vector<std::size_t> s = raw;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw MalformedFacets("MalformedFacets: facet repeats a vertex");
        if (s.back() >= f.vertex_count)
            throw MalformedFacets("MalformedFacets: vertex index " + std::to_string(s.back()) + " out of range");
        if (!seen_facets.insert(s).second)
            throw MalformedFacets("MalformedFacets: duplicate facet " + simplex_label(s));
        if (s.size() > 30)
            throw MalformedFacets("MalformedFacets: facet too large");
        if (simplices.size() < s.size())
            simplices.resize(s.size());
        for (unsigned long mask = 1; mask < (1UL << s.size()); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (1UL << i))
                    face.push_back(s[i]);
            simplices[face.size() - 1].insert(std::move(face));
        }
    }

    RegularCW cw;
    cw.name = name;
    cw.dimension = simplices.size() - 1;
    for (const auto& layer : simplices) {
        cw.cells.emplace_back();
        for (const auto& s : layer)
            cw.cells.back().push_back(simplex_label(s));
    }
    for (std::size_t k = 1; k < simplices.size(); ++k)
        for (const auto& s : simplices[k])
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<std::size_t> face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                cw.incidences.push_back({simplex_label(s), simplex_label(face), i % 2 == 0 ? 1 : -1, {}, std::nullopt});
            }
    return cw;
}

} // namespace morsetwist

#endif
