#ifndef MORSETWIST_IO_HPP
#define MORSETWIST_IO_HPP

//! \file
//! \brief JSON encodings of Morse data and regular CW complexes, and report
//! rendering. Rationals travel as "p/q" strings; keys come out sorted, so
//! every emitted document is canonical.

#include "catalog.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace morsetwist {

using Json = nlohmann::json;

namespace io {

inline void allow_only(const Json& j, const std::string& where, std::initializer_list<const char*> keys)
{
    if (!j.is_object())
        throw ParseError(where + ": expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ParseError(where + ": unknown field '" + key + "'");
}

inline const Json& require(const Json& j, const std::string& where, const char* key)
{
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

inline std::string get_string(const Json& j, const std::string& where)
{
    if (!j.is_string())
        throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

inline long long get_integer(const Json& j, const std::string& where)
{
    if (!j.is_number_integer())
        throw ParseError(where + ": expected an integer");
    return j.get<long long>();
}

inline std::size_t get_count(const Json& j, const std::string& where)
{
    const long long n = get_integer(j, where);
    if (n < 0)
        throw ParseError(where + ": expected a nonnegative integer");
    return static_cast<std::size_t>(n);
}

inline Rational get_rational(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (!j.is_string())
        throw ParseError(where + ": expected a rational string such as \"-1/2\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline const Json& get_array(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw ParseError(where + ": expected an array");
    return j;
}

inline std::vector<std::string> get_strings(const Json& j, const std::string& where)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < get_array(j, where).size(); ++i)
        out.push_back(get_string(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<Rational> get_rationals(const Json& j, const std::string& where)
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < get_array(j, where).size(); ++i)
        out.push_back(get_rational(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::optional<int> get_unit_tag(const Json& j, const std::string& where)
{
    if (!j.contains("unit_tag"))
        return std::nullopt;
    const long long u = get_integer(j["unit_tag"], where + ".unit_tag");
    if (u != 1 && u != -1)
        throw ParseError(where + ".unit_tag: must be 1 or -1");
    return static_cast<int>(u);
}

inline int get_sign(const Json& j, const std::string& where)
{
    const long long s = get_integer(j, where);
    if (s != 1 && s != -1)
        throw ParseError(where + ": must be 1 or -1");
    return static_cast<int>(s);
}

inline Json rationals_json(const std::vector<Rational>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs)
        out.push_back(to_string(x));
    return out;
}

} // namespace io

inline MorseDatum morse_from_json(const Json& j)
{
    using namespace io;
    allow_only(j, "datum", {"name", "dimension", "basis_forms", "points", "flows", "deck_group"});
    MorseDatum d;
    d.name = get_string(require(j, "datum", "name"), "name");
    d.dimension = get_count(require(j, "datum", "dimension"), "dimension");
    if (j.contains("basis_forms"))
        d.basis_forms = get_strings(j["basis_forms"], "basis_forms");
    const Json& points = get_array(require(j, "datum", "points"), "points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string where = "points[" + std::to_string(i) + "]";
        allow_only(points[i], where, {"id", "index"});
        d.points.push_back({get_string(require(points[i], where, "id"), where + ".id"),
                            get_count(require(points[i], where, "index"), where + ".index")});
    }
    const Json& flows = get_array(require(j, "datum", "flows"), "flows");
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const std::string where = "flows[" + std::to_string(i) + "]";
        const Json& f = flows[i];
        allow_only(f, where, {"from", "to", "sign", "periods", "unit_tag", "deck_tag"});
        FlowLine line;
        line.from = get_string(require(f, where, "from"), where + ".from");
        line.to = get_string(require(f, where, "to"), where + ".to");
        line.sign = get_sign(require(f, where, "sign"), where + ".sign");
        if (f.contains("periods"))
            line.periods = get_rationals(f["periods"], where + ".periods");
        line.unit_tag = get_unit_tag(f, where);
        if (f.contains("deck_tag"))
            line.deck_tag = get_string(f["deck_tag"], where + ".deck_tag");
        d.flows.push_back(std::move(line));
    }
    if (j.contains("deck_group")) {
        const Json& g = j["deck_group"];
        allow_only(g, "deck_group", {"elements", "table"});
        DeckGroup group;
        group.elements = get_strings(require(g, "deck_group", "elements"), "deck_group.elements");
        const Json& table = get_array(require(g, "deck_group", "table"), "deck_group.table");
        for (std::size_t i = 0; i < table.size(); ++i)
            group.table.push_back(get_strings(table[i], "deck_group.table[" + std::to_string(i) + "]"));
        d.deck_group = std::move(group);
    }
    return d;
}

inline Json to_json(const MorseDatum& d)
{
    Json j;
    j["name"] = d.name;
    j["dimension"] = d.dimension;
    j["basis_forms"] = d.basis_forms;
    j["points"] = Json::array();
    for (const auto& p : d.points)
        j["points"].push_back({{"id", p.id}, {"index", p.index}});
    j["flows"] = Json::array();
    for (const auto& f : d.flows) {
        Json line{{"from", f.from}, {"to", f.to}, {"sign", f.sign}, {"periods", io::rationals_json(f.periods)}};
        if (f.unit_tag)
            line["unit_tag"] = *f.unit_tag;
        if (f.deck_tag)
            line["deck_tag"] = *f.deck_tag;
        j["flows"].push_back(std::move(line));
    }
    if (d.deck_group)
        j["deck_group"] = {{"elements", d.deck_group->elements}, {"table", d.deck_group->table}};
    return j;
}

inline RegularCW cw_from_json(const Json& j)
{
    using namespace io;
    allow_only(j, "complex", {"name", "dimension", "basis_forms", "cells", "incidences"});
    RegularCW cw;
    cw.name = get_string(require(j, "complex", "name"), "name");
    cw.dimension = get_count(require(j, "complex", "dimension"), "dimension");
    if (j.contains("basis_forms"))
        cw.basis_forms = get_strings(j["basis_forms"], "basis_forms");
    const Json& cells = get_array(require(j, "complex", "cells"), "cells");
    for (std::size_t k = 0; k < cells.size(); ++k)
        cw.cells.push_back(get_strings(cells[k], "cells[" + std::to_string(k) + "]"));
    const Json& incs = get_array(require(j, "complex", "incidences"), "incidences");
    for (std::size_t i = 0; i < incs.size(); ++i) {
        const std::string where = "incidences[" + std::to_string(i) + "]";
        const Json& r = incs[i];
        allow_only(r, where, {"cell", "face", "incidence", "periods", "unit_tag"});
        Incidence inc;
        inc.upper = get_string(require(r, where, "cell"), where + ".cell");
        inc.lower = get_string(require(r, where, "face"), where + ".face");
        inc.value = static_cast<int>(get_integer(require(r, where, "incidence"), where + ".incidence"));
        if (r.contains("periods"))
            inc.periods = get_rationals(r["periods"], where + ".periods");
        inc.unit_tag = get_unit_tag(r, where);
        cw.incidences.push_back(std::move(inc));
    }
    return cw;
}

inline Json to_json(const RegularCW& cw)
{
    Json j;
    j["name"] = cw.name;
    j["dimension"] = cw.dimension;
    j["basis_forms"] = cw.basis_forms;
    j["cells"] = cw.cells;
    j["incidences"] = Json::array();
    for (const auto& inc : cw.incidences) {
        Json r{{"cell", inc.upper},
               {"face", inc.lower},
               {"incidence", inc.value},
               {"periods", io::rationals_json(inc.periods)}};
        if (inc.unit_tag)
            r["unit_tag"] = *inc.unit_tag;
        j["incidences"].push_back(std::move(r));
    }
    return j;
}

/// Canonical text form of a JSON document: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

using InputDocument = std::variant<MorseDatum, RegularCW, FacetList>;

/// A JSON object with "cells" is a regular CW complex, any other JSON object a
/// Morse datum; anything else is read as a facet list.
inline InputDocument parse_document(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const Json j = parse_json(text);
        if (j.contains("cells"))
            return cw_from_json(j);
        return morse_from_json(j);
    }
    return parse_facets(text);
}

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw IoError("cannot write '" + path + "'");
}

/// Any input as a Morse datum: CW complexes contribute one point per cell.
inline MorseDatum as_morse(const InputDocument& doc)
{
    if (const auto* d = std::get_if<MorseDatum>(&doc))
        return *d;
    if (const auto* cw = std::get_if<RegularCW>(&doc))
        return cw_to_morse(*cw);
    return cw_to_morse(from_simplicial(std::get<FacetList>(doc)));
}

// ---- reports ----

inline Json summary_json(const HomologySummary& s)
{
    Json j;
    j["regime"] = regime_name(s.regime);
    j["kind"] = s.cohomology ? "cohomology" : "homology";
    j["complete"] = s.complete();
    j["degrees"] = Json::array();
    j["betti"] = Json::array();
    j["torsion"] = Json::array();
    j["groups"] = Json::array();
    for (std::size_t k = 0; k < s.degrees.size(); ++k) {
        j["degrees"].push_back(k);
        j["betti"].push_back(s.degrees[k].betti);
        Json t = Json::array();
        for (const auto& n : s.degrees[k].torsion)
            t.push_back(to_string(n));
        j["torsion"].push_back(std::move(t));
        j["groups"].push_back(group_str(s.degrees[k], s.regime));
    }
    return j;
}

inline std::string summary_text(const std::string& name, const LocalSystem& sys, const HomologySummary& s)
{
    std::ostringstream out;
    out << name << ": " << (s.cohomology ? "cohomology" : "homology") << " over " << regime_name(s.regime)
        << ", system " << system_str(sys) << "\n";
    for (std::size_t k = 0; k < s.degrees.size(); ++k)
        out << (s.cohomology ? "H^" : "H_") << k << "  " << group_str(s.degrees[k], s.regime) << "\n";
    if (!s.complete())
        out << "warning: some reductions are stuck; '?' marks unknown invariants\n";
    return out.str();
}

inline Json novikov_json(const NovikovNumbers& n, const std::optional<std::vector<std::size_t>>& zeros,
                         const std::optional<InequalityReport>& report)
{
    Json j;
    j["class"] = io::rationals_json(n.class_vector);
    j["degrees"] = Json::array();
    j["b"] = Json::array();
    j["q"] = Json::array();
    j["status"] = Json::array();
    for (std::size_t k = 0; k < n.degrees.size(); ++k) {
        j["degrees"].push_back(k);
        j["b"].push_back(n.degrees[k].b);
        j["q"].push_back(n.degrees[k].q);
        j["status"].push_back(n.degrees[k].complete ? "complete" : "stuck");
    }
    if (zeros)
        j["zeros"] = *zeros;
    if (report) {
        j["slack"] = report->slack;
        j["pass"] = report->pass;
    }
    return j;
}

inline std::string novikov_text(const std::string& name, const NovikovNumbers& n,
                                const std::optional<std::vector<std::size_t>>& zeros,
                                const std::optional<InequalityReport>& report)
{
    std::ostringstream out;
    out << name << ": Novikov numbers, class " << system_str(LocalSystem::nov(n.class_vector)).substr(3) << "\n";
    out << "k  b  q" << (zeros ? "  zeros  slack" : "") << "\n";
    for (std::size_t k = 0; k < n.degrees.size(); ++k) {
        std::string q = std::to_string(n.degrees[k].q) + (n.degrees[k].complete ? "" : "+");
        out << k << "  " << n.degrees[k].b << "  " << q;
        if (zeros) {
            std::string c = std::to_string((*zeros)[k]);
            out << std::string(3 - std::min<std::size_t>(q.size(), 2), ' ') << c;
            if (report)
                out << std::string(7 - std::min<std::size_t>(c.size(), 6), ' ') << report->slack[k];
        }
        out << "\n";
    }
    if (report)
        out << "inequalities: " << (report->pass ? "pass" : "FAIL") << "\n";
    return out.str();
}

inline Json verdict_json(const ObstructionVerdict& v, const std::string& system)
{
    return {{"kind", verdict_kind_name(v.kind)}, {"triggered", v.triggered}, {"witness", v.witness}, {"system", system}};
}

} // namespace morsetwist

#endif
