// morsetwist: twisted Morse homology, Lichnerowicz cohomology and Novikov
// numbers from combinatorial Morse data.

#include <morsetwist/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mt = morsetwist;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_math = 1;
constexpr int exit_input = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string file;
    std::string example;
};

struct SystemOptions {
    std::string system;
    std::string cls;
    bool class_given = false;
};

struct OutputOptions {
    std::string format = "text";
    std::string depth = std::to_string(mt::default_nov_depth);
    std::size_t max_iter = mt::default_nov_max_iter;
};

void add_source(CLI::App* cmd, Source& src)
{
    cmd->add_option("file", src.file, "Morse datum, regular CW complex (JSON) or facet list");
    cmd->add_option("--example", src.example, "built-in example name");
}

void add_output(CLI::App* cmd, OutputOptions& out, bool nov)
{
    cmd->add_option("--format", out.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    if (nov) {
        cmd->add_option("--depth", out.depth, "Novikov truncation depth (positive rational)");
        cmd->add_option("--max-iter", out.max_iter, "reduction step budget");
    }
}

mt::MorseDatum load(const Source& src)
{
    if (src.file.empty() == src.example.empty())
        throw UsageError("give exactly one of FILE or --example NAME");
    if (!src.example.empty())
        return mt::get_example(src.example).datum;
    const auto doc = mt::parse_document(mt::read_file(src.file));
    if (const auto* facets = std::get_if<mt::FacetList>(&doc))
        return mt::cw_to_morse(mt::from_simplicial(*facets, std::filesystem::path(src.file).stem().string()));
    return mt::as_morse(doc);
}

std::vector<mt::Rational> parse_class(const std::string& text)
{
    std::vector<mt::Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(mt::parse_rational(item));
    if (!text.empty() && text.back() == ',')
        throw mt::ParseError("trailing comma in class vector");
    return out;
}

std::vector<std::size_t> parse_counts(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = mt::detail::trim(item);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw mt::ParseError("'" + item + "' is not a count");
        out.push_back(std::stoul(item));
    }
    return out;
}

std::vector<mt::Rational> class_for(const mt::MorseDatum& d, const SystemOptions& so)
{
    if (!so.class_given) {
        if (!d.basis_forms.empty())
            throw UsageError("--class is required (" + std::to_string(d.basis_forms.size()) + " basis forms)");
        return {};
    }
    auto cls = parse_class(so.cls);
    if (cls.size() == 1 && cls[0] == 0) // "0" names the zero class in any basis
        cls.assign(d.basis_forms.size(), mt::Rational(0));
    if (cls.size() != d.basis_forms.size())
        throw UsageError("--class has " + std::to_string(cls.size()) + " entries but the datum has " +
                         std::to_string(d.basis_forms.size()) + " basis forms");
    return cls;
}

mt::LocalSystem system_for(const mt::MorseDatum& d, const SystemOptions& so)
{
    if (so.system == "trivial")
        return mt::LocalSystem::trivial();
    if (so.system == "unit-rep")
        return mt::LocalSystem::unit_rep();
    if (so.system == "exp")
        return mt::LocalSystem::exp(class_for(d, so));
    if (so.system == "nov")
        return mt::LocalSystem::nov(class_for(d, so));
    throw UsageError("unknown system '" + so.system + "'");
}

mt::NovOptions nov_options(const OutputOptions& out)
{
    mt::NovOptions o;
    o.depth = mt::parse_rational(out.depth);
    if (o.depth <= 0)
        throw UsageError("--depth must be positive");
    o.max_iter = out.max_iter;
    return o;
}

void print_json(const mt::Json& j) { std::cout << mt::dump(j); }

int cmd_validate(const std::string& file)
{
    const auto doc = mt::parse_document(mt::read_file(file));
    bool ok = true;
    auto report = [&](const std::string& what, const std::optional<std::string>& failure) {
        std::cout << what << ": " << (failure ? "FAIL, " + *failure : "ok") << "\n";
        ok = ok && !failure;
    };
    auto check_complex = [&](const mt::AnyComplex& C, const std::string& what) {
        std::optional<std::string> failure;
        if (auto v = mt::validate_complex(C))
            failure = "composite d_" + std::to_string(v->degree) + " d_" + std::to_string(v->degree + 1) +
                      " is nonzero at (" + std::to_string(v->row) + ", " + std::to_string(v->col) + "): " + v->entry;
        report(what, failure);
    };

    mt::MorseDatum d;
    if (const auto* cw = std::get_if<mt::RegularCW>(&doc)) {
        auto v = mt::validate_regular(*cw);
        report("regular CW structure", v ? std::optional<std::string>(v->str()) : std::nullopt);
        if (v) {
            std::cout << "invalid\n";
            return exit_math;
        }
        check_complex(mt::steenrod_boundary(*cw, mt::LocalSystem::trivial()), "cellular d^2 = 0");
        d = mt::cw_to_morse(*cw);
    } else if (const auto* f = std::get_if<mt::FacetList>(&doc)) {
        const auto cw = mt::from_simplicial(*f);
        auto v = mt::validate_regular(cw);
        report("regular CW structure", v ? std::optional<std::string>(v->str()) : std::nullopt);
        d = mt::cw_to_morse(cw);
    } else {
        d = std::get<mt::MorseDatum>(doc);
    }

    try {
        d.validate();
        report("datum structure", std::nullopt);
    } catch (const mt::DatumError& e) {
        report("datum structure", std::string(e.what()));
        std::cout << "invalid\n";
        return exit_math;
    }

    std::vector<mt::LocalSystem> systems{mt::LocalSystem::trivial()};
    const bool tagged = !d.flows.empty() && std::all_of(d.flows.begin(), d.flows.end(),
                                                        [](const mt::FlowLine& f) { return f.unit_tag.has_value(); });
    if (tagged)
        systems.push_back(mt::LocalSystem::unit_rep());
    for (std::size_t i = 0; i < d.basis_forms.size(); ++i) {
        std::vector<mt::Rational> e(d.basis_forms.size(), mt::Rational(0));
        e[i] = 1;
        systems.push_back(mt::LocalSystem::exp(e));
    }
    for (const auto& sys : systems)
        check_complex(mt::build_complex(d, sys), "d^2 = 0 (" + mt::system_str(sys) + ")");
    if (d.deck_group) {
        try {
            check_complex(mt::build_complex(mt::lift_cover(d), mt::LocalSystem::trivial()), "d^2 = 0 (cover)");
        } catch (const mt::DatumError& e) {
            report("cover", std::string(e.what()));
        }
    }
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? exit_ok : exit_math;
}

int cmd_homology(const Source& src, const SystemOptions& so, const OutputOptions& out, bool cochain)
{
    const auto d = load(src);
    const auto sys = system_for(d, so);
    const auto C = cochain ? mt::build_cochain(d, sys) : mt::build_complex(d, sys);
    const auto s = mt::homology(C, nov_options(out));
    if (out.format == "json") {
        auto j = mt::summary_json(s);
        j["name"] = d.name;
        j["system"] = mt::system_str(sys);
        print_json(j);
    } else {
        std::cout << mt::summary_text(d.name, sys, s);
    }
    return s.complete() ? exit_ok : exit_math;
}

int cmd_novikov(const Source& src, const SystemOptions& so, const std::string& zeros_text, const OutputOptions& out)
{
    const auto d = load(src);
    const auto cls = class_for(d, so);
    const auto n = mt::novikov_numbers(d, cls, nov_options(out));
    std::optional<std::vector<std::size_t>> zeros;
    std::optional<mt::InequalityReport> report;
    if (!zeros_text.empty()) {
        zeros = parse_counts(zeros_text);
        if (zeros->size() != n.degrees.size())
            throw UsageError("--zeros needs " + std::to_string(n.degrees.size()) + " counts");
        if (n.complete())
            report = mt::check_inequalities(*zeros, n);
    }
    if (out.format == "json") {
        auto j = mt::novikov_json(n, zeros, report);
        j["name"] = d.name;
        print_json(j);
    } else {
        std::cout << mt::novikov_text(d.name, n, zeros, report);
        if (zeros && !report)
            std::cout << "inequalities: indeterminate (stuck reduction)\n";
    }
    if (!n.complete())
        return exit_math;
    return report && !report->pass ? exit_math : exit_ok;
}

int cmd_euler(const Source& src, SystemOptions so, const OutputOptions& out)
{
    const auto d = load(src);
    if (so.system.empty())
        so.system = "trivial";
    const auto sys = system_for(d, so);
    const auto C = mt::build_complex(d, sys);
    const long cells = mt::euler_cells(C);
    const auto s = mt::homology(C, nov_options(out));
    std::optional<long> from_homology;
    if (s.complete())
        from_homology = mt::euler_homology(s);
    if (out.format == "json") {
        mt::Json j{{"name", d.name}, {"system", mt::system_str(sys)}, {"cells", cells}};
        j["homology"] = from_homology ? mt::Json(*from_homology) : mt::Json(nullptr);
        print_json(j);
    } else {
        std::cout << d.name << ": Euler number, system " << mt::system_str(sys) << "\n";
        std::cout << "cells     " << cells << "\n";
        std::cout << "homology  " << (from_homology ? std::to_string(*from_homology) : "indeterminate") << "\n";
    }
    return from_homology ? exit_ok : exit_math;
}

int cmd_obstructions(const Source& src, const SystemOptions& so, const OutputOptions& out)
{
    const auto d = load(src);
    const auto sys = system_for(d, so);
    const auto hspace = mt::hspace_obstruction(d, sys, nov_options(out));
    std::optional<mt::ObstructionVerdict> parallel;
    std::string skipped;
    if (!sys.uses_class())
        skipped = "needs an exp or nov class";
    else if (mt::is_zero_class(sys.form_class))
        skipped = "needs a nonzero class";
    else
        parallel = mt::parallel_form_obstruction(d, sys.form_class);

    if (out.format == "json") {
        mt::Json j{{"name", d.name}, {"system", mt::system_str(sys)}};
        j["verdicts"] = mt::Json::array({mt::verdict_json(hspace, mt::system_str(sys))});
        if (parallel)
            j["verdicts"].push_back(
                mt::verdict_json(*parallel, mt::system_str(mt::LocalSystem::exp(sys.form_class))));
        print_json(j);
        return exit_ok;
    }
    auto line = [](const mt::ObstructionVerdict& v) {
        return mt::verdict_kind_name(v.kind) + ": " + (v.triggered ? "triggered (" + v.witness + ")" : "not triggered");
    };
    std::cout << d.name << ": obstructions, system " << mt::system_str(sys) << "\n";
    std::cout << line(hspace) << "\n";
    if (parallel)
        std::cout << line(*parallel) << "\n";
    else
        std::cout << "parallel-form: skipped (" << skipped << ")\n";
    return exit_ok;
}

int cmd_from_triangulation(const std::string& file, const std::string& output)
{
    const auto facets = mt::parse_facets(mt::read_file(file));
    const auto cw = mt::from_simplicial(facets, std::filesystem::path(file).stem().string());
    if (auto v = mt::validate_regular(cw)) {
        std::cerr << "not a regular CW complex: " << v->str() << "\n";
        return exit_math;
    }
    const std::string json = mt::dump(mt::to_json(cw));
    if (output.empty()) {
        std::cout << json;
        return exit_ok;
    }
    mt::write_file(output, json);
    std::cout << "regular CW complex " << cw.name << ": cells (";
    long chi = 0;
    for (std::size_t k = 0; k < cw.cells.size(); ++k) {
        std::cout << (k ? ", " : "") << cw.cells[k].size();
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(cw.cells[k].size());
    }
    std::cout << "), euler " << chi << "\n";
    std::cout << "wrote " << output << "\n";
    return exit_ok;
}

int cmd_example_list()
{
    for (const auto& name : mt::example_names()) {
        const std::string description =
            name == "rpn(N)" ? "real projective space of dimension N, one critical point per index"
                             : mt::get_example(name).description;
        std::cout << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ') << description << "\n";
    }
    return exit_ok;
}

int cmd_example_show(const std::string& name, bool facets)
{
    const auto e = mt::get_example(name);
    if (facets) {
        if (!e.facets)
            throw UsageError("example '" + name + "' has no facet list");
        std::cout << mt::render_facets(*e.facets);
        return exit_ok;
    }
    std::cout << mt::dump(mt::to_json(e.datum));
    return exit_ok;
}

int cmd_example_run(const std::string& name, const OutputOptions& out)
{
    const auto entries = name.empty() ? mt::default_catalog() : std::vector<mt::CatalogEntry>{mt::get_example(name)};
    const auto results = mt::run_entries(entries, nov_options(out));
    std::size_t passed = 0;
    for (const auto& r : results) {
        passed += r.pass;
        std::cout << (r.pass ? "ok    " : "FAIL  ") << r.entry << ": " << r.label << " -> " << r.expected;
        if (!r.pass)
            std::cout << " (got " << r.actual << ")";
        std::cout << "\n";
    }
    std::cout << passed << "/" << results.size() << " expectations passed\n";
    return passed == results.size() ? exit_ok : exit_math;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Twisted Morse homology, Lichnerowicz cohomology and Novikov numbers", "morsetwist"};
    app.require_subcommand(1);

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "check a datum, CW complex or facet list");
    validate->add_option("file", validate_file)->required();

    Source src;
    SystemOptions so;
    OutputOptions out;
    std::string zeros;

    auto with_system = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--system", so.system, "trivial, unit-rep, exp or nov")
                        ->check(CLI::IsMember({"trivial", "unit-rep", "exp", "nov"}));
        if (required)
            opt->required();
        cmd->add_option("--class", so.cls, "comma-separated rationals, one per basis form");
    };

    auto* hom = app.add_subcommand("homology", "twisted Morse homology");
    add_source(hom, src);
    with_system(hom, true);
    add_output(hom, out, true);

    auto* cohom = app.add_subcommand("cohomology", "twisted Morse cohomology");
    add_source(cohom, src);
    with_system(cohom, true);
    add_output(cohom, out, true);

    auto* nov = app.add_subcommand("novikov", "Novikov numbers and Morse-Novikov inequalities");
    add_source(nov, src);
    nov->add_option("--class", so.cls, "comma-separated rationals, one per basis form");
    nov->add_option("--zeros", zeros, "zero counts per index, e.g. 1,4,1");
    add_output(nov, out, true);

    auto* euler = app.add_subcommand("euler", "Euler number from cells and from homology");
    add_source(euler, src);
    with_system(euler, false);
    add_output(euler, out, true);

    auto* obstructions = app.add_subcommand("obstructions", "H-space and parallel-form obstructions");
    add_source(obstructions, src);
    with_system(obstructions, true);
    add_output(obstructions, out, true);

    std::string facets_file, output_file;
    auto* tri = app.add_subcommand("from-triangulation", "regular CW complex from a facet list");
    tri->add_option("facets", facets_file)->required();
    tri->add_option("-o,--output", output_file, "output JSON path");

    auto* example = app.add_subcommand("example", "built-in examples");
    example->require_subcommand(1);
    example->add_subcommand("list", "list example names");
    std::string show_name, run_name;
    bool show_facets = false;
    auto* show = example->add_subcommand("show", "print an example as JSON");
    show->add_option("name", show_name)->required();
    show->add_flag("--facets", show_facets, "print the facet list instead");
    auto* run = example->add_subcommand("run", "check the pinned expectations");
    run->add_option("name", run_name);
    run->add_option("--depth", out.depth, "Novikov truncation depth (positive rational)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }
    for (auto* cmd : {hom, cohom, nov, euler, obstructions})
        if (auto* opt = cmd->get_option_no_throw("--class"); opt && opt->count() > 0)
            so.class_given = true;

    try {
        if (*validate)
            return cmd_validate(validate_file);
        if (*hom)
            return cmd_homology(src, so, out, false);
        if (*cohom)
            return cmd_homology(src, so, out, true);
        if (*nov)
            return cmd_novikov(src, so, zeros, out);
        if (*euler)
            return cmd_euler(src, so, out);
        if (*obstructions)
            return cmd_obstructions(src, so, out);
        if (*tri)
            return cmd_from_triangulation(facets_file, output_file);
        if (*example) {
            if (*show)
                return cmd_example_show(show_name, show_facets);
            if (*run)
                return cmd_example_run(run_name, out);
            return cmd_example_list();
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const mt::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const mt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const mt::UnknownExample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_math;
    }
    return exit_ok;
}
