#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "quivdc/quivdc.hpp"

namespace quivdc::cli {

enum ExitCode { Ok = 0, Invalid = 1, ZeroObject = 2, OutOfCriterion = 3 };

namespace detail {

struct Loaded {
    json doc;
    fs::path base;
    DocumentKind kind = DocumentKind::Unknown;
};

inline Loaded load(const std::string& path)
{
    Loaded l;
    l.doc = load_json_file(path);
    l.base = fs::path(path).parent_path();
    l.kind = detect_kind(l.doc);
    if (l.kind == DocumentKind::Unknown)
        throw ValidationError("'" + path + "': unrecognised document (expected algebra, complex, module complex, "
                              "representation or functor)");
    return l;
}

inline AlgebraPtr algebra_of(const Loaded& l)
{
    return resolve_algebra(quivdc::detail::require(l.doc, "algebra", "document"), l.base);
}

/// Algebra given on the command line: builtin name or file.
inline AlgebraPtr algebra_arg(const std::string& spec)
{
    if (auto b = builtin_algebra(spec))
        return b;
    return algebra_from_json(load_json_file(spec));
}

/// Any complex-like document as a module complex; representations are stalks.
inline ModuleComplex as_module_complex(const Loaded& l)
{
    auto alg = algebra_of(l);
    switch (l.kind) {
    case DocumentKind::PerfectComplex: {
        auto p = complex_from_json(l.doc, alg);
        validate(p);
        return to_module_complex(p);
    }
    case DocumentKind::ModuleComplex:
        return module_complex_from_json(l.doc, alg);
    case DocumentKind::Representation:
        return ModuleComplex::stalk(representation_from_json(l.doc, alg));
    default:
        throw ValidationError("expected a complex or representation document");
    }
}

inline PerfectComplex as_perfect(const Loaded& l)
{
    if (l.kind != DocumentKind::PerfectComplex)
        throw ValidationError("expected a perfect complex document (key 'components')");
    auto p = complex_from_json(l.doc, algebra_of(l));
    validate(p);
    return p;
}

/// Writes `json` to `emit` (or `out` when empty). Complexes get their algebra
/// in a sibling file <stem>.algebra.json referenced by name.
inline void emit_complex(const PerfectComplex& p, const std::string& emit, std::ostream& out)
{
    if (emit.empty()) {
        out << complex_to_json(p, algebra_to_json(*p.algebra())).dump(2) << '\n';
        return;
    }
    const fs::path target(emit);
    const fs::path alg_file = target.parent_path() / (target.stem().string() + ".algebra.json");
    write_json_file(alg_file, algebra_to_json(*p.algebra()));
    write_json_file(target, complex_to_json(p, alg_file.filename().string()));
    out << "wrote " << target.string();
    if (auto s = p.support())
        out << " (degrees " << s->first << ".." << s->second << ", " << p.summand_count() << " summands)";
    else
        out << " (zero complex)";
    out << '\n';
}

inline void emit_json(const json& j, const std::string& emit, std::ostream& out)
{
    if (emit.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    write_json_file(emit, j);
    out << "wrote " << emit << '\n';
}

inline std::vector<std::string> split_word(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (auto b = tok.find_first_not_of(' '); b != std::string::npos)
            out.push_back(tok.substr(b, tok.find_last_not_of(' ') - b + 1));
    return out;
}

inline std::string word_text(const Quiver& q, const HomotopyString& w)
{
    std::string s;
    for (const auto& l : w.letters)
        s += (s.empty() ? "" : " ") + letter_name(q, l);
    return s;
}

// ---------------------------------------------------------------------------

inline int cmd_validate(const std::string& file, bool as_json, std::ostream& out)
{
    auto l = load(file);
    json report{{"file", file}, {"ok", true}};
    switch (l.kind) {
    case DocumentKind::Algebra: {
        auto alg = algebra_from_json(l.doc);
        report["kind"] = "algebra";
        report["dim"] = alg->dimension();
        if (!as_json)
            out << "algebra ok: dim=" << alg->dimension() << " vertices=" << alg->vertex_count()
                << " arrows=" << alg->quiver().arrow_count() << " relations=" << alg->relations().size() << '\n';
        break;
    }
    case DocumentKind::PerfectComplex: {
        auto p = as_perfect(l);
        report["kind"] = "complex";
        report["summands"] = p.summand_count();
        if (!as_json) {
            out << "complex ok: ";
            if (auto s = p.support())
                out << "degrees " << s->first << ".." << s->second << ", ";
            out << p.summand_count() << " summands, minimal=" << (is_minimal(p) ? "true" : "false") << '\n';
        }
        break;
    }
    case DocumentKind::ModuleComplex: {
        auto x = as_module_complex(l);
        report["kind"] = "module_complex";
        if (!as_json)
            out << "module complex ok: " << x.terms.size() << " terms\n";
        break;
    }
    case DocumentKind::Representation: {
        auto m = representation_from_json(l.doc, algebra_of(l));
        report["kind"] = "representation";
        report["dim"] = m.total_dim();
        if (!as_json)
            out << "representation ok: dim=" << m.total_dim() << '\n';
        break;
    }
    case DocumentKind::Functor: {
        auto f = functor_from_json(l.doc, l.base);
        report["kind"] = "functor";
        if (!as_json)
            out << "functor ok: " << f.source->vertex_count() << " vertices, " << f.source->quiver().arrow_count()
                << " arrows mapped\n";
        break;
    }
    default:
        break;
    }
    if (as_json)
        out << report.dump() << '\n';
    return Ok;
}

inline int cmd_invariants(const std::string& file, bool as_json, std::ostream& out)
{
    auto x = as_module_complex(load(file));
    const auto h = cohomology(x);
    const auto t = invariants(h); // throws on the zero object
    const auto s = *h.support();
    const Quiver& q = x.algebra->quiver();
    // Reported relative to the lowest nonzero degree so shifts do not change it.
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::size_t>> dimvec;
    for (int d = s.first; d <= s.second; ++d) {
        dims.push_back(h.dim_at(d));
        dimvec.push_back(h.modules[std::size_t(d - h.lo)].dims());
    }
    if (as_json) {
        out << json{{"hl", t.hl},
                    {"hw", t.hw},
                    {"hr", t.hr},
                    {"cohomology", dims},
                    {"dimension_vector", dimvec},
                    {"vertices", q.vertex_names()}}
                   .dump()
            << '\n';
        return Ok;
    }
    out << "cohomology dims (from lowest nonzero degree):";
    for (auto d : dims)
        out << ' ' << d;
    out << "\ndimension vector (vertices";
    for (const auto& v : q.vertex_names())
        out << ' ' << v;
    out << "):\n";
    for (std::size_t i = 0; i < dimvec.size(); ++i) {
        out << "  H[+" << i << "]";
        for (auto d : dimvec[i])
            out << ' ' << d;
        out << '\n';
    }
    out << "hl=" << t.hl << " hw=" << t.hw << " hr=" << t.hr << '\n';
    return Ok;
}

struct FamilyArgs {
    std::string kind;
    std::size_t m = 3;
    std::string lambda = "1";
    std::size_t d = 1;
    std::string algebra = "builtin:kronecker";
    std::string word;
    std::string vertex;
    std::string emit;
};

inline int cmd_family(const FamilyArgs& a, std::ostream& out)
{
    PerfectComplex p;
    if (a.kind == "lemma") {
        p = lemma_family(a.m, parse_rational(a.lambda), a.d);
    } else if (a.kind == "string" || a.kind == "band") {
        auto alg = algebra_arg(a.algebra);
        const bool cyclic = a.kind == "band";
        std::optional<std::string> vertex;
        if (!a.vertex.empty())
            vertex = a.vertex;
        auto w = parse_word(*alg, split_word(a.word), cyclic, vertex);
        p = cyclic ? band_complex(alg, w, parse_rational(a.lambda), a.d) : string_complex(alg, w);
    } else {
        throw ValidationError("family: unknown kind '" + a.kind + "' (expected lemma, string or band)");
    }
    emit_complex(p, a.emit, out);
    return Ok;
}

inline int cmd_discrete(const std::string& spec, bool as_json, std::ostream& out)
{
    auto alg = algebra_arg(spec);
    const auto rep = is_gentle(*alg);
    if (!rep.is_gentle)
        throw OutOfScope("undecidable here: gentle criterion only (" + rep.violations.front().condition + ": " +
                         rep.violations.front().witness + ")");
    const auto band = has_generalized_band(*alg);
    if (as_json) {
        json j{{"discrete", !band.found}};
        if (band.witness) {
            json w = json::array();
            for (const auto& l : band.witness->letters)
                w.push_back(letter_name(alg->quiver(), l));
            j["witness"] = w;
        }
        out << j.dump() << '\n';
        return Ok;
    }
    if (!band.found) {
        out << "discrete\n";
    } else {
        out << "not-discrete\n";
        out << "band witness: " << word_text(alg->quiver(), *band.witness) << '\n';
    }
    return Ok;
}

inline int cmd_survey(const std::string& config_file, std::ostream& out)
{
    const json config = load_json_file(config_file);
    const fs::path base = fs::path(config_file).parent_path();
    const auto res = run_survey(config, base);
    if (config.contains("out")) {
        fs::path target(quivdc::detail::as_string(config.at("out"), "out"));
        if (target.is_relative())
            target = base / target;
        std::ofstream f(target);
        if (!f)
            throw ValidationError("cannot write '" + target.string() + "'");
        write_survey_csv(f, res);
        out << "wrote " << target.string() << " (" << res.rows.size() << " rows)\n";
    } else {
        write_survey_csv(out, res);
    }
    out << survey_summary(res) << '\n';
    return Ok;
}

inline int cmd_minimize(const std::string& file, const std::string& emit, std::ostream& out)
{
    emit_complex(minimize(as_perfect(load(file))), emit, out);
    return Ok;
}

inline int cmd_indec(const std::string& file, bool as_json, std::ostream& out)
{
    const auto p = as_perfect(load(file));
    const auto r = is_indecomposable(p);
    if (as_json) {
        out << json{{"indecomposable", to_string(r.verdict)},
                    {"end_dim", r.end_dim},
                    {"radical_dim", r.radical_dim},
                    {"semisimple_dim", r.semisimple_dim}}
                   .dump()
            << '\n';
        return Ok;
    }
    out << "indecomposable: " << to_string(r.verdict) << " (dim End=" << r.end_dim << ", dim rad=" << r.radical_dim
        << ", dim End/rad=" << r.semisimple_dim << ")\n";
    return Ok;
}

inline int cmd_glue(const std::string& file, std::size_t cutoff, const std::string& emit, std::ostream& out)
{
    const auto g = glue_resolution(as_perfect(load(file)), cutoff);
    emit_complex(g.complex, emit, out);
    out << "status: " << (g.truncated ? "truncated at cutoff" : "complete") << '\n';
    return Ok;
}

inline int cmd_restrict(const std::string& functor_file, const std::string& file, const std::string& emit,
                        std::ostream& out)
{
    auto fl = load(functor_file);
    const auto f = functor_from_json(fl.doc, fl.base);
    auto l = load(file);
    const json alg_ref = algebra_to_json(*f.source);
    if (l.kind == DocumentKind::Representation) {
        const auto m = restrict_rep(f, representation_from_json(l.doc, f.target));
        json j = representation_to_json(m);
        j["algebra"] = alg_ref;
        emit_json(j, emit, out);
        return Ok;
    }
    ModuleComplex x;
    if (l.kind == DocumentKind::PerfectComplex) {
        auto p = complex_from_json(l.doc, f.target);
        validate(p);
        x = to_module_complex(p);
    } else if (l.kind == DocumentKind::ModuleComplex) {
        x = module_complex_from_json(l.doc, f.target);
    } else {
        throw ValidationError("restrict: expected a representation or complex over the target algebra");
    }
    emit_json(module_complex_to_json(restrict_complex(f, x), alg_ref), emit, out);
    return Ok;
}

inline int cmd_extend(const std::string& functor_file, const std::string& file, const std::string& emit,
                      bool report, std::size_t cutoff, std::ostream& out)
{
    auto fl = load(functor_file);
    const auto f = functor_from_json(fl.doc, fl.base);
    auto l = load(file);
    if (l.kind != DocumentKind::PerfectComplex)
        throw ValidationError("extend: expected a perfect complex over the source algebra");
    auto p = complex_from_json(l.doc, f.source);
    validate(p);
    emit_complex(extend_perfect(f, p), emit, out);
    if (report) {
        const auto r = cleaving_report(f, p, cutoff);
        out << "gl.dim(source)=" << r.gl_dim << " hw(p)=" << r.hw_p << " hw(LF*p)=";
        if (r.hw_extended)
            out << *r.hw_extended;
        else
            out << "undefined (acyclic)";
        out << " width bound: " << (r.width_ok ? "PASS" : "FAIL") << '\n';
        for (const auto& dc : r.degrees)
            out << "  degree " << dc.degree << ": dim H(p)=" << dc.dim_p << " dim H(F_* LF* p)=" << dc.dim_round_trip
                << '\n';
        out << "cohomology bound (cleaving-consistent): " << (r.cleaving_consistent ? "PASS" : "FAIL") << '\n';
    }
    return Ok;
}

} // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Derived-category invariants of bound quiver algebras"};
    app.require_subcommand(1);
    bool as_json = false;
    std::string emit;
    std::size_t cutoff = 6;

    std::string file, second;
    auto* validate = app.add_subcommand("validate", "Check an algebra, complex, representation or functor file");
    validate->add_option("file", file)->required();
    validate->add_flag("--json", as_json);

    auto* inv = app.add_subcommand("invariants", "Cohomology dimensions and (hl, hw, hr)");
    inv->add_option("file", file)->required();
    inv->add_flag("--json", as_json);

    detail::FamilyArgs fam;
    auto* family = app.add_subcommand("family", "Build a lemma, string or band complex");
    family->add_option("kind", fam.kind, "lemma | string | band")->required();
    family->add_option("--m", fam.m, "lemma: A_{3m}^m");
    family->add_option("--lambda", fam.lambda, "eigenvalue p/q");
    family->add_option("--d", fam.d, "Jordan block size");
    family->add_option("--algebra", fam.algebra, "algebra file or builtin name");
    family->add_option("--word", fam.word, "comma-separated letters, '~' marks inverse letters");
    family->add_option("--vertex", fam.vertex, "vertex of an empty string");
    family->add_option("--emit", emit, "output file");

    auto* discrete = app.add_subcommand("discrete", "Derived discreteness of a gentle algebra");
    discrete->add_option("algebra", file)->required();
    discrete->add_flag("--json", as_json);

    auto* survey = app.add_subcommand("survey", "Run a family over a parameter grid (CSV)");
    survey->add_option("config", file)->required();

    auto* mini = app.add_subcommand("minimize", "Remove contractible summands");
    mini->add_option("file", file)->required();
    mini->add_option("--emit", emit);

    auto* indec = app.add_subcommand("indec", "Indecomposability via End in the homotopy category");
    indec->add_option("file", file)->required();
    indec->add_flag("--json", as_json);

    auto* glue = app.add_subcommand("glue", "Extend a minimal complex to the left by a resolution of Ker d^lo");
    glue->add_option("file", file)->required();
    glue->add_option("--cutoff", cutoff, "length budget");
    glue->add_option("--emit", emit);

    auto* restrict = app.add_subcommand("restrict", "Restriction F_* along a functor");
    restrict->add_option("functor", file)->required();
    restrict->add_option("file", second)->required();
    restrict->add_option("--emit", emit);

    bool report = false;
    auto* extend = app.add_subcommand("extend", "Extension LF^* of a perfect complex");
    extend->add_option("functor", file)->required();
    extend->add_option("file", second)->required();
    extend->add_option("--emit", emit);
    extend->add_flag("--report", report, "check the cleaving inequalities");
    extend->add_option("--cutoff", cutoff, "global dimension cutoff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Invalid;
    }

    try {
        if (validate->parsed())
            return detail::cmd_validate(file, as_json, out);
        if (inv->parsed())
            return detail::cmd_invariants(file, as_json, out);
        if (family->parsed()) {
            fam.emit = emit;
            return detail::cmd_family(fam, out);
        }
        if (discrete->parsed())
            return detail::cmd_discrete(file, as_json, out);
        if (survey->parsed())
            return detail::cmd_survey(file, out);
        if (mini->parsed())
            return detail::cmd_minimize(file, emit, out);
        if (indec->parsed())
            return detail::cmd_indec(file, as_json, out);
        if (glue->parsed())
            return detail::cmd_glue(file, cutoff, emit, out);
        if (restrict->parsed())
            return detail::cmd_restrict(file, second, emit, out);
        if (extend->parsed())
            return detail::cmd_extend(file, second, emit, report, cutoff, out);
    } catch (const UndefinedInvariant& e) {
        err << "error: " << e.what() << '\n';
        return ZeroObject;
    } catch (const OutOfScope& e) {
        err << "error: " << e.what() << '\n';
        return OutOfCriterion;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return Invalid;
    } catch (const json::exception& e) {
        err << "error: malformed document: " << e.what() << '\n';
        return Invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Invalid;
    }
    return Invalid;
}

} // namespace quivdc::cli
