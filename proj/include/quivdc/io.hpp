#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "quivdc/functor.hpp"
#include "quivdc/gentle.hpp"

namespace quivdc {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline json load_json_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const fs::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

namespace detail {

inline const json& require(const json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string(what) + ": missing key '" + key + "'");
    return j.at(key);
}

inline std::string as_string(const json& j, const char* what)
{
    if (!j.is_string())
        throw ValidationError(std::string(what) + ": expected a string");
    return j.get<std::string>();
}

inline std::size_t as_count(const json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ValidationError(std::string(what) + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

inline int degree_key(const std::string& key)
{
    try {
        std::size_t used = 0;
        int d = std::stoi(key, &used);
        if (used == key.size())
            return d;
    } catch (const std::exception&) {
    }
    throw ValidationError("degree key '" + key + "' is not an integer");
}

} // namespace detail

inline Rational rational_from_json(const json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw ValidationError("rational: expected \"p/q\" string or integer");
}

inline json rational_to_json(const Rational& q) { return to_string(q); }

inline Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols)
{
    if (!j.is_array())
        throw ValidationError("matrix: expected a list of rows");
    Matrix m(rows, cols);
    if (rows == 0 || cols == 0) {
        // [] or a list of empty rows both describe maps to/from the zero space.
        for (const auto& row : j)
            if (!row.is_array() || !row.empty())
                throw ValidationError("matrix: expected shape " + std::to_string(rows) + "x" + std::to_string(cols));
        if (!j.empty() && j.size() != rows)
            throw ValidationError("matrix: expected shape " + std::to_string(rows) + "x" + std::to_string(cols));
        return m;
    }
    if (j.size() != rows)
        throw ValidationError("matrix: expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ValidationError("matrix: row " + std::to_string(r) + " should have " + std::to_string(cols) +
                                  " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rational_from_json(j[r][c]);
    }
    return m;
}

inline json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(rational_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// [{"coeff": "p/q", "path": [arrow, ...]}, ...]; an empty path is the
/// trivial path at `source`.
inline PathCombo combo_from_json(const Quiver& q, const json& j, VertexId source, VertexId target)
{
    if (!j.is_array())
        throw ValidationError("path combination: expected a list of terms");
    PathCombo out(source, target);
    for (const auto& term : j) {
        const Rational c = rational_from_json(detail::require(term, "coeff", "path term"));
        const auto& pj = detail::require(term, "path", "path term");
        if (!pj.is_array())
            throw ValidationError("path term: 'path' must be a list of arrow names");
        Path p = Path::trivial(source);
        if (!pj.empty())
            p = make_path(q, pj.get<std::vector<std::string>>());
        if (p.source != source || p.target != target)
            throw ValidationError("path term '" + path_name(q, p) + "' does not run from " + q.vertex_name(source) +
                                  " to " + q.vertex_name(target));
        out.add(p, c);
    }
    return out;
}

inline json combo_to_json(const Quiver& q, const PathCombo& c)
{
    json out = json::array();
    for (const auto& [p, coeff] : c.terms()) {
        json names = json::array();
        for (ArrowId a : p.arrows)
            names.push_back(q.arrow(a).name);
        out.push_back({{"coeff", rational_to_json(coeff)}, {"path", names}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Algebras

inline AlgebraPtr algebra_from_json(const json& j)
{
    Quiver q;
    for (const auto& v : detail::require(j, "vertices", "algebra"))
        q.add_vertex(v.is_string() ? v.get<std::string>() : v.dump());
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows"))
            q.add_arrow(detail::as_string(detail::require(a, "name", "arrow"), "arrow name"),
                        detail::as_string(detail::require(a, "source", "arrow"), "arrow source"),
                        detail::as_string(detail::require(a, "target", "arrow"), "arrow target"));
    std::vector<PathCombo> rels;
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) {
            if (!r.is_array() || r.empty())
                throw ValidationError("relation: expected a nonempty list of terms");
            std::vector<RelationTerm> terms;
            for (const auto& t : r) {
                const auto& pj = detail::require(t, "path", "relation term");
                terms.push_back({rational_from_json(detail::require(t, "coeff", "relation term")),
                                 pj.get<std::vector<std::string>>()});
            }
            rels.push_back(make_relation(q, terms));
        }
    std::optional<std::size_t> bound;
    if (j.contains("nilpotency_bound") && !j.at("nilpotency_bound").is_null())
        bound = detail::as_count(j.at("nilpotency_bound"), "nilpotency_bound");
    return Algebra::compile(std::move(q), std::move(rels), bound);
}

inline json algebra_to_json(const Algebra& alg)
{
    const Quiver& q = alg.quiver();
    json arrows = json::array(), rels = json::array();
    for (const auto& a : q.arrows())
        arrows.push_back({{"name", a.name}, {"source", q.vertex_name(a.source)}, {"target", q.vertex_name(a.target)}});
    for (const auto& r : alg.relations())
        rels.push_back(combo_to_json(q, r));
    return {{"vertices", q.vertex_names()},
            {"arrows", arrows},
            {"relations", rels},
            {"nilpotency_bound", alg.nilpotency_bound()}};
}

namespace detail {

inline std::vector<long> int_list(const std::string& text, const std::string& spec)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ValidationError("bad parameters in '" + spec + "'");
        }
    return out;
}

} // namespace detail

/// Named algebras: "builtin:kronecker", "loop:n", "lambda:r,n,m",
/// "linear:n,m" (A_n^m), "hereditary:n". Returns nullptr for other strings.
inline AlgebraPtr builtin_algebra(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        return nullptr;
    const std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    auto args = [&](std::size_t n) {
        auto v = detail::int_list(rest, spec);
        if (v.size() != n)
            throw ValidationError("'" + spec + "' needs " + std::to_string(n) + " parameters");
        for (long x : v)
            if (x < 0)
                throw ValidationError("negative parameter in '" + spec + "'");
        return v;
    };
    if (kind == "builtin" && rest == "kronecker")
        return kronecker();
    if (kind == "loop")
        return loop_algebra(std::size_t(args(1)[0]));
    if (kind == "lambda") {
        auto v = args(3);
        return lambda_algebra(v[0], v[1], v[2]);
    }
    if (kind == "linear") {
        auto v = args(2);
        return truncated_linear(std::size_t(v[0]), std::size_t(v[1]));
    }
    if (kind == "hereditary")
        return hereditary_linear(std::size_t(args(1)[0]));
    return nullptr;
}

/// An algebra reference: inline object, builtin name, or a file path relative
/// to `base`.
inline AlgebraPtr resolve_algebra(const json& ref, const fs::path& base)
{
    if (ref.is_object())
        return algebra_from_json(ref);
    if (!ref.is_string())
        throw ValidationError("algebra reference must be an object or a string");
    const auto s = ref.get<std::string>();
    if (auto b = builtin_algebra(s))
        return b;
    fs::path p(s);
    if (p.is_relative())
        p = base / p;
    return algebra_from_json(load_json_file(p));
}

// ---------------------------------------------------------------------------
// Representations and complexes

inline Representation representation_from_json(const json& j, const AlgebraPtr& alg)
{
    const Quiver& q = alg->quiver();
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    const auto& dj = detail::require(j, "dims", "representation");
    for (const auto& [name, n] : dj.items())
        dims[q.vertex(name)] = detail::as_count(n, "dimension");
    std::vector<Matrix> maps;
    const json empty = json::object();
    const json& aj = j.contains("arrows") ? j.at("arrows") : empty;
    for (const auto& [name, m] : aj.items())
        q.arrow_id(name);
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        if (aj.contains(ar.name))
            maps.push_back(matrix_from_json(aj.at(ar.name), dims[ar.target], dims[ar.source]));
        else
            maps.emplace_back(dims[ar.target], dims[ar.source]);
    }
    return Representation(alg, std::move(dims), std::move(maps));
}

inline json representation_to_json(const Representation& m)
{
    const Quiver& q = m.algebra()->quiver();
    json dims = json::object(), arrows = json::object();
    for (VertexId v = 0; v < q.vertex_count(); ++v)
        dims[q.vertex_name(v)] = m.dim(v);
    for (ArrowId a = 0; a < q.arrow_count(); ++a)
        arrows[q.arrow(a).name] = matrix_to_json(m.arrow_map(a));
    return {{"dims", dims}, {"arrows", arrows}};
}

inline PerfectComplex complex_from_json(const json& j, const AlgebraPtr& alg)
{
    const Quiver& q = alg->quiver();
    const auto& cj = detail::require(j, "components", "complex");
    if (!cj.is_object())
        throw ValidationError("complex: 'components' must map degrees to vertex lists");
    std::map<int, std::vector<VertexId>> comps;
    for (const auto& [key, labels] : cj.items()) {
        std::vector<VertexId> c;
        for (const auto& l : labels)
            c.push_back(q.vertex(detail::as_string(l, "summand label")));
        comps[detail::degree_key(key)] = std::move(c);
    }
    if (comps.empty())
        return PerfectComplex(alg);
    const int lo = j.contains("lo") ? j.at("lo").get<int>() : comps.begin()->first;
    const int hi = comps.rbegin()->first;
    if (comps.begin()->first < lo)
        throw ValidationError("complex: component below 'lo'");
    std::vector<std::vector<VertexId>> list;
    for (int d = lo; d <= hi; ++d)
        list.push_back(comps.contains(d) ? comps[d] : std::vector<VertexId>{});
    const json empty = json::object();
    const json& dj = j.contains("differentials") ? j.at("differentials") : empty;
    std::vector<ComboMatrix> diffs;
    for (int d = lo; d < hi; ++d) {
        const auto& cols = list[std::size_t(d - lo)];
        const auto& rows = list[std::size_t(d - lo + 1)];
        ComboMatrix m(rows, cols);
        const std::string key = std::to_string(d);
        if (dj.contains(key)) {
            const auto& mj = dj.at(key);
            if (!mj.is_array() || (mj.size() != rows.size() && !(rows.empty() || cols.empty())))
                throw ValidationError("differential " + key + ": expected " + std::to_string(rows.size()) + " rows");
            for (std::size_t r = 0; r < rows.size() && !cols.empty(); ++r) {
                if (!mj[r].is_array() || mj[r].size() != cols.size())
                    throw ValidationError("differential " + key + ": row " + std::to_string(r) + " should have " +
                                          std::to_string(cols.size()) + " entries");
                for (std::size_t c = 0; c < cols.size(); ++c)
                    m.set(r, c, combo_from_json(q, mj[r][c], rows[r], cols[c]));
            }
        }
        diffs.push_back(std::move(m));
    }
    for (const auto& [key, v] : dj.items()) {
        (void)v;
        const int d = detail::degree_key(key);
        if (d < lo || d >= hi)
            throw ValidationError("differential " + key + " lies outside the component range");
    }
    return PerfectComplex(alg, lo, std::move(list), std::move(diffs));
}

inline json complex_to_json(const PerfectComplex& p, const json& algebra_ref)
{
    const Quiver& q = p.algebra()->quiver();
    json comps = json::object(), diffs = json::object();
    for (int d = p.lo(); !p.empty() && d <= p.hi(); ++d) {
        json labels = json::array();
        for (auto v : p.component(d))
            labels.push_back(q.vertex_name(v));
        comps[std::to_string(d)] = labels;
        if (d < p.hi()) {
            const auto m = p.differential(d);
            json rows = json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < m.cols(); ++c)
                    row.push_back(combo_to_json(q, m(r, c)));
                rows.push_back(std::move(row));
            }
            diffs[std::to_string(d)] = rows;
        }
    }
    return {{"algebra", algebra_ref}, {"lo", p.lo()}, {"components", comps}, {"differentials", diffs}};
}

/// {"algebra", "lo", "terms": {degree: representation}, "differentials":
/// {degree: {vertex: matrix}}}.
inline ModuleComplex module_complex_from_json(const json& j, const AlgebraPtr& alg)
{
    const Quiver& q = alg->quiver();
    const auto& tj = detail::require(j, "terms", "module complex");
    std::map<int, Representation> terms;
    for (const auto& [key, rep] : tj.items())
        terms.emplace(detail::degree_key(key), representation_from_json(rep, alg));
    ModuleComplex x{alg, 0, {}, {}};
    if (terms.empty())
        return x;
    x.lo = j.contains("lo") ? j.at("lo").get<int>() : terms.begin()->first;
    const int hi = terms.rbegin()->first;
    if (terms.begin()->first < x.lo)
        throw ValidationError("module complex: term below 'lo'");
    for (int d = x.lo; d <= hi; ++d)
        x.terms.push_back(terms.contains(d) ? terms.at(d) : Representation::zero(alg));
    const json empty = json::object();
    const json& dj = j.contains("differentials") ? j.at("differentials") : empty;
    for (int d = x.lo; d < hi; ++d) {
        const auto& src = x.terms[std::size_t(d - x.lo)];
        const auto& dst = x.terms[std::size_t(d - x.lo + 1)];
        RepMap f;
        const std::string key = std::to_string(d);
        for (VertexId v = 0; v < q.vertex_count(); ++v) {
            const auto& name = q.vertex_name(v);
            if (dj.contains(key) && dj.at(key).contains(name))
                f.components.push_back(matrix_from_json(dj.at(key).at(name), dst.dim(v), src.dim(v)));
            else
                f.components.emplace_back(dst.dim(v), src.dim(v));
        }
        x.diffs.push_back(std::move(f));
    }
    x.validate();
    return x;
}

inline json module_complex_to_json(const ModuleComplex& x, const json& algebra_ref)
{
    const Quiver& q = x.algebra->quiver();
    json terms = json::object(), diffs = json::object();
    for (std::size_t i = 0; i < x.terms.size(); ++i)
        terms[std::to_string(x.lo + int(i))] = representation_to_json(x.terms[i]);
    for (std::size_t i = 0; i < x.diffs.size(); ++i) {
        json per = json::object();
        for (VertexId v = 0; v < q.vertex_count(); ++v)
            per[q.vertex_name(v)] = matrix_to_json(x.diffs[i].components[v]);
        diffs[std::to_string(x.lo + int(i))] = per;
    }
    return {{"algebra", algebra_ref}, {"lo", x.lo}, {"terms", terms}, {"differentials", diffs}};
}

inline Functor functor_from_json(const json& j, const fs::path& base)
{
    auto src = resolve_algebra(detail::require(j, "source", "functor"), base);
    auto dst = resolve_algebra(detail::require(j, "target", "functor"), base);
    std::map<std::string, std::string> vm;
    for (const auto& [k, v] : detail::require(j, "vertex_map", "functor").items())
        vm[k] = detail::as_string(v, "vertex image");
    std::map<std::string, PathCombo> am;
    const Quiver& qs = src->quiver();
    for (const auto& [k, v] : detail::require(j, "arrow_map", "functor").items()) {
        const auto& ar = qs.arrow(qs.arrow_id(k));
        auto s = vm.find(qs.vertex_name(ar.source));
        auto t = vm.find(qs.vertex_name(ar.target));
        if (s == vm.end() || t == vm.end())
            throw ValidationError("functor: endpoints of arrow '" + k + "' are not mapped");
        am[k] = combo_from_json(dst->quiver(), v, dst->quiver().vertex(s->second), dst->quiver().vertex(t->second));
    }
    return compile_functor(src, dst, vm, am);
}

enum class DocumentKind { Algebra, PerfectComplex, ModuleComplex, Representation, Functor, Unknown };

inline DocumentKind detect_kind(const json& j)
{
    if (!j.is_object())
        return DocumentKind::Unknown;
    if (j.contains("vertex_map"))
        return DocumentKind::Functor;
    if (j.contains("components"))
        return DocumentKind::PerfectComplex;
    if (j.contains("terms"))
        return DocumentKind::ModuleComplex;
    if (j.contains("dims"))
        return DocumentKind::Representation;
    if (j.contains("vertices"))
        return DocumentKind::Algebra;
    return DocumentKind::Unknown;
}

} // namespace quivdc
