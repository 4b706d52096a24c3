#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quivdc/complex.hpp"

namespace quivdc {

/// k-linear functor F: B -> A given on vertices and arrows.
struct Functor {
    AlgebraPtr source;
    AlgebraPtr target;
    std::vector<VertexId> vertex_map;
    std::vector<PathCombo> arrow_map; // reduced, parallel to F(s) -> F(t)

    PathCombo apply(const Path& p) const
    {
        PathCombo out = PathCombo::single(Path::trivial(vertex_map.at(p.source)));
        for (ArrowId a : p.arrows)
            out = target->multiply(out, arrow_map.at(a));
        return out;
    }

    PathCombo apply(const PathCombo& c) const
    {
        PathCombo out(vertex_map.at(c.source()), vertex_map.at(c.target()));
        for (const auto& [p, coeff] : c.terms())
            out += apply(p).scaled(coeff);
        return out;
    }
};

/// Checks typing of every arrow image and that each relation of the source
/// maps to zero.
inline Functor compile_functor(AlgebraPtr source, AlgebraPtr target,
                               const std::map<std::string, std::string>& vertex_map,
                               const std::map<std::string, PathCombo>& arrow_map)
{
    const Quiver& qs = source->quiver();
    const Quiver& qt = target->quiver();
    Functor f{source, target, {}, {}};
    for (VertexId v = 0; v < qs.vertex_count(); ++v) {
        auto it = vertex_map.find(qs.vertex_name(v));
        if (it == vertex_map.end())
            throw ValidationError("functor: vertex '" + qs.vertex_name(v) + "' is not mapped");
        f.vertex_map.push_back(qt.vertex(it->second));
    }
    for (ArrowId a = 0; a < qs.arrow_count(); ++a) {
        const auto& ar = qs.arrow(a);
        auto it = arrow_map.find(ar.name);
        if (it == arrow_map.end())
            throw ValidationError("functor: arrow '" + ar.name + "' is not mapped");
        const PathCombo& img = it->second;
        if (img.source() != f.vertex_map[ar.source] || img.target() != f.vertex_map[ar.target])
            throw ValidationError("functor: image of arrow '" + ar.name + "' does not run from F(" +
                                  qs.vertex_name(ar.source) + ") to F(" + qs.vertex_name(ar.target) + ")");
        f.arrow_map.push_back(target->reduce(img));
    }
    for (const auto& rel : source->relations())
        if (!f.apply(rel).is_zero())
            throw ValidationError("functor: relation " + combo_name(qs, rel) + " maps to " +
                                  combo_name(qt, f.apply(rel)) + ", not zero");
    return f;
}

inline Functor identity_functor(const AlgebraPtr& alg)
{
    const Quiver& q = alg->quiver();
    std::map<std::string, std::string> vm;
    std::map<std::string, PathCombo> am;
    for (const auto& n : q.vertex_names())
        vm[n] = n;
    for (ArrowId a = 0; a < q.arrow_count(); ++a)
        am[q.arrow(a).name] = PathCombo::single(arrow_path(q, a));
    return compile_functor(alg, alg, vm, am);
}

/// F_*(M) = M o F.
inline Representation restrict_rep(const Functor& f, const Representation& m)
{
    if (m.algebra() != f.target)
        throw ValidationError("restrict_rep: module is not over the target algebra");
    std::vector<std::size_t> dims;
    for (auto v : f.vertex_map)
        dims.push_back(m.dim(v));
    std::vector<Matrix> maps;
    for (const auto& img : f.arrow_map)
        maps.push_back(m.combo_map(img));
    return Representation(f.source, std::move(dims), std::move(maps));
}

inline RepMap restrict_map(const Functor& f, const RepMap& g)
{
    RepMap out;
    for (auto v : f.vertex_map)
        out.components.push_back(g.components.at(v));
    return out;
}

inline ModuleComplex restrict_complex(const Functor& f, const ModuleComplex& x)
{
    ModuleComplex out{f.source, x.lo, {}, {}};
    for (const auto& t : x.terms)
        out.terms.push_back(restrict_rep(f, t));
    for (const auto& d : x.diffs)
        out.diffs.push_back(restrict_map(f, d));
    return out;
}

/// LF^* on perfect complexes: P_b -> P_{F b}, entries pushed through F.
inline PerfectComplex extend_perfect(const Functor& f, const PerfectComplex& p)
{
    if (p.algebra() != f.source)
        throw ValidationError("extend_perfect: complex is not over the source algebra");
    std::vector<std::vector<VertexId>> comps;
    for (const auto& c : p.components()) {
        std::vector<VertexId> out;
        for (auto v : c)
            out.push_back(f.vertex_map[v]);
        comps.push_back(std::move(out));
    }
    std::vector<ComboMatrix> diffs;
    for (std::size_t i = 0; i < p.differentials().size(); ++i) {
        const auto& d = p.differentials()[i];
        ComboMatrix m(comps[i + 1], comps[i]);
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                m.set(r, c, f.apply(d(r, c)));
        diffs.push_back(std::move(m));
    }
    PerfectComplex out(f.target, p.lo(), std::move(comps), std::move(diffs));
    validate(out);
    return out;
}

struct DegreeComparison {
    int degree = 0;
    std::size_t dim_p = 0;
    std::size_t dim_round_trip = 0;
};

struct CleavingReport {
    std::size_t gl_dim = 0;
    std::size_t hw_p = 0;
    /// Unset when LF^* p is acyclic (the inequality then holds vacuously).
    std::optional<std::size_t> hw_extended;
    bool width_ok = false;
    /// dim H^i(p) <= dim H^i(F_* LF^* p); expected when F is cleaving.
    std::vector<DegreeComparison> degrees;
    bool cleaving_consistent = false;
    bool pass() const { return width_ok && cleaving_consistent; }
};

/// Empirical check of hw(LF^* p) <= hw(p) + gl.dim B and of the per-degree
/// cohomology bound coming from the retraction X -> F_* LF^* X.
inline CleavingReport cleaving_report(const Functor& f, const PerfectComplex& p, std::size_t gl_dim_cutoff)
{
    const auto gd = global_dim(f.source, gl_dim_cutoff);
    if (!gd.finite)
        throw ValidationError("cleaving_report: global dimension of the source exceeds the cutoff " +
                              std::to_string(gl_dim_cutoff));
    CleavingReport rep;
    rep.gl_dim = gd.value;
    const auto hp = cohomology(p);
    rep.hw_p = invariants(hp).hw;
    const auto ext = extend_perfect(f, p);
    const auto he = cohomology(ext);
    if (he.support())
        rep.hw_extended = invariants(he).hw;
    rep.width_ok = !rep.hw_extended || *rep.hw_extended <= rep.hw_p + rep.gl_dim;

    const auto back = cohomology(restrict_complex(f, to_module_complex(ext)));
    rep.cleaving_consistent = true;
    for (int i = p.lo(); i <= p.hi(); ++i) {
        DegreeComparison dc{i, hp.dim_at(i), back.dim_at(i)};
        rep.cleaving_consistent = rep.cleaving_consistent && dc.dim_p <= dc.dim_round_trip;
        rep.degrees.push_back(dc);
    }
    return rep;
}

} // namespace quivdc
