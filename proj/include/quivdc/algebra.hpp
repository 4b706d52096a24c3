#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "quivdc/linalg.hpp"
#include "quivdc/quiver.hpp"

namespace quivdc {

struct CompileOptions {
    /// Abort when more than this many paths of length <= N would be enumerated.
    std::size_t path_cap = 200000;
};

/// A bound quiver algebra kQ/I with I generated by length-homogeneous
/// relations. Compilation row-reduces the ideal in every (source, target,
/// length) stratum; the non-pivot paths are the normal-form basis.
///
/// Path convention: pq traverses p first. The indecomposable projective P_a
/// has basis the normal paths starting at a, the right action appends paths,
/// and Hom(P_a, P_b) is spanned by normal paths from b to a acting by
/// left multiplication.
class Algebra {
public:
    static std::shared_ptr<const Algebra> compile(Quiver quiver, std::vector<PathCombo> relations,
                                                  std::optional<std::size_t> nilpotency_bound = std::nullopt,
                                                  CompileOptions options = {})
    {
        auto alg = std::shared_ptr<Algebra>(new Algebra());
        alg->quiver_ = std::move(quiver);
        alg->relations_ = std::move(relations);
        alg->build(nilpotency_bound, options);
        return alg;
    }

    const Quiver& quiver() const { return quiver_; }
    const std::vector<PathCombo>& relations() const { return relations_; }
    std::size_t nilpotency_bound() const { return bound_; }
    std::size_t vertex_count() const { return quiver_.vertex_count(); }

    /// Total number of normal-form paths.
    std::size_t dimension() const
    {
        std::size_t n = 0;
        for (const auto& [key, s] : strata_)
            n += s.normal.size();
        return n;
    }

    /// Normal-form paths from s to t, ordered by length then path order.
    const std::vector<Path>& normal_paths(VertexId s, VertexId t) const
    {
        static const std::vector<Path> none;
        auto it = normal_by_endpoints_.find({s, t});
        return it == normal_by_endpoints_.end() ? none : it->second;
    }

    std::size_t normal_count(VertexId s, VertexId t) const { return normal_paths(s, t).size(); }

    /// Basis of P_a: every normal path starting at a, grouped by target.
    std::vector<Path> proj_basis(VertexId a) const
    {
        check_vertex(a);
        std::vector<Path> out;
        for (VertexId t = 0; t < vertex_count(); ++t)
            for (const auto& p : normal_paths(a, t))
                out.push_back(p);
        return out;
    }

    /// Basis of Hom(P_a, P_b): normal paths from b to a.
    const std::vector<Path>& hom_proj(VertexId a, VertexId b) const
    {
        check_vertex(a);
        check_vertex(b);
        return normal_paths(b, a);
    }

    /// Position of a normal path inside normal_paths(source, target).
    std::optional<std::size_t> normal_index(const Path& p) const
    {
        const auto& list = normal_paths(p.source, p.target);
        auto it = std::lower_bound(list.begin(), list.end(), p);
        if (it == list.end() || *it != p)
            return std::nullopt;
        return static_cast<std::size_t>(it - list.begin());
    }

    /// Normal form modulo I. Linear and idempotent.
    PathCombo reduce(const PathCombo& c) const
    {
        PathCombo out(c.source(), c.target());
        std::map<std::size_t, std::vector<std::pair<const Path*, const Rational*>>> by_length;
        for (const auto& [p, coeff] : c.terms())
            if (p.length() < bound_)
                by_length[p.length()].push_back({&p, &coeff});
        for (const auto& [len, terms] : by_length) {
            auto it = strata_.find({c.source(), c.target(), len});
            if (it == strata_.end())
                throw ValidationError("reduce: path outside compiled tables");
            const Stratum& st = it->second;
            std::vector<Rational> v(st.paths.size());
            for (const auto& [p, coeff] : terms)
                v[st.index_of(*p)] += *coeff;
            st.reduce_in_place(v);
            for (std::size_t k : st.normal)
                if (sgn(v[k]) != 0)
                    out.add(st.paths[k], v[k]);
        }
        return out;
    }

    /// reduce(u v), skipping products that are already long enough to vanish.
    PathCombo multiply(const PathCombo& u, const PathCombo& v) const
    {
        if (u.target() != v.source())
            throw ValidationError("multiply: combos are not composable");
        PathCombo raw(u.source(), v.target());
        for (const auto& [p, a] : u.terms())
            for (const auto& [q, b] : v.terms())
                if (p.length() + q.length() < bound_)
                    raw.add(concat(p, q), a * b);
        return reduce(raw);
    }

    bool is_zero_path(const Path& p) const { return reduce(PathCombo::single(p)).is_zero(); }

    /// Matrix of x -> reduce(x * arrow) from P_a(v) to P_a(w) for arrow v -> w.
    Matrix projective_arrow_matrix(VertexId a, ArrowId arrow) const
    {
        const auto& ar = quiver_.arrow(arrow);
        const auto& dom = normal_paths(a, ar.source);
        const auto& cod = normal_paths(a, ar.target);
        Matrix m(cod.size(), dom.size());
        const auto arrow_combo = PathCombo::single(arrow_path(quiver_, arrow));
        for (std::size_t j = 0; j < dom.size(); ++j) {
            auto img = multiply(PathCombo::single(dom[j]), arrow_combo);
            write_coords(img, m, 0, j);
        }
        return m;
    }

    /// Vertex-v component of P(u): P_{t(u)} -> P_{s(u)}, x -> reduce(u x).
    Matrix path_action_at(const PathCombo& u, VertexId v) const
    {
        const auto& dom = normal_paths(u.target(), v);
        const auto& cod = normal_paths(u.source(), v);
        Matrix m(cod.size(), dom.size());
        for (std::size_t j = 0; j < dom.size(); ++j)
            write_coords(multiply(u, PathCombo::single(dom[j])), m, 0, j);
        return m;
    }

    /// Per-vertex matrices of P(u).
    std::vector<Matrix> path_action(const PathCombo& u) const
    {
        check_vertex(u.source());
        check_vertex(u.target());
        std::vector<Matrix> out;
        for (VertexId v = 0; v < vertex_count(); ++v)
            out.push_back(path_action_at(u, v));
        return out;
    }

    /// Writes the coordinates of a reduced combo into column `col` of m,
    /// starting at row `row0`, in the order of normal_paths(source, target).
    void write_coords(const PathCombo& reduced, Matrix& m, std::size_t row0, std::size_t col) const
    {
        for (const auto& [p, c] : reduced.terms()) {
            auto idx = normal_index(p);
            if (!idx)
                throw ValidationError("write_coords: combo is not in normal form");
            m(row0 + *idx, col) = c;
        }
    }

    /// Inverse of write_coords over a column segment.
    PathCombo combo_from_coords(VertexId s, VertexId t, const Matrix& m, std::size_t row0, std::size_t col) const
    {
        PathCombo out(s, t);
        const auto& list = normal_paths(s, t);
        for (std::size_t k = 0; k < list.size(); ++k)
            out.add(list[k], m(row0 + k, col));
        return out;
    }

    void check_vertex(VertexId v) const
    {
        if (v >= vertex_count())
            throw ValidationError("unknown vertex id " + std::to_string(v));
    }

private:
    struct Stratum {
        std::vector<Path> paths;
        Matrix ideal;                   // reduced rows spanning I in this stratum
        std::vector<std::size_t> pivots;
        std::vector<std::size_t> normal;

        std::size_t index_of(const Path& p) const
        {
            auto it = std::lower_bound(paths.begin(), paths.end(), p);
            if (it == paths.end() || *it != p)
                throw ValidationError("stratum lookup failed");
            return static_cast<std::size_t>(it - paths.begin());
        }

        void reduce_in_place(std::vector<Rational>& v) const
        {
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                const Rational f = v[pivots[i]];
                if (sgn(f) == 0)
                    continue;
                for (std::size_t c = 0; c < paths.size(); ++c)
                    if (sgn(ideal(i, c)) != 0)
                        v[c] -= f * ideal(i, c);
            }
        }
    };

    using Key = std::tuple<VertexId, VertexId, std::size_t>;

    Algebra() = default;

    void build(std::optional<std::size_t> bound, const CompileOptions& options)
    {
        if (quiver_.vertex_count() == 0)
            throw ValidationError("quiver has no vertices");

        std::size_t max_rel = 0;
        for (const auto& r : relations_) {
            if (r.is_zero())
                throw ValidationError("zero relation");
            std::size_t len = r.terms().begin()->first.length();
            for (const auto& [p, c] : r.terms()) {
                if (p.length() != len)
                    throw ValidationError("relation is not length-homogeneous");
                if (p.length() < 2)
                    throw ValidationError("relation involves a path of length < 2");
            }
            max_rel = std::max(max_rel, len);
        }
        bound_ = bound.value_or(max_rel == 0 ? quiver_.vertex_count() : max_rel * quiver_.vertex_count());
        if (bound_ == 0)
            throw ValidationError("nilpotency bound must be positive");
        for (const auto& r : relations_)
            if (r.terms().begin()->first.length() > bound_)
                throw ValidationError("relation longer than the nilpotency bound");

        // Enumerate all paths of length 0..N.
        std::vector<std::vector<Path>> by_length(bound_ + 1);
        for (VertexId v = 0; v < quiver_.vertex_count(); ++v)
            by_length[0].push_back(Path::trivial(v));
        std::size_t total = by_length[0].size();
        for (std::size_t len = 1; len <= bound_; ++len) {
            for (const auto& p : by_length[len - 1])
                for (ArrowId a = 0; a < quiver_.arrow_count(); ++a)
                    if (quiver_.arrow(a).source == p.target) {
                        Path q = p;
                        q.arrows.push_back(a);
                        q.target = quiver_.arrow(a).target;
                        by_length[len].push_back(std::move(q));
                        if (++total > options.path_cap)
                            throw ValidationError("path enumeration exceeds cap of " +
                                                  std::to_string(options.path_cap));
                    }
        }

        // Group into strata.
        std::map<Key, std::vector<Path>> grouped;
        for (std::size_t len = 0; len <= bound_; ++len)
            for (const auto& p : by_length[len])
                grouped[{p.source, p.target, len}].push_back(p);
        for (auto& [key, paths] : grouped) {
            std::sort(paths.begin(), paths.end());
            strata_[key].paths = std::move(paths);
        }

        // I_L = R_L + I_{L-1} * arrows + arrows * I_{L-1}, stratum by stratum.
        std::vector<PathCombo> previous;
        for (std::size_t len = 0; len <= bound_; ++len) {
            std::vector<PathCombo> gens;
            for (const auto& r : relations_)
                if (r.terms().begin()->first.length() == len)
                    gens.push_back(r);
            for (const auto& g : previous)
                for (ArrowId a = 0; a < quiver_.arrow_count(); ++a) {
                    const auto ap = PathCombo::single(arrow_path(quiver_, a));
                    if (quiver_.arrow(a).source == g.target())
                        gens.push_back(concat(g, ap));
                    if (quiver_.arrow(a).target == g.source())
                        gens.push_back(concat(ap, g));
                }
            std::map<std::pair<VertexId, VertexId>, std::vector<const PathCombo*>> gen_by_ends;
            for (const auto& g : gens)
                gen_by_ends[{g.source(), g.target()}].push_back(&g);

            std::vector<PathCombo> basis;
            for (auto& [key, st] : strata_) {
                if (std::get<2>(key) != len)
                    continue;
                const auto& list = gen_by_ends[{std::get<0>(key), std::get<1>(key)}];
                Matrix m(list.size(), st.paths.size());
                for (std::size_t i = 0; i < list.size(); ++i)
                    for (const auto& [p, c] : list[i]->terms())
                        m(i, st.index_of(p)) = c;
                auto [red, pivots] = rref(std::move(m));
                st.ideal = red.row_range(0, pivots.size());
                st.pivots = pivots;
                std::vector<bool> is_pivot(st.paths.size(), false);
                for (auto p : pivots)
                    is_pivot[p] = true;
                for (std::size_t c = 0; c < st.paths.size(); ++c)
                    if (!is_pivot[c])
                        st.normal.push_back(c);
                for (std::size_t i = 0; i < pivots.size(); ++i) {
                    PathCombo row(std::get<0>(key), std::get<1>(key));
                    for (std::size_t c = 0; c < st.paths.size(); ++c)
                        row.add(st.paths[c], st.ideal(i, c));
                    basis.push_back(std::move(row));
                }
                if (len == bound_ && !st.normal.empty())
                    throw ValidationError("admissibility failure: path " +
                                          path_name(quiver_, st.paths[st.normal.front()]) + " of length " +
                                          std::to_string(bound_) + " does not reduce to 0");
            }
            previous = std::move(basis);
        }

        // Normal paths live strictly below the bound.
        for (auto& [key, st] : strata_) {
            if (std::get<2>(key) >= bound_)
                continue;
            auto& out = normal_by_endpoints_[{std::get<0>(key), std::get<1>(key)}];
            for (auto k : st.normal)
                out.push_back(st.paths[k]);
        }
        for (auto& [key, list] : normal_by_endpoints_)
            std::sort(list.begin(), list.end());
    }

    Quiver quiver_;
    std::vector<PathCombo> relations_;
    std::size_t bound_ = 0;
    std::map<Key, Stratum> strata_;
    std::map<std::pair<VertexId, VertexId>, std::vector<Path>> normal_by_endpoints_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Convenience builder: relations given as lists of (coefficient, arrow-name path).
struct RelationTerm {
    Rational coeff;
    std::vector<std::string> path;
};

inline PathCombo make_relation(const Quiver& q, const std::vector<RelationTerm>& terms)
{
    if (terms.empty())
        throw ValidationError("empty relation");
    std::optional<PathCombo> out;
    for (const auto& t : terms) {
        if (t.path.empty())
            throw ValidationError("relation term with trivial path");
        Path p = make_path(q, t.path);
        if (!out)
            out = PathCombo(p.source, p.target);
        out->add(p, t.coeff);
    }
    return *out;
}

inline PathCombo monomial(const Quiver& q, const std::vector<std::string>& arrows)
{
    return PathCombo::single(make_path(q, arrows));
}

} // namespace quivdc
