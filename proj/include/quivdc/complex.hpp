#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "quivdc/combo_matrix.hpp"
#include "quivdc/representation.hpp"

namespace quivdc {

/// Bounded complex of finitely generated projectives.
///
/// Component i (degree lo + i) is the direct sum of P_v over its labels.
/// differentials[i] is d^{lo+i}: X^{lo+i} -> X^{lo+i+1}; its entry (r, c) is a
/// combination of paths from the r-th label of X^{lo+i+1} to the c-th label
/// of X^{lo+i}. An empty component list is the zero complex.
class PerfectComplex {
public:
    PerfectComplex() = default;
    explicit PerfectComplex(AlgebraPtr alg) : alg_(std::move(alg)) {}

    PerfectComplex(AlgebraPtr alg, int lo, std::vector<std::vector<VertexId>> components,
                   std::vector<ComboMatrix> differentials)
        : alg_(std::move(alg)), lo_(lo), components_(std::move(components)), diffs_(std::move(differentials))
    {
        if (components_.empty() ? !diffs_.empty() : diffs_.size() + 1 != components_.size())
            throw ValidationError("perfect complex: need exactly one differential between consecutive components");
        for (std::size_t i = 0; i < diffs_.size(); ++i)
            if (diffs_[i].col_labels() != components_[i] || diffs_[i].row_labels() != components_[i + 1])
                throw ValidationError("perfect complex: differential " + std::to_string(lo_ + int(i)) +
                                      " does not match its components");
    }

    /// Stalk complex P_a in degree `degree`.
    static PerfectComplex stalk(AlgebraPtr alg, VertexId a, int degree = 0)
    {
        alg->check_vertex(a);
        return PerfectComplex(std::move(alg), degree, {{a}}, {});
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + int(components_.size()) - 1; }
    bool empty() const { return components_.empty(); }

    const std::vector<std::vector<VertexId>>& components() const { return components_; }
    const std::vector<ComboMatrix>& differentials() const { return diffs_; }

    /// Labels in degree i (empty outside [lo, hi]).
    std::vector<VertexId> component(int degree) const
    {
        if (empty() || degree < lo_ || degree > hi())
            return {};
        return components_[degree - lo_];
    }

    /// d^i; a zero map with the right labels outside the stored range.
    ComboMatrix differential(int degree) const
    {
        if (!empty() && degree >= lo_ && degree < hi())
            return diffs_[degree - lo_];
        return ComboMatrix(component(degree + 1), component(degree));
    }

    /// Number of projective summands over all degrees.
    std::size_t summand_count() const
    {
        std::size_t n = 0;
        for (const auto& c : components_)
            n += c.size();
        return n;
    }

    /// Nonzero degrees, or nullopt for the zero complex.
    std::optional<std::pair<int, int>> support() const
    {
        std::optional<std::pair<int, int>> s;
        for (std::size_t i = 0; i < components_.size(); ++i)
            if (!components_[i].empty()) {
                const int d = lo_ + int(i);
                s = s ? std::make_pair(s->first, d) : std::make_pair(d, d);
            }
        return s;
    }

    /// Same complex with empty components stripped from both ends.
    PerfectComplex trimmed() const
    {
        auto s = support();
        if (!s)
            return PerfectComplex(alg_);
        std::vector<std::vector<VertexId>> comps;
        std::vector<ComboMatrix> diffs;
        for (int d = s->first; d <= s->second; ++d) {
            comps.push_back(component(d));
            if (d < s->second)
                diffs.push_back(differential(d));
        }
        return PerfectComplex(alg_, s->first, std::move(comps), std::move(diffs));
    }

    bool operator==(const PerfectComplex& o) const
    {
        return alg_ == o.alg_ && lo_ == o.lo_ && components_ == o.components_ && diffs_ == o.diffs_;
    }

private:
    AlgebraPtr alg_;
    int lo_ = 0;
    std::vector<std::vector<VertexId>> components_;
    std::vector<ComboMatrix> diffs_;
};

/// Throws ValidationError naming the first ill-typed entry or the first degree
/// where d^{i+1} d^i does not reduce to zero.
inline void validate(const PerfectComplex& p)
{
    const Algebra& alg = *p.algebra();
    for (std::size_t i = 0; i < p.differentials().size(); ++i) {
        const int deg = p.lo() + int(i);
        const auto& d = p.differentials()[i];
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c) {
                const auto& e = d(r, c);
                if (e.source() != d.row_labels()[r] || e.target() != d.col_labels()[c])
                    throw ValidationError("ill-typed entry (" + std::to_string(r) + "," + std::to_string(c) +
                                          ") of d^" + std::to_string(deg));
                if (!(alg.reduce(e) == e))
                    throw ValidationError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") of d^" +
                                          std::to_string(deg) + " is not in normal form");
            }
    }
    for (std::size_t i = 0; i + 1 < p.differentials().size(); ++i)
        if (!compose(alg, p.differentials()[i + 1], p.differentials()[i]).is_zero())
            throw ValidationError("d^2 != 0 at degree " + std::to_string(p.lo() + int(i)));
}

/// Bounded cochain complex of representations.
struct ModuleComplex {
    AlgebraPtr algebra;
    int lo = 0;
    std::vector<Representation> terms;
    std::vector<RepMap> diffs; // diffs[i]: terms[i] -> terms[i+1]

    int hi() const { return lo + int(terms.size()) - 1; }

    /// Throws unless every differential is a module map and d^2 = 0.
    void validate() const
    {
        if (terms.empty() ? !diffs.empty() : diffs.size() + 1 != terms.size())
            throw ValidationError("module complex: differential count mismatch");
        for (std::size_t i = 0; i < diffs.size(); ++i)
            if (!is_morphism(terms[i], terms[i + 1], diffs[i]))
                throw ValidationError("module complex: d^" + std::to_string(lo + int(i)) + " is not a module map");
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
            if (!is_zero_map(quivdc::compose(diffs[i + 1], diffs[i])))
                throw ValidationError("module complex: d^2 != 0 at degree " + std::to_string(lo + int(i)));
    }

    static ModuleComplex stalk(const Representation& m, int degree = 0)
    {
        return {m.algebra(), degree, {m}, {}};
    }
};

/// Realizes each component as a projective representation and each
/// differential through path_action.
inline ModuleComplex to_module_complex(const PerfectComplex& p)
{
    ModuleComplex m{p.algebra(), p.lo(), {}, {}};
    for (const auto& c : p.components())
        m.terms.push_back(projective_sum(p.algebra(), c));
    for (const auto& d : p.differentials())
        m.diffs.push_back(combo_matrix_map(*p.algebra(), d));
    return m;
}

struct Cohomology {
    int lo = 0;
    std::vector<Representation> modules;

    std::vector<std::size_t> dims() const
    {
        std::vector<std::size_t> out;
        for (const auto& h : modules)
            out.push_back(h.total_dim());
        return out;
    }

    std::size_t dim_at(int degree) const
    {
        if (degree < lo || degree >= lo + int(modules.size()))
            return 0;
        return modules[degree - lo].total_dim();
    }

    /// Degrees with nonzero cohomology.
    std::optional<std::pair<int, int>> support() const
    {
        std::optional<std::pair<int, int>> s;
        for (std::size_t i = 0; i < modules.size(); ++i)
            if (!modules[i].is_zero()) {
                const int d = lo + int(i);
                s = s ? std::make_pair(s->first, d) : std::make_pair(d, d);
            }
        return s;
    }

    /// Cohomology dimension vector over the stored degree range.
    std::vector<std::size_t> dimension_vector() const { return dims(); }
};

/// H^i = ker d^i / im d^{i-1}, vertex by vertex, with induced arrow actions.
inline Cohomology cohomology(const ModuleComplex& x)
{
    Cohomology h{x.lo, {}};
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
        const auto& t = x.terms[i];
        std::vector<Matrix> ker, img;
        for (VertexId v = 0; v < t.dims().size(); ++v) {
            ker.push_back(i < x.diffs.size() ? nullspace(x.diffs[i].components[v]) : Matrix::identity(t.dim(v)));
            img.push_back(i > 0 ? x.diffs[i - 1].components[v] : Matrix(t.dim(v), 0));
        }
        h.modules.push_back(subquotient(t, ker, img).module);
    }
    return h;
}

inline Cohomology cohomology(const PerfectComplex& p) { return cohomology(to_module_complex(p)); }

/// Cohomological length, width and range.
struct InvariantTriple {
    std::size_t hl = 0;
    std::size_t hw = 0;
    std::size_t hr = 0;
    bool operator==(const InvariantTriple&) const = default;
};

/// Throws UndefinedInvariant on an acyclic complex (the zero object of D^b).
inline InvariantTriple invariants(const Cohomology& h)
{
    auto s = h.support();
    if (!s)
        throw UndefinedInvariant("zero object in D^b: cohomology vanishes in every degree");
    InvariantTriple t;
    for (const auto& m : h.modules)
        t.hl = std::max(t.hl, m.total_dim());
    t.hw = std::size_t(s->second - s->first + 1);
    t.hr = t.hw * t.hl;
    return t;
}

inline InvariantTriple invariants(const ModuleComplex& x) { return invariants(cohomology(x)); }
inline InvariantTriple invariants(const PerfectComplex& p) { return invariants(cohomology(p)); }

/// X[n]: degree i holds X^{i+n}; differentials pick up the sign (-1)^n.
inline PerfectComplex shift(const PerfectComplex& p, int n)
{
    if (p.empty())
        return p;
    std::vector<ComboMatrix> diffs = p.differentials();
    if (n % 2 != 0)
        for (auto& d : diffs)
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c)
                    d.set(r, c, d(r, c).scaled(-1));
    return PerfectComplex(p.algebra(), p.lo() - n, p.components(), std::move(diffs));
}

inline ModuleComplex shift(const ModuleComplex& x, int n)
{
    ModuleComplex out = x;
    out.lo = x.lo - n;
    if (n % 2 != 0)
        for (auto& d : out.diffs)
            for (auto& m : d.components)
                m = Rational(-1) * m;
    return out;
}

inline PerfectComplex direct_sum(const PerfectComplex& a, const PerfectComplex& b)
{
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    std::vector<std::vector<VertexId>> comps;
    std::vector<ComboMatrix> diffs;
    for (int d = lo; d <= hi; ++d) {
        auto c = a.component(d);
        auto cb = b.component(d);
        c.insert(c.end(), cb.begin(), cb.end());
        comps.push_back(std::move(c));
    }
    for (int d = lo; d < hi; ++d) {
        ComboMatrix m(comps[d + 1 - lo], comps[d - lo]);
        const auto da = a.differential(d);
        const auto db = b.differential(d);
        for (std::size_t r = 0; r < da.rows(); ++r)
            for (std::size_t c = 0; c < da.cols(); ++c)
                m.set(r, c, da(r, c));
        for (std::size_t r = 0; r < db.rows(); ++r)
            for (std::size_t c = 0; c < db.cols(); ++c)
                m.set(da.rows() + r, da.cols() + c, db(r, c));
        diffs.push_back(std::move(m));
    }
    return PerfectComplex(a.algebra(), lo, std::move(comps), std::move(diffs));
}

inline ModuleComplex direct_sum(const ModuleComplex& a, const ModuleComplex& b)
{
    if (a.terms.empty())
        return b;
    if (b.terms.empty())
        return a;
    const auto alg = a.algebra;
    const int lo = std::min(a.lo, b.lo);
    const int hi = std::max(a.hi(), b.hi());
    auto term = [&](const ModuleComplex& x, int d) {
        return d < x.lo || d > x.hi() ? Representation::zero(alg) : x.terms[d - x.lo];
    };
    auto diff = [&](const ModuleComplex& x, int d) {
        if (d >= x.lo && d < x.hi())
            return x.diffs[d - x.lo];
        return zero_map(term(x, d), term(x, d + 1));
    };
    ModuleComplex out{alg, lo, {}, {}};
    for (int d = lo; d <= hi; ++d)
        out.terms.push_back(direct_sum(term(a, d), term(b, d)));
    for (int d = lo; d < hi; ++d) {
        RepMap m;
        const auto fa = diff(a, d);
        const auto fb = diff(b, d);
        for (VertexId v = 0; v < alg->vertex_count(); ++v) {
            Matrix blk(out.terms[d + 1 - lo].dim(v), out.terms[d - lo].dim(v));
            blk.set_block(0, 0, fa.components[v]);
            blk.set_block(fa.components[v].rows(), fa.components[v].cols(), fb.components[v]);
            m.components.push_back(std::move(blk));
        }
        out.diffs.push_back(std::move(m));
    }
    return out;
}

enum class TruncMode { Brutal, Good };
enum class TruncSide { AtLeast, AtMost };

/// Brutal truncation of a perfect complex: sigma_{>=j} keeps degrees >= j,
/// sigma_{<=j} keeps degrees <= j.
inline PerfectComplex brutal_truncate(const PerfectComplex& p, TruncSide side, int j)
{
    if (p.empty())
        return p;
    const int lo = side == TruncSide::AtLeast ? std::max(p.lo(), j) : p.lo();
    const int hi = side == TruncSide::AtMost ? std::min(p.hi(), j) : p.hi();
    if (lo > hi)
        return PerfectComplex(p.algebra());
    std::vector<std::vector<VertexId>> comps;
    std::vector<ComboMatrix> diffs;
    for (int d = lo; d <= hi; ++d) {
        comps.push_back(p.component(d));
        if (d < hi)
            diffs.push_back(p.differential(d));
    }
    return PerfectComplex(p.algebra(), lo, std::move(comps), std::move(diffs));
}

/// Brutal or good truncation of a module complex. Good truncation keeps the
/// cohomology on the kept side: tau_{<=j} replaces X^j by ker d^j, tau_{>=j}
/// replaces X^j by coker d^{j-1}.
inline ModuleComplex truncate(const ModuleComplex& x, TruncMode mode, TruncSide side, int j)
{
    if (x.terms.empty())
        return x;
    const int lo = side == TruncSide::AtLeast ? std::max(x.lo, j) : x.lo;
    const int hi = side == TruncSide::AtMost ? std::min(x.hi(), j) : x.hi();
    if (lo > hi)
        return ModuleComplex{x.algebra, j, {}, {}};
    ModuleComplex out{x.algebra, lo, {}, {}};
    for (int d = lo; d <= hi; ++d)
        out.terms.push_back(x.terms[d - x.lo]);
    for (int d = lo; d < hi; ++d)
        out.diffs.push_back(x.diffs[d - x.lo]);
    if (mode == TruncMode::Brutal)
        return out;

    if (side == TruncSide::AtMost && j == hi && j < x.hi()) {
        // X^j -> ker d^j
        auto k = kernel(x.terms[j - x.lo], x.diffs[j - x.lo]);
        auto& top_term = out.terms.back();
        if (!out.diffs.empty()) {
            // d^{j-1} lands in ker d^j; rewrite it in kernel coordinates
            RepMap& into = out.diffs.back();
            for (VertexId v = 0; v < x.algebra->vertex_count(); ++v)
                into.components[v] = detail::left_inverse(k.inclusion.components[v]) * into.components[v];
        }
        top_term = k.module;
    }
    if (side == TruncSide::AtLeast && j == lo && j > x.lo) {
        // coker d^{j-1} -> X^{j+1}
        auto q = cokernel(x.terms[j - x.lo], x.diffs[j - 1 - x.lo]);
        if (!out.diffs.empty()) {
            RepMap& from = out.diffs.front();
            for (VertexId v = 0; v < x.algebra->vertex_count(); ++v) {
                // d^j kills im d^{j-1}, so it factors through any section
                const Matrix section = detail::left_inverse(q.projection.components[v].transpose()).transpose();
                from.components[v] = from.components[v] * section;
            }
        }
        out.terms.front() = q.module;
    }
    out.validate();
    return out;
}

/// tau_{<=max} tau_{>=min} over the cohomology support; its width equals hw(x).
inline ModuleComplex tighten(const ModuleComplex& x)
{
    auto s = cohomology(x).support();
    if (!s)
        throw UndefinedInvariant("zero object in D^b: nothing to tighten");
    auto lower = truncate(x, TruncMode::Good, TruncSide::AtLeast, s->first);
    return truncate(lower, TruncMode::Good, TruncSide::AtMost, s->second);
}

/// Number of degrees between the first and last nonzero term, inclusive.
inline std::size_t width(const ModuleComplex& x)
{
    std::optional<std::pair<int, int>> s;
    for (std::size_t i = 0; i < x.terms.size(); ++i)
        if (!x.terms[i].is_zero()) {
            const int d = x.lo + int(i);
            s = s ? std::make_pair(s->first, d) : std::make_pair(d, d);
        }
    return s ? std::size_t(s->second - s->first + 1) : 0;
}

} // namespace quivdc
