#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "quivdc/error.hpp"
#include "quivdc/rational.hpp"

namespace quivdc {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
    std::string name;
    VertexId source;
    VertexId target;
};

/// Finite quiver with named vertices and arrows.
class Quiver {
public:
    Quiver() = default;

    VertexId add_vertex(const std::string& name)
    {
        if (vertex_index_.contains(name))
            throw ValidationError("duplicate vertex '" + name + "'");
        vertex_index_.emplace(name, vertices_.size());
        vertices_.push_back(name);
        return vertices_.size() - 1;
    }

    ArrowId add_arrow(const std::string& name, const std::string& source, const std::string& target)
    {
        if (arrow_index_.contains(name))
            throw ValidationError("duplicate arrow '" + name + "'");
        if (vertex_index_.contains(name))
            throw ValidationError("arrow name '" + name + "' collides with a vertex");
        arrows_.push_back({name, vertex(source), vertex(target)});
        arrow_index_.emplace(name, arrows_.size() - 1);
        return arrows_.size() - 1;
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<std::string>& vertex_names() const { return vertices_; }

    VertexId vertex(const std::string& name) const
    {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end())
            throw ValidationError("unknown vertex '" + name + "'");
        return it->second;
    }

    ArrowId arrow_id(const std::string& name) const
    {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end())
            throw ValidationError("unknown arrow '" + name + "'");
        return it->second;
    }

    bool has_vertex(const std::string& name) const { return vertex_index_.contains(name); }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, VertexId> vertex_index_;
    std::unordered_map<std::string, ArrowId> arrow_index_;
};

/// A path in traversal order: `arrows.front()` is traversed first. The empty
/// arrow list is the trivial path at `source` (then source == target).
///
/// Juxtaposition pq always means "traverse p, then q".
struct Path {
    VertexId source = 0;
    VertexId target = 0;
    std::vector<ArrowId> arrows;

    std::size_t length() const { return arrows.size(); }
    bool is_trivial() const { return arrows.empty(); }

    static Path trivial(VertexId v) { return {v, v, {}}; }

    auto operator<=>(const Path& other) const
    {
        if (auto c = arrows.size() <=> other.arrows.size(); c != 0)
            return c;
        if (auto c = source <=> other.source; c != 0)
            return c;
        if (auto c = target <=> other.target; c != 0)
            return c;
        return arrows <=> other.arrows;
    }
    bool operator==(const Path&) const = default;
};

inline Path arrow_path(const Quiver& q, ArrowId a)
{
    return {q.arrow(a).source, q.arrow(a).target, {a}};
}

/// Builds a path from arrow ids, checking that consecutive arrows compose.
inline Path make_path(const Quiver& q, const std::vector<ArrowId>& arrows)
{
    if (arrows.empty())
        throw ValidationError("make_path: use Path::trivial for empty paths");
    Path p{q.arrow(arrows.front()).source, q.arrow(arrows.front()).source, {}};
    for (ArrowId a : arrows) {
        if (q.arrow(a).source != p.target)
            throw ValidationError("arrows do not compose: '" + q.arrow(a).name + "' does not start at '" +
                                  q.vertex_name(p.target) + "'");
        p.arrows.push_back(a);
        p.target = q.arrow(a).target;
    }
    return p;
}

inline Path make_path(const Quiver& q, const std::vector<std::string>& names)
{
    std::vector<ArrowId> ids;
    ids.reserve(names.size());
    for (const auto& n : names)
        ids.push_back(q.arrow_id(n));
    return make_path(q, ids);
}

/// pq: traverse p, then q.
inline Path concat(const Path& p, const Path& q)
{
    if (p.target != q.source)
        throw ValidationError("concat: paths are not composable");
    Path r{p.source, q.target, p.arrows};
    r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
    return r;
}

inline std::string path_name(const Quiver& q, const Path& p)
{
    if (p.is_trivial())
        return "e_" + q.vertex_name(p.source);
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i)
        s += (i ? "." : "") + q.arrow(p.arrows[i]).name;
    return s;
}

/// Rational combination of parallel paths from `source` to `target`.
/// Zero coefficients are never stored; the empty map is the zero element.
class PathCombo {
public:
    PathCombo() = default;
    PathCombo(VertexId source, VertexId target) : source_(source), target_(target) {}

    static PathCombo single(const Path& p, const Rational& c = 1)
    {
        PathCombo out(p.source, p.target);
        out.add(p, c);
        return out;
    }

    VertexId source() const { return source_; }
    VertexId target() const { return target_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Path, Rational>& terms() const { return terms_; }

    void add(const Path& p, const Rational& c)
    {
        if (p.source != source_ || p.target != target_)
            throw ValidationError("PathCombo: non-parallel path");
        if (sgn(c) == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                terms_.erase(it);
        }
    }

    PathCombo& operator+=(const PathCombo& o)
    {
        check_parallel(o);
        for (const auto& [p, c] : o.terms_)
            add(p, c);
        return *this;
    }

    PathCombo& operator-=(const PathCombo& o)
    {
        check_parallel(o);
        for (const auto& [p, c] : o.terms_)
            add(p, -c);
        return *this;
    }

    PathCombo scaled(const Rational& s) const
    {
        PathCombo out(source_, target_);
        if (sgn(s) == 0)
            return out;
        for (const auto& [p, c] : terms_)
            out.terms_.emplace(p, c * s);
        return out;
    }

    /// Coefficient on the trivial path (zero unless source == target).
    Rational trivial_coefficient() const
    {
        if (source_ != target_)
            return 0;
        auto it = terms_.find(Path::trivial(source_));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool operator==(const PathCombo& o) const
    {
        return source_ == o.source_ && target_ == o.target_ && terms_ == o.terms_;
    }

private:
    void check_parallel(const PathCombo& o) const
    {
        if (o.source_ != source_ || o.target_ != target_)
            throw ValidationError("PathCombo: operands are not parallel");
    }

    VertexId source_ = 0;
    VertexId target_ = 0;
    std::map<Path, Rational> terms_;
};

/// Unreduced product: every term of u followed by every term of v.
inline PathCombo concat(const PathCombo& u, const PathCombo& v)
{
    if (u.target() != v.source())
        throw ValidationError("concat: combos are not composable");
    PathCombo out(u.source(), v.target());
    for (const auto& [p, a] : u.terms())
        for (const auto& [q, b] : v.terms())
            out.add(concat(p, q), a * b);
    return out;
}

inline std::string combo_name(const Quiver& q, const PathCombo& c)
{
    if (c.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, coeff] : c.terms()) {
        if (!first)
            s += " + ";
        first = false;
        if (coeff != 1)
            s += to_string(coeff) + "*";
        s += path_name(q, p);
    }
    return s;
}

} // namespace quivdc
