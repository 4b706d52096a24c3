#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quivdc/complex.hpp"

namespace quivdc {

// ---------------------------------------------------------------------------
// Named algebras

/// A_n^m: vertices 1..n, arrows a{j}: j+1 -> j, all paths of length m zero.
inline AlgebraPtr truncated_linear(std::size_t n, std::size_t m)
{
    if (n < 1 || m < 2)
        throw ValidationError("truncated_linear: need n >= 1 and m >= 2");
    Quiver q;
    for (std::size_t v = 1; v <= n; ++v)
        q.add_vertex(std::to_string(v));
    for (std::size_t j = 1; j < n; ++j)
        q.add_arrow("a" + std::to_string(j), std::to_string(j + 1), std::to_string(j));
    std::vector<PathCombo> rels;
    for (std::size_t top = m + 1; top <= n; ++top) {
        std::vector<std::string> names;
        for (std::size_t j = top - 1; j + m >= top; --j)
            names.push_back("a" + std::to_string(j));
        rels.push_back(monomial(q, names));
    }
    return Algebra::compile(std::move(q), std::move(rels), m);
}

/// Path algebra of the linearly oriented A_n (arrows a{j}: j+1 -> j).
inline AlgebraPtr hereditary_linear(std::size_t n)
{
    if (n < 1)
        throw ValidationError("hereditary_linear: need n >= 1");
    Quiver q;
    for (std::size_t v = 1; v <= n; ++v)
        q.add_vertex(std::to_string(v));
    for (std::size_t j = 1; j < n; ++j)
        q.add_arrow("a" + std::to_string(j), std::to_string(j + 1), std::to_string(j));
    return Algebra::compile(std::move(q), {});
}

/// Lambda(r, n, m): cycle a{i}: i -> i+1 on 0..n-1 (a{n-1}: n-1 -> 0), tail
/// a{-k}: -k -> -k+1 for k = 1..m, relations a{n-1}a{0}, ..., a{n-r}a{n-r+1}.
inline AlgebraPtr lambda_algebra(long r, long n, long m)
{
    if (!(n >= r && r >= 1) || m < 0)
        throw ValidationError("lambda_algebra: need n >= r >= 1 and m >= 0");
    Quiver q;
    for (long v = -m; v < n; ++v)
        q.add_vertex(std::to_string(v));
    auto name = [](long i) { return "a" + std::to_string(i); };
    for (long i = -m; i < 0; ++i)
        q.add_arrow(name(i), std::to_string(i), std::to_string(i + 1));
    for (long i = 0; i < n; ++i)
        q.add_arrow(name(i), std::to_string(i), std::to_string((i + 1) % n));
    std::vector<PathCombo> rels;
    for (long k = 0; k < r; ++k)
        rels.push_back(monomial(q, {name(n - 1 - k), name((n - k) % n)}));
    return Algebra::compile(std::move(q), std::move(rels));
}

/// Kronecker algebra: two arrows a, b: 1 -> 2.
inline AlgebraPtr kronecker()
{
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("a", "1", "2");
    q.add_arrow("b", "1", "2");
    return Algebra::compile(std::move(q), {});
}

/// k[x]/(x^n) on one vertex "a" with loop "x".
inline AlgebraPtr loop_algebra(std::size_t n)
{
    if (n < 2)
        throw ValidationError("loop_algebra: need n >= 2");
    Quiver q;
    q.add_vertex("a");
    q.add_arrow("x", "a", "a");
    std::vector<PathCombo> rels{monomial(q, std::vector<std::string>(n, "x"))};
    return Algebra::compile(std::move(q), std::move(rels), n);
}

// ---------------------------------------------------------------------------
// Gentleness

struct GentleViolation {
    std::string condition;
    std::string witness;
};

struct GentleReport {
    bool is_gentle = true;
    std::vector<GentleViolation> violations;
};

namespace detail {

// Monomial length-two relations as arrow pairs (first traversed, second).
inline std::set<std::pair<ArrowId, ArrowId>> quadratic_zero_relations(const Algebra& alg)
{
    std::set<std::pair<ArrowId, ArrowId>> out;
    for (const auto& rel : alg.relations())
        if (rel.terms().size() == 1 && rel.terms().begin()->first.length() == 2) {
            const auto& arrows = rel.terms().begin()->first.arrows;
            out.insert({arrows[0], arrows[1]});
        }
    return out;
}

} // namespace detail

inline GentleReport is_gentle(const Algebra& alg)
{
    GentleReport rep;
    const Quiver& q = alg.quiver();
    auto fail = [&](std::string cond, std::string witness) {
        rep.violations.push_back({std::move(cond), std::move(witness)});
    };
    for (const auto& rel : alg.relations()) {
        if (rel.terms().size() != 1)
            fail("relation not monomial", combo_name(q, rel));
        else if (rel.terms().begin()->first.length() != 2)
            fail("relation length ≠ 2", combo_name(q, rel));
    }
    std::vector<std::size_t> in(q.vertex_count()), out(q.vertex_count());
    for (const auto& a : q.arrows()) {
        ++out[a.source];
        ++in[a.target];
    }
    for (VertexId v = 0; v < q.vertex_count(); ++v) {
        if (in[v] > 2)
            fail("more than 2 arrows in", q.vertex_name(v));
        if (out[v] > 2)
            fail("more than 2 arrows out", q.vertex_name(v));
    }
    const auto zero = detail::quadratic_zero_relations(alg);
    for (ArrowId b = 0; b < q.arrow_count(); ++b) {
        std::size_t after_in = 0, after_out = 0, before_in = 0, before_out = 0;
        for (ArrowId a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).source == q.arrow(b).target)
                ++(zero.contains({b, a}) ? after_in : after_out);
            if (q.arrow(a).target == q.arrow(b).source)
                ++(zero.contains({a, b}) ? before_in : before_out);
        }
        const auto& nm = q.arrow(b).name;
        if (after_in > 1)
            fail("several arrows a with " + nm + "a in I", nm);
        if (after_out > 1)
            fail("several arrows a with " + nm + "a not in I", nm);
        if (before_in > 1)
            fail("several arrows c with c" + nm + " in I", nm);
        if (before_out > 1)
            fail("several arrows c with c" + nm + " not in I", nm);
    }
    rep.is_gentle = rep.violations.empty();
    return rep;
}

inline void require_gentle(const Algebra& alg, const char* who)
{
    auto rep = is_gentle(alg);
    if (!rep.is_gentle)
        throw OutOfScope(std::string(who) + ": algebra is not gentle (" + rep.violations.front().condition + ": " +
                         rep.violations.front().witness + ")");
}

// ---------------------------------------------------------------------------
// Homotopy strings

/// A letter of a homotopy string: a nonzero path, read directly or inversely.
struct Letter {
    Path path;
    bool inverse = false;

    /// Walk vertex before / after the letter.
    VertexId start() const { return inverse ? path.source : path.target; }
    VertexId end() const { return inverse ? path.target : path.source; }
    bool operator==(const Letter&) const = default;
};

/// Word l_1 ... l_k. A direct letter p steps from t(p) to s(p) and raises the
/// degree by one; an inverse letter steps from s(p) to t(p) and lowers it.
/// The empty word at `vertex` describes the stalk P_vertex.
struct HomotopyString {
    std::vector<Letter> letters;
    bool cyclic = false;
    VertexId vertex = 0;
};

/// Nonzero paths of positive length; for a gentle algebra these are exactly
/// the paths avoiding every relation.
inline std::vector<Path> letters(const Algebra& alg)
{
    std::vector<Path> out;
    for (VertexId s = 0; s < alg.vertex_count(); ++s)
        for (VertexId t = 0; t < alg.vertex_count(); ++t)
            for (const auto& p : alg.normal_paths(s, t))
                if (!p.is_trivial())
                    out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string letter_name(const Quiver& q, const Letter& l)
{
    return (l.inverse ? "~" : "") + path_name(q, l.path);
}

/// Token "a1.a2" (traversal order) or "~a1.a2" for an inverse letter.
inline Letter parse_letter(const Quiver& q, std::string token)
{
    Letter l;
    if (!token.empty() && token.front() == '~') {
        l.inverse = true;
        token.erase(0, 1);
    }
    std::vector<std::string> names;
    std::size_t pos = 0;
    while (true) {
        auto dot = token.find('.', pos);
        names.push_back(token.substr(pos, dot - pos));
        if (dot == std::string::npos)
            break;
        pos = dot + 1;
    }
    for (const auto& n : names)
        if (n.empty())
            throw ValidationError("malformed letter '" + token + "'");
    l.path = make_path(q, names);
    return l;
}

inline HomotopyString parse_word(const Algebra& alg, const std::vector<std::string>& tokens, bool cyclic,
                                 std::optional<std::string> vertex = std::nullopt)
{
    HomotopyString w;
    w.cyclic = cyclic;
    for (const auto& t : tokens)
        w.letters.push_back(parse_letter(alg.quiver(), t));
    if (vertex)
        w.vertex = alg.quiver().vertex(*vertex);
    else if (!w.letters.empty())
        w.vertex = w.letters.front().start();
    else
        throw ValidationError("empty word needs a vertex");
    return w;
}

struct StringViolation {
    std::size_t position; // index of the first letter of the offending pair
    std::string reason;
};

/// Adjacency of consecutive letters x then y.
inline std::optional<std::string> adjacency_violation(const Algebra& alg, const Letter& x, const Letter& y)
{
    const Quiver& q = alg.quiver();
    if (x.end() != y.start())
        return "letters do not share a walk vertex";
    auto zero = [&](ArrowId a, ArrowId b) {
        return alg.is_zero_path(make_path(q, std::vector<ArrowId>{a, b}));
    };
    const auto& p = x.path.arrows;
    const auto& r = y.path.arrows;
    if (!x.inverse && !y.inverse) {
        if (!zero(r.back(), p.front()))
            return "direct letters do not cross a relation";
    } else if (x.inverse && y.inverse) {
        if (!zero(p.back(), r.front()))
            return "inverse letters do not cross a relation";
    } else if (!x.inverse && y.inverse) {
        if (p.front() == r.front())
            return "direct then inverse letter share their first arrow";
    } else {
        if (p.back() == r.back())
            return "inverse then direct letter share their last arrow";
    }
    return std::nullopt;
}

inline std::optional<StringViolation> validate_string(const Algebra& alg, const HomotopyString& w)
{
    if (w.cyclic && w.letters.empty())
        return StringViolation{0, "cyclic word is empty"};
    if (w.letters.empty()) {
        if (w.vertex >= alg.vertex_count())
            return StringViolation{0, "unknown vertex"};
        return std::nullopt;
    }
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const auto& p = w.letters[i].path;
        if (p.is_trivial() || alg.is_zero_path(p))
            return StringViolation{i, "letter " + std::to_string(i) + " is not a nonzero nontrivial path"};
    }
    const std::size_t pairs = w.cyclic ? w.letters.size() : w.letters.size() - 1;
    for (std::size_t i = 0; i < pairs; ++i) {
        const auto& x = w.letters[i];
        const auto& y = w.letters[(i + 1) % w.letters.size()];
        if (auto why = adjacency_violation(alg, x, y))
            return StringViolation{i, "letters " + std::to_string(i) + "," +
                                          std::to_string((i + 1) % w.letters.size()) + ": " + *why};
    }
    return std::nullopt;
}

inline bool is_balanced(const HomotopyString& w)
{
    long s = 0;
    for (const auto& l : w.letters)
        s += l.inverse ? -1 : 1;
    return s == 0;
}

/// Not a proper power u^k, k >= 2.
inline bool is_primitive(const HomotopyString& w)
{
    const std::size_t k = w.letters.size();
    for (std::size_t period = 1; period < k; ++period) {
        if (k % period)
            continue;
        bool repeats = true;
        for (std::size_t i = period; i < k && repeats; ++i)
            repeats = w.letters[i] == w.letters[i % period];
        if (repeats)
            return false;
    }
    return k > 0;
}

namespace detail {

// Walk vertices with their degrees, shifted so the minimum is 0.
inline std::vector<int> walk_degrees(const HomotopyString& w)
{
    std::vector<int> deg{0};
    for (const auto& l : w.letters)
        deg.push_back(deg.back() + (l.inverse ? -1 : 1));
    const int lo = *std::min_element(deg.begin(), deg.end());
    for (auto& d : deg)
        d -= lo;
    return deg;
}

struct Placement {
    std::vector<std::vector<VertexId>> comps;
    std::vector<std::size_t> position; // index of walk vertex i inside its component (first copy)
};

inline Placement place_walk(const std::vector<VertexId>& verts, const std::vector<int>& deg, std::size_t mult)
{
    Placement pl;
    const int hi = *std::max_element(deg.begin(), deg.end());
    pl.comps.resize(std::size_t(hi) + 1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto& c = pl.comps[std::size_t(deg[i])];
        pl.position.push_back(c.size());
        for (std::size_t k = 0; k < mult; ++k)
            c.push_back(verts[i]);
    }
    return pl;
}

inline std::vector<ComboMatrix> empty_differentials(const std::vector<std::vector<VertexId>>& comps)
{
    std::vector<ComboMatrix> diffs;
    for (std::size_t i = 0; i + 1 < comps.size(); ++i)
        diffs.emplace_back(comps[i + 1], comps[i]);
    return diffs;
}

// Adds u * coeffs(a, b) at rows r0 + a, cols c0 + b.
inline void add_block(ComboMatrix& m, std::size_t r0, std::size_t c0, const Path& u, const Matrix& coeffs)
{
    for (std::size_t a = 0; a < coeffs.rows(); ++a)
        for (std::size_t b = 0; b < coeffs.cols(); ++b)
            if (sgn(coeffs(a, b)) != 0)
                m.add(r0 + a, c0 + b, PathCombo::single(u, coeffs(a, b)));
}

// Places letter i (joining walk vertices i and i+1, indices taken mod the
// vertex count) with coefficient block `coeffs`.
inline void place_letter(std::vector<ComboMatrix>& diffs, const Placement& pl, const std::vector<int>& deg,
                         const Letter& l, std::size_t from, std::size_t to, const Matrix& coeffs)
{
    if (!l.inverse)
        add_block(diffs[std::size_t(deg[from])], pl.position[to], pl.position[from], l.path, coeffs);
    else
        add_block(diffs[std::size_t(deg[to])], pl.position[from], pl.position[to], l.path, coeffs);
}

} // namespace detail

/// String complex of a non-cyclic homotopy string. Walk vertices become
/// summands; a direct letter p contributes P(p): P_{t(p)} -> P_{s(p)}, an
/// inverse letter the same map in the opposite walk direction.
inline PerfectComplex string_complex(const AlgebraPtr& alg, const HomotopyString& w)
{
    if (w.cyclic)
        throw ValidationError("string_complex: word is cyclic");
    if (auto v = validate_string(*alg, w))
        throw ValidationError("string_complex: invalid string (" + v->reason + ")");
    if (w.letters.empty())
        return PerfectComplex::stalk(alg, w.vertex);
    std::vector<VertexId> verts{w.letters.front().start()};
    for (const auto& l : w.letters)
        verts.push_back(l.end());
    const auto deg = detail::walk_degrees(w);
    const auto pl = detail::place_walk(verts, deg, 1);
    auto diffs = detail::empty_differentials(pl.comps);
    const Matrix one = Matrix::identity(1);
    for (std::size_t i = 0; i < w.letters.size(); ++i)
        detail::place_letter(diffs, pl, deg, w.letters[i], i, i + 1, one);
    PerfectComplex p(alg, 0, pl.comps, std::move(diffs));
    validate(p);
    return p;
}

/// Band complex P_{w, (x - lambda)^d}: each walk vertex carries d copies, the
/// first direct letter of the word acts by the Jordan block J_{lambda,d} and
/// every other letter by the identity.
inline PerfectComplex band_complex(const AlgebraPtr& alg, const HomotopyString& w, const Rational& lambda,
                                   std::size_t d)
{
    if (!w.cyclic)
        throw ValidationError("band_complex: word is not cyclic");
    if (sgn(lambda) == 0)
        throw ValidationError("band_complex: lambda must be nonzero");
    if (d < 1)
        throw ValidationError("band_complex: d must be positive");
    if (auto v = validate_string(*alg, w))
        throw ValidationError("band_complex: invalid band (" + v->reason + ")");
    if (!is_balanced(w))
        throw ValidationError("band_complex: word is not balanced");
    if (!is_primitive(w))
        throw ValidationError("band_complex: word is a proper power");
    const std::size_t k = w.letters.size();
    std::vector<VertexId> verts;
    for (const auto& l : w.letters)
        verts.push_back(l.start());
    auto deg = detail::walk_degrees(w);
    deg.pop_back(); // closing vertex repeats the first
    const auto pl = detail::place_walk(verts, deg, d);
    auto diffs = detail::empty_differentials(pl.comps);
    std::size_t twisted = k;
    for (std::size_t i = 0; i < k && twisted == k; ++i)
        if (!w.letters[i].inverse)
            twisted = i;
    const Matrix id = Matrix::identity(d);
    const Matrix jordan = jordan_block(lambda, d);
    for (std::size_t i = 0; i < k; ++i)
        detail::place_letter(diffs, pl, deg, w.letters[i], i, (i + 1) % k, i == twisted ? jordan : id);
    PerfectComplex p(alg, 0, pl.comps, std::move(diffs));
    validate(p);
    return p;
}

/// Every valid non-cyclic string with at most `max_letters` letters, the empty
/// words at each vertex first, then by length.
inline std::vector<HomotopyString> enumerate_strings(const Algebra& alg, std::size_t max_letters)
{
    std::vector<HomotopyString> out;
    for (VertexId v = 0; v < alg.vertex_count(); ++v)
        out.push_back({{}, false, v});
    std::vector<Letter> oriented;
    for (const auto& p : letters(alg)) {
        oriented.push_back({p, false});
        oriented.push_back({p, true});
    }
    std::vector<HomotopyString> frontier;
    if (max_letters >= 1)
        for (const auto& l : oriented)
            frontier.push_back({{l}, false, l.start()});
    for (std::size_t len = 1; len <= max_letters && !frontier.empty(); ++len) {
        out.insert(out.end(), frontier.begin(), frontier.end());
        if (len == max_letters)
            break;
        std::vector<HomotopyString> next;
        for (const auto& w : frontier)
            for (const auto& l : oriented)
                if (!adjacency_violation(alg, w.letters.back(), l)) {
                    auto e = w;
                    e.letters.push_back(l);
                    next.push_back(std::move(e));
                }
        frontier = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generalized bands and derived discreteness

struct BandSearch {
    bool found = false;
    std::optional<HomotopyString> witness;
};

/// Searches the letter-transition graph (nodes: oriented letters, edges: legal
/// adjacencies, weight +1 direct / -1 inverse) for a closed walk of total
/// weight 0. The shortest such walk through a node is primitive; it is
/// re-validated as a cyclic string before being returned.
inline BandSearch has_generalized_band(const Algebra& alg)
{
    require_gentle(alg, "has_generalized_band");
    std::vector<Letter> nodes;
    for (const auto& p : letters(alg)) {
        nodes.push_back({p, false});
        nodes.push_back({p, true});
    }
    const std::size_t n = nodes.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!adjacency_violation(alg, nodes[a], nodes[b])) {
                succ[a].push_back(b);
                edge[a][b] = true;
            }
    auto weight = [&](std::size_t v) { return nodes[v].inverse ? -1L : 1L; };
    const long bound = long(n * n + 2 * n);

    for (std::size_t s = 0; s < n; ++s) {
        using State = std::pair<std::size_t, long>;
        std::map<State, State> parent;
        std::deque<State> queue;
        const State start{s, weight(s)};
        parent[start] = start;
        queue.push_back(start);
        while (!queue.empty()) {
            const State cur = queue.front();
            queue.pop_front();
            if (cur.second == 0 && edge[cur.first][s]) {
                std::vector<std::size_t> walk;
                for (State x = cur;; x = parent[x]) {
                    walk.push_back(x.first);
                    if (x == start)
                        break;
                }
                std::reverse(walk.begin(), walk.end());
                HomotopyString w;
                w.cyclic = true;
                for (auto v : walk)
                    w.letters.push_back(nodes[v]);
                w.vertex = w.letters.front().start();
                if (!validate_string(alg, w) && is_balanced(w) && is_primitive(w))
                    return {true, w};
            }
            for (auto nb : succ[cur.first]) {
                const State nx{nb, cur.second + weight(nb)};
                if (std::labs(nx.second) > bound || parent.contains(nx))
                    continue;
                parent[nx] = cur;
                queue.push_back(nx);
            }
        }
    }
    return {false, std::nullopt};
}

inline bool is_derived_discrete_gentle(const Algebra& alg)
{
    return !has_generalized_band(alg).found;
}

// ---------------------------------------------------------------------------
// The six-term family over A_{3m}^m

/// Complex in degrees 0..5 over A_{3m}^m with components
/// P_1^d | P_m^d + P_2^d | P_{m+1}^{2d} | P_{2m}^{2d} | P_{2m+1}^d + P_{3m-1}^d | P_{3m}^d
/// and differentials built from the paths w_i, w'_i; the lower entry of d^0
/// carries the Jordan block J_{lambda,d}.
inline PerfectComplex lemma_family(std::size_t m, const Rational& lambda, std::size_t d,
                                   AlgebraPtr alg = nullptr)
{
    if (m < 3)
        throw ValidationError("lemma_family: need m >= 3");
    if (d < 1)
        throw ValidationError("lemma_family: need d >= 1");
    if (!alg)
        alg = truncated_linear(3 * m, m);
    const Quiver& q = alg->quiver();
    auto V = [&](std::size_t v) { return q.vertex(std::to_string(v)); };
    // a{hi} a{hi-1} ... a{lo} in traversal order.
    auto run = [&](std::size_t hi, std::size_t lo) {
        std::vector<std::string> names;
        for (std::size_t j = hi; j + 1 > lo; --j)
            names.push_back("a" + std::to_string(j));
        return make_path(q, names);
    };
    const Path w1 = run(3 * m - 1, 3 * m - 1), w2 = run(3 * m - 2, 2 * m), w3 = run(2 * m - 1, m + 1),
               w4 = run(m, 2), w5 = run(1, 1);
    const Path v1 = run(3 * m - 1, 2 * m + 1), v2 = run(2 * m, 2 * m), v3 = w3, v4 = run(m, m), v5 = run(m - 1, 1);

    auto copies = [&](std::initializer_list<std::size_t> vs) {
        std::vector<VertexId> out;
        for (auto v : vs)
            for (std::size_t k = 0; k < d; ++k)
                out.push_back(V(v));
        return out;
    };
    std::vector<std::vector<VertexId>> comps{copies({1}),          copies({m, 2}),
                                             copies({m + 1, m + 1}), copies({2 * m, 2 * m}),
                                             copies({2 * m + 1, 3 * m - 1}), copies({3 * m})};
    auto diffs = detail::empty_differentials(comps);
    const Matrix id = Matrix::identity(d);
    detail::add_block(diffs[0], 0, 0, v5, id);
    detail::add_block(diffs[0], d, 0, w5, jordan_block(lambda, d));
    const Path* primed[3] = {&v4, &v3, &v2};
    const Path* plain[3] = {&w4, &w3, &w2};
    for (std::size_t i = 0; i < 3; ++i) {
        detail::add_block(diffs[i + 1], 0, 0, *primed[i], id);
        detail::add_block(diffs[i + 1], d, d, *plain[i], id);
    }
    detail::add_block(diffs[4], 0, 0, v1, id);
    detail::add_block(diffs[4], 0, d, w1, id);
    PerfectComplex p(alg, 0, std::move(comps), std::move(diffs));
    validate(p);
    return p;
}

} // namespace quivdc
