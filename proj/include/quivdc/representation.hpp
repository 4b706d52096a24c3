#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "quivdc/combo_matrix.hpp"

namespace quivdc {

/// Finite-dimensional right module as a quiver representation: a vector
/// space per vertex and, for each arrow v -> w, a dims[w] x dims[v] matrix.
/// The map of a path p = b1 b2 ... bk is M(bk) ... M(b1).
class Representation {
public:
    Representation() = default;

    /// Validates shapes and that every relation acts as zero.
    Representation(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> arrow_maps)
        : alg_(std::move(alg)), dims_(std::move(dims)), arrows_(std::move(arrow_maps))
    {
        const auto& q = alg_->quiver();
        if (dims_.size() != q.vertex_count())
            throw ValidationError("representation: wrong number of vertex dimensions");
        if (arrows_.size() != q.arrow_count())
            throw ValidationError("representation: wrong number of arrow maps");
        for (ArrowId a = 0; a < q.arrow_count(); ++a) {
            const auto& ar = q.arrow(a);
            if (arrows_[a].rows() != dims_[ar.target] || arrows_[a].cols() != dims_[ar.source])
                throw ValidationError("representation: arrow '" + ar.name + "' has the wrong shape");
        }
        for (std::size_t i = 0; i < alg_->relations().size(); ++i)
            if (!combo_map(alg_->relations()[i]).is_zero())
                throw ValidationError("representation: relation " + std::to_string(i) + " does not act as zero");
    }

    static Representation zero(AlgebraPtr alg)
    {
        const auto& q = alg->quiver();
        std::vector<Matrix> maps;
        for (const auto& ar : q.arrows()) {
            (void)ar;
            maps.emplace_back(0, 0);
        }
        return Representation(alg, std::vector<std::size_t>(q.vertex_count(), 0), std::move(maps));
    }

    static Representation simple(AlgebraPtr alg, VertexId a)
    {
        alg->check_vertex(a);
        const auto& q = alg->quiver();
        std::vector<std::size_t> dims(q.vertex_count(), 0);
        dims[a] = 1;
        std::vector<Matrix> maps;
        for (const auto& ar : q.arrows())
            maps.emplace_back(dims[ar.target], dims[ar.source]);
        return Representation(alg, std::move(dims), std::move(maps));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t dim(VertexId v) const { return dims_.at(v); }
    const Matrix& arrow_map(ArrowId a) const { return arrows_.at(a); }
    const std::vector<Matrix>& arrow_maps() const { return arrows_; }

    std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
    bool is_zero() const { return total_dim() == 0; }

    Matrix path_map(const Path& p) const
    {
        Matrix m = Matrix::identity(dims_.at(p.source));
        for (ArrowId a : p.arrows)
            m = arrows_[a] * m;
        return m;
    }

    Matrix combo_map(const PathCombo& c) const
    {
        Matrix m(dims_.at(c.target()), dims_.at(c.source()));
        for (const auto& [p, coeff] : c.terms())
            m = m + coeff * path_map(p);
        return m;
    }

    bool operator==(const Representation& o) const
    {
        return alg_ == o.alg_ && dims_ == o.dims_ && arrows_ == o.arrows_;
    }

private:
    AlgebraPtr alg_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> arrows_;
};

/// Per-vertex matrices of a module homomorphism.
struct RepMap {
    std::vector<Matrix> components;
};

inline bool is_morphism(const Representation& src, const Representation& dst, const RepMap& f)
{
    const auto& q = src.algebra()->quiver();
    if (f.components.size() != q.vertex_count())
        return false;
    for (VertexId v = 0; v < q.vertex_count(); ++v)
        if (f.components[v].rows() != dst.dim(v) || f.components[v].cols() != src.dim(v))
            return false;
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        if (!(dst.arrow_map(a) * f.components[ar.source] == f.components[ar.target] * src.arrow_map(a)))
            return false;
    }
    return true;
}

inline RepMap compose(const RepMap& g, const RepMap& f)
{
    RepMap out;
    for (std::size_t v = 0; v < f.components.size(); ++v)
        out.components.push_back(g.components[v] * f.components[v]);
    return out;
}

inline RepMap zero_map(const Representation& src, const Representation& dst)
{
    RepMap out;
    for (std::size_t v = 0; v < src.dims().size(); ++v)
        out.components.emplace_back(dst.dim(v), src.dim(v));
    return out;
}

inline RepMap identity_map(const Representation& m)
{
    RepMap out;
    for (auto d : m.dims())
        out.components.push_back(Matrix::identity(d));
    return out;
}

inline bool is_zero_map(const RepMap& f)
{
    for (const auto& m : f.components)
        if (!m.is_zero())
            return false;
    return true;
}

/// Dimension vector and total dimension.
struct DimVector {
    std::vector<std::size_t> per_vertex;
    std::size_t total = 0;
};

inline DimVector dim_vector(const Representation& m) { return {m.dims(), m.total_dim()}; }

inline Representation direct_sum(const Representation& a, const Representation& b)
{
    const auto& q = a.algebra()->quiver();
    std::vector<std::size_t> dims(q.vertex_count());
    for (VertexId v = 0; v < q.vertex_count(); ++v)
        dims[v] = a.dim(v) + b.dim(v);
    std::vector<Matrix> maps;
    for (ArrowId x = 0; x < q.arrow_count(); ++x) {
        const auto& ar = q.arrow(x);
        Matrix m(dims[ar.target], dims[ar.source]);
        m.set_block(0, 0, a.arrow_map(x));
        m.set_block(a.dim(ar.target), a.dim(ar.source), b.arrow_map(x));
        maps.push_back(std::move(m));
    }
    return Representation(a.algebra(), std::move(dims), std::move(maps));
}

/// Where each projective summand sits inside (+)_k P_{labels[k]} at each vertex.
/// At vertex v the basis is the concatenation over k of normal_paths(labels[k], v).
struct ProjectiveLayout {
    std::vector<VertexId> labels;
    std::vector<std::vector<std::size_t>> offsets; // [vertex][summand]
    std::vector<std::size_t> dims;

    ProjectiveLayout(const Algebra& alg, std::vector<VertexId> labels_) : labels(std::move(labels_))
    {
        const std::size_t n = alg.vertex_count();
        offsets.assign(n, std::vector<std::size_t>(labels.size()));
        dims.assign(n, 0);
        for (VertexId v = 0; v < n; ++v)
            for (std::size_t k = 0; k < labels.size(); ++k) {
                offsets[v][k] = dims[v];
                dims[v] += alg.normal_count(labels[k], v);
            }
    }
};

inline Representation projective_sum(const AlgebraPtr& alg, const std::vector<VertexId>& labels)
{
    for (auto l : labels)
        alg->check_vertex(l);
    ProjectiveLayout lay(*alg, labels);
    const auto& q = alg->quiver();
    std::vector<Matrix> maps;
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        Matrix m(lay.dims[ar.target], lay.dims[ar.source]);
        for (std::size_t k = 0; k < labels.size(); ++k)
            m.set_block(lay.offsets[ar.target][k], lay.offsets[ar.source][k], alg->projective_arrow_matrix(labels[k], a));
        maps.push_back(std::move(m));
    }
    return Representation(alg, lay.dims, std::move(maps));
}

inline Representation projective(const AlgebraPtr& alg, VertexId a) { return projective_sum(alg, {a}); }

/// The module map (+)_c P_{cols} -> (+)_r P_{rows} given by a combo matrix.
inline RepMap combo_matrix_map(const Algebra& alg, const ComboMatrix& m)
{
    ProjectiveLayout dom(alg, m.col_labels());
    ProjectiveLayout cod(alg, m.row_labels());
    RepMap out;
    for (VertexId v = 0; v < alg.vertex_count(); ++v) {
        Matrix block(cod.dims[v], dom.dims[v]);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m(r, c).is_zero())
                    block.set_block(cod.offsets[v][r], dom.offsets[v][c], alg.path_action_at(m(r, c), v));
        out.components.push_back(std::move(block));
    }
    return out;
}

/// Reads a module map between projective sums back as a combo matrix, using
/// that a map out of P_a is determined by the image of e_a.
inline ComboMatrix map_to_combo_matrix(const Algebra& alg, const std::vector<VertexId>& dom_labels,
                                       const std::vector<VertexId>& cod_labels, const RepMap& f)
{
    ProjectiveLayout dom(alg, dom_labels);
    ProjectiveLayout cod(alg, cod_labels);
    ComboMatrix out(cod_labels, dom_labels);
    for (std::size_t c = 0; c < dom_labels.size(); ++c) {
        const VertexId a = dom_labels[c];
        const std::size_t col = dom.offsets[a][c]; // e_a is the first basis path of P_a(a)
        const Matrix& fa = f.components[a];
        for (std::size_t r = 0; r < cod_labels.size(); ++r)
            out.set(r, c, alg.combo_from_coords(cod_labels[r], a, fa, cod.offsets[a][r], col));
    }
    return out;
}

namespace detail {

// Left inverse of a full-column-rank matrix: L with L * m = I.
inline Matrix left_inverse(const Matrix& m)
{
    if (m.cols() == 0)
        return Matrix(0, m.rows());
    const auto rows = rref(m.transpose()).pivots; // independent rows of m
    if (rows.size() != m.cols())
        throw ValidationError("left_inverse: matrix is not of full column rank");
    Matrix square(m.cols(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            square(i, c) = m(rows[i], c);
    auto inv = solve(square, Matrix::identity(m.cols()));
    Matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(c, rows[i]) = (*inv)(c, i);
    return out;
}

} // namespace detail

/// W/U for submodules U <= W <= M given by per-vertex column spans in M's
/// coordinates. `basis[v]` lifts quotient coordinates back into M(v) and
/// `projection[v]` maps vectors of W(v) to quotient coordinates.
struct Subquotient {
    Representation module;
    std::vector<Matrix> basis;
    std::vector<Matrix> projection;
};

inline Subquotient subquotient(const Representation& m, const std::vector<Matrix>& W, const std::vector<Matrix>& U)
{
    const auto& q = m.algebra()->quiver();
    Subquotient out;
    std::vector<std::size_t> dims;
    for (VertexId v = 0; v < q.vertex_count(); ++v) {
        const Matrix u = column_basis(U[v]);
        const Matrix c = complement_basis(u, W[v]);
        const Matrix li = detail::left_inverse(hstack(u, c));
        out.basis.push_back(c);
        out.projection.push_back(li.row_range(u.cols(), c.cols()));
        dims.push_back(c.cols());
    }
    std::vector<Matrix> maps;
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        maps.push_back(out.projection[ar.target] * (m.arrow_map(a) * out.basis[ar.source]));
    }
    out.module = Representation(m.algebra(), std::move(dims), std::move(maps));
    return out;
}

/// rad M(v) = sum of images of the arrows ending at v.
inline std::vector<Matrix> radical_subspaces(const Representation& m)
{
    const auto& q = m.algebra()->quiver();
    std::vector<Matrix> rad;
    for (VertexId v = 0; v < q.vertex_count(); ++v)
        rad.emplace_back(m.dim(v), 0);
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
        const auto& ar = q.arrow(a);
        rad[ar.target] = hstack(rad[ar.target], m.arrow_map(a));
    }
    for (auto& r : rad)
        r = column_basis(r);
    return rad;
}

inline std::vector<Matrix> full_subspaces(const Representation& m)
{
    std::vector<Matrix> out;
    for (auto d : m.dims())
        out.push_back(Matrix::identity(d));
    return out;
}

inline std::vector<Matrix> zero_subspaces(const Representation& m)
{
    std::vector<Matrix> out;
    for (auto d : m.dims())
        out.emplace_back(d, 0);
    return out;
}

/// M / rad M.
inline Representation top(const Representation& m)
{
    return subquotient(m, full_subspaces(m), radical_subspaces(m)).module;
}

struct SubRep {
    Representation module;
    RepMap inclusion;
};

inline SubRep kernel(const Representation& src, const RepMap& f)
{
    std::vector<Matrix> ker;
    for (VertexId v = 0; v < src.dims().size(); ++v)
        ker.push_back(nullspace(f.components[v]));
    auto sq = subquotient(src, ker, zero_subspaces(src));
    return {std::move(sq.module), RepMap{std::move(sq.basis)}};
}

struct QuotRep {
    Representation module;
    RepMap projection;
};

inline QuotRep cokernel(const Representation& dst, const RepMap& f)
{
    std::vector<Matrix> img;
    for (VertexId v = 0; v < dst.dims().size(); ++v)
        img.push_back(f.components[v]);
    auto sq = subquotient(dst, full_subspaces(dst), img);
    return {std::move(sq.module), RepMap{std::move(sq.projection)}};
}

struct ProjCover {
    std::vector<VertexId> labels;
    Representation cover;
    RepMap map; // cover -> module, surjective
};

/// Minimal projective cover: one summand P_a per basis vector of a
/// complement of rad M(a) in M(a).
inline ProjCover proj_cover(const Representation& m)
{
    if (m.is_zero())
        throw ValidationError("proj_cover: zero module");
    const auto& alg = *m.algebra();
    const auto rad = radical_subspaces(m);
    std::vector<VertexId> labels;
    std::vector<Matrix> gens;
    for (VertexId v = 0; v < alg.vertex_count(); ++v) {
        const Matrix g = complement_basis(rad[v], Matrix::identity(m.dim(v)));
        for (std::size_t k = 0; k < g.cols(); ++k) {
            labels.push_back(v);
            gens.push_back(g.column(k));
        }
    }
    ProjCover pc{labels, projective_sum(m.algebra(), labels), {}};
    ProjectiveLayout lay(alg, labels);
    for (VertexId w = 0; w < alg.vertex_count(); ++w) {
        Matrix block(m.dim(w), lay.dims[w]);
        for (std::size_t k = 0; k < labels.size(); ++k) {
            const auto& paths = alg.normal_paths(labels[k], w);
            for (std::size_t j = 0; j < paths.size(); ++j)
                block.set_block(0, lay.offsets[w][k] + j, m.path_map(paths[j]) * gens[k]);
        }
        pc.map.components.push_back(std::move(block));
    }
    return pc;
}

/// One step of resolving a submodule K <= X of a projective sum X: cover K,
/// record the cover as a combo matrix into X, and return ker(cover -> X).
struct CoverStep {
    std::vector<VertexId> labels;
    ComboMatrix into_ambient;
    SubRep next_kernel;
};

inline CoverStep cover_submodule(const std::vector<VertexId>& ambient_labels, const SubRep& sub)
{
    const auto& alg = *sub.module.algebra();
    auto pc = proj_cover(sub.module);
    RepMap into = compose(sub.inclusion, pc.map);
    CoverStep step{pc.labels, map_to_combo_matrix(alg, pc.labels, ambient_labels, into), kernel(pc.cover, into)};
    return step;
}

enum class ResolutionStatus { Finite, AtLeast };

/// Minimal projective resolution ... -> P_1 -> P_0 -> M.
/// `maps[k]` is the differential P_{k+1} -> P_k. With status Finite, `length`
/// is the projective dimension; with AtLeast it is the cutoff, and layers
/// P_0..P_cutoff were computed without reaching a zero syzygy.
struct Resolution {
    std::vector<std::vector<VertexId>> layers;
    std::vector<ComboMatrix> maps;
    ResolutionStatus status = ResolutionStatus::Finite;
    std::size_t length = 0;
};

inline Resolution min_proj_resolution(const Representation& m, std::size_t cutoff)
{
    Resolution res;
    if (m.is_zero())
        return res;
    auto pc = proj_cover(m);
    res.layers.push_back(pc.labels);
    SubRep syzygy = kernel(pc.cover, pc.map);
    for (std::size_t k = 1; k <= cutoff; ++k) {
        if (syzygy.module.is_zero()) {
            res.length = k - 1;
            return res;
        }
        auto step = cover_submodule(res.layers.back(), syzygy);
        res.layers.push_back(step.labels);
        res.maps.push_back(std::move(step.into_ambient));
        syzygy = std::move(step.next_kernel);
    }
    if (syzygy.module.is_zero()) {
        res.length = cutoff;
        return res;
    }
    res.status = ResolutionStatus::AtLeast;
    res.length = cutoff;
    return res;
}

struct GlobalDimension {
    bool finite = true;
    std::size_t value = 0; // exact when finite, otherwise the cutoff lower bound
};

/// Maximum projective dimension of the simples, with cutoff semantics.
inline GlobalDimension global_dim(const AlgebraPtr& alg, std::size_t cutoff)
{
    if (cutoff == 0)
        throw ValidationError("global_dim: cutoff must be at least 1");
    GlobalDimension g;
    for (VertexId a = 0; a < alg->vertex_count(); ++a) {
        auto res = min_proj_resolution(Representation::simple(alg, a), cutoff);
        if (res.status == ResolutionStatus::AtLeast)
            return {false, cutoff};
        g.value = std::max(g.value, res.length);
    }
    return g;
}

} // namespace quivdc
