#pragma once

#include <string>
#include <vector>

#include "quivdc/fd_algebra.hpp"
#include "quivdc/glue.hpp"

namespace quivdc {

namespace detail {

// Coordinates for a family of combo-matrix blocks: block b has the given row
// and column labels, and entry (r, c) contributes normal_count(row r, col c)
// coordinates.
class BlockLayout {
public:
    BlockLayout(const Algebra& alg, std::vector<std::pair<std::vector<VertexId>, std::vector<VertexId>>> shapes)
        : alg_(&alg), shapes_(std::move(shapes))
    {
        for (const auto& [rows, cols] : shapes_) {
            std::vector<std::size_t> offs;
            for (auto r : rows)
                for (auto c : cols) {
                    offs.push_back(size_);
                    size_ += alg.normal_count(r, c);
                }
            offsets_.push_back(std::move(offs));
        }
    }

    std::size_t size() const { return size_; }
    std::size_t block_count() const { return shapes_.size(); }
    const std::vector<VertexId>& rows(std::size_t b) const { return shapes_[b].first; }
    const std::vector<VertexId>& cols(std::size_t b) const { return shapes_[b].second; }

    std::size_t offset(std::size_t b, std::size_t r, std::size_t c) const
    {
        return offsets_[b][r * shapes_[b].second.size() + c];
    }

    /// Adds a reduced combo into column `col` of m at entry (b, r, c).
    void accumulate(Matrix& m, std::size_t col, std::size_t b, std::size_t r, std::size_t c, const PathCombo& e) const
    {
        const std::size_t base = offset(b, r, c);
        for (const auto& [p, coeff] : e.terms())
            m(base + *alg_->normal_index(p), col) += coeff;
    }

    Matrix to_coords(const std::vector<ComboMatrix>& blocks) const
    {
        Matrix v(size_, 1);
        for (std::size_t b = 0; b < shapes_.size(); ++b)
            for (std::size_t r = 0; r < blocks[b].rows(); ++r)
                for (std::size_t c = 0; c < blocks[b].cols(); ++c)
                    accumulate(v, 0, b, r, c, blocks[b](r, c));
        return v;
    }

    std::vector<ComboMatrix> from_coords(const Matrix& m, std::size_t col) const
    {
        std::vector<ComboMatrix> out;
        for (std::size_t b = 0; b < shapes_.size(); ++b) {
            ComboMatrix blk(rows(b), cols(b));
            for (std::size_t r = 0; r < rows(b).size(); ++r)
                for (std::size_t c = 0; c < cols(b).size(); ++c)
                    blk.set(r, c, alg_->combo_from_coords(rows(b)[r], cols(b)[c], m, offset(b, r, c), col));
            out.push_back(std::move(blk));
        }
        return out;
    }

private:
    const Algebra* alg_;
    std::vector<std::pair<std::vector<VertexId>, std::vector<VertexId>>> shapes_;
    std::vector<std::vector<std::size_t>> offsets_;
    std::size_t size_ = 0;
};

} // namespace detail

/// End_{K(A)}(P): chain endomorphisms modulo null-homotopic ones.
struct EndomorphismAlgebra {
    FinDimAlgebra algebra;
    std::size_t chain_map_dim = 0;
    std::size_t null_homotopic_dim = 0;
    /// Representative chain maps of the basis, one combo matrix per degree.
    std::vector<std::vector<ComboMatrix>> basis;
};

/// Solves d f = f d for chain maps, spans the null-homotopic maps d s + s d,
/// and returns the quotient with its structure constants.
inline EndomorphismAlgebra end_algebra_K(const PerfectComplex& input)
{
    const PerfectComplex p = input.trimmed();
    if (p.empty())
        throw ValidationError("end_algebra_K: zero complex");
    const Algebra& alg = *p.algebra();
    const auto& comps = p.components();
    const auto& diffs = p.differentials();
    const std::size_t n = comps.size();

    std::vector<std::pair<std::vector<VertexId>, std::vector<VertexId>>> f_shapes, eq_shapes, s_shapes;
    for (std::size_t i = 0; i < n; ++i)
        f_shapes.emplace_back(comps[i], comps[i]);
    for (std::size_t i = 0; i + 1 < n; ++i)
        eq_shapes.emplace_back(comps[i + 1], comps[i]);
    for (std::size_t i = 1; i < n; ++i)
        s_shapes.emplace_back(comps[i - 1], comps[i]);
    const detail::BlockLayout F(alg, f_shapes), EQ(alg, eq_shapes), S(alg, s_shapes);

    // Chain condition d^i f^i - f^{i+1} d^i = 0, one column per f-coordinate.
    Matrix eq(EQ.size(), F.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < comps[i].size(); ++r)
            for (std::size_t c = 0; c < comps[i].size(); ++c) {
                const auto& basis = alg.normal_paths(comps[i][r], comps[i][c]);
                for (std::size_t k = 0; k < basis.size(); ++k) {
                    const std::size_t col = F.offset(i, r, c) + k;
                    const auto q = PathCombo::single(basis[k]);
                    if (i + 1 < n) {
                        const auto& d = diffs[i];
                        for (std::size_t rr = 0; rr < d.rows(); ++rr)
                            if (!d(rr, r).is_zero())
                                EQ.accumulate(eq, col, i, rr, c, alg.multiply(d(rr, r), q));
                    }
                    if (i > 0) {
                        const auto& d = diffs[i - 1];
                        for (std::size_t cc = 0; cc < d.cols(); ++cc)
                            if (!d(c, cc).is_zero())
                                EQ.accumulate(eq, col, i - 1, r, cc, alg.multiply(q, d(c, cc)).scaled(-1));
                    }
                }
            }
    const Matrix chain_maps = nullspace(eq);

    // Null-homotopic maps f^i = d^{i-1} s^i + s^{i+1} d^i, s^i: X^i -> X^{i-1}.
    Matrix homotopy(F.size(), S.size());
    for (std::size_t b = 0; b < S.block_count(); ++b) {
        const std::size_t i = b + 1; // s^i
        const auto& d = diffs[i - 1]; // X^{i-1} -> X^i
        for (std::size_t r = 0; r < comps[i - 1].size(); ++r)
            for (std::size_t c = 0; c < comps[i].size(); ++c) {
                const auto& basis = alg.normal_paths(comps[i - 1][r], comps[i][c]);
                for (std::size_t k = 0; k < basis.size(); ++k) {
                    const std::size_t col = S.offset(b, r, c) + k;
                    const auto q = PathCombo::single(basis[k]);
                    for (std::size_t rr = 0; rr < d.rows(); ++rr) // d^{i-1} s^i into f^i
                        if (!d(rr, r).is_zero())
                            F.accumulate(homotopy, col, i, rr, c, alg.multiply(d(rr, r), q));
                    for (std::size_t cc = 0; cc < d.cols(); ++cc) // s^i d^{i-1} into f^{i-1}
                        if (!d(c, cc).is_zero())
                            F.accumulate(homotopy, col, i - 1, r, cc, alg.multiply(q, d(c, cc)));
                }
            }
    }
    const Matrix null_homotopic = column_basis(homotopy);
    const Matrix quotient_basis = complement_basis(null_homotopic, chain_maps);
    const std::size_t dim = quotient_basis.cols();
    if (dim == 0)
        throw ValidationError("end_algebra_K: complex is contractible (zero in the homotopy category)");

    const Matrix coord = detail::left_inverse(hstack(null_homotopic, quotient_basis))
                             .row_range(null_homotopic.cols(), dim);

    EndomorphismAlgebra out;
    out.chain_map_dim = chain_maps.cols();
    out.null_homotopic_dim = null_homotopic.cols();
    for (std::size_t j = 0; j < dim; ++j)
        out.basis.push_back(F.from_coords(quotient_basis, j));

    auto compose_maps = [&](const std::vector<ComboMatrix>& f, const std::vector<ComboMatrix>& g) {
        std::vector<ComboMatrix> h;
        for (std::size_t i = 0; i < n; ++i)
            h.push_back(compose(alg, f[i], g[i]));
        return h;
    };
    std::vector<ComboMatrix> id;
    for (std::size_t i = 0; i < n; ++i) {
        ComboMatrix m(comps[i], comps[i]);
        for (std::size_t r = 0; r < comps[i].size(); ++r)
            m.set(r, r, PathCombo::single(Path::trivial(comps[i][r])));
        id.push_back(std::move(m));
    }
    out.algebra = FinDimAlgebra::from_products(
        dim,
        [&](std::size_t a, std::size_t b) { return coord * F.to_coords(compose_maps(out.basis[a], out.basis[b])); },
        coord * F.to_coords(id));
    return out;
}

enum class Verdict { Yes, No, Inconclusive };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Yes:
        return "yes";
    case Verdict::No:
        return "no";
    default:
        return "inconclusive";
    }
}

struct IndecomposabilityResult {
    Verdict verdict = Verdict::Inconclusive;
    std::size_t end_dim = 0;
    std::size_t radical_dim = 0;
    /// dim End/rad End; the verdict is exact when this is 1.
    std::size_t semisimple_dim = 0;
};

/// P is indecomposable iff End_K(P) is local. Over the rationals a
/// semisimple quotient of dimension > 1 is reported "no" only when a
/// nontrivial idempotent is exhibited, otherwise "inconclusive".
inline IndecomposabilityResult is_indecomposable(const PerfectComplex& p)
{
    const auto end = end_algebra_K(p);
    const auto rad = radical_and_local(end.algebra);
    IndecomposabilityResult res;
    res.end_dim = end.algebra.dim;
    res.radical_dim = rad.radical_dim;
    res.semisimple_dim = end.algebra.dim - rad.radical_dim;
    if (rad.is_local) {
        res.verdict = Verdict::Yes;
        return res;
    }
    const auto semisimple = quotient(end.algebra, rad.radical_basis);
    res.verdict = find_nontrivial_idempotent(semisimple) ? Verdict::No : Verdict::Inconclusive;
    return res;
}

struct TruncationCheck {
    int j = 0;
    Verdict extended = Verdict::Inconclusive;
    Verdict truncated = Verdict::Inconclusive;
    bool agree = false;
};

/// Compares the indecomposability of a leftward-extended minimal complex with
/// that of its brutal truncation sigma_{>=j}, for j below every degree that
/// carries cohomology. When `cut_at_left` is set (a glue that ran out of
/// budget) the cohomology in the lowest degree is an artefact of the cut and
/// is ignored.
inline TruncationCheck truncation_indec_check(const PerfectComplex& extended, int j, bool cut_at_left = false)
{
    const auto t = extended.trimmed();
    const auto h = cohomology(t);
    std::optional<int> first;
    for (std::size_t i = cut_at_left ? 1 : 0; i < h.modules.size(); ++i)
        if (!h.modules[i].is_zero()) {
            first = h.lo + int(i);
            break;
        }
    if (!first)
        throw ValidationError("truncation_indec_check: extended complex has no cohomology");
    if (j >= *first)
        throw ValidationError("truncation_indec_check: j = " + std::to_string(j) +
                              " is not below the lowest cohomology degree " + std::to_string(*first));
    TruncationCheck out;
    out.j = j;
    out.extended = is_indecomposable(t).verdict;
    out.truncated = is_indecomposable(brutal_truncate(t, TruncSide::AtLeast, j)).verdict;
    out.agree = out.extended == out.truncated;
    return out;
}

} // namespace quivdc
