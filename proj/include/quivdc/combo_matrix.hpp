#pragma once

#include <vector>

#include "quivdc/algebra.hpp"

namespace quivdc {

/// Matrix of path combinations describing a map between direct sums of
/// indecomposable projectives, X = (+)_c P_{col_labels[c]} -> Y = (+)_r P_{row_labels[r]}.
/// Entry (r, c) lies in Hom(P_{col c}, P_{row r}), i.e. is a combination of
/// paths from row_labels[r] to col_labels[c].
class ComboMatrix {
public:
    ComboMatrix() = default;
    ComboMatrix(std::vector<VertexId> row_labels, std::vector<VertexId> col_labels)
        : rows_(std::move(row_labels)), cols_(std::move(col_labels))
    {
        entries_.reserve(rows_.size() * cols_.size());
        for (auto r : rows_)
            for (auto c : cols_)
                entries_.emplace_back(r, c);
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_.size(); }
    const std::vector<VertexId>& row_labels() const { return rows_; }
    const std::vector<VertexId>& col_labels() const { return cols_; }

    const PathCombo& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_.size() + c]; }

    void set(std::size_t r, std::size_t c, PathCombo value)
    {
        if (value.source() != rows_.at(r) || value.target() != cols_.at(c))
            throw ValidationError("ComboMatrix: entry (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") has the wrong endpoints");
        entries_[r * cols_.size() + c] = std::move(value);
    }

    void add(std::size_t r, std::size_t c, const PathCombo& value)
    {
        PathCombo cur = (*this)(r, c);
        cur += value;
        set(r, c, std::move(cur));
    }

    bool is_zero() const
    {
        for (const auto& e : entries_)
            if (!e.is_zero())
                return false;
        return true;
    }

    bool operator==(const ComboMatrix&) const = default;

private:
    std::vector<VertexId> rows_;
    std::vector<VertexId> cols_;
    std::vector<PathCombo> entries_;
};

/// a o b for b: W -> X and a: X -> Y.
inline ComboMatrix compose(const Algebra& alg, const ComboMatrix& a, const ComboMatrix& b)
{
    if (a.col_labels() != b.row_labels())
        throw ValidationError("compose: inner summands differ");
    ComboMatrix out(a.row_labels(), b.col_labels());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
            PathCombo acc(a.row_labels()[r], b.col_labels()[c]);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(r, k).is_zero() || b(k, c).is_zero())
                    continue;
                acc += alg.multiply(a(r, k), b(k, c));
            }
            out.set(r, c, std::move(acc));
        }
    return out;
}

} // namespace quivdc
