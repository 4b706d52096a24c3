#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quivdc/matrix.hpp"

namespace quivdc {

namespace detail {
inline thread_local std::function<void(const Matrix&)> rank_observer;
}

/// Installs a callback that sees every matrix passed to rank() or nullspace()
/// on the current thread for the lifetime of the guard. Used by audits that
/// re-check rank/nullity on everything a computation touched.
class ScopedRankObserver {
public:
    explicit ScopedRankObserver(std::function<void(const Matrix&)> fn)
        : previous_(std::exchange(detail::rank_observer, std::move(fn)))
    {
    }
    ~ScopedRankObserver() { detail::rank_observer = std::move(previous_); }
    ScopedRankObserver(const ScopedRankObserver&) = delete;
    ScopedRankObserver& operator=(const ScopedRankObserver&) = delete;

private:
    std::function<void(const Matrix&)> previous_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form by Gauss-Jordan elimination. Zero rows are kept
/// at the bottom so the shape is unchanged.
inline RrefResult rref(Matrix m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && sgn(m(sel, col)) == 0)
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != row)
            for (std::size_t c = col; c < m.cols(); ++c)
                std::swap(m(sel, c), m(row, c));
        if (m(row, col) != 1) {
            const Rational inv = 1 / m(row, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (sgn(m(row, c)) != 0)
                    m(row, c) *= inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0)
                continue;
            const Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (sgn(m(row, c)) != 0)
                    m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m)
{
    if (detail::rank_observer)
        detail::rank_observer(m);
    return rref(m).pivots.size();
}

/// Columns form a basis of {v : m v = 0}.
inline Matrix nullspace(const Matrix& m)
{
    if (detail::rank_observer)
        detail::rank_observer(m);
    auto [red, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c])
            free.push_back(c);
    Matrix basis(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis(pivots[i], k) = -red(i, free[k]);
    }
    return basis;
}

/// A basis of the column space, made of original columns of m.
inline Matrix column_basis(const Matrix& m)
{
    return m.columns(rref(m).pivots);
}

/// One particular solution x of m x = b, or nullopt when inconsistent.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& b)
{
    if (m.rows() != b.rows())
        throw ValidationError("solve: row counts differ");
    auto [red, pivots] = rref(hstack(m, b));
    Matrix x(m.cols(), b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= m.cols())
            return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(pivots[i], j) = red(i, m.cols() + j);
    }
    return x;
}

/// Columns of `whole` (in order) that extend a basis of span(sub) to a basis of
/// span(sub) + span(whole). Both are given as column sets in a common space.
inline Matrix complement_basis(const Matrix& sub, const Matrix& whole)
{
    const auto pivots = rref(hstack(sub, whole)).pivots;
    std::vector<std::size_t> picked;
    for (auto p : pivots)
        if (p >= sub.cols())
            picked.push_back(p - sub.cols());
    return whole.columns(picked);
}

/// d x d block with lambda on the diagonal and 1 on the superdiagonal.
inline Matrix jordan_block(const Rational& lambda, std::size_t d)
{
    if (d == 0)
        throw ValidationError("jordan_block: size must be at least 1");
    Matrix j(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        j(i, i) = lambda;
        if (i + 1 < d)
            j(i, i + 1) = 1;
    }
    return j;
}

} // namespace quivdc
