#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "quivdc/error.hpp"
#include "quivdc/rational.hpp"

namespace quivdc {

/// Dense row-major matrix over the rationals. Zero rows or zero columns are
/// legal and stand for maps to or from the zero space.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw ValidationError("ragged matrix literal");
            for (const auto& x : row)
                data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (sgn(x) != 0)
                return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix column(std::size_t c) const
    {
        Matrix v(rows_, 1);
        for (std::size_t r = 0; r < rows_; ++r)
            v(r, 0) = (*this)(r, c);
        return v;
    }

    Matrix columns(const std::vector<std::size_t>& idx) const
    {
        Matrix out(rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < idx.size(); ++k)
                out(r, k) = (*this)(r, idx[k]);
        return out;
    }

    Matrix row_range(std::size_t begin, std::size_t count) const
    {
        Matrix out(count, cols_);
        for (std::size_t r = 0; r < count; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(r, c) = (*this)(begin + r, c);
        return out;
    }

    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const Matrix& block)
    {
        for (std::size_t r = 0; r < block.rows(); ++r)
            for (std::size_t c = 0; c < block.cols(); ++c)
                (*this)(r0 + r, c0 + c) = block(r, c);
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw ValidationError("matrix product dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(k, j)) != 0)
                        out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ValidationError("matrix sum dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ValidationError("matrix difference dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(const Rational& s, Matrix a)
    {
        for (auto& x : a.data_)
            x *= s;
        return a;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c)
                os << (c ? ", " : "") << to_string(m(r, c));
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// [a | b]
inline Matrix hstack(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows())
        throw ValidationError("hstack row mismatch");
    Matrix out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

/// [a ; b]
inline Matrix vstack(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols())
        throw ValidationError("vstack column mismatch");
    Matrix out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0)
                out.set_block(i * b.rows(), j * b.cols(), a(i, j) * b);
    return out;
}

} // namespace quivdc
