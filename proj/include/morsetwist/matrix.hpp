#ifndef MORSETWIST_MATRIX_HPP
#define MORSETWIST_MATRIX_HPP

//! \file
//! \brief Dense row-major matrices over an exact ring.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace morsetwist {

template <typename R>
class Matrix {
public:
    using value_type = R;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, R()) {}

    Matrix(std::initializer_list<std::initializer_list<R>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix literal");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = R(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    R& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& e : entries_)
            if (!(e == R()))
                return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    template <typename F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const R&>()))>
    {
        Matrix<decltype(f(std::declval<const R&>()))> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = f((*this)(i, j));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const R& factor)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(target, j) += factor * (*this)(source, j);
    }

    /// col[target] += col[source] * factor
    void add_col_multiple(std::size_t target, std::size_t source, const R& factor)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, target) += (*this)(i, source) * factor;
    }

    void scale_row(std::size_t row, const R& factor)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(row, j) *= factor;
    }

    void scale_col(std::size_t col, const R& factor)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, col) *= factor;
    }

    /// Appends a zero column.
    Matrix with_zero_column() const
    {
        Matrix out(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(i, j) = (*this)(i, j);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == R())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> entries_;
};

} // namespace morsetwist

#endif
