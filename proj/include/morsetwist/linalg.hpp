#ifndef MORSETWIST_LINALG_HPP
#define MORSETWIST_LINALG_HPP

//! \file
//! \brief Smith normal form over Z and fraction-free rank over integral domains.

#include "expsum.hpp"
#include "matrix.hpp"
#include "rational.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace morsetwist {

/// Invariant factors d_1 | d_2 | ... of the torsion part, each >= 2.
using InvariantFactorList = std::vector<Integer>;

struct SnfResult {
    Matrix<Integer> U;
    Matrix<Integer> D;
    Matrix<Integer> V;
    std::size_t rank = 0;
    InvariantFactorList invariant_factors;
};

/// Smith normal form: U * A * V = D with U, V unimodular and D diagonal with
/// nonnegative entries forming a divisibility chain.
inline SnfResult snf_int(const Matrix<Integer>& A)
{
    const std::size_t m = A.rows(), n = A.cols();
    Matrix<Integer> D = A;
    Matrix<Integer> U = Matrix<Integer>::identity(m);
    Matrix<Integer> V = Matrix<Integer>::identity(n);

    auto row_op = [&](std::size_t target, std::size_t source, const Integer& f) {
        D.add_row_multiple(target, source, f);
        U.add_row_multiple(target, source, f);
    };
    auto col_op = [&](std::size_t target, std::size_t source, const Integer& f) {
        D.add_col_multiple(target, source, f);
        V.add_col_multiple(target, source, f);
    };
    auto move_to = [&](std::size_t t, std::size_t i, std::size_t j) {
        D.swap_rows(t, i);
        U.swap_rows(t, i);
        D.swap_cols(t, j);
        V.swap_cols(t, j);
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!found || magnitude(D(i, j)) < magnitude(D(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found)
            break;
        move_to(t, pi, pj);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (D(i, t) != 0) {
                    row_op(i, t, Integer(-(D(i, t) / D(t, t))));
                    clean = clean && D(i, t) == 0;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (D(t, j) != 0) {
                    col_op(j, t, Integer(-(D(t, j) / D(t, t))));
                    clean = clean && D(t, j) == 0;
                }
            if (!clean) {
                // A remainder smaller than the pivot survived; promote it.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && magnitude(D(i, t)) < magnitude(D(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && magnitude(D(t, j)) < magnitude(D(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                move_to(t, bi, bj);
                continue;
            }
            // Pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_op(t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (D(t, t) < 0) {
            D.scale_row(t, Integer(-1));
            U.scale_row(t, Integer(-1));
        }
    }

    SnfResult out{std::move(U), std::move(D), std::move(V), t, {}};
    for (std::size_t k = 0; k < t; ++k)
        if (out.D(k, k) > 1)
            out.invariant_factors.push_back(out.D(k, k));
    return out;
}

class TooLarge : public std::invalid_argument {
public:
    TooLarge() : std::invalid_argument("TooLarge: brute-force rank is limited to 6x6") {}
};

namespace detail {

inline Integer minor_determinant(const Matrix<Integer>& A, const std::vector<std::size_t>& rows,
                                 std::vector<std::size_t> cols)
{
    // Laplace expansion along the first listed row.
    if (rows.size() == 1)
        return A(rows[0], cols[0]);
    Integer det = 0;
    const std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (A(rows[0], cols[k]) == 0)
            continue;
        std::vector<std::size_t> sub = cols;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
        Integer term = A(rows[0], cols[k]) * minor_determinant(A, rest, sub);
        det += (k % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (f(idx))
            return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/// Rank as the size of the largest nonvanishing minor. Test oracle only.
inline std::size_t rank_int_bruteforce(const Matrix<Integer>& A)
{
    if (A.rows() > 6 || A.cols() > 6)
        throw TooLarge();
    for (std::size_t k = std::min(A.rows(), A.cols()); k > 0; --k) {
        bool nonzero = false;
        detail::for_each_subset(A.rows(), k, [&](const std::vector<std::size_t>& rows) {
            detail::for_each_subset(A.cols(), k, [&](const std::vector<std::size_t>& cols) {
                nonzero = detail::minor_determinant(A, rows, cols) != 0;
                return nonzero;
            });
            return nonzero;
        });
        if (nonzero)
            return k;
    }
    return 0;
}

/// Bareiss elimination over an integral domain. `divide(a, b)` must return the
/// exact quotient; every intermediate entry is a minor of A, so it always exists.
template <typename R, typename Divide>
std::size_t fraction_free_rank(Matrix<R> M, Divide&& divide)
{
    const std::size_t m = M.rows(), n = M.cols();
    std::size_t r = 0;
    R previous(1);
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && M(p, c) == R())
            ++p;
        if (p == m)
            continue;
        M.swap_rows(p, r);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                M(i, j) = divide(M(r, c) * M(i, j) - M(i, c) * M(r, j), previous);
            M(i, c) = R();
        }
        previous = M(r, c);
        ++r;
    }
    return r;
}

/// Rank over the fraction field of Q[t^Q].
inline std::size_t rank_expsum(const Matrix<ExpSum>& A)
{
    return fraction_free_rank(A, [](const ExpSum& a, const ExpSum& b) {
        auto q = divide_exact(a, b);
        if (!q)
            throw std::logic_error("Bareiss step produced a non-divisible entry: " + a.str() + " / " + b.str());
        return *q;
    });
}

inline std::size_t rank_int(const Matrix<Integer>& A) { return snf_int(A).rank; }

} // namespace morsetwist

#endif
