#ifndef MORSETWIST_NOV_REDUCE_HPP
#define MORSETWIST_NOV_REDUCE_HPP

//! \file
//! \brief Diagonalization of matrices over the Novikov ring by elementary
//! operations that stay inside Nov.
//!
//! Unit pivots are cleared completely. Below a unit pivot the rows are cleared
//! fraction-free (target row scaled by the pivot, itself a unit) so the
//! trailing block stays exact; the pivot row is cleared by column operations
//! whose multipliers use the truncated inverse of the pivot. Non-unit pivots
//! are attacked by Euclidean steps on top coefficients. A reduction that runs
//! out of budget, or meets a non-unit entry that is not an integer times a
//! unit, reports Status::Stuck instead of guessing.

#include "linalg.hpp"
#include "novikov.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace morsetwist {

inline constexpr int default_nov_depth = 16;
inline constexpr std::size_t default_nov_max_iter = 10000;

struct NovOperation {
    enum class Kind { SwapRows, SwapCols, AddRow, AddCol, ScaleRow };
    Kind kind;
    std::size_t target;
    std::size_t source; ///< unused for ScaleRow
    NovElem factor;     ///< unused for swaps
};

struct NovReduction {
    enum class Status { Complete, Stuck };

    std::vector<NovElem> diagonal;
    std::size_t unit_count = 0;
    InvariantFactorList nonunit_invariants;
    Status status = Status::Complete;
    std::vector<NovOperation> operations;
    std::string stuck_reason;

    bool complete() const { return status == Status::Complete; }
    std::size_t rank() const { return unit_count + nonunit_invariants.size(); }
};

/// Replays recorded operations on A. Used to audit a reduction.
inline Matrix<NovElem> apply_operations(Matrix<NovElem> A, const std::vector<NovOperation>& ops)
{
    using Kind = NovOperation::Kind;
    for (const auto& op : ops) {
        switch (op.kind) {
        case Kind::SwapRows: A.swap_rows(op.target, op.source); break;
        case Kind::SwapCols: A.swap_cols(op.target, op.source); break;
        case Kind::AddRow: A.add_row_multiple(op.target, op.source, op.factor); break;
        case Kind::AddCol: A.add_col_multiple(op.target, op.source, op.factor); break;
        case Kind::ScaleRow: A.scale_row(op.target, op.factor); break;
        }
    }
    return A;
}

namespace detail {

// n * t^g * (unit) exactly when every coefficient is divisible by the top one.
inline bool is_integer_times_unit(const NovElem& e)
{
    const Integer n = e.top().coeff;
    for (const auto& t : e.terms())
        if (t.coeff % n != 0)
            return false;
    return true;
}

class NovReducer {
public:
    NovReducer(Matrix<NovElem> A, Rational depth, std::size_t max_iter)
        : A_(std::move(A)), depth_(std::move(depth)), max_iter_(max_iter)
    {
    }

    NovReduction run()
    {
        const std::size_t limit = std::min(A_.rows(), A_.cols());
        std::vector<Integer> nonunit_tops;
        std::size_t t = 0;
        while (t < limit) {
            auto pivot = select_pivot(t);
            if (!pivot)
                break;
            move_to(t, pivot->first, pivot->second);
            if (A_(t, t).is_unit()) {
                clear_unit_pivot(t);
            } else {
                if (!euclidean_sweep(t))
                    continue;
                if (!is_integer_times_unit(A_(t, t)))
                    return stuck("entry " + A_(t, t).str() + " is not an integer times a unit");
                nonunit_tops.push_back(magnitude(A_(t, t).top().coeff));
            }
            if (out_.operations.size() > max_iter_)
                return stuck("iteration budget exhausted");
            out_.diagonal.push_back(A_(t, t));
            ++t;
        }
        out_.unit_count = out_.diagonal.size() - nonunit_tops.size();
        finish_invariants(nonunit_tops);
        return std::move(out_);
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> select_pivot(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < A_.rows(); ++i)
            for (std::size_t j = t; j < A_.cols(); ++j) {
                const auto& e = A_(i, j);
                if (e.is_zero())
                    continue;
                if (!best || better(e, A_(best->first, best->second)))
                    best = {i, j};
            }
        return best;
    }

    // Smaller |top coefficient| first, then larger top exponent; scan order breaks ties.
    static bool better(const NovElem& a, const NovElem& b)
    {
        const auto ma = magnitude(a.top().coeff), mb = magnitude(b.top().coeff);
        if (ma != mb)
            return ma < mb;
        return a.top().exponent > b.top().exponent;
    }

    void record(NovOperation::Kind kind, std::size_t target, std::size_t source, NovElem factor = NovElem())
    {
        out_.operations.push_back({kind, target, source, std::move(factor)});
    }

    void move_to(std::size_t t, std::size_t i, std::size_t j)
    {
        if (i != t) {
            A_.swap_rows(t, i);
            record(NovOperation::Kind::SwapRows, t, i);
        }
        if (j != t) {
            A_.swap_cols(t, j);
            record(NovOperation::Kind::SwapCols, t, j);
        }
    }

    void clear_unit_pivot(std::size_t t)
    {
        const NovElem pivot = A_(t, t);
        const auto [c, g] = nov_top(pivot);
        const bool monomial = pivot.is_monomial();
        const NovElem lead_inverse = NovElem::monomial(-g, c);

        for (std::size_t i = t + 1; i < A_.rows(); ++i) {
            if (A_(i, t).is_zero())
                continue;
            const NovElem a = A_(i, t);
            if (monomial) {
                NovElem factor = -(a * lead_inverse);
                A_.add_row_multiple(i, t, factor);
                record(NovOperation::Kind::AddRow, i, t, std::move(factor));
            } else {
                A_.scale_row(i, pivot);
                record(NovOperation::Kind::ScaleRow, i, i, pivot);
                A_.add_row_multiple(i, t, -a);
                record(NovOperation::Kind::AddRow, i, t, -a);
            }
        }

        const NovElem inverse = monomial ? lead_inverse : nov_invert(pivot, depth_);
        for (std::size_t j = t + 1; j < A_.cols(); ++j) {
            if (A_(t, j).is_zero())
                continue;
            NovElem factor = -(A_(t, j) * inverse);
            record(NovOperation::Kind::AddCol, j, t, std::move(factor));
            // Column t vanishes off the pivot, so the operation only touches
            // (t, j), whose exact value is zero.
            A_(t, j) = NovElem();
        }
    }

    // One pass of top-coefficient division against the pivot. Returns true once
    // the pivot's row and column are clear.
    bool euclidean_sweep(std::size_t t)
    {
        const auto [n, g] = nov_top(A_(t, t));
        bool clear = true;
        for (std::size_t i = t + 1; i < A_.rows(); ++i) {
            if (A_(i, t).is_zero())
                continue;
            const auto [a, e] = nov_top(A_(i, t));
            NovElem factor = NovElem::monomial(e - g, Integer(-(a / n)));
            A_.add_row_multiple(i, t, factor);
            record(NovOperation::Kind::AddRow, i, t, std::move(factor));
            clear = clear && A_(i, t).is_zero();
        }
        for (std::size_t j = t + 1; j < A_.cols(); ++j) {
            if (A_(t, j).is_zero())
                continue;
            const auto [a, e] = nov_top(A_(t, j));
            NovElem factor = NovElem::monomial(e - g, Integer(-(a / n)));
            A_.add_col_multiple(j, t, factor);
            record(NovOperation::Kind::AddCol, j, t, std::move(factor));
            clear = clear && A_(t, j).is_zero();
        }
        if (out_.operations.size() > max_iter_)
            throw budget_exhausted{};
        return clear;
    }

    // Nov/a + Nov/b = Nov/gcd + Nov/lcm for integers, so the non-unit tops are
    // rewritten as a divisibility chain; factors that collapse to 1 become units.
    void finish_invariants(const std::vector<Integer>& tops)
    {
        Matrix<Integer> diag(tops.size(), tops.size());
        for (std::size_t k = 0; k < tops.size(); ++k)
            diag(k, k) = tops[k];
        out_.nonunit_invariants = snf_int(diag).invariant_factors;
        out_.unit_count += tops.size() - out_.nonunit_invariants.size();
    }

    NovReduction stuck(std::string reason)
    {
        out_.status = NovReduction::Status::Stuck;
        out_.stuck_reason = std::move(reason);
        std::vector<Integer> tops;
        std::size_t units = 0;
        for (const auto& d : out_.diagonal) {
            if (d.is_unit())
                ++units;
            else
                tops.push_back(magnitude(d.top().coeff));
        }
        out_.unit_count = units;
        finish_invariants(tops);
        return std::move(out_);
    }

public:
    struct budget_exhausted {};

    NovReduction run_guarded()
    {
        try {
            return run();
        } catch (const budget_exhausted&) {
            return stuck("iteration budget exhausted");
        }
    }

private:
    Matrix<NovElem> A_;
    Rational depth_;
    std::size_t max_iter_;
    NovReduction out_;
};

} // namespace detail

/// Diagonalizes A over Nov. Entries must be exact.
inline NovReduction nov_reduce(const Matrix<NovElem>& A, const Rational& depth = default_nov_depth,
                               std::size_t max_iter = default_nov_max_iter)
{
    if (depth <= 0)
        throw std::domain_error("Novikov depth must be positive");
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (!A(i, j).is_exact())
                throw std::invalid_argument("nov_reduce requires exact entries, got " + A(i, j).str());
    return detail::NovReducer(A, depth, max_iter).run_guarded();
}

} // namespace morsetwist

#endif
