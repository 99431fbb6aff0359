#include <morsetwist/linalg.hpp>
#include <morsetwist/nov_reduce.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace morsetwist;

namespace {

using IMat = Matrix<Integer>;

Integer det(const IMat& A)
{
    std::vector<std::size_t> rows(A.rows()), cols(A.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = cols[i] = i;
    return detail::minor_determinant(A, rows, cols);
}

IMat random_int_matrix(std::mt19937& rng, std::size_t max_dim, int bound)
{
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_int_distribution<int> entry(-bound, bound), sparsity(0, 3);
    IMat A(dim(rng), dim(rng));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            A(i, j) = sparsity(rng) == 0 ? 0 : entry(rng);
    return A;
}

void expect_valid_snf(const IMat& A)
{
    const auto r = snf_int(A);
    EXPECT_EQ(r.U * A * r.V, r.D);
    EXPECT_EQ(magnitude(det(r.U)), 1);
    EXPECT_EQ(magnitude(det(r.V)), 1);
    for (std::size_t i = 0; i < r.D.rows(); ++i)
        for (std::size_t j = 0; j < r.D.cols(); ++j)
            if (i != j)
                EXPECT_EQ(r.D(i, j), 0);
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < std::min(A.rows(), A.cols()); ++k) {
        EXPECT_GE(r.D(k, k), 0);
        nonzero += r.D(k, k) != 0;
        if (k + 1 < std::min(A.rows(), A.cols()) && r.D(k + 1, k + 1) != 0)
            EXPECT_EQ(r.D(k + 1, k + 1) % r.D(k, k), 0);
    }
    EXPECT_EQ(r.rank, nonzero);
    for (const auto& f : r.invariant_factors)
        EXPECT_GE(f, 2);
}

} // namespace

TEST(Snf, SingleEntryTorsion)
{
    const auto r = snf_int(IMat{{2}});
    EXPECT_EQ(r.rank, 1u);
    EXPECT_EQ(r.invariant_factors, InvariantFactorList{2});
}

TEST(Snf, ZeroMatrix)
{
    const auto r = snf_int(IMat(3, 2));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_TRUE(r.invariant_factors.empty());
}

TEST(Snf, CoverBoundaryHasNoTorsion)
{
    const auto r = snf_int(IMat{{1, -1}, {-1, 1}});
    EXPECT_EQ(r.rank, 1u);
    EXPECT_TRUE(r.invariant_factors.empty());
}

TEST(Snf, DivisibilityChain)
{
    const IMat A{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    const auto r = snf_int(A);
    EXPECT_EQ(r.invariant_factors, (InvariantFactorList{2, 6, 12}));
    expect_valid_snf(A);
    // diag(2,3) is Z/6 after normalization.
    EXPECT_EQ(snf_int(IMat{{2, 0}, {0, 3}}).invariant_factors, InvariantFactorList{6});
}

TEST(Snf, RandomAgainstMinorExpansion)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const IMat A = random_int_matrix(rng, 5, 5);
        expect_valid_snf(A);
        EXPECT_EQ(snf_int(A).rank, rank_int_bruteforce(A));
    }
}

TEST(Snf, RandomSixBySix)
{
    std::mt19937 rng(12);
    for (int i = 0; i < 30; ++i) {
        IMat A = random_int_matrix(rng, 6, 9);
        expect_valid_snf(A);
        EXPECT_EQ(snf_int(A).rank, rank_int_bruteforce(A));
    }
}

TEST(BruteForceRank, Basics)
{
    EXPECT_EQ(rank_int_bruteforce(IMat{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank_int_bruteforce(IMat{{0}}), 0u);
    EXPECT_THROW(rank_int_bruteforce(IMat(7, 1)), TooLarge);
}

TEST(ExpSumRank, Examples)
{
    const ExpSum a = ExpSum::monomial(Rational(-1, 2)) - ExpSum::monomial(Rational(1, 2));
    EXPECT_EQ(rank_expsum(Matrix<ExpSum>{{a}}), 1u);
    EXPECT_EQ(rank_expsum(Matrix<ExpSum>{{ExpSum::monomial(3) - ExpSum::monomial(3)}}), 0u);
    // Genus-2 coboundary from degree 0 under the first basis class.
    const ExpSum one(1), t = ExpSum::monomial(-1);
    EXPECT_EQ(rank_expsum(Matrix<ExpSum>{{one - t}, {0}, {0}, {0}}), 1u);
    // Rank 1 over the fraction field although no entry is a unit.
    const ExpSum u = ExpSum::monomial(1) - 1, v = ExpSum::monomial(1) + 1;
    EXPECT_EQ(rank_expsum(Matrix<ExpSum>{{u, u * v}, {v, v * v}}), 1u);
}

TEST(ExpSumRank, ConstantEntriesMatchSnf)
{
    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        const IMat A = random_int_matrix(rng, 5, 4);
        EXPECT_EQ(rank_expsum(A.map([](const Integer& n) { return ExpSum(Rational(n), 0); })), snf_int(A).rank);
    }
}

TEST(ExpSumRank, AgreesWithEvaluationAtE)
{
    // Evaluation t -> e is injective on rational exponents, so the floating
    // rank of the evaluated matrix (with a generous threshold) matches.
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> coeff(-2, 2), num(-2, 2), pick(0, 2);
    for (int i = 0; i < 60; ++i) {
        Matrix<ExpSum> A(3, 3);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                A(r, c) = ExpSum(coeff(rng), Rational(num(rng), 2)) + ExpSum(coeff(rng), Rational(num(rng), 2));
        // Third row is a combination of the first two, or independent.
        for (std::size_t c = 0; c < 3; ++c)
            A(2, c) = pick(rng) ? A(0, c) * ExpSum::monomial(1) - A(1, c) : ExpSum(coeff(rng), Rational(num(rng)));
        std::vector<std::vector<double>> M(3, std::vector<double>(3));
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                M[r][c] = A(r, c).evaluate();
        std::size_t rank = 0;
        for (std::size_t c = 0; c < 3 && rank < 3; ++c) {
            std::size_t p = rank;
            for (std::size_t r = rank; r < 3; ++r)
                if (std::abs(M[r][c]) > std::abs(M[p][c]))
                    p = r;
            if (std::abs(M[p][c]) < 1e-9)
                continue;
            std::swap(M[p], M[rank]);
            for (std::size_t r = rank + 1; r < 3; ++r) {
                const double f = M[r][c] / M[rank][c];
                for (std::size_t k = c; k < 3; ++k)
                    M[r][k] -= f * M[rank][k];
            }
            ++rank;
        }
        EXPECT_EQ(rank_expsum(A), rank);
    }
}

TEST(NovReduce, NonUnitEntry)
{
    const auto r = nov_reduce(Matrix<NovElem>{{NovElem::monomial(Rational(3, 4), -2)}});
    EXPECT_TRUE(r.complete());
    EXPECT_EQ(r.unit_count, 0u);
    EXPECT_EQ(r.nonunit_invariants, InvariantFactorList{2});
}

TEST(NovReduce, UnitEntry)
{
    const auto r = nov_reduce(Matrix<NovElem>{{NovElem::parse("t^(1/2) - t^(-1/2)")}});
    EXPECT_EQ(r.unit_count, 1u);
    EXPECT_TRUE(r.nonunit_invariants.empty());
}

TEST(NovReduce, Identity)
{
    const auto r = nov_reduce(Matrix<NovElem>::identity(3));
    EXPECT_EQ(r.unit_count, 3u);
    EXPECT_EQ(r.rank(), 3u);
}

TEST(NovReduce, RejectsTruncatedInput)
{
    EXPECT_THROW(nov_reduce(Matrix<NovElem>{{NovElem::parse("1 + O(t^(-1))")}}), std::invalid_argument);
    EXPECT_THROW(nov_reduce(Matrix<NovElem>{{NovElem(1)}}, 0), std::domain_error);
}

TEST(NovReduce, BudgetExhaustionIsStuck)
{
    const Matrix<NovElem> A{{NovElem::parse("t^(1/2) - t^(-1/2)"), NovElem::parse("2*t + 3")},
                            {NovElem::parse("5 - t^(-1)"), NovElem::parse("t^(2) + 7")}};
    const auto r = nov_reduce(A, 16, 1);
    EXPECT_FALSE(r.complete());
    EXPECT_FALSE(r.stuck_reason.empty());
}

TEST(NovReduce, MixedMatrix)
{
    // Unit pivot with a non-monomial inverse, followed by a 2-torsion entry.
    const NovElem u = NovElem::parse("t - 1");
    const Matrix<NovElem> A{{u, u * NovElem::parse("t^(1/3) + 4")}, {NovElem(0), NovElem::monomial(2, 2)}};
    const auto r = nov_reduce(A);
    EXPECT_TRUE(r.complete());
    EXPECT_EQ(r.unit_count, 1u);
    EXPECT_EQ(r.nonunit_invariants, InvariantFactorList{2});
}

namespace {

Matrix<NovElem> random_nov_matrix(std::mt19937& rng)
{
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    std::uniform_int_distribution<int> coeff(-3, 3), num(-4, 4), count(0, 2);
    Matrix<NovElem> A(dim(rng), dim(rng));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            std::vector<NovElem::TermType> terms;
            for (int k = count(rng); k > 0; --k)
                terms.push_back({Integer(coeff(rng)), Rational(num(rng), 2)});
            A(i, j) = NovElem::normalize(terms);
        }
    return A;
}

} // namespace

TEST(NovReduce, IntegerConstantsMatchSnf)
{
    std::mt19937 rng(15);
    for (int i = 0; i < 150; ++i) {
        const IMat A = random_int_matrix(rng, 4, 6);
        const auto r = nov_reduce(A.map([](const Integer& n) { return NovElem(n, 0); }));
        ASSERT_TRUE(r.complete());
        const auto s = snf_int(A);
        EXPECT_EQ(r.rank(), s.rank);
        EXPECT_EQ(r.nonunit_invariants, s.invariant_factors);
    }
}

TEST(NovReduce, OperationsReproduceDiagonal)
{
    std::mt19937 rng(16);
    std::size_t completed = 0;
    for (int i = 0; i < 60; ++i) {
        const auto A = random_nov_matrix(rng);
        const auto r = nov_reduce(A, 6);
        if (!r.complete())
            continue;
        ++completed;
        const auto replayed = apply_operations(A, r.operations);
        for (std::size_t k = 0; k < r.diagonal.size(); ++k) {
            // Agreement above the replayed entry's truncation floor.
            const NovElem diff = replayed(k, k) - r.diagonal[k];
            EXPECT_FALSE(diff.has_known_top()) << "diagonal " << k << ": " << diff.str();
        }
        for (std::size_t a = 0; a < A.rows(); ++a)
            for (std::size_t b = 0; b < A.cols(); ++b)
                if (a != b || a >= r.diagonal.size())
                    EXPECT_FALSE(replayed(a, b).has_known_top()) << replayed(a, b).str();
    }
    EXPECT_GT(completed, 40u);
}

TEST(NovReduce, RankMatchesFieldRank)
{
    // Over Nov, unit_count + |nonunits| is the rank over the fraction field,
    // which the Bareiss rank computes from the same entries.
    std::mt19937 rng(17);
    for (int i = 0; i < 150; ++i) {
        const auto A = random_nov_matrix(rng);
        const auto r = nov_reduce(A);
        if (!r.complete())
            continue;
        const auto E = A.map([](const NovElem& e) {
            std::vector<ExpSum::TermType> terms;
            for (const auto& t : e.terms())
                terms.push_back({Rational(t.coeff), t.exponent});
            return ExpSum::normalize(terms);
        });
        EXPECT_EQ(r.rank(), rank_expsum(E));
    }
}

TEST(Monotone, ZeroColumnKeepsRank)
{
    std::mt19937 rng(18);
    for (int i = 0; i < 50; ++i) {
        const IMat A = random_int_matrix(rng, 4, 5);
        EXPECT_EQ(snf_int(A.with_zero_column()).rank, snf_int(A).rank);
        const auto E = A.map([](const Integer& n) { return ExpSum(Rational(n), Rational(1, 3)); });
        EXPECT_EQ(rank_expsum(E.with_zero_column()), rank_expsum(E));
        const auto N = A.map([](const Integer& n) { return NovElem(n, Rational(-2)); });
        EXPECT_EQ(nov_reduce(N.with_zero_column()).rank(), nov_reduce(N).rank());
    }
}
