#include "doctest.h"

#include <random>
#include <set>

#include "gdimlab/exactla.hpp"

using namespace gdimlab;

namespace {

// Uniform field element from a seeded engine; engine output is standard-fixed
// so tests are reproducible across platforms.
std::uint32_t rand_fe(std::mt19937_64& rng, const PrimeField& F) {
    return static_cast<std::uint32_t>(rng() % F.p());
}

FMatrix random_matrix(std::mt19937_64& rng, const PrimeField& F, std::size_t r, std::size_t c) {
    FMatrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rand_fe(rng, F));
    return m;
}

// All p^k coordinate vectors of F_p^n spanned by the rows of a basis matrix,
// enumerated by brute force.  Only used at tiny sizes.
std::set<FVec> enumerate_span(const FMatrix& basis) {
    const PrimeField& F = basis.field();
    std::set<FVec> out;
    std::size_t k = basis.rows();
    std::vector<std::uint32_t> coef(k, 0);
    while (true) {
        FVec v(basis.cols(), 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < basis.cols(); ++j)
                v[j] = F.add(v[j], F.mul(coef[i], basis.at(i, j)));
        out.insert(v);
        std::size_t i = 0;
        for (; i < k; ++i) {
            coef[i]++;
            if (coef[i] < F.p()) break;
            coef[i] = 0;
        }
        if (i == k) break;
    }
    return out;
}

} // namespace

TEST_CASE("prime field basics") {
    PrimeField F(101);
    CHECK(F.add(100, 2) == 1);
    CHECK(F.sub(1, 2) == 100);
    CHECK(F.mul(10, 11) == 9);
    CHECK(F.mul(F.inv(37), 37) == 1);
    CHECK(F.reduce(-1) == 100);
    CHECK(F.reduce(202) == 0);
    CHECK_THROWS_AS(PrimeField(4), InputError);
    CHECK_THROWS_AS(PrimeField(2), InputError);
    CHECK_THROWS_AS(PrimeField(65521), InputError); // prime but too large
    CHECK_THROWS_AS(F.inv(0), InputError);
}

TEST_CASE("rref matches hand elimination over F_5") {
    // [[2,4],[1,2]]: normalize row 1 by inv(2)=3 -> (1,2); row 2 - (1,2) -> 0.
    PrimeField F(5);
    FMatrix m = FMatrix::from_rows(F, {{2, 4}, {1, 2}});
    RrefResult rr = rref(m);
    CHECK(rr.rank == 1);
    CHECK(rr.pivots == std::vector<std::size_t>{0});
    CHECK(rr.mat == FMatrix::from_rows(F, {{1, 2}, {0, 0}}));
}

TEST_CASE("rref handles empty shapes") {
    PrimeField F(101);
    CHECK(rref(FMatrix(F, 0, 4)).rank == 0);
    CHECK(rref(FMatrix(F, 3, 0)).rank == 0);
    CHECK(kernel_basis(FMatrix(F, 0, 4)).dim() == 4);
    CHECK(kernel_basis(FMatrix(F, 3, 0)).dim() == 0);
}

TEST_CASE("rank-nullity on random 6x9 matrices") {
    PrimeField F(101);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        FMatrix m = random_matrix(rng, F, 6, 9);
        std::size_t rk = rank(m);
        Subspace ker = kernel_basis(m);
        CHECK(rk + ker.dim() == 9);
        CHECK(rank(m.transpose()) == rk);
        // every kernel basis vector is annihilated
        for (std::size_t i = 0; i < ker.dim(); ++i)
            CHECK(fvec_is_zero(m.apply(ker.basis().row(i))));
    }
}

TEST_CASE("solve returns a particular solution and detects inconsistency") {
    PrimeField F(101);
    std::mt19937_64 rng(11);
    FMatrix m = random_matrix(rng, F, 4, 6);
    FVec x0(6);
    for (auto& v : x0) v = rand_fe(rng, F);
    FVec b = m.apply(x0);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
    CHECK(solve(m, FVec(4, 0)) == FVec(6, 0));

    FMatrix z(F, 2, 3); // zero matrix: only b = 0 solvable
    CHECK(solve(z, FVec{0, 0}).has_value());
    CHECK(!solve(z, FVec{1, 0}).has_value());
}

TEST_CASE("subspace canonical form: equality independent of presented basis") {
    PrimeField F(101);
    std::mt19937_64 rng(13);
    FMatrix rows = random_matrix(rng, F, 3, 7);
    Subspace s1 = Subspace::span_rows(rows);
    // shuffle by an invertible change of presentation: row ops only
    FMatrix mixed(F, 3, 7);
    mixed.set_row(0, fvec_add(F, rows.row(0), fvec_scale(F, 5, rows.row(1))));
    mixed.set_row(1, fvec_add(F, rows.row(1), fvec_scale(F, 17, rows.row(2))));
    mixed.set_row(2, fvec_scale(F, 9, rows.row(2)));
    Subspace s2 = Subspace::span_rows(mixed);
    CHECK(s1 == s2);
    CHECK(s1.contains(s2));
    for (std::size_t i = 0; i < s1.dim(); ++i) {
        FVec v = s1.basis().row(i);
        CHECK(s1.coords_of(v).size() == s1.dim());
        CHECK(s1.contains(v));
    }
}

TEST_CASE("sum and intersection against brute force over F_3") {
    // dim <= 4 ambient: enumerate all members explicitly and compare.
    PrimeField F(3);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        FMatrix a = random_matrix(rng, F, 2, 4);
        FMatrix b = random_matrix(rng, F, 2, 4);
        Subspace U = Subspace::span_rows(a);
        Subspace V = Subspace::span_rows(b);
        Subspace S = subspace_sum(U, V);
        Subspace I = subspace_intersection(U, V);

        auto setU = enumerate_span(U.basis());
        auto setV = enumerate_span(V.basis());
        std::set<FVec> inter;
        for (const auto& v : setU)
            if (setV.count(v)) inter.insert(v);
        CHECK(enumerate_span(I.basis()) == inter);

        std::set<FVec> summed;
        for (const auto& u : setU)
            for (const auto& v : setV) summed.insert(fvec_add(F, u, v));
        CHECK(enumerate_span(S.basis()) == summed);

        // modular law sanity: dim U + dim V = dim(U+V) + dim(U∩V)
        CHECK(U.dim() + V.dim() == S.dim() + I.dim());
    }
}

TEST_CASE("image basis is the column space") {
    PrimeField F(7);
    FMatrix m = FMatrix::from_rows(F, {{1, 2}, {2, 4}, {0, 1}});
    Subspace img = image_basis(m);
    CHECK(img.dim() == 2);
    CHECK(img.contains(FVec{1, 2, 0}));
    CHECK(img.contains(FVec{0, 0, 1}));
}

TEST_CASE("kernel pivoted basis gathers coordinates without elimination") {
    PrimeField F(101);
    std::mt19937_64 rng(23);
    FMatrix m = random_matrix(rng, F, 3, 8);
    PivotedBasis k = kernel_pivoted(m);
    CHECK(k.dim() >= 5);
    const PrimeField& field = F;
    // random combination of kernel rows: coords() must recover the coefficients
    FVec coef(k.dim());
    for (auto& v : coef) v = rand_fe(rng, field);
    FVec w = k.expand(coef);
    CHECK(k.coords(w, true) == coef);
    CHECK(fvec_is_zero(m.apply(w)));
}

TEST_CASE("row basis accumulates rank incrementally with early exit") {
    PrimeField F(101);
    std::mt19937_64 rng(29);
    RowBasis rb(F, 5);
    FMatrix m = random_matrix(rng, F, 12, 5);
    std::size_t added = 0;
    for (std::size_t i = 0; i < m.rows() && !rb.is_full(); ++i)
        if (rb.add(m.row(i))) ++added;
    CHECK(added == rb.rank());
    CHECK(rb.rank() == rank(m)); // random 12x5 is full rank with overwhelming probability
    CHECK(rb.to_subspace() == Subspace::span_rows(m));
}

TEST_CASE("rref agrees with a second elimination on large-ish random matrices") {
    PrimeField F(101);
    std::mt19937_64 rng(31);
    FMatrix m = random_matrix(rng, F, 40, 60);
    RrefResult rr = rref(m);
    // RREF is idempotent and row-equivalent to the input
    RrefResult rr2 = rref(rr.mat);
    CHECK(rr2.mat == rr.mat);
    CHECK(rr2.rank == rr.rank);
    CHECK(Subspace::span_rows(m) == Subspace::span_rows(rr.mat));
    // pivot columns carry unit vectors
    for (std::size_t t = 0; t < rr.rank; ++t)
        for (std::size_t i = 0; i < m.rows(); ++i)
            CHECK(rr.mat.at(i, rr.pivots[t]) == (i == t ? 1u : 0u));
}
