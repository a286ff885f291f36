#include <cstddef>
#include <vector>

#include "doctest.h"
#include "gdimlab/gdim.hpp"
#include "test_rings.hpp"

using namespace gdimlab;
using namespace testrings;

namespace {

Element deg1(const AlgebraPtr& R, std::size_t j) { return Element{1, unit(R->dim1(), j)}; }

Element neg(const AlgebraPtr& R, const Element& e) { return R->scale(R->field().neg(1), e); }

ElementMatrix mat1(const Element& e) {
    ElementMatrix m(1, 1);
    m.at(0, 0) = e;
    return m;
}

// A degree-1 basis vector that is not a scalar multiple of x.
Element independent_of(const AlgebraPtr& R, const Element& x) {
    std::size_t j = 0;
    bool only_first = true;
    for (std::size_t i = 1; i < x.coords.size(); ++i)
        if (x.coords[i] != 0) only_first = false;
    if (only_first) j = 1;
    return deg1(R, j);
}

// Inclusion of the first ambient summand and projection onto the second for
// cokernels of 2x2 presentations whose ambient is R^2, written through the
// canonical lift/project data.
ModuleMap first_summand_inclusion(const Coker& sub, const Coker& big) {
    const GradedModule& A = sub.module();
    const GradedModule& E = big.module();
    const PrimeField& F = A.ring().field();
    std::vector<FMatrix> blocks;
    for (int d = A.min_degree(); d <= A.max_degree(); ++d) {
        FMatrix blk(F, E.dim(d), A.dim(d));
        const std::size_t piece = A.ring().piece_dim(d);
        for (std::size_t b = 0; b < A.dim(d); ++b) {
            FVec va = sub.lift(d, unit(A.dim(d), b));
            FVec ve(2 * piece, 0);
            for (std::size_t i = 0; i < piece; ++i) ve[i] = va[i];
            FVec col = big.project(d, ve);
            for (std::size_t i = 0; i < col.size(); ++i) blk.set(i, b, col[i]);
        }
        blocks.push_back(std::move(blk));
    }
    return ModuleMap{A, E, 0, std::move(blocks)};
}

ModuleMap second_summand_projection(const Coker& big, const Coker& quot) {
    const GradedModule& E = big.module();
    const GradedModule& B = quot.module();
    const PrimeField& F = E.ring().field();
    std::vector<FMatrix> blocks;
    for (int d = E.min_degree(); d <= E.max_degree(); ++d) {
        FMatrix blk(F, B.dim(d), E.dim(d));
        const std::size_t piece = E.ring().piece_dim(d);
        for (std::size_t b = 0; b < E.dim(d); ++b) {
            FVec ve = big.lift(d, unit(E.dim(d), b));
            FVec vb(piece, 0);
            for (std::size_t i = 0; i < piece; ++i) vb[i] = ve[piece + i];
            FVec col = quot.project(d, vb);
            for (std::size_t i = 0; i < col.size(); ++i) blk.set(i, b, col[i]);
        }
        blocks.push_back(std::move(blk));
    }
    return ModuleMap{E, B, 0, std::move(blocks)};
}

} // namespace

TEST_CASE("one-matrix periodic certificate over a reduction quotient") {
    auto [R, x] = reduction_ring(2);
    REQUIRE(R->mul(x, x).is_zero());

    PeriodicResult pr = verify_periodic_cr(R, mat1(x), "R/xR");
    CHECK(pr.cert.kind == GdimCertificate::Kind::PeriodicCR);
    CHECK(pr.cert.passed);
    CHECK(pr.cert.exact);
    CHECK(pr.cert.periodic.size() == 1);

    CHECK(pr.module.base_degree() == 0);
    CHECK(pr.module.dims() == std::vector<std::size_t>{1, 2}); // [PAPER] H_{R/xR} = 1 + r t
    CHECK(certified_module(pr.cert) == pr.module);

    // an exact certificate implies the bounded semi-decision passes
    GdimCertificate bounded = check_gdim_zero_bounded(pr.module, 4);
    CHECK(bounded.passed);
    CHECK_FALSE(bounded.exact); // R/xR is not free
}

TEST_CASE("two-matrix periodic certificate over the seven-quadric ring") {
    PrimeField F(101);
    auto R = std::make_shared<const GradedAlgebra>(seven_quadric_ring(F));
    // variables in build order: e0 = x, e1 = y, e2 = z, e3 = w
    Element ex = deg1(R, 0), ey = deg1(R, 1), ez = deg1(R, 2), ew = deg1(R, 3);

    ElementMatrix d1(2, 2), d2(2, 2);
    d1.at(0, 0) = ez;
    d1.at(0, 1) = ex;
    d1.at(1, 0) = ew;
    d1.at(1, 1) = ey;
    d2.at(0, 0) = ey;
    d2.at(0, 1) = neg(R, ex);
    d2.at(1, 0) = neg(R, ew);
    d2.at(1, 1) = ez;

    PeriodicResult pr = verify_periodic_cr(R, d1, d2, "2-periodic pair");
    CHECK(pr.cert.passed);
    CHECK(pr.cert.exact);
    CHECK(pr.cert.periodic.size() == 2);
    CHECK(pr.module.dims() == std::vector<std::size_t>{2, 6}); // [PAPER] b = 2, a = rb = 6

    // the transposed pair certifies the transposed cokernel
    PeriodicResult prt = verify_periodic_cr(R, transpose(d1), transpose(d2), "transposed pair");
    CHECK(prt.cert.passed);
    CHECK(prt.module.dims() == std::vector<std::size_t>{2, 6});

    GdimCertificate bounded = check_gdim_zero_bounded(pr.module, 3);
    CHECK(bounded.passed);

    Theorem31Report rep = verify_theorem31(R, pr.module, pr.cert, 4);
    CHECK(rep.all_ok());
    CHECK(rep.r == 3);
    CHECK(rep.b == 2);
    CHECK(rep.a == 6);
    CHECK(rep.betti_row == std::vector<std::size_t>{2, 2, 2, 2, 2});
    CHECK(rep.bass_measured == std::vector<std::size_t>{3, 8, 24, 72, 216}); // [DERIVED]
    CHECK(rep.koszul_diagonal == std::vector<std::size_t>{1, 4, 13, 40, 121});
    CHECK(rep.length_dual == 8);
}

TEST_CASE("periodic certificate rejections") {
    auto R = good_ring(2);

    SUBCASE("zero differential is not exact") {
        CHECK_THROWS_AS(verify_periodic_cr(R, mat1(Element::zero())), CertificateRejected);
    }
    SUBCASE("non-square complexes are rejected up front") {
        ElementMatrix d(1, 2);
        d.at(0, 0) = deg1(R, 0);
        d.at(0, 1) = deg1(R, 1);
        CHECK_THROWS_AS(verify_periodic_cr(R, d), InputError);
    }
    SUBCASE("degree-2 entries are rejected up front") {
        Element f{2, unit(R->dim2(), 0)};
        CHECK_THROWS_AS(verify_periodic_cr(R, mat1(f)), InputError);
    }
    SUBCASE("non-vanishing square is not a complex") {
        Element e0 = deg1(R, 0);
        REQUIRE_FALSE(R->mul(e0, e0).is_zero());
        CHECK_THROWS_AS(verify_periodic_cr(R, mat1(e0)), NotAComplex);
    }
    SUBCASE("both products of a pair are checked") {
        Element a = deg1(R, 0), b = deg1(R, 1);
        REQUIRE_FALSE(R->mul(a, b).is_zero());
        ElementMatrix u(3, 3), v(3, 3);
        u.at(0, 1) = a; // u·v has a·b in the corner, v·u = 0
        v.at(1, 2) = b;
        CHECK_THROWS_AS(verify_periodic_cr(R, u, v), NotAComplex);
        CHECK_THROWS_AS(verify_periodic_cr(R, v, u), NotAComplex);
    }
    SUBCASE("pair sizes must agree") {
        ElementMatrix one(1, 1), two(2, 2);
        one.at(0, 0) = deg1(R, 0);
        CHECK_THROWS_AS(verify_periodic_cr(R, one, two), InputError);
    }
    SUBCASE("square-zero ring: socle too large for exactness") {
        auto Z = sq0();
        Element z0 = deg1(Z, 0);
        REQUIRE(Z->mul(z0, z0).is_zero());
        CHECK_THROWS_AS(verify_periodic_cr(Z, mat1(z0)), CertificateRejected);
    }
}

TEST_CASE("hypersurface k[x]/(x^2): the classical period-one complex") { // [TRIVIAL]
    PrimeField F(101);
    auto R = std::make_shared<const GradedAlgebra>(RingCore(F, 1, 0, {FVec{}}));
    PeriodicResult pr = verify_periodic_cr(R, mat1(deg1(R, 0)));
    CHECK(pr.cert.passed);
    CHECK(pr.module == GradedModule::residue_field(R));
}

TEST_CASE("split extension of free modules") { // [TRIVIAL]
    auto R = reduction_ring(2).ring;
    GradedModule one = free_module(R, {0});
    GradedModule two = free_module(R, {0, 0});
    const PrimeField& F = R->field();

    GdimCertificate part = check_gdim_zero_bounded(one, 2);
    REQUIRE(part.passed);
    REQUIRE(part.exact); // freeness is decided outright

    std::vector<FMatrix> iblocks, pblocks, pfirst;
    for (int d = 0; d <= 2; ++d) {
        std::size_t n = one.dim(d);
        FMatrix ib(F, 2 * n, n), pb(F, n, 2 * n), pf(F, n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            ib.set(i, i, 1);
            pb.set(i, n + i, 1);
            pf.set(i, i, 1);
        }
        iblocks.push_back(ib);
        pblocks.push_back(pb);
        pfirst.push_back(pf);
    }
    ModuleMap incl{one, two, 0, iblocks};
    ModuleMap proj{two, one, 0, pblocks};

    GdimCertificate cert = verify_extension(part, part, two, incl, proj);
    CHECK(cert.kind == GdimCertificate::Kind::Extension);
    CHECK(cert.passed);
    CHECK(cert.exact);
    CHECK(certified_module(cert) == two);

    // projecting the same summand the inclusion fills is not exact
    ModuleMap bad{two, one, 0, pfirst};
    CHECK_THROWS_AS(verify_extension(part, part, two, incl, bad), InputError);

    // failing part certificates are refused
    GdimCertificate failing = check_gdim_zero_bounded(GradedModule::residue_field(R), 2);
    REQUIRE_FALSE(failing.passed);
    CHECK_THROWS_AS(verify_extension(failing, failing, two, incl, proj), InputError);
}

TEST_CASE("extension step of the bidiagonal family") {
    auto [R, x] = reduction_ring(2);
    Element z = independent_of(R, x);

    Presentation pa{R, {0}, mat1(x)};
    Coker ckA = coker(pa);
    PeriodicResult pr = verify_periodic_cr(R, mat1(x), "R/xR");
    REQUIRE(ckA.module() == pr.module);

    ElementMatrix phi(2, 2);
    phi.at(0, 0) = x;
    phi.at(0, 1) = z;
    phi.at(1, 1) = x;
    Presentation pe{R, {0, 0}, phi};
    Coker ckE = coker(pe);
    const GradedModule& E = ckE.module();
    REQUIRE(E.dims() == std::vector<std::size_t>{2, 4});

    ModuleMap incl = first_summand_inclusion(ckA, ckE);
    ModuleMap proj = second_summand_projection(ckE, ckA);

    GdimCertificate cert = verify_extension(pr.cert, pr.cert, E, incl, proj);
    CHECK(cert.passed);
    CHECK(cert.exact);
    CHECK(cert.parts.size() == 2);
    CHECK(certified_module(cert) == E);

    CHECK(minimal_generators(E).count == 2);
    CHECK(check_gdim_zero_bounded(E, 3).passed);

    Theorem31Report rep = verify_theorem31(R, E, cert, 4);
    CHECK(rep.all_ok());
    CHECK(rep.r == 2);
    CHECK(rep.b == 2);
    CHECK(rep.a == 4);
    CHECK(rep.betti_row == std::vector<std::size_t>{2, 2, 2, 2, 2});
    CHECK(rep.bass_measured == std::vector<std::size_t>{2, 3, 6, 12, 24}); // [DERIVED]
    CHECK(rep.koszul_diagonal == std::vector<std::size_t>{1, 3, 7, 15, 31});
    CHECK(rep.length_module == 6);
    CHECK(rep.length_dual == 6);
}

TEST_CASE("bounded check separates free modules from the residue field") {
    auto R = good_ring(2);

    GdimCertificate kc = check_gdim_zero_bounded(GradedModule::residue_field(R), 3);
    CHECK_FALSE(kc.passed);
    CHECK_FALSE(kc.exact);
    CHECK_FALSE(kc.bidual->is_iso);
    CHECK(kc.ext_module->total(1) == 3); // [DERIVED] Ext^1(k, R) = dim1
    CHECK(certified_module(kc) == GradedModule::residue_field(R));

    GdimCertificate fc = check_gdim_zero_bounded(free_module(R, {0, 0, 0, 0, 0}), 3);
    CHECK(fc.passed);
    CHECK(fc.exact);
    CHECK(fc.bidual->is_iso);
}

TEST_CASE("structure report on a free module flags it as free") { // [TRIVIAL]
    PrimeField F(101);
    auto R = std::make_shared<const GradedAlgebra>(seven_quadric_ring(F));
    GradedModule M = free_module(R, {0});
    GdimCertificate cert = check_gdim_zero_bounded(M, 2);

    Theorem31Report rep = verify_theorem31(R, M, cert, 3);
    CHECK_FALSE(rep.all_ok());
    CHECK_FALSE(rep.nonfree);
    CHECK(rep.cert_matches);
    CHECK(rep.hilbert_ok);
    CHECK(rep.socle_ok);
    CHECK(rep.bass_ok);
    CHECK(rep.koszul_ok);
    CHECK_FALSE(rep.a_eq_rb);              // three graded slices
    CHECK_FALSE(rep.linear_resolution_ok); // the resolution stops
    CHECK(rep.dual_length_ok);

    // a certificate for a different module is reported as a mismatch
    auto [R2, x2] = reduction_ring(2);
    PeriodicResult other = verify_periodic_cr(R2, mat1(x2));
    Theorem31Report rep2 = verify_theorem31(R2, free_module(R2, {0}), other.cert, 2);
    CHECK_FALSE(rep2.cert_matches);
}
