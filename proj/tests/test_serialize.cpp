#include "doctest.h"

#include "gdimlab/constructions.hpp"
#include "gdimlab/errors.hpp"
#include "gdimlab/gdim.hpp"
#include "gdimlab/homology.hpp"
#include "gdimlab/serialize.hpp"
#include "test_rings.hpp"

using namespace gdimlab;
using namespace testrings;
using nlohmann::json;

namespace {

// A degree-1 element whose square is nonzero, for breaking d·d = 0.
Element non_square_zero(const GradedAlgebra& R) {
    for (std::size_t i = 0; i < R.dim1(); ++i) {
        FVec c = unit(R.dim1(), i);
        if (!fvec_is_zero(R.core().mul11(c, c))) return Element{1, c};
    }
    for (std::size_t i = 0; i < R.dim1(); ++i)
        for (std::size_t j = i + 1; j < R.dim1(); ++j) {
            FVec c = unit(R.dim1(), i);
            c[j] = 1;
            if (!fvec_is_zero(R.core().mul11(c, c))) return Element{1, c};
        }
    throw SearchExhausted("non_square_zero: every candidate squares to zero");
}

Element unit_independent_of(const AlgebraPtr& R, const Element& x) {
    for (std::size_t j = 0; j < R->dim1(); ++j) {
        FMatrix m(R->field(), 2, R->dim1());
        m.set_row(0, x.coords);
        m.set_row(1, unit(R->dim1(), j));
        if (rank(m) == 2) return Element{1, unit(R->dim1(), j)};
    }
    throw SearchExhausted("unit_independent_of: x spans everything");
}

} // namespace

TEST_CASE("ring documents round trip and hash stably") {
    AlgebraPtr R = good_ring(2);
    json j = ring_to_json(*R);
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("kind").get<std::string>() == "ring");

    GradedAlgebra R2 = ring_from_json(j);
    CHECK(*R == R2);

    CHECK(ring_hash(*R).size() == 16);
    CHECK(ring_hash(*R) == ring_hash(*R));
    CHECK(ring_hash(*R) == ring_hash(R2));
    CHECK(ring_hash(*R) != ring_hash(*circ(2)));
    CHECK(ring_hash(*circ(2)) != ring_hash(*circ(3)));
}

TEST_CASE("malformed ring documents are rejected") {
    json good = ring_to_json(*good_ring(2));

    json j = good;
    j["schema"] = 2;
    CHECK_THROWS_AS(ring_from_json(j), SchemaError);

    j = good;
    j["kind"] = "module";
    CHECK_THROWS_AS(ring_from_json(j), SchemaError);

    j = good;
    j.erase("p");
    CHECK_THROWS_AS(ring_from_json(j), SchemaError);

    j = good;
    j["mult11"].erase(0);
    CHECK_THROWS_AS(ring_from_json(j), SchemaError);

    j = good;
    j["mult11"][0][0] = 101;
    CHECK_THROWS_AS(ring_from_json(j), SchemaError);

    j = good;
    j["mult11"][0][0] = -3;
    CHECK_THROWS_AS(ring_from_json(j), SchemaError);

    SUBCASE("tampered products fail the ring axioms, not the schema") {
        json asym = good;
        int v = asym["mult11"][1][0].get<int>();
        asym["mult11"][1][0] = (v + 1) % 101;
        CHECK_THROWS_AS(ring_from_json(asym), InputError);

        json flat = good;
        auto d2 = flat["dim2"].get<std::size_t>();
        for (auto& row : flat["mult11"]) row = std::vector<int>(d2, 0);
        CHECK_THROWS_AS(ring_from_json(flat), InputError);
    }
}

TEST_CASE("element matrices round trip") {
    ReductionRing rr = reduction_ring(2);
    const PrimeField& F = rr.ring->field();

    ElementMatrix m(2, 2);
    m.at(0, 0) = rr.x;
    m.at(0, 1) = Element::zero();
    m.at(1, 0) = Element::scalar(7);
    m.at(1, 1) = Element{2, FVec(rr.ring->dim2(), 1)};

    json j = element_matrix_to_json(m);
    ElementMatrix m2 = element_matrix_from_json(j, F);
    CHECK(m == m2);
    CHECK(j.at("entries")[1].is_null());

    json bad = j;
    bad["entries"][0]["degree"] = 3;
    CHECK_THROWS_AS(element_matrix_from_json(bad, F), SchemaError);

    bad = j;
    bad["entries"][0]["coords"][0] = 101;
    CHECK_THROWS_AS(element_matrix_from_json(bad, F), SchemaError);

    bad = j;
    bad["entries"].erase(3);
    CHECK_THROWS_AS(element_matrix_from_json(bad, F), SchemaError);
}

TEST_CASE("module documents round trip against their ring") {
    AlgebraPtr R = good_ring(2);
    GradedModule m = syzygy(GradedModule::residue_field(R)).module;

    json j = module_to_json(m);
    CHECK(j.at("kind").get<std::string>() == "module");
    CHECK(j.at("ring_hash").get<std::string>() == ring_hash(*R));

    GradedModule m2 = module_from_json(j, R);
    CHECK(m == m2);

    SUBCASE("wrong ring is refused by hash") {
        CHECK_THROWS_AS(module_from_json(j, circ(2)), SchemaError);
    }
    SUBCASE("shape tampering fails construction") {
        json bad = j;
        bad["dims"][0] = bad["dims"][0].get<std::size_t>() + 1;
        CHECK_THROWS_AS(module_from_json(bad, R), InputError);
    }
    SUBCASE("action tampering fails the module axioms") {
        // A two-slice module has no composable actions left to contradict, so
        // tamper a rank-one free module instead: its product rule has teeth.
        json bad = module_to_json(free_module(R, {0}));
        int v = bad["act1"][0][0]["data"][0][0].get<int>();
        bad["act1"][0][0]["data"][0][0] = (v + 1) % 101;
        CHECK_THROWS_AS(module_from_json(bad, R), InputError);
    }
    SUBCASE("the zero module survives") {
        GradedModule z = GradedModule::zero(R);
        GradedModule z2 = module_from_json(module_to_json(z), R);
        CHECK(z2.is_zero_module());
    }
}

TEST_CASE("presentation documents round trip") {
    ReductionRing rr = reduction_ring(2);

    ElementMatrix rels(1, 1);
    rels.at(0, 0) = rr.x;
    Presentation p{rr.ring, {0}, rels};
    p.validate();

    json j = presentation_to_json(p);
    Presentation p2 = presentation_from_json(j, rr.ring);
    CHECK(p2.gen_degrees == p.gen_degrees);
    CHECK(p2.rels == p.rels);

    CHECK_THROWS_AS(presentation_from_json(j, circ(2)), SchemaError);

    json bad = j;
    bad["gen_degrees"] = std::vector<int>{0, 0};
    CHECK_THROWS_AS(presentation_from_json(bad, rr.ring), InputError);
}

TEST_CASE("periodic certificates re-verify on load") {
    ReductionRing rr = reduction_ring(2);

    ElementMatrix d(1, 1);
    d.at(0, 0) = rr.x;
    PeriodicResult res = verify_periodic_cr(rr.ring, d, "multiplication by x");

    json j = certificate_to_json(res.cert);
    CHECK(j.at("cert_kind").get<std::string>() == "periodic");

    GdimCertificate c2 = certificate_from_json(j, rr.ring);
    CHECK(c2.kind == GdimCertificate::Kind::PeriodicCR);
    CHECK(c2.passed);
    CHECK(c2.exact);
    CHECK(c2.note == "multiplication by x");
    CHECK(certified_module(c2) == certified_module(res.cert));

    SUBCASE("two-matrix certificates carry both matrices") {
        AlgebraPtr R = good_ring(2);
        Element x = Element::zero(), y = Element::zero();
        for (std::uint64_t s = 1; s < 80 && x.is_zero(); ++s) {
            Element cand = find_minimal_reduction(R->core(), s);
            if (fvec_is_zero(R->core().mul11(cand.coords, cand.coords))) continue;
            Subspace ker = kernel_basis(R->core().mult_matrix(cand.coords));
            if (ker.dim() != 1) continue;
            Element yc{1, ker.basis().row(0)};
            if (!is_minimal_reduction(R->core(), yc)) continue;
            x = cand;
            y = yc;
        }
        REQUIRE_FALSE(x.is_zero());

        ElementMatrix d1(1, 1), d2(1, 1);
        d1.at(0, 0) = x;
        d2.at(0, 0) = y;
        PeriodicResult two = verify_periodic_cr(R, d1, d2, "pair");

        json jt = certificate_to_json(two.cert);
        CHECK(jt.at("matrices").size() == 2);
        GdimCertificate c3 = certificate_from_json(jt, R);
        CHECK(c3.passed);
        CHECK(c3.periodic.size() == 2);
        CHECK(certified_module(c3) == certified_module(two.cert));
    }
    SUBCASE("tampered matrices are rejected, not trusted") {
        json bad = j;
        Element e = non_square_zero(*rr.ring);
        bad["matrices"][0]["entries"][0]["coords"] = e.coords;
        CHECK_THROWS_AS(certificate_from_json(bad, rr.ring), NotAComplex);
    }
    SUBCASE("degree tampering is caught by input validation") {
        json bad = j;
        bad["matrices"][0]["entries"][0]["degree"] = 0;
        CHECK_THROWS_AS(certificate_from_json(bad, rr.ring), InputError);
    }
    SUBCASE("matrix count must be one or two") {
        json bad = j;
        bad["matrices"].push_back(bad["matrices"][0]);
        bad["matrices"].push_back(bad["matrices"][0]);
        CHECK_THROWS_AS(certificate_from_json(bad, rr.ring), SchemaError);
    }
    SUBCASE("hash mismatch is refused") {
        CHECK_THROWS_AS(certificate_from_json(j, circ(2)), SchemaError);
    }
    SUBCASE("unknown certificate kinds are refused") {
        json bad = j;
        bad["cert_kind"] = "trust-me";
        CHECK_THROWS_AS(certificate_from_json(bad, rr.ring), SchemaError);
    }
}

TEST_CASE("bounded certificates re-run the check on load") {
    DegreeTwoRingData S = build_circulant_ring(PrimeField(101), 2);
    std::vector<std::pair<Element, Element>> pairs{
        {Element{1, unit(3, 0)}, Element{1, unit(3, 1)}},
        {Element{1, unit(3, 2)}, Element{1, unit(3, 2)}}};
    PeriodicModuleResult mf = matrix_factorization_module(S, pairs);

    GdimCertificate b = check_gdim_zero_bounded(mf.module, 3);
    REQUIRE(b.passed);

    json j = certificate_to_json(b);
    CHECK(j.at("cert_kind").get<std::string>() == "bounded");
    CHECK(j.at("depth").get<std::size_t>() == 3);

    GdimCertificate b2 = certificate_from_json(j, mf.ring);
    CHECK(b2.kind == GdimCertificate::Kind::BoundedExt);
    CHECK(b2.passed);
    CHECK_FALSE(b2.exact);
    CHECK(b2.depth == 3);

    SUBCASE("negative verdicts survive the round trip") {
        AlgebraPtr Z = sq0();
        GdimCertificate bad = check_gdim_zero_bounded(GradedModule::residue_field(Z), 2);
        REQUIRE_FALSE(bad.passed);
        GdimCertificate bad2 = certificate_from_json(certificate_to_json(bad), Z);
        CHECK_FALSE(bad2.passed);
        CHECK(bad2.depth == 2);
    }
}

TEST_CASE("composite certificates export summaries only") {
    ReductionRing rr = reduction_ring(2);
    Element z = unit_independent_of(rr.ring, rr.x);
    FamilyResult fam = family_module(rr.ring, FamilySpec{rr.x, z, 2});

    json j = certificate_to_json(fam.cert);
    CHECK(j.at("cert_kind").get<std::string>() == "summary");
    CHECK(j.at("composite_kind").get<std::string>() == "filtration");
    CHECK(j.at("parts").get<std::size_t>() == 2);
    CHECK(j.at("passed").get<bool>());
    CHECK_THROWS_AS(certificate_from_json(j, rr.ring), SchemaError);
}

TEST_CASE("module maps and audit candidates round trip") {
    AlgebraPtr R = good_ring(2);
    SyzygyResult sz = syzygy(GradedModule::residue_field(R));
    ApproximationCandidate c{sz.cover.source,
                             check_gdim_zero_bounded(sz.cover.source, 2),
                             sz.module,
                             sz.cover,
                             sz.inclusion,
                             1,
                             {}};

    json mj = module_map_to_json(c.pi);
    ModuleMap pi2 = module_map_from_json(mj, c.pi.source, c.pi.target);
    CHECK(pi2 == c.pi);

    SUBCASE("malformed map documents") {
        json missing = mj;
        missing["blocks"].erase(0);
        ModuleMap out = c.pi;
        CHECK_THROWS_AS((out = module_map_from_json(missing, c.pi.source, c.pi.target)),
                        SchemaError);

        json wrong_shape = mj;
        wrong_shape["blocks"][0]["data"][0].push_back(0);
        wrong_shape["blocks"][0]["cols"] = wrong_shape["blocks"][0]["cols"].get<int>() + 1;
        CHECK_THROWS_AS((out = module_map_from_json(wrong_shape, c.pi.source, c.pi.target)),
                        SchemaError);

        // breaking commutation with the action is a mathematical failure
        json skew = module_map_to_json(c.iota);
        auto v = skew["blocks"][0]["data"][0][0].get<std::uint32_t>();
        skew["blocks"][0]["data"][0][0] = (v + 1) % 101;
        CHECK_THROWS_AS((out = module_map_from_json(skew, c.iota.source, c.iota.target)),
                        InputError);
    }

    SUBCASE("candidate documents") {
        json cj = candidate_to_json(c);
        ApproximationCandidate c2 = candidate_from_json(cj, R);
        CHECK(c2.X == c.X);
        CHECK(c2.Y == c.Y);
        CHECK(c2.pi == c.pi);
        CHECK(c2.iota == c.iota);
        CHECK(c2.u == 1);
        CHECK(c2.s.empty());
        CHECK(c2.cert.passed);

        CandidateAuditReport rep = candidate_audit(c2, {});
        CHECK(rep.sequence_exact);
        CHECK_FALSE(rep.survives);

        AlgebraPtr other = reduction_ring(2).ring;
        ApproximationCandidate out = c;
        CHECK_THROWS_AS((out = candidate_from_json(cj, other)), SchemaError);
    }
}
