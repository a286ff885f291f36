#include "gdimlab/gdim.hpp"

#include <string>
#include <utility>

#include "gdimlab/errors.hpp"

namespace gdimlab {

namespace {

void check_square_degree_one(const GradedAlgebra& R, const ElementMatrix& d, const char* label) {
    if (d.rows == 0 || d.rows != d.cols)
        throw InputError(std::string(label) + ": periodic differential must be square and nonempty");
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j) {
            const Element& e = d.at(i, j);
            if (e.is_zero()) continue;
            if (e.degree != 1 || e.coords.size() != R.dim1())
                throw InputError(std::string(label) +
                                 ": entries must be homogeneous of degree 1 over the given ring");
        }
}

bool product_vanishes(const GradedAlgebra& R, const ElementMatrix& a, const ElementMatrix& b) {
    const PrimeField& F = R.field();
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < b.cols; ++k) {
            FVec acc(R.dim2(), 0);
            for (std::size_t j = 0; j < a.cols; ++j) {
                Element pr = R.mul(a.at(i, j), b.at(j, k));
                if (!pr.is_zero()) acc = fvec_add(F, acc, pr.coords);
            }
            if (!fvec_is_zero(acc)) return false;
        }
    return true;
}

/// The two graded slices of one step R(-1)^m -> R^m of the periodic complex.
struct StepSlices {
    FMatrix s1, s2; // degree-1 slice (m -> m·dim1) and degree-2 slice (m·dim1 -> m·dim2)
};

StepSlices step_slices(const GradedAlgebra& R, const ElementMatrix& d) {
    std::vector<int> tgt(d.rows, 0), src(d.cols, 1);
    return {element_matrix_block(R, tgt, src, d, 1), element_matrix_block(R, tgt, src, d, 2)};
}

/// Exactness at one spot of the doubly infinite complex: `out` is the
/// differential leaving the spot, `in` the one arriving.  The strand through
/// the spot at internal offset u lives in three degrees; with m³ = 0 the
/// conditions collapse to injectivity at the bottom, kernel = image in the
/// middle, surjectivity at the top.
void check_spot(const GradedAlgebra& R, const StepSlices& out, const StepSlices& in,
                std::size_t m, const std::string& where) {
    if (kernel_basis(out.s1).dim() != 0)
        throw CertificateRejected("periodic certificate: " + where +
                                  " fails injectivity on the bottom strand");
    if (!subspace_equal(kernel_basis(out.s2), image_basis(in.s1)))
        throw CertificateRejected("periodic certificate: kernel/image mismatch at " + where);
    if (rank(in.s2) != m * R.dim2())
        throw CertificateRejected("periodic certificate: " + where +
                                  " fails surjectivity on the top strand");
}

GradedModule coker_of(const AlgebraPtr& R, const ElementMatrix& d1) {
    Presentation p{R, std::vector<int>(d1.rows, 0), d1};
    return coker(p).module();
}

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < e; ++i) v *= base;
    return v;
}

} // namespace

GradedModule certified_module(const GdimCertificate& c) {
    switch (c.kind) {
    case GdimCertificate::Kind::PeriodicCR:
        if (!c.ring || c.periodic.empty())
            throw InputError("certified_module: periodic certificate has no payload");
        return coker_of(c.ring, c.periodic.front());
    case GdimCertificate::Kind::Extension:
        if (c.seq.empty()) throw InputError("certified_module: extension certificate has no maps");
        return c.seq.front().target;
    case GdimCertificate::Kind::Filtration:
        if (c.parts.empty()) throw InputError("certified_module: filtration certificate is empty");
        return certified_module(c.parts.back());
    case GdimCertificate::Kind::BoundedExt:
        if (!c.bidual) throw InputError("certified_module: bounded certificate has no module");
        return c.bidual->map.source;
    }
    throw InputError("certified_module: unknown certificate kind");
}

PeriodicResult verify_periodic_cr(AlgebraPtr R, const ElementMatrix& d, std::string note) {
    if (!R) throw InputError("verify_periodic_cr: null ring");
    check_square_degree_one(*R, d, "verify_periodic_cr");
    if (!product_vanishes(*R, d, d)) throw NotAComplex("verify_periodic_cr: d·d != 0");

    const std::size_t m = d.rows;
    StepSlices s = step_slices(*R, d);
    check_spot(*R, s, s, m, "d");
    StepSlices st = step_slices(*R, transpose(d));
    check_spot(*R, st, st, m, "transpose(d)");

    GdimCertificate cert;
    cert.kind = GdimCertificate::Kind::PeriodicCR;
    cert.note = std::move(note);
    cert.ring = R;
    cert.periodic = {d};
    cert.passed = true;
    cert.exact = true;
    return {std::move(cert), coker_of(R, d)};
}

PeriodicResult verify_periodic_cr(AlgebraPtr R, const ElementMatrix& d1, const ElementMatrix& d2,
                                  std::string note) {
    if (!R) throw InputError("verify_periodic_cr: null ring");
    check_square_degree_one(*R, d1, "verify_periodic_cr(d1)");
    check_square_degree_one(*R, d2, "verify_periodic_cr(d2)");
    if (d1.rows != d2.rows)
        throw InputError("verify_periodic_cr: d1 and d2 must have the same size");
    if (!product_vanishes(*R, d1, d2)) throw NotAComplex("verify_periodic_cr: d1·d2 != 0");
    if (!product_vanishes(*R, d2, d1)) throw NotAComplex("verify_periodic_cr: d2·d1 != 0");

    const std::size_t m = d1.rows;
    StepSlices s1 = step_slices(*R, d1), s2 = step_slices(*R, d2);
    check_spot(*R, s1, s2, m, "d1");
    check_spot(*R, s2, s1, m, "d2");
    StepSlices t1 = step_slices(*R, transpose(d1)), t2 = step_slices(*R, transpose(d2));
    check_spot(*R, t1, t2, m, "transpose(d1)");
    check_spot(*R, t2, t1, m, "transpose(d2)");

    GdimCertificate cert;
    cert.kind = GdimCertificate::Kind::PeriodicCR;
    cert.note = std::move(note);
    cert.ring = R;
    cert.periodic = {d1, d2};
    cert.passed = true;
    cert.exact = true;
    return {std::move(cert), coker_of(R, d1)};
}

GdimCertificate verify_extension(const GdimCertificate& A_cert, const GdimCertificate& B_cert,
                                 const GradedModule& E, const ModuleMap& incl,
                                 const ModuleMap& proj) {
    if (!A_cert.passed || !B_cert.passed)
        throw InputError("verify_extension: both part certificates must be passing");
    GradedModule A = certified_module(A_cert);
    GradedModule B = certified_module(B_cert);
    if (!(A.ring() == E.ring()) || !(B.ring() == E.ring()))
        throw InputError("verify_extension: modules live over different rings");
    if (!(incl.source == A))
        throw InputError("verify_extension: inclusion source is not the module certified by A");
    if (!(proj.target == B))
        throw InputError("verify_extension: projection target is not the module certified by B");
    if (!(incl.target == E) || !(proj.source == E))
        throw InputError("verify_extension: maps do not run through the middle module");
    incl.validate();
    proj.validate();

    const int s1 = incl.degree_shift, s2 = proj.degree_shift;
    for (int dg = A.min_degree(); dg <= A.max_degree(); ++dg)
        if (rank(incl.at(dg)) != A.dim(dg))
            throw InputError("verify_extension: inclusion fails injectivity in degree " +
                             std::to_string(dg));
    for (int e = E.min_degree(); e <= E.max_degree(); ++e) {
        if (!subspace_equal(kernel_basis(proj.at(e)), image_basis(incl.at(e - s1))))
            throw InputError(
                "verify_extension: kernel of the projection differs from the image of the "
                "inclusion in degree " +
                std::to_string(e));
        if (rank(proj.at(e)) != B.dim(e + s2))
            throw InputError("verify_extension: projection fails surjectivity in degree " +
                             std::to_string(e));
    }
    for (int t = B.min_degree(); t <= B.max_degree(); ++t)
        if (B.dim(t) != 0 && (t - s2 < E.min_degree() || t - s2 > E.max_degree()))
            throw InputError("verify_extension: projection misses a piece of the quotient");
    if (length(E) != length(A) + length(B))
        throw InputError("verify_extension: length is not additive across the sequence");

    GdimCertificate cert;
    cert.kind = GdimCertificate::Kind::Extension;
    cert.note = "extension of certified modules";
    cert.ring = E.ring_ptr();
    cert.parts = {A_cert, B_cert};
    cert.seq = {incl, proj};
    cert.passed = true;
    cert.exact = A_cert.exact && B_cert.exact;
    return cert;
}

GdimCertificate check_gdim_zero_bounded(const GradedModule& M, std::size_t N) {
    if (N == 0) throw InputError("check_gdim_zero_bounded: depth must be at least 1");

    GdimCertificate cert;
    cert.kind = GdimCertificate::Kind::BoundedExt;
    cert.ring = M.ring_ptr();
    cert.depth = N;
    cert.bidual = bidual_check(M);
    GradedModule Rfree = free_module(M.ring_ptr(), {0});
    cert.ext_module = ext(M, Rfree, N);
    cert.ext_dual = ext(dual(M), Rfree, N);

    const int n = static_cast<int>(N);
    cert.passed =
        cert.bidual->is_iso && cert.ext_module->vanishes(1, n) && cert.ext_dual->vanishes(1, n);
    cert.exact = is_free(M);
    cert.note = cert.exact ? "free module; exact at every depth"
                           : "semi-decision: checked up to homological degree " + std::to_string(N);
    return cert;
}

Theorem31Report verify_theorem31(AlgebraPtr R, const GradedModule& M, const GdimCertificate& cert,
                                 std::size_t N) {
    if (!R) throw InputError("verify_theorem31: null ring");
    if (N == 0) throw InputError("verify_theorem31: depth must be at least 1");
    if (!(M.ring() == *R)) throw InputError("verify_theorem31: module is not over the given ring");

    Theorem31Report rep;
    HilbertCoeffs hc = hilbert_coeffs(*R);
    rep.hilbert_ok = hc.good_shape;
    rep.r = hc.h2;
    rep.socle_ok = socle(*R).dim() == R->dim2();

    rep.nonfree = cert.passed && !is_free(M);
    try {
        rep.cert_matches = certified_module(cert) == M;
    } catch (const InputError&) {
        rep.cert_matches = false;
    }

    rep.length_module = length(M);
    rep.b = M.is_zero_module() ? 0 : M.dim(M.base_degree());
    rep.a = rep.length_module - rep.b;
    rep.a_eq_rb = !M.is_zero_module() && M.num_slices() == 2 && rep.a == rep.r * rep.b;

    rep.length_dual = length(dual(M));
    rep.dual_length_ok = rep.length_module > 0 && rep.length_dual == rep.length_module;

    Resolution res = minimal_resolution(M, N, false);
    rep.betti_row.assign(N + 1, 0);
    for (std::size_t i = 0; i <= N; ++i)
        rep.betti_row[i] = res.betti.total(static_cast<int>(i));
    rep.linear_resolution_ok = rep.b > 0;
    const int base = M.is_zero_module() ? 0 : M.base_degree();
    for (std::size_t i = 0; i <= N && rep.linear_resolution_ok; ++i) {
        const int hi = static_cast<int>(i);
        rep.linear_resolution_ok =
            rep.betti_row[i] == rep.b && res.betti.at(hi, base + hi) == rep.betti_row[i];
    }

    rep.bass_measured = bass_numbers(R, N);
    if (rep.r >= 1) {
        rep.bass_expected.assign(N + 1, 0);
        rep.bass_expected[0] = rep.r;
        for (std::size_t i = 1; i <= N; ++i)
            rep.bass_expected[i] = ipow(rep.r, i + 1) - ipow(rep.r, i - 1);
    }
    rep.bass_ok = !rep.bass_expected.empty() && rep.bass_measured == rep.bass_expected;

    KoszulReport kr = koszul_check(R, N);
    rep.koszul_diagonal.assign(N + 1, 0);
    rep.koszul_expected.assign(N + 1, 0);
    std::size_t diag = 1;
    for (std::size_t i = 0; i <= N; ++i) {
        const int hi = static_cast<int>(i);
        rep.koszul_diagonal[i] = kr.betti.at(hi, hi);
        rep.koszul_expected[i] = diag;
        diag = diag * rep.r + 1;
    }
    rep.koszul_ok = kr.is_koszul_to_N && rep.koszul_diagonal == rep.koszul_expected;

    return rep;
}

} // namespace gdimlab
