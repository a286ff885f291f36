#include "gdimlab/approximation.hpp"

#include <algorithm>
#include <numeric>

#include "gdimlab/errors.hpp"

namespace gdimlab {

namespace {

FMatrix x_action(const GradedModule& Y, const FVec& xc, int degree) {
    const PrimeField& F = Y.ring().field();
    FMatrix out(F, Y.dim(degree + 1), Y.dim(degree));
    for (std::size_t j = 0; j < xc.size(); ++j)
        if (xc[j] != 0) out = out.add(Y.act1_matrix(j, degree).scale(xc[j]));
    return out;
}

std::size_t sum_of(const std::vector<std::size_t>& s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{0});
}

} // namespace

AlgebraPtr build_R_from_reduction(const DegreeTwoRingData& S, const Element& x) {
    if (x.degree != 1 || x.coords.size() != S.dim1())
        throw InputError("build_R_from_reduction: x must be a degree-1 element");
    if (!is_minimal_reduction(S.core(), x))
        throw InputError("build_R_from_reduction: x is not a minimal reduction");
    Element xsq{2, S.core().mul11(x.coords, x.coords)};
    if (xsq.is_zero()) throw InputError("build_R_from_reduction: x² = 0 leaves nothing to kill");
    GradedAlgebra R = quotient_by_quadric(S, xsq);
    if (!hilbert_coeffs(R).good_shape)
        throw ConstructionError("build_R_from_reduction: quotient misses the (1, r+1, r) shape");
    return std::make_shared<const GradedAlgebra>(std::move(R));
}

bool x_exactness(const GradedModule& Y, const Element& x) {
    if (x.degree != 1 || x.coords.size() != Y.ring().dim1())
        throw InputError("x_exactness: x must be a degree-1 element of the module's ring");
    if (Y.is_zero_module()) return true;
    for (int d = Y.min_degree(); d <= Y.max_degree(); ++d) {
        Subspace ker = kernel_basis(x_action(Y, x.coords, d));
        Subspace img = image_basis(x_action(Y, x.coords, d - 1));
        if (!subspace_equal(ker, img)) return false;
    }
    return true;
}

bool wakamatsu_check(const GradedModule& Xprime, const GradedModule& Y) {
    if (!(Xprime.ring() == Y.ring()))
        throw InputError("wakamatsu_check: modules live over different rings");
    return ext(Xprime, Y, 1).total(1) == 0;
}

YDims y_dimension_constraints(std::size_t r, std::size_t u, const std::vector<std::size_t>& s) {
    if (r == 0) throw InputError("y_dimension_constraints: r must be positive");
    for (std::size_t sj : s)
        if (sj == 0) throw InputError("y_dimension_constraints: generator counts must be positive");
    std::size_t t = sum_of(s);
    if (u + t == 0)
        throw InputError("y_dimension_constraints: X = 0 cannot surject onto the residue field");
    YDims out;
    out.y0 = u + t - 1;
    out.y1 = u * (r + 1) + r * t;
    out.y2 = r * u;
    out.exactness_holds = out.y0 + out.y2 == out.y1;
    out.margin = out.y1 - out.y0 - out.y2; // (r-1)t + 1 > 0, so never underflows
    return out;
}

ObstructionReport obstruction_unsatisfiable(std::size_t r, std::size_t u_max, std::size_t s_max,
                                            std::size_t len_max) {
    if (r == 0) throw InputError("obstruction_unsatisfiable: r must be positive");
    ObstructionReport rep;
    rep.r = r;
    rep.out_of_hypothesis = r < 2;

    // nondecreasing generator lists; order inside s never enters the count
    std::vector<std::vector<std::size_t>> lists{{}};
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t len = 1; len <= len_max; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& base : frontier)
            for (std::size_t v = base.empty() ? 1 : base.back(); v <= s_max; ++v) {
                auto grown = base;
                grown.push_back(v);
                next.push_back(std::move(grown));
            }
        lists.insert(lists.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    rep.margins_match = true;
    for (std::size_t u = 0; u <= u_max; ++u)
        for (const auto& s : lists) {
            if (u == 0 && s.empty()) continue;
            ObstructionRow row{u, s, y_dimension_constraints(r, u, s)};
            if (row.dims.exactness_holds) ++rep.satisfiable_count;
            if (row.dims.margin != (r - 1) * sum_of(s) + 1) rep.margins_match = false;
            rep.rows.push_back(std::move(row));
        }

    rep.symbolic = "balance requires (1-" + std::to_string(r) + ")*t = 1 with t = sum(s) >= 0; " +
                   (r == 1 ? std::string("the left side is identically 0")
                           : "the left side is <= 0") +
                   ", so no instance satisfies it";
    return rep;
}

CandidateAuditReport candidate_audit(
    const ApproximationCandidate& c,
    const std::vector<std::pair<std::string, GradedModule>>& battery) {
    const GradedModule& X = c.X;
    const GradedModule& Y = c.Y;
    AlgebraPtr R = X.ring_ptr();

    if (X.is_zero_module())
        throw InputError("candidate_audit: X = 0 cannot surject onto the residue field");
    if (!(Y.ring() == *R) || !(c.pi.source == X) || !(c.iota.target == X) ||
        !(c.iota.source == Y))
        throw InputError("candidate_audit: sequence endpoints do not line up");
    if (!(c.pi.target == GradedModule::residue_field(R)))
        throw InputError("candidate_audit: pi must land in the residue field");
    if (c.pi.degree_shift != 0 || c.iota.degree_shift != 0)
        throw InputError("candidate_audit: pi and iota must have degree zero");
    c.pi.validate();
    c.iota.validate();
    if (rank(c.pi.at(0)) != 1)
        throw InputError("candidate_audit: pi is not onto the residue field");
    if (!c.cert.passed || !(certified_module(c.cert) == X))
        throw InputError("candidate_audit: certificate does not certify X");

    CandidateAuditReport rep;

    rep.sequence_exact = true;
    if (!compose(c.pi, c.iota).is_zero_map()) rep.sequence_exact = false;
    for (int d = Y.min_degree(); d <= Y.max_degree() && rep.sequence_exact; ++d)
        if (rank(c.iota.at(d)) != Y.dim(d)) rep.sequence_exact = false;
    for (int d = X.min_degree(); d <= X.max_degree() && rep.sequence_exact; ++d) {
        Subspace ker = kernel_basis(c.pi.at(d));
        Subspace img = image_basis(c.iota.at(d));
        if (!subspace_equal(ker, img)) rep.sequence_exact = false;
    }

    std::size_t r = hilbert_coeffs(*R).h2;
    rep.ydims = y_dimension_constraints(r, c.u, c.s); // InputError on degenerate declarations
    std::size_t t = sum_of(c.s);
    rep.structure_matches = X.dim(0) == c.u + t && X.dim(1) == c.u * (r + 1) + r * t &&
                            X.dim(2) == r * c.u;

    for (const auto& [label, Xprime] : battery)
        rep.wakamatsu.emplace_back(label, wakamatsu_check(Xprime, Y));

    rep.dimension_equation = rep.ydims.exactness_holds;

    rep.survives = rep.sequence_exact && rep.structure_matches && rep.dimension_equation;
    for (const auto& [label, ok] : rep.wakamatsu) rep.survives = rep.survives && ok;

    if (!rep.sequence_exact)
        rep.first_failure = "sequence";
    else if (!rep.structure_matches)
        rep.first_failure = "structure";
    else {
        for (const auto& [label, ok] : rep.wakamatsu)
            if (!ok) {
                rep.first_failure = "wakamatsu: " + label;
                break;
            }
        if (rep.first_failure.empty() && !rep.dimension_equation)
            rep.first_failure = "dimension-equation";
    }
    return rep;
}

} // namespace gdimlab
