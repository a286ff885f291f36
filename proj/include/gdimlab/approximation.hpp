#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gdimlab/gdim.hpp"
#include "gdimlab/homology.hpp"

namespace gdimlab {

/// R = S/x²S for a verified minimal reduction x of the degree-two data S.
/// Throws InputError when x is not a reduction or x² = 0, and
/// ConstructionError when the quotient misses the (1, r+1, r) shape.
AlgebraPtr build_R_from_reduction(const DegreeTwoRingData& S, const Element& x);

/// Exactness of ⋯ →^x Y →^x Y →^x Y → ⋯ checked degreewise:
/// ker(x·: Y_d → Y_{d+1}) = im(x·: Y_{d-1} → Y_d) for every d.
bool x_exactness(const GradedModule& Y, const Element& x);

/// The Ext¹ test behind the lifting condition: a candidate kernel Y survives
/// against X' exactly when Ext¹(X', Y) = 0.  Free X' always passes; when X'
/// is R/xR this is equivalent to x_exactness(Y, x).
bool wakamatsu_check(const GradedModule& Xprime, const GradedModule& Y);

/// Graded dimensions forced on the kernel Y of a surjection X → k when X has
/// u free summands and nonfree summands with generator counts s, plus the
/// balance x-exactness would require.
struct YDims {
    std::size_t y0 = 0, y1 = 0, y2 = 0;
    bool exactness_holds = false; // y0 + y2 == y1
    std::size_t margin = 0;       // y1 - y0 - y2 = (r-1)·Σs + 1
};

/// Throws InputError for r = 0, a zero entry in s, or the degenerate shape
/// u = 0 with empty s (X = 0 cannot surject onto k).  r = 1 is accepted so
/// the out-of-hypothesis row of the obstruction table can be computed.
YDims y_dimension_constraints(std::size_t r, std::size_t u, const std::vector<std::size_t>& s);

struct ObstructionRow {
    std::size_t u = 0;
    std::vector<std::size_t> s;
    YDims dims;
};

struct ObstructionReport {
    std::size_t r = 0;
    bool out_of_hypothesis = false; // r < 2
    std::vector<ObstructionRow> rows;
    std::size_t satisfiable_count = 0;
    bool margins_match = false; // every margin equals (r-1)·Σs + 1
    std::string symbolic;       // the reduced equation and why it has no solution

    bool unsatisfiable() const noexcept { return satisfiable_count == 0; }
};

/// Enumerates every (u ≤ u_max, s nondecreasing, |s| ≤ len_max, entries
/// ≤ s_max) and records that the balance equation fails with the closed-form
/// margin.  The grid is the finite witness; the symbolic line is the reason
/// it extends to all instances.
ObstructionReport obstruction_unsatisfiable(std::size_t r, std::size_t u_max, std::size_t s_max,
                                            std::size_t len_max);

/// A proposed sequence 0 → Y →^ι X →^π k → 0 with X certified of G-dimension
/// zero, plus the declared summand structure of X: u free summands and
/// generator counts s for the nonfree ones.
struct ApproximationCandidate {
    GradedModule X;
    GdimCertificate cert; // must certify X
    GradedModule Y;
    ModuleMap pi;   // X → k, degree 0, surjective
    ModuleMap iota; // Y → X, degree 0
    std::size_t u = 0;
    std::vector<std::size_t> s;
};

struct CandidateAuditReport {
    bool sequence_exact = false;    // ι injective, ker π = im ι degreewise
    bool structure_matches = false; // declared (u, s) reproduces dim X_i
    std::vector<std::pair<std::string, bool>> wakamatsu; // label, Ext¹(X', Y) = 0
    YDims ydims;                    // from the declared structure
    bool dimension_equation = false;
    bool survives = false;
    std::string first_failure; // empty when survives
};

/// Audits one candidate: well-formedness is enforced (surjective π onto the
/// residue field, matching endpoints, a passing certificate for X — else
/// InputError); exactness, declared structure, the Ext¹ battery and the
/// balance equation are reported.  No candidate passes all four; the battery
/// pins the concrete Ext witness while the balance equation carries the
/// general argument.
CandidateAuditReport candidate_audit(const ApproximationCandidate& c,
                                     const std::vector<std::pair<std::string, GradedModule>>& battery);

} // namespace gdimlab
