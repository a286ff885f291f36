#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gdimlab/algebra.hpp"
#include "gdimlab/gdim.hpp"

namespace gdimlab {

/// The exterior-algebra matrix factorization attached to f = Σ x_i y_i: on
/// the 2ⁿ-dimensional exterior basis (ordered by subset bitmask, factors in
/// increasing index order), phi contracts against the x's and psi wedges with
/// Σ y_i e_i.  The constructor proves φ² = ψ² = 0 and φψ + ψφ = f·1 in exact
/// degree-2 arithmetic and rejects otherwise.
struct MatrixFactorizationData {
    std::size_t n_terms = 0;
    std::vector<std::pair<Element, Element>> pairs;
    Element f;
    ElementMatrix phi, psi;
};

MatrixFactorizationData exterior_phi_psi(const DegreeTwoRingData& S,
                                         const std::vector<std::pair<Element, Element>>& pairs);

struct PeriodicModuleResult {
    AlgebraPtr ring;
    GradedModule module;
    GdimCertificate cert;
};

/// R = S/fS and M = coker(φ+ψ) with its verified one-matrix periodic
/// certificate.  The Hilbert function of M is checked to be 2ⁿ·(1, r).
PeriodicModuleResult matrix_factorization_module(
    const DegreeTwoRingData& S, const std::vector<std::pair<Element, Element>>& pairs);

/// Retries random degree-1 pairs until the full factorization module builds
/// and certifies; throws SearchExhausted when the budget runs out.
PeriodicModuleResult sample_matrix_factorization(const DegreeTwoRingData& S, std::size_t n_terms,
                                                 std::uint64_t seed, std::size_t budget = 200);

/// Upper bidiagonal family: x on the diagonal, z on the superdiagonal.
struct FamilySpec {
    Element x, z;
    std::size_t n = 1;
};

struct FamilyResult {
    GradedModule module;
    GdimCertificate cert; // Filtration: chain certificates plus inclusions
};

/// M = coker(Φ_x) with a filtration certificate: every step is an extension
/// of the previous module by R/xR, and each quotient carries a periodic
/// certificate (one matrix when x² = 0 in R, else the pair (x, y) with y
/// spanning the kernel of multiplication by x).
FamilyResult family_module(AlgebraPtr R, const FamilySpec& spec);

/// Degree-1 span of the entries of the minimal presentation matrix, as a
/// canonical subspace of R₁.  Zero for free modules.
Subspace fitting_degree1(const GradedModule& M);

/// End_R(M) with a basis of homogeneous maps and its composition table.
struct EndoAlgebra {
    PrimeField field;
    std::size_t dim = 0;
    std::vector<ModuleMap> basis;
    std::vector<int> degrees; // internal degree of basis[i]
    std::vector<FVec> mult;   // row-major: coords of basis[i] ∘ basis[j]
    FVec identity;            // coords of the identity map

    const FVec& product(std::size_t i, std::size_t j) const { return mult[i * dim + j]; }
};

EndoAlgebra endomorphism_algebra(const GradedModule& M);

/// Locality test: dim of the semisimple quotient is 1, where the radical is
/// the positive-degree part plus the trace-form radical of the degree-0
/// subalgebra (valid for p > dim Λ; smaller fields throw FieldTooSmall).
bool is_local(const EndoAlgebra& L);

struct SweepEntry {
    FVec x; // projective representative, first nonzero coordinate scaled to 1
    std::size_t n = 0;
    std::size_t min_gens = 0;
    Subspace fitting;
};

struct SweepPairVerdict {
    std::size_t first = 0, second = 0;
    std::string distinguished_by; // generator-count | fitting-subspace | duplicate-spec | none
};

struct SweepReport {
    Element z;
    std::vector<SweepEntry> entries;
    std::vector<SweepPairVerdict> pairs;
    bool all_distinguished = false; // every non-duplicate pair has a witness
};

/// Builds M([x], n) for every x in xs and n in ns and distinguishes each pair
/// by minimal generator count, then by the degree-1 Fitting subspace.
/// Duplicate specs (same projective point and same n) are flagged, not
/// counted as failures.
SweepReport pairwise_noniso_sweep(AlgebraPtr R, const std::vector<Element>& xs,
                                  const std::vector<std::size_t>& ns);

struct VerifiedQuotient {
    AlgebraPtr ring;
    FVec quadric; // the sampled f, in the coordinates of S_2
    std::size_t attempts = 0;
};

/// Rejection-samples a quadric f until S/fS has Hilbert function (1, r+1, r)
/// with socle exactly the top piece, the shape every downstream construction
/// assumes.  Throws SearchExhausted when the budget runs out.
VerifiedQuotient sample_verified_quotient(const DegreeTwoRingData& S, std::uint64_t seed,
                                          std::size_t budget = 200);

struct FamilyInputs {
    Element z;
    std::vector<Element> xs;
};

/// Samples `count` family points over a fixed direction z: each x is a
/// verified minimal reduction, independent from z, with ker(x·) spanned by
/// another minimal reduction (so the quotient certificate verifies), and the
/// planes span{x_i, z} pairwise distinct (so the Fitting comparison
/// separates).  Throws SearchExhausted when the budget runs out.
FamilyInputs sample_family_inputs(const AlgebraPtr& R, std::size_t count, std::uint64_t seed,
                                  std::size_t budget = 2000);

} // namespace gdimlab
