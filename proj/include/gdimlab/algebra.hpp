#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdimlab/exactla.hpp"

namespace gdimlab {

/// Homogeneous element of a graded ring piece.  degree is 0, 1 or 2; the
/// zero element is represented with degree -1 and no coordinates so it can
/// sit in any slot of a matrix over the ring.
struct Element {
    int degree = -1;
    FVec coords;

    static Element zero() { return Element{}; }
    static Element scalar(std::uint32_t c) { return Element{0, FVec{c}}; }
    bool is_zero() const;

    friend bool operator==(const Element&, const Element&) = default;
};

/// Structure constants of k ⊕ V1 ⊕ V2 with a symmetric product V1 × V1 → V2.
/// Shared by the full Artinian quotients (m³ = 0) and the degree-two
/// truncations of the one-dimensional rings they come from.
class RingCore {
  public:
    RingCore(PrimeField field, std::size_t dim1, std::size_t dim2, std::vector<FVec> mult11);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t dim1() const noexcept { return dim1_; }
    std::size_t dim2() const noexcept { return dim2_; }
    std::size_t piece_dim(int degree) const noexcept;

    /// Coordinates of e_i · e_j in the degree-2 basis.
    const FVec& mul_basis(std::size_t i, std::size_t j) const {
        return mult_[i * dim1_ + j];
    }
    /// Bilinear product of two degree-1 coordinate vectors.
    FVec mul11(const FVec& a, const FVec& b) const;
    /// Matrix of multiplication by the degree-1 element x: V1 → V2.
    FMatrix mult_matrix(const FVec& x) const;

    /// Symmetry of the structure tensor (throws InputError when violated).
    void validate() const;
    /// Whether V1 · V1 spans V2, i.e. the ring is standard graded.
    bool is_standard_graded() const;

    friend bool operator==(const RingCore&, const RingCore&) = default;

  private:
    PrimeField field_;
    std::size_t dim1_, dim2_;
    std::vector<FVec> mult_; // row-major dim1 × dim1 table of degree-2 coords
};

/// Graded Artinian algebra R = k ⊕ R1 ⊕ R2 with m³ = 0, given by structure
/// constants.  Products that would land in degree ≥ 3 are zero.
class GradedAlgebra {
  public:
    explicit GradedAlgebra(RingCore core);

    const RingCore& core() const noexcept { return core_; }
    const PrimeField& field() const noexcept { return core_.field(); }
    std::size_t dim1() const noexcept { return core_.dim1(); }
    std::size_t dim2() const noexcept { return core_.dim2(); }
    std::size_t piece_dim(int degree) const noexcept { return core_.piece_dim(degree); }
    std::size_t total_dim() const noexcept { return 1 + dim1() + dim2(); }

    Element add(const Element& a, const Element& b) const;
    Element scale(std::uint32_t c, const Element& a) const;
    /// Graded product; degree-3-and-up products vanish (m³ = 0).
    Element mul(const Element& a, const Element& b) const;

    /// Cached matrix of multiplication by the degree-1 basis element e_j.
    const FMatrix& basis_mult1(std::size_t j) const { return lmul1_[j]; }
    /// Basis of the degree-d piece as ring elements (d in {0,1,2}).
    std::vector<Element> piece_basis(int degree) const;

    friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
        return a.core_ == b.core_;
    }

  private:
    RingCore core_;
    std::vector<FMatrix> lmul1_;
};

/// Degree-two truncation (k, S1, S2, S1·S1 → S2) of a standard graded ring.
/// Products landing beyond degree 2 are not represented; asking for one is an
/// input error rather than a zero.
class DegreeTwoRingData {
  public:
    explicit DegreeTwoRingData(RingCore core);

    const RingCore& core() const noexcept { return core_; }
    const PrimeField& field() const noexcept { return core_.field(); }
    std::size_t dim1() const noexcept { return core_.dim1(); }
    std::size_t dim2() const noexcept { return core_.dim2(); }

    Element add(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;

    friend bool operator==(const DegreeTwoRingData&, const DegreeTwoRingData&) = default;

  private:
    RingCore core_;
};

/// Quadratic forms are coordinate vectors over the monomial basis
/// x_i x_j (i ≤ j) of Sym²(k^n), ordered lexicographically by (i, j).
std::size_t sym2_dim(std::size_t num_vars);
std::size_t mono_index(std::size_t i, std::size_t j, std::size_t num_vars);

/// R = k[x_1..x_n]/(I + m³) truncated to degrees ≤ 2, where I is spanned in
/// degree 2 by the given quadrics.  The degree-2 basis is the set of standard
/// monomials (non-pivot columns of the echelonized quadric span), in
/// lexicographic order.
GradedAlgebra build_quadratic_quotient(PrimeField field, std::size_t num_vars,
                                       const std::vector<FVec>& quadrics);

/// Degree-two data of S = k[X_0..X_r]/I_2(M) for the 2×(r+1) circulant matrix
/// with rows (X_0,...,X_r) and (X_1,...,X_r,X_0).  Requires r ≥ 2; the
/// resulting dimensions are checked to be (r+1, r+1).
DegreeTwoRingData build_circulant_ring(PrimeField field, std::size_t r);

/// R = S/fS truncated: R1 = S1 and R2 = S2/k·f.  f must be nonzero of
/// degree 2.  The degree-2 basis drops the first nonzero coordinate of f.
GradedAlgebra quotient_by_quadric(const DegreeTwoRingData& S, const Element& f);

struct HilbertCoeffs {
    std::size_t h0, h1, h2;
    bool good_shape; // h1 = h2 + 1 with h2 >= 2
    friend bool operator==(const HilbertCoeffs&, const HilbertCoeffs&) = default;
};

HilbertCoeffs hilbert_coeffs(const GradedAlgebra& R);

/// Socle (0 : m) as a canonical subspace of m = R1 ⊕ R2 (ambient dim1+dim2).
Subspace socle(const GradedAlgebra& R);

/// Seeded search for a degree-1 element whose multiplication map V1 → V2 is
/// surjective.  Every candidate is verified by rank; exhausting the budget
/// throws SearchExhausted.
Element find_minimal_reduction(const RingCore& core, std::uint64_t seed,
                               std::size_t budget = 500);
inline Element find_minimal_reduction(const DegreeTwoRingData& S, std::uint64_t seed,
                                      std::size_t budget = 500) {
    return find_minimal_reduction(S.core(), seed, budget);
}

/// Whether mult-by-x : V1 → V2 is surjective.
bool is_minimal_reduction(const RingCore& core, const Element& x);

/// Built-in fixture k[x,y,z,w]/(x², xy-zw, xy-w², xz-yw, xw-y², xw-yz, xw-z²)
/// with Hilbert function (1, 4, 3).
GradedAlgebra seven_quadric_ring(PrimeField field);

/// The non-Gorenstein ring k[x,y]/(x,y)² used by the negative controls.
GradedAlgebra square_zero_ring(PrimeField field);

} // namespace gdimlab
