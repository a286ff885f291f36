#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "gdimlab/errors.hpp"

namespace gdimlab {

/// Arithmetic in the prime field F_p.
///
/// p must be an odd prime with p < 2^15 so that products and the lazy row
/// accumulations used by the elimination kernel stay inside 64 bits.
class PrimeField {
  public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    /// Multiplicative inverse of a nonzero element.
    std::uint32_t inv(std::uint32_t a) const;
    /// Reduce an arbitrary signed 64-bit integer into [0, p).
    std::uint32_t reduce(std::int64_t v) const noexcept;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    std::uint32_t p_;
};

/// Coordinate vector with entries already reduced mod p.
using FVec = std::vector<std::uint32_t>;

FVec fvec_add(const PrimeField& F, const FVec& a, const FVec& b);
FVec fvec_sub(const PrimeField& F, const FVec& a, const FVec& b);
FVec fvec_scale(const PrimeField& F, std::uint32_t c, const FVec& a);
bool fvec_is_zero(const FVec& a);

/// Dense matrix over F_p, row major.  Zero-row and zero-column shapes are
/// legal everywhere; graded pieces vanish all the time.
class FMatrix {
  public:
    FMatrix(PrimeField field, std::size_t rows, std::size_t cols);

    static FMatrix identity(PrimeField field, std::size_t n);
    /// Build from signed integer rows (reduced mod p); rows may be empty.
    static FMatrix from_rows(PrimeField field,
                             const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }

    std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint32_t v) { data_[i * cols_ + j] = v; }

    const std::uint32_t* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    std::uint32_t* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    FVec row(std::size_t i) const;
    void set_row(std::size_t i, const FVec& v);

    FMatrix transpose() const;
    FMatrix mul(const FMatrix& rhs) const;
    FMatrix add(const FMatrix& rhs) const;
    FMatrix sub(const FMatrix& rhs) const;
    FMatrix scale(std::uint32_t c) const;
    /// Matrix-vector product m·v (v has cols() entries).
    FVec apply(const FVec& v) const;
    bool is_zero() const;

    /// Stack rows of a on top of rows of b (same column count).
    static FMatrix vstack(const FMatrix& a, const FMatrix& b);
    /// Place a and b side by side (same row count).
    static FMatrix hstack(const FMatrix& a, const FMatrix& b);

    friend bool operator==(const FMatrix&, const FMatrix&) = default;

  private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> data_;
};

struct RrefResult {
    FMatrix mat;                      // reduced row echelon form
    std::size_t rank;
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

/// Reduced row echelon form via Gauss-Jordan elimination with lazy mod-p
/// reduction (rows accumulate in 64 bits and are reduced when pivoted on).
RrefResult rref(const FMatrix& m);

std::size_t rank(const FMatrix& m);

/// Any solution x of m·x = b, or nullopt when inconsistent.  Free variables
/// are set to zero, so solve(m, 0) returns the zero vector.
std::optional<FVec> solve(const FMatrix& m, const FVec& b);

/// A basis in "pivoted" shape: row i has a 1 in column unit_cols[i] and a 0
/// in every other row's unit column.  Both reduced echelon bases and the
/// standard kernel bases have this shape, which makes coordinates of a member
/// vector a plain gather: coords(w)[i] = w[unit_cols[i]].
class PivotedBasis {
  public:
    PivotedBasis(FMatrix rows, std::vector<std::size_t> unit_cols);
    static PivotedBasis empty(PrimeField field, std::size_t ambient);

    std::size_t ambient() const noexcept { return rows_.cols(); }
    std::size_t dim() const noexcept { return rows_.rows(); }
    const FMatrix& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& unit_cols() const noexcept { return unit_cols_; }

    /// Coordinates of w in this basis.  Assumes w lies in the span; with
    /// verify=true the residual is checked and a DimensionError is thrown
    /// when w is not actually a member.
    FVec coords(const FVec& w, bool verify = false) const;
    /// Σ coords[i] · row_i.
    FVec expand(const FVec& coords) const;

  private:
    FMatrix rows_;
    std::vector<std::size_t> unit_cols_;
};

/// Kernel {x : m·x = 0} as a pivoted basis (unit columns = free columns).
PivotedBasis kernel_pivoted(const FMatrix& m);

/// Canonical subspace of F_p^ambient: basis kept in reduced row echelon
/// form, so equality of subspaces is literal equality of the basis matrices.
class Subspace {
  public:
    static Subspace zero(PrimeField field, std::size_t ambient);
    static Subspace full(PrimeField field, std::size_t ambient);
    /// Canonicalize the row span of the given matrix.
    static Subspace span_rows(const FMatrix& rows);

    std::size_t ambient() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const FMatrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    const PrimeField& field() const noexcept { return basis_.field(); }

    bool contains(const FVec& v) const;
    bool contains(const Subspace& other) const;
    /// Pivot-gather coordinates (verified membership).
    FVec coords_of(const FVec& v) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

  private:
    Subspace(FMatrix basis, std::vector<std::size_t> pivots);
    FMatrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Kernel of m acting on column vectors, canonicalized.
Subspace kernel_basis(const FMatrix& m);
/// Column space of m (row space of the transpose), canonicalized.
Subspace image_basis(const FMatrix& m);

bool subspace_equal(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
/// Intersection via annihilators: (U ∩ V) = Ann(Ann U + Ann V) under the
/// standard dot pairing, which is exact over any finite field.
Subspace subspace_intersection(const Subspace& a, const Subspace& b);

/// Incremental row space in (non-reduced) echelon form.  add() reduces the
/// candidate against the rows collected so far and keeps it when the rank
/// grows; is_full() supports early exit when a span saturates its ambient.
class RowBasis {
  public:
    RowBasis(PrimeField field, std::size_t ambient);

    /// Returns true when v enlarged the span.
    bool add(FVec v);
    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t ambient() const noexcept { return ambient_; }
    bool is_full() const noexcept { return rows_.size() == ambient_; }
    /// Canonical reduced form of everything added so far.
    Subspace to_subspace() const;
    const std::vector<FVec>& rows() const noexcept { return rows_; }

  private:
    PrimeField field_;
    std::size_t ambient_;
    std::vector<FVec> rows_;            // echelon rows, pivot normalized to 1
    std::vector<std::size_t> pivots_;   // pivot column of rows_[i], increasing? no: per-row
};

} // namespace gdimlab
