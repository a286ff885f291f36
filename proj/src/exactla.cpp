#include "gdimlab/exactla.hpp"

#include <algorithm>
#include <cstring>

namespace gdimlab {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    // p < 2^15 keeps rank·p² < 2^63 for the lazy elimination accumulators.
    if (p < 3 || p >= 32768 || !is_prime_u32(p))
        throw InputError("PrimeField: p must be an odd prime with 3 <= p < 32768, got " +
                         std::to_string(p));
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % p_, acc = 1;
    while (e) {
        if (e & 1) acc = acc * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    a %= p_;
    if (a == 0) throw InputError("PrimeField::inv of zero");
    return pow(a, p_ - 2);
}

std::uint32_t PrimeField::reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
}

FVec fvec_add(const PrimeField& F, const FVec& a, const FVec& b) {
    if (a.size() != b.size()) throw DimensionError("fvec_add: size mismatch");
    FVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

FVec fvec_sub(const PrimeField& F, const FVec& a, const FVec& b) {
    if (a.size() != b.size()) throw DimensionError("fvec_sub: size mismatch");
    FVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return r;
}

FVec fvec_scale(const PrimeField& F, std::uint32_t c, const FVec& a) {
    FVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}

bool fvec_is_zero(const FVec& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; });
}

FMatrix::FMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FMatrix FMatrix::identity(PrimeField field, std::size_t n) {
    FMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FMatrix FMatrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    FMatrix m(field, rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc) throw DimensionError("FMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < nc; ++j) m.set(i, j, field.reduce(rows[i][j]));
    }
    return m;
}

FVec FMatrix::row(std::size_t i) const {
    return FVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void FMatrix::set_row(std::size_t i, const FVec& v) {
    if (v.size() != cols_) throw DimensionError("FMatrix::set_row: size mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
}

FMatrix FMatrix::transpose() const {
    FMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

FMatrix FMatrix::mul(const FMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionError("FMatrix::mul: inner dimension mismatch");
    if (field_ != rhs.field_) throw InputError("FMatrix::mul: field mismatch");
    FMatrix out(field_, rows_, rhs.cols_);
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = at(i, k);
            if (!a) continue;
            const std::uint32_t* rrow = rhs.row_ptr(k);
            std::uint32_t* orow = out.row_ptr(i);
            // a·b < 2^30 and we reduce every entry right away: no overflow.
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                orow[j] = static_cast<std::uint32_t>((orow[j] + a * rrow[j]) % p);
        }
    }
    return out;
}

FMatrix FMatrix::add(const FMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("FMatrix::add: shape");
    FMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
    return out;
}

FMatrix FMatrix::sub(const FMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("FMatrix::sub: shape");
    FMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], rhs.data_[i]);
    return out;
}

FMatrix FMatrix::scale(std::uint32_t c) const {
    FMatrix out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.mul(c, data_[i]);
    return out;
}

FVec FMatrix::apply(const FVec& v) const {
    if (v.size() != cols_) throw DimensionError("FMatrix::apply: size mismatch");
    FVec out(rows_, 0);
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::uint32_t* r = row_ptr(i);
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(r[j]) * v[j];
        out[i] = static_cast<std::uint32_t>(acc % p);
    }
    return out;
}

bool FMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

FMatrix FMatrix::vstack(const FMatrix& a, const FMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionError("FMatrix::vstack: column mismatch");
    FMatrix out(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) out.set_row(i, a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i) out.set_row(a.rows() + i, b.row(i));
    return out;
}

FMatrix FMatrix::hstack(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionError("FMatrix::hstack: row mismatch");
    FMatrix out(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.at(i, j));
        for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, a.cols() + j, b.at(i, j));
    }
    return out;
}

namespace {

/// Gauss-Jordan on a 64-bit working buffer.  Entries accumulate lazily and a
/// row is reduced mod p exactly when it is pivoted on; every row receives at
/// most min(rows, cols) axpys of magnitude < p², so values stay below
/// rank·p² + p < 2^50 for p < 2^15.
std::vector<std::size_t> rref_u64(std::vector<std::uint64_t>& a, std::size_t rows,
                                  std::size_t cols, const PrimeField& F) {
    const std::uint64_t p = F.p();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            std::uint64_t v = a[i * cols + c] % p;
            a[i * cols + c] = v;
            if (v != 0) { piv = i; break; }
        }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        std::uint64_t pinv = F.inv(static_cast<std::uint32_t>(a[r * cols + c]));
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = a[r * cols + j] % p * pinv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint64_t f = a[i * cols + c] % p;
            if (f == 0) { a[i * cols + c] = 0; continue; }
            std::uint64_t mult = p - f;
            const std::uint64_t* src = &a[r * cols];
            std::uint64_t* dst = &a[i * cols];
            for (std::size_t j = c + 1; j < cols; ++j) dst[j] += mult * src[j];
            dst[c] = 0;
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] %= p;
    return pivots;
}

} // namespace

RrefResult rref(const FMatrix& m) {
    std::vector<std::uint64_t> buf(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) buf[i * m.cols() + j] = m.at(i, j);
    auto pivots = rref_u64(buf, m.rows(), m.cols(), m.field());
    FMatrix out(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.set(i, j, static_cast<std::uint32_t>(buf[i * m.cols() + j]));
    return RrefResult{std::move(out), pivots.size(), std::move(pivots)};
}

std::size_t rank(const FMatrix& m) { return rref(m).rank; }

std::optional<FVec> solve(const FMatrix& m, const FVec& b) {
    if (b.size() != m.rows()) throw DimensionError("solve: rhs size mismatch");
    FMatrix rhs(m.field(), m.rows(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i) rhs.set(i, 0, b[i]);
    RrefResult rr = rref(FMatrix::hstack(m, rhs));
    for (std::size_t t = 0; t < rr.rank; ++t)
        if (rr.pivots[t] == m.cols()) return std::nullopt;
    FVec x(m.cols(), 0);
    for (std::size_t t = 0; t < rr.rank; ++t) x[rr.pivots[t]] = rr.mat.at(t, m.cols());
    return x;
}

PivotedBasis::PivotedBasis(FMatrix rows, std::vector<std::size_t> unit_cols)
    : rows_(std::move(rows)), unit_cols_(std::move(unit_cols)) {
    if (rows_.rows() != unit_cols_.size())
        throw DimensionError("PivotedBasis: unit column count mismatch");
}

PivotedBasis PivotedBasis::empty(PrimeField field, std::size_t ambient) {
    return PivotedBasis(FMatrix(field, 0, ambient), {});
}

FVec PivotedBasis::coords(const FVec& w, bool verify) const {
    if (w.size() != ambient()) throw DimensionError("PivotedBasis::coords: size mismatch");
    FVec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = w[unit_cols_[i]];
    if (verify) {
        FVec back = expand(c);
        if (back != w) throw DimensionError("PivotedBasis::coords: vector not in span");
    }
    return c;
}

FVec PivotedBasis::expand(const FVec& coords) const {
    if (coords.size() != dim()) throw DimensionError("PivotedBasis::expand: size mismatch");
    const PrimeField& F = rows_.field();
    FVec out(ambient(), 0);
    const std::uint64_t p = F.p();
    for (std::size_t i = 0; i < dim(); ++i) {
        std::uint64_t c = coords[i];
        if (!c) continue;
        const std::uint32_t* r = rows_.row_ptr(i);
        for (std::size_t j = 0; j < ambient(); ++j)
            out[j] = static_cast<std::uint32_t>((out[j] + c * r[j]) % p);
    }
    return out;
}

PivotedBasis kernel_pivoted(const FMatrix& m) {
    RrefResult rr = rref(m);
    const PrimeField& F = m.field();
    std::vector<std::size_t> free_cols;
    {
        std::size_t t = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (t < rr.rank && rr.pivots[t] == j) { ++t; continue; }
            free_cols.push_back(j);
        }
    }
    FMatrix rows(F, free_cols.size(), m.cols());
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        std::size_t j = free_cols[i];
        rows.set(i, j, 1);
        for (std::size_t t = 0; t < rr.rank; ++t) rows.set(i, rr.pivots[t], F.neg(rr.mat.at(t, j)));
    }
    return PivotedBasis(std::move(rows), std::move(free_cols));
}

Subspace::Subspace(FMatrix basis, std::vector<std::size_t> pivots)
    : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::zero(PrimeField field, std::size_t ambient) {
    return Subspace(FMatrix(field, 0, ambient), {});
}

Subspace Subspace::full(PrimeField field, std::size_t ambient) {
    std::vector<std::size_t> piv(ambient);
    for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
    return Subspace(FMatrix::identity(field, ambient), std::move(piv));
}

Subspace Subspace::span_rows(const FMatrix& rows) {
    RrefResult rr = rref(rows);
    FMatrix basis(rows.field(), rr.rank, rows.cols());
    for (std::size_t i = 0; i < rr.rank; ++i) basis.set_row(i, rr.mat.row(i));
    return Subspace(std::move(basis), std::move(rr.pivots));
}

bool Subspace::contains(const FVec& v) const {
    if (v.size() != ambient()) throw DimensionError("Subspace::contains: size mismatch");
    const PrimeField& F = field();
    FVec w = v;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::uint32_t c = w[pivots_[i]];
        if (!c) continue;
        const std::uint32_t* r = basis_.row_ptr(i);
        for (std::size_t j = 0; j < ambient(); ++j) w[j] = F.sub(w[j], F.mul(c, r[j]));
    }
    return fvec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient() != ambient()) throw DimensionError("Subspace::contains: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

FVec Subspace::coords_of(const FVec& v) const {
    FVec c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    const PrimeField& F = field();
    FVec w = v;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!c[i]) continue;
        const std::uint32_t* r = basis_.row_ptr(i);
        for (std::size_t j = 0; j < ambient(); ++j) w[j] = F.sub(w[j], F.mul(c[i], r[j]));
    }
    if (!fvec_is_zero(w)) throw DimensionError("Subspace::coords_of: vector not in subspace");
    return c;
}

Subspace kernel_basis(const FMatrix& m) {
    PivotedBasis k = kernel_pivoted(m);
    return Subspace::span_rows(k.rows());
}

Subspace image_basis(const FMatrix& m) { return Subspace::span_rows(m.transpose()); }

bool subspace_equal(const Subspace& a, const Subspace& b) { return a == b; }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("subspace_sum: ambient mismatch");
    return Subspace::span_rows(FMatrix::vstack(a.basis(), b.basis()));
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw DimensionError("subspace_intersection: ambient mismatch");
    Subspace ann_a = kernel_basis(a.basis());
    Subspace ann_b = kernel_basis(b.basis());
    return kernel_basis(subspace_sum(ann_a, ann_b).basis());
}

RowBasis::RowBasis(PrimeField field, std::size_t ambient) : field_(field), ambient_(ambient) {}

bool RowBasis::add(FVec v) {
    if (v.size() != ambient_) throw DimensionError("RowBasis::add: size mismatch");
    const std::uint64_t p = field_.p();
    // Rows are kept sorted by pivot column; reduce v front to back, lazily:
    // entries accumulate in 64 bits (each step adds < p² with p < 2^15, so
    // ranks up to 2^33 cannot overflow) and are reduced once at the end.
    std::vector<std::uint64_t> buf(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::uint64_t c = buf[pivots_[i]] % p;
        if (!c) continue;
        std::uint64_t mult = p - c;
        const std::uint32_t* r = rows_[i].data();
        for (std::size_t j = pivots_[i]; j < ambient_; ++j) buf[j] += mult * r[j];
    }
    for (std::size_t j = 0; j < ambient_; ++j)
        v[j] = static_cast<std::uint32_t>(buf[j] % p);
    std::size_t lead = ambient_;
    for (std::size_t j = 0; j < ambient_; ++j)
        if (v[j]) { lead = j; break; }
    if (lead == ambient_) return false;
    std::uint32_t inv = field_.inv(v[lead]);
    for (std::size_t j = lead; j < ambient_; ++j) v[j] = field_.mul(inv, v[j]);
    auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

Subspace RowBasis::to_subspace() const {
    FMatrix m(field_, rows_.size(), ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
    return Subspace::span_rows(m);
}

} // namespace gdimlab
