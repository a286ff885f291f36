#include "gdimlab/algebra.hpp"

#include <random>

namespace gdimlab {

bool Element::is_zero() const {
    return degree < 0 || fvec_is_zero(coords);
}

RingCore::RingCore(PrimeField field, std::size_t dim1, std::size_t dim2,
                   std::vector<FVec> mult11)
    : field_(field), dim1_(dim1), dim2_(dim2), mult_(std::move(mult11)) {
    if (mult_.size() != dim1_ * dim1_)
        throw InputError("RingCore: mult11 table must have dim1*dim1 entries");
    for (const auto& v : mult_)
        if (v.size() != dim2_) throw InputError("RingCore: mult11 entry has wrong length");
}

std::size_t RingCore::piece_dim(int degree) const noexcept {
    switch (degree) {
        case 0: return 1;
        case 1: return dim1_;
        case 2: return dim2_;
        default: return 0;
    }
}

FVec RingCore::mul11(const FVec& a, const FVec& b) const {
    if (a.size() != dim1_ || b.size() != dim1_) throw DimensionError("RingCore::mul11: size");
    FVec out(dim2_, 0);
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < dim1_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim1_; ++j) {
            std::uint64_t c = static_cast<std::uint64_t>(a[i]) * b[j] % p;
            if (!c) continue;
            const FVec& m = mul_basis(i, j);
            for (std::size_t t = 0; t < dim2_; ++t)
                out[t] = static_cast<std::uint32_t>((out[t] + c * m[t]) % p);
        }
    }
    return out;
}

FMatrix RingCore::mult_matrix(const FVec& x) const {
    if (x.size() != dim1_) throw DimensionError("RingCore::mult_matrix: size");
    FMatrix m(field_, dim2_, dim1_);
    const std::uint64_t p = field_.p();
    for (std::size_t j = 0; j < dim1_; ++j) {
        for (std::size_t i = 0; i < dim1_; ++i) {
            if (!x[i]) continue;
            const FVec& prod = mul_basis(i, j);
            for (std::size_t t = 0; t < dim2_; ++t)
                m.set(t, j,
                      static_cast<std::uint32_t>(
                          (m.at(t, j) + static_cast<std::uint64_t>(x[i]) * prod[t]) % p));
        }
    }
    return m;
}

void RingCore::validate() const {
    for (std::size_t i = 0; i < dim1_; ++i)
        for (std::size_t j = i + 1; j < dim1_; ++j)
            if (mul_basis(i, j) != mul_basis(j, i))
                throw InputError("RingCore: mult11 is not symmetric at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
}

bool RingCore::is_standard_graded() const {
    if (dim2_ == 0) return true;
    RowBasis span(field_, dim2_);
    for (std::size_t i = 0; i < dim1_ && !span.is_full(); ++i)
        for (std::size_t j = i; j < dim1_ && !span.is_full(); ++j) span.add(mul_basis(i, j));
    return span.is_full();
}

namespace {

Element add_elements(const PrimeField& F, const Element& a, const Element& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree != b.degree) throw InputError("Element add: degree mismatch");
    return Element{a.degree, fvec_add(F, a.coords, b.coords)};
}

} // namespace

GradedAlgebra::GradedAlgebra(RingCore core) : core_(std::move(core)) {
    core_.validate();
    if (!core_.is_standard_graded())
        throw InputError("GradedAlgebra: R1·R1 does not span R2 (ring must be standard graded)");
    lmul1_.reserve(core_.dim1());
    for (std::size_t j = 0; j < core_.dim1(); ++j) {
        FVec ej(core_.dim1(), 0);
        ej[j] = 1;
        lmul1_.push_back(core_.mult_matrix(ej));
    }
}

std::vector<Element> GradedAlgebra::piece_basis(int degree) const {
    std::vector<Element> out;
    std::size_t n = core_.piece_dim(degree);
    for (std::size_t i = 0; i < n; ++i) {
        FVec v(n, 0);
        v[i] = 1;
        out.push_back(Element{degree, std::move(v)});
    }
    return out;
}

Element GradedAlgebra::add(const Element& a, const Element& b) const {
    return add_elements(field(), a, b);
}

Element GradedAlgebra::scale(std::uint32_t c, const Element& a) const {
    if (a.is_zero() || c == 0) return Element::zero();
    return Element{a.degree, fvec_scale(field(), c, a.coords)};
}

Element GradedAlgebra::mul(const Element& a, const Element& b) const {
    if (a.is_zero() || b.is_zero()) return Element::zero();
    int d = a.degree + b.degree;
    if (d > 2) return Element::zero(); // m³ = 0
    if (a.degree == 0) return scale(a.coords[0], b);
    if (b.degree == 0) return scale(b.coords[0], a);
    return Element{2, core_.mul11(a.coords, b.coords)};
}

DegreeTwoRingData::DegreeTwoRingData(RingCore core) : core_(std::move(core)) {
    core_.validate();
}

Element DegreeTwoRingData::add(const Element& a, const Element& b) const {
    return add_elements(field(), a, b);
}

Element DegreeTwoRingData::mul(const Element& a, const Element& b) const {
    if (a.is_zero() || b.is_zero()) return Element::zero();
    if (a.degree == 0) return Element{b.degree, fvec_scale(field(), a.coords[0], b.coords)};
    if (b.degree == 0) return Element{a.degree, fvec_scale(field(), b.coords[0], a.coords)};
    if (a.degree == 1 && b.degree == 1) return Element{2, core_.mul11(a.coords, b.coords)};
    throw InputError("DegreeTwoRingData: product beyond degree 2 is not represented");
}

std::size_t sym2_dim(std::size_t num_vars) { return num_vars * (num_vars + 1) / 2; }

std::size_t mono_index(std::size_t i, std::size_t j, std::size_t num_vars) {
    if (i > j) std::swap(i, j);
    if (j >= num_vars) throw DimensionError("mono_index: variable out of range");
    // monomials (0,0..n-1), (1,1..n-1), ...: row i starts after i rows of
    // decreasing length n, n-1, ...
    return i * num_vars - i * (i + 1) / 2 + j;
}

namespace {

/// Echelonize the quadric span inside Sym² and express every monomial in the
/// standard (non-pivot) monomials.  Returns the structure constants table.
struct QuotientOfSym2 {
    std::size_t dim2;
    std::vector<FVec> mult; // dim1 × dim1, coords over standard monomials
};

QuotientOfSym2 sym2_quotient(PrimeField field, std::size_t n, const std::vector<FVec>& quadrics) {
    std::size_t N = sym2_dim(n);
    FMatrix q(field, quadrics.size(), N);
    for (std::size_t i = 0; i < quadrics.size(); ++i) {
        if (quadrics[i].size() != N)
            throw InputError("quadric has wrong coordinate length");
        q.set_row(i, quadrics[i]);
    }
    RrefResult rr = rref(q);

    std::vector<std::size_t> standard; // non-pivot monomial columns
    std::vector<std::ptrdiff_t> std_pos(N, -1);
    {
        std::size_t t = 0;
        for (std::size_t c = 0; c < N; ++c) {
            if (t < rr.rank && rr.pivots[t] == c) { ++t; continue; }
            std_pos[c] = static_cast<std::ptrdiff_t>(standard.size());
            standard.push_back(c);
        }
    }
    std::size_t dim2 = standard.size();

    // projection of each monomial into the quotient
    std::vector<FVec> proj(N, FVec(dim2, 0));
    const PrimeField& F = field;
    for (std::size_t c = 0; c < N; ++c) {
        if (std_pos[c] >= 0) {
            proj[c][static_cast<std::size_t>(std_pos[c])] = 1;
        } else {
            // pivot monomial: row t has m_c + Σ a_s m_s = 0 over the standard ones
            std::size_t t = 0;
            while (rr.pivots[t] != c) ++t;
            for (std::size_t s = 0; s < dim2; ++s)
                proj[c][s] = F.neg(rr.mat.at(t, standard[s]));
        }
    }

    std::vector<FVec> mult(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mult[i * n + j] = proj[mono_index(i, j, n)];
    return QuotientOfSym2{dim2, std::move(mult)};
}

} // namespace

GradedAlgebra build_quadratic_quotient(PrimeField field, std::size_t num_vars,
                                       const std::vector<FVec>& quadrics) {
    if (num_vars == 0) throw InputError("build_quadratic_quotient: need at least one variable");
    QuotientOfSym2 q = sym2_quotient(field, num_vars, quadrics);
    return GradedAlgebra(RingCore(field, num_vars, q.dim2, std::move(q.mult)));
}

DegreeTwoRingData build_circulant_ring(PrimeField field, std::size_t r) {
    if (r < 2) throw InputError("build_circulant_ring: r must be at least 2");
    std::size_t n = r + 1;
    std::vector<FVec> minors;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            FVec m(sym2_dim(n), 0);
            // 2x2 minor on columns i, j: X_i X_{j+1} - X_j X_{i+1} (indices mod n)
            std::size_t a = mono_index(i, (j + 1) % n, n);
            std::size_t b = mono_index(j, (i + 1) % n, n);
            m[a] = field.add(m[a], 1);
            m[b] = field.sub(m[b], 1);
            minors.push_back(std::move(m));
        }
    }
    QuotientOfSym2 q = sym2_quotient(field, n, minors);
    if (q.dim2 != n)
        throw ConstructionError("build_circulant_ring: expected dim S2 = r+1, got " +
                                std::to_string(q.dim2));
    return DegreeTwoRingData(RingCore(field, n, q.dim2, std::move(q.mult)));
}

GradedAlgebra quotient_by_quadric(const DegreeTwoRingData& S, const Element& f) {
    if (f.is_zero() || f.degree != 2)
        throw InputError("quotient_by_quadric: f must be a nonzero degree-2 element");
    if (f.coords.size() != S.dim2()) throw DimensionError("quotient_by_quadric: f length");
    const PrimeField& F = S.field();

    std::size_t j0 = 0;
    while (f.coords[j0] == 0) ++j0;
    FVec fhat = fvec_scale(F, F.inv(f.coords[j0]), f.coords);

    std::size_t dim2 = S.dim2() - 1;
    auto project = [&](const FVec& v) {
        FVec w = fvec_sub(F, v, fvec_scale(F, v[j0], fhat));
        FVec out;
        out.reserve(dim2);
        for (std::size_t t = 0; t < S.dim2(); ++t)
            if (t != j0) out.push_back(w[t]);
        return out;
    };

    std::vector<FVec> mult(S.dim1() * S.dim1());
    for (std::size_t i = 0; i < S.dim1(); ++i)
        for (std::size_t j = 0; j < S.dim1(); ++j)
            mult[i * S.dim1() + j] = project(S.core().mul_basis(i, j));
    return GradedAlgebra(RingCore(F, S.dim1(), dim2, std::move(mult)));
}

HilbertCoeffs hilbert_coeffs(const GradedAlgebra& R) {
    HilbertCoeffs h{1, R.dim1(), R.dim2(), false};
    h.good_shape = (h.h2 >= 2) && (h.h1 == h.h2 + 1);
    return h;
}

Subspace socle(const GradedAlgebra& R) {
    const RingCore& core = R.core();
    const PrimeField& F = R.field();
    std::size_t d1 = core.dim1(), d2 = core.dim2();
    // v ∈ R1 is socle iff v·e_j = 0 for every j; R2 is socle outright (m³=0).
    FMatrix stacked(F, d1 * d2, d1);
    for (std::size_t j = 0; j < d1; ++j) {
        FVec ej(d1, 0);
        ej[j] = 1;
        FMatrix mj = core.mult_matrix(ej);
        for (std::size_t t = 0; t < d2; ++t)
            for (std::size_t i = 0; i < d1; ++i) stacked.set(j * d2 + t, i, mj.at(t, i));
    }
    Subspace deg1 = kernel_basis(stacked);

    FMatrix rows(F, deg1.dim() + d2, d1 + d2);
    for (std::size_t i = 0; i < deg1.dim(); ++i)
        for (std::size_t j = 0; j < d1; ++j) rows.set(i, j, deg1.basis().at(i, j));
    for (std::size_t t = 0; t < d2; ++t) rows.set(deg1.dim() + t, d1 + t, 1);
    return Subspace::span_rows(rows);
}

bool is_minimal_reduction(const RingCore& core, const Element& x) {
    if (x.degree != 1 || x.coords.size() != core.dim1())
        throw InputError("is_minimal_reduction: x must be a degree-1 element");
    return rank(core.mult_matrix(x.coords)) == core.dim2();
}

Element find_minimal_reduction(const RingCore& core, std::uint64_t seed, std::size_t budget) {
    std::mt19937_64 rng(seed);
    const std::uint32_t p = core.field().p();
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        FVec x(core.dim1());
        for (auto& v : x) v = static_cast<std::uint32_t>(rng() % p);
        if (fvec_is_zero(x)) continue;
        Element e{1, x};
        if (is_minimal_reduction(core, e)) return e;
    }
    throw SearchExhausted("find_minimal_reduction: no surjective multiplication map found in " +
                          std::to_string(budget) + " samples");
}

GradedAlgebra seven_quadric_ring(PrimeField field) {
    // variables x=0, y=1, z=2, w=3
    const std::size_t n = 4;
    auto mono = [&](std::size_t i, std::size_t j) { return mono_index(i, j, n); };
    auto quad = [&](std::initializer_list<std::pair<std::size_t, int>> terms) {
        FVec v(sym2_dim(n), 0);
        for (auto [idx, c] : terms) v[idx] = field.reduce(c);
        return v;
    };
    std::vector<FVec> quadrics = {
        quad({{mono(0, 0), 1}}),                  // x²
        quad({{mono(0, 1), 1}, {mono(2, 3), -1}}), // xy - zw
        quad({{mono(0, 1), 1}, {mono(3, 3), -1}}), // xy - w²
        quad({{mono(0, 2), 1}, {mono(1, 3), -1}}), // xz - yw
        quad({{mono(0, 3), 1}, {mono(1, 1), -1}}), // xw - y²
        quad({{mono(0, 3), 1}, {mono(1, 2), -1}}), // xw - yz
        quad({{mono(0, 3), 1}, {mono(2, 2), -1}}), // xw - z²
    };
    return build_quadratic_quotient(field, n, quadrics);
}

GradedAlgebra square_zero_ring(PrimeField field) {
    const std::size_t n = 2;
    FVec q1(sym2_dim(n), 0), q2(sym2_dim(n), 0), q3(sym2_dim(n), 0);
    q1[mono_index(0, 0, n)] = 1;
    q2[mono_index(0, 1, n)] = 1;
    q3[mono_index(1, 1, n)] = 1;
    return build_quadratic_quotient(field, n, {q1, q2, q3});
}

} // namespace gdimlab
