#include "gdimlab/gmodule.hpp"

#include <algorithm>
#include <cstdint>

#include "gdimlab/errors.hpp"

namespace gdimlab {

namespace {

void check_same_ring(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (!(a == b)) throw InputError("objects belong to different algebras");
}

FVec matrix_column(const FMatrix& m, std::size_t c) {
    FVec v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, c);
    return v;
}

} // namespace

GradedModule::GradedModule(AlgebraPtr R, int base_degree, std::vector<std::size_t> dims,
                           std::vector<std::vector<FMatrix>> act1,
                           std::vector<std::vector<FMatrix>> act2)
    : ring_(std::move(R)), base_(base_degree), dims_(std::move(dims)), act1_(std::move(act1)),
      act2_(std::move(act2)) {
    if (!ring_) throw InputError("GradedModule: null algebra");
    std::size_t n0 = dims_.size();
    if (act1_.size() != (n0 >= 2 ? n0 - 1 : 0) || act2_.size() != (n0 >= 3 ? n0 - 2 : 0))
        throw InputError("GradedModule: action tensor slice count mismatch");

    std::size_t lo = 0, hi = dims_.size();
    while (lo < hi && dims_[lo] == 0) ++lo;
    while (hi > lo && dims_[hi - 1] == 0) --hi;
    if (lo > 0 || hi < dims_.size()) {
        base_ += static_cast<int>(lo);
        dims_ = std::vector<std::size_t>(dims_.begin() + lo, dims_.begin() + hi);
        auto slice = [&](std::vector<std::vector<FMatrix>>& a, std::size_t span) {
            std::size_t want = dims_.size() >= span ? dims_.size() - span + 1 : 0;
            std::size_t first = std::min(lo, a.size());
            std::size_t count = std::min(want, a.size() - first);
            a = std::vector<std::vector<FMatrix>>(a.begin() + first, a.begin() + first + count);
        };
        slice(act1_, 2);
        slice(act2_, 3);
    }
    if (dims_.empty()) base_ = 0;
    validate();
}

GradedModule GradedModule::zero(AlgebraPtr R) { return GradedModule(std::move(R), 0, {}, {}, {}); }

GradedModule GradedModule::residue_field(AlgebraPtr R) {
    return GradedModule(std::move(R), 0, {1}, {}, {});
}

std::size_t GradedModule::dim(int degree) const noexcept {
    int s = degree - base_;
    if (s < 0 || s >= static_cast<int>(dims_.size())) return 0;
    return dims_[static_cast<std::size_t>(s)];
}

std::size_t GradedModule::total_dim() const noexcept {
    std::size_t n = 0;
    for (std::size_t d : dims_) n += d;
    return n;
}

FMatrix GradedModule::act1_matrix(std::size_t j, int degree) const {
    int s = degree - base_;
    if (s >= 0 && s + 1 < static_cast<int>(dims_.size()))
        return act1_[static_cast<std::size_t>(s)][j];
    return FMatrix(ring_->field(), dim(degree + 1), dim(degree));
}

FMatrix GradedModule::act2_matrix(std::size_t t, int degree) const {
    int s = degree - base_;
    if (s >= 0 && s + 2 < static_cast<int>(dims_.size()))
        return act2_[static_cast<std::size_t>(s)][t];
    return FMatrix(ring_->field(), dim(degree + 2), dim(degree));
}

FVec GradedModule::apply1(std::size_t j, int degree, const FVec& v) const {
    if (v.size() != dim(degree)) throw DimensionError("GradedModule::apply1: wrong slice size");
    int s = degree - base_;
    if (s >= 0 && s + 1 < static_cast<int>(dims_.size()))
        return act1_[static_cast<std::size_t>(s)][j].apply(v);
    return FVec(dim(degree + 1), 0);
}

FVec GradedModule::apply2(std::size_t t, int degree, const FVec& v) const {
    if (v.size() != dim(degree)) throw DimensionError("GradedModule::apply2: wrong slice size");
    int s = degree - base_;
    if (s >= 0 && s + 2 < static_cast<int>(dims_.size()))
        return act2_[static_cast<std::size_t>(s)][t].apply(v);
    return FVec(dim(degree + 2), 0);
}

FVec GradedModule::apply_element(const Element& e, int degree, const FVec& v) const {
    if (e.is_zero()) throw InputError("GradedModule::apply_element: zero element has no degree");
    if (e.degree < 0 || e.degree > 2 || e.coords.size() != ring_->piece_dim(e.degree))
        throw InputError("apply_element: malformed element");
    const PrimeField& F = ring_->field();
    if (e.degree == 0) {
        if (v.size() != dim(degree)) throw DimensionError("apply_element: wrong slice size");
        return fvec_scale(F, e.coords[0], v);
    }
    FVec out(dim(degree + e.degree), 0);
    if (e.degree == 1) {
        for (std::size_t j = 0; j < e.coords.size(); ++j)
            if (e.coords[j]) out = fvec_add(F, out, fvec_scale(F, e.coords[j], apply1(j, degree, v)));
        return out;
    }
    if (e.degree == 2) {
        for (std::size_t t = 0; t < e.coords.size(); ++t)
            if (e.coords[t]) out = fvec_add(F, out, fvec_scale(F, e.coords[t], apply2(t, degree, v)));
        return out;
    }
    throw InputError("apply_element: element degree out of range");
}

void GradedModule::validate() const {
    const GradedAlgebra& R = *ring_;
    const PrimeField& F = R.field();
    std::size_t n = dims_.size();
    std::size_t want1 = n >= 2 ? n - 1 : 0;
    std::size_t want2 = n >= 3 ? n - 2 : 0;
    if (act1_.size() != want1 || act2_.size() != want2)
        throw InputError("GradedModule: action tensor slice count mismatch");
    for (std::size_t s = 0; s < act1_.size(); ++s) {
        if (act1_[s].size() != R.dim1()) throw InputError("GradedModule: act1 arity mismatch");
        for (const FMatrix& m : act1_[s])
            if (m.rows() != dims_[s + 1] || m.cols() != dims_[s])
                throw InputError("GradedModule: act1 block shape mismatch");
    }
    for (std::size_t s = 0; s < act2_.size(); ++s) {
        if (act2_[s].size() != R.dim2()) throw InputError("GradedModule: act2 arity mismatch");
        for (const FMatrix& m : act2_[s])
            if (m.rows() != dims_[s + 2] || m.cols() != dims_[s])
                throw InputError("GradedModule: act2 block shape mismatch");
    }
    // compatibility: act2(e_i e_j) = act1(e_j) act1(e_i), symmetric in i, j
    for (std::size_t s = 0; s < act2_.size(); ++s) {
        for (std::size_t i = 0; i < R.dim1(); ++i) {
            for (std::size_t j = i; j < R.dim1(); ++j) {
                FMatrix ab = act1_[s + 1][j].mul(act1_[s][i]);
                if (ab != act1_[s + 1][i].mul(act1_[s][j]))
                    throw InputError("GradedModule: act1 composites not symmetric");
                FMatrix prod(F, dims_[s + 2], dims_[s]);
                const FVec& c = R.core().mul_basis(i, j);
                for (std::size_t t = 0; t < R.dim2(); ++t)
                    if (c[t]) prod = prod.add(act2_[s][t].scale(c[t]));
                if (prod != ab)
                    throw InputError("GradedModule: act2 inconsistent with act1 composites");
            }
        }
    }
    // m³ = 0 on the module
    for (std::size_t s = 0; s + 3 < n; ++s) {
        for (std::size_t j = 0; j < R.dim1(); ++j) {
            for (std::size_t t = 0; t < R.dim2(); ++t) {
                if (!act1_[s + 2][j].mul(act2_[s][t]).is_zero() ||
                    !act2_[s + 1][t].mul(act1_[s][j]).is_zero())
                    throw InputError("GradedModule: degree-3 action does not vanish");
            }
        }
    }
}

FreeModule::FreeModule(AlgebraPtr R, std::vector<int> shifts)
    : ring_(std::move(R)), shifts_(std::move(shifts)) {
    if (!ring_) throw InputError("FreeModule: null algebra");
}

int FreeModule::min_degree() const {
    if (shifts_.empty()) return 0;
    return *std::min_element(shifts_.begin(), shifts_.end());
}

int FreeModule::max_degree() const {
    if (shifts_.empty()) return -1;
    return *std::max_element(shifts_.begin(), shifts_.end()) + 2;
}

std::size_t FreeModule::dim(int degree) const {
    std::size_t n = 0;
    for (int s : shifts_) n += ring_->piece_dim(degree - s);
    return n;
}

std::size_t FreeModule::block_offset(std::size_t i, int degree) const {
    std::size_t off = 0;
    for (std::size_t t = 0; t < i; ++t) off += ring_->piece_dim(degree - shifts_[t]);
    return off;
}

Element FreeModule::block(std::size_t i, int degree, const FVec& v) const {
    std::size_t w = block_width(i, degree);
    if (w == 0) return Element::zero();
    std::size_t off = block_offset(i, degree);
    FVec c(v.begin() + static_cast<std::ptrdiff_t>(off),
           v.begin() + static_cast<std::ptrdiff_t>(off + w));
    if (fvec_is_zero(c)) return Element::zero();
    return Element{degree - shifts_[i], std::move(c)};
}

void FreeModule::add_block(std::size_t i, int degree, const Element& e, FVec& v) const {
    if (e.is_zero()) return;
    if (e.degree != degree - shifts_[i] || e.coords.size() != block_width(i, degree))
        throw DimensionError("FreeModule::add_block: element does not fit the block");
    const PrimeField& F = ring_->field();
    std::size_t off = block_offset(i, degree);
    for (std::size_t t = 0; t < e.coords.size(); ++t)
        v[off + t] = F.add(v[off + t], e.coords[t]);
}

FVec FreeModule::basis_image(std::size_t i, const Element& e) const {
    if (e.is_zero()) throw InputError("FreeModule::basis_image: zero element has no degree");
    int d = shifts_[i] + e.degree;
    FVec v(dim(d), 0);
    add_block(i, d, e, v);
    return v;
}

FVec FreeModule::apply1(std::size_t j, int degree, const FVec& v) const {
    if (v.size() != dim(degree)) throw DimensionError("FreeModule::apply1: wrong slice size");
    const PrimeField& F = ring_->field();
    FVec out(dim(degree + 1), 0);
    std::size_t src = 0, dst = 0;
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
        int p = degree - shifts_[i];
        std::size_t w = ring_->piece_dim(p);
        std::size_t w2 = ring_->piece_dim(p + 1);
        if (p == 0 && w == 1) {
            out[dst + j] = F.add(out[dst + j], v[src]);
        } else if (p == 1) {
            const FMatrix& L = ring_->basis_mult1(j);
            for (std::size_t r = 0; r < L.rows(); ++r) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < w; ++c)
                    acc += static_cast<std::uint64_t>(L.at(r, c)) * v[src + c];
                out[dst + r] = F.add(out[dst + r], static_cast<std::uint32_t>(acc % F.p()));
            }
        }
        src += w;
        dst += w2;
    }
    return out;
}

FVec FreeModule::apply2(std::size_t t, int degree, const FVec& v) const {
    if (v.size() != dim(degree)) throw DimensionError("FreeModule::apply2: wrong slice size");
    const PrimeField& F = ring_->field();
    FVec out(dim(degree + 2), 0);
    std::size_t src = 0, dst = 0;
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
        int p = degree - shifts_[i];
        if (p == 0) out[dst + t] = F.add(out[dst + t], v[src]);
        src += ring_->piece_dim(p);
        dst += ring_->piece_dim(p + 2);
    }
    return out;
}

FVec FreeModule::apply_element(const Element& e, int degree, const FVec& v) const {
    if (e.is_zero()) throw InputError("FreeModule::apply_element: zero element has no degree");
    if (e.degree < 0 || e.degree > 2 || e.coords.size() != ring_->piece_dim(e.degree))
        throw InputError("apply_element: malformed element");
    const PrimeField& F = ring_->field();
    if (e.degree == 0) {
        if (v.size() != dim(degree)) throw DimensionError("apply_element: wrong slice size");
        return fvec_scale(F, e.coords[0], v);
    }
    if (v.size() != dim(degree)) throw DimensionError("apply_element: wrong slice size");
    FVec out(dim(degree + e.degree), 0);
    if (e.degree == 1) {
        FMatrix mx = ring_->core().mult_matrix(e.coords);
        std::size_t src = 0, dst = 0;
        for (std::size_t i = 0; i < shifts_.size(); ++i) {
            int p = degree - shifts_[i];
            std::size_t w = ring_->piece_dim(p);
            if (p == 0) {
                for (std::size_t c = 0; c < e.coords.size(); ++c)
                    out[dst + c] = F.add(out[dst + c], F.mul(v[src], e.coords[c]));
            } else if (p == 1) {
                for (std::size_t r = 0; r < mx.rows(); ++r) {
                    std::uint64_t acc = 0;
                    for (std::size_t c = 0; c < w; ++c)
                        acc += static_cast<std::uint64_t>(mx.at(r, c)) * v[src + c];
                    out[dst + r] = F.add(out[dst + r], static_cast<std::uint32_t>(acc % F.p()));
                }
            }
            src += w;
            dst += ring_->piece_dim(p + 1);
        }
        return out;
    }
    if (e.degree == 2) {
        std::size_t src = 0, dst = 0;
        for (std::size_t i = 0; i < shifts_.size(); ++i) {
            int p = degree - shifts_[i];
            if (p == 0)
                for (std::size_t c = 0; c < e.coords.size(); ++c)
                    out[dst + c] = F.add(out[dst + c], F.mul(v[src], e.coords[c]));
            src += ring_->piece_dim(p);
            dst += ring_->piece_dim(p + 2);
        }
        return out;
    }
    throw InputError("apply_element: element degree out of range");
}

GradedModule FreeModule::to_graded_module() const {
    if (shifts_.empty()) return GradedModule::zero(ring_);
    int lo = min_degree(), hi = max_degree();
    std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::size_t> dims(n);
    for (std::size_t s = 0; s < n; ++s) dims[s] = dim(lo + static_cast<int>(s));
    std::vector<std::vector<FMatrix>> a1(n - 1), a2(n - 2);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        int d = lo + static_cast<int>(s);
        for (std::size_t j = 0; j < ring_->dim1(); ++j) {
            FMatrix m(ring_->field(), dims[s + 1], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec unit(dims[s], 0);
                unit[u] = 1;
                FVec img = apply1(j, d, unit);
                for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
            }
            a1[s].push_back(std::move(m));
        }
    }
    for (std::size_t s = 0; s + 2 < n; ++s) {
        int d = lo + static_cast<int>(s);
        for (std::size_t t = 0; t < ring_->dim2(); ++t) {
            FMatrix m(ring_->field(), dims[s + 2], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec unit(dims[s], 0);
                unit[u] = 1;
                FVec img = apply2(t, d, unit);
                for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
            }
            a2[s].push_back(std::move(m));
        }
    }
    return GradedModule(ring_, lo, std::move(dims), std::move(a1), std::move(a2));
}

FMatrix ModuleMap::at(int degree) const {
    int s = degree - source.base_degree();
    if (s >= 0 && s < static_cast<int>(blocks.size())) return blocks[static_cast<std::size_t>(s)];
    return FMatrix(source.ring().field(), target.dim(degree + degree_shift), source.dim(degree));
}

FVec ModuleMap::apply(int degree, const FVec& v) const { return at(degree).apply(v); }

void ModuleMap::validate() const {
    check_same_ring(source.ring(), target.ring());
    if (blocks.size() != source.num_slices())
        throw InputError("ModuleMap: one block per source slice required");
    for (std::size_t s = 0; s < blocks.size(); ++s) {
        int d = source.base_degree() + static_cast<int>(s);
        if (blocks[s].rows() != target.dim(d + degree_shift) || blocks[s].cols() != source.dim(d))
            throw InputError("ModuleMap: block shape mismatch");
    }
    const GradedAlgebra& R = source.ring();
    int lo = source.base_degree();
    for (std::size_t s = 0; s < blocks.size(); ++s) {
        int d = lo + static_cast<int>(s);
        for (std::size_t j = 0; j < R.dim1(); ++j) {
            FMatrix lhs = target.act1_matrix(j, d + degree_shift).mul(at(d));
            FMatrix rhs = at(d + 1).mul(source.act1_matrix(j, d));
            if (lhs != rhs) throw InputError("ModuleMap: does not commute with the degree-1 action");
        }
        for (std::size_t t = 0; t < R.dim2(); ++t) {
            FMatrix lhs = target.act2_matrix(t, d + degree_shift).mul(at(d));
            FMatrix rhs = at(d + 2).mul(source.act2_matrix(t, d));
            if (lhs != rhs) throw InputError("ModuleMap: does not commute with the degree-2 action");
        }
    }
}

bool ModuleMap::is_zero_map() const {
    for (const FMatrix& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
    if (!(g.target == f.source)) throw InputError("compose: inner modules differ");
    std::vector<FMatrix> blocks;
    for (std::size_t s = 0; s < g.source.num_slices(); ++s) {
        int d = g.source.base_degree() + static_cast<int>(s);
        blocks.push_back(f.at(d + g.degree_shift).mul(g.at(d)));
    }
    return ModuleMap{g.source, f.target, f.degree_shift + g.degree_shift, std::move(blocks)};
}

int Presentation::col_degree(std::size_t c) const {
    int deg = 0;
    bool found = false;
    for (std::size_t i = 0; i < rels.rows; ++i) {
        const Element& e = rels.at(i, c);
        if (e.is_zero()) continue;
        if (e.degree < 0 || e.degree > 2 ||
            e.coords.size() != ring->piece_dim(e.degree))
            throw InputError("Presentation: malformed entry");
        int d = gen_degrees[i] + e.degree;
        if (found && d != deg) throw InputError("Presentation: relation column is not homogeneous");
        deg = d;
        found = true;
    }
    if (!found) throw InputError("Presentation: relation column is zero");
    return deg;
}

void Presentation::validate() const {
    if (!ring) throw InputError("Presentation: null algebra");
    if (rels.rows != gen_degrees.size())
        throw InputError("Presentation: one row per generator required");
    for (std::size_t c = 0; c < rels.cols; ++c) col_degree(c);
}

namespace {

/// Reduce v against an RREF basis, then gather the non-pivot coordinates.
FVec reduce_and_gather(const PrimeField& F, const Subspace& rel,
                       const std::vector<std::size_t>& free_cols, FVec v) {
    const FMatrix& b = rel.basis();
    for (std::size_t t = 0; t < b.rows(); ++t) {
        std::uint32_t c = v[rel.pivots()[t]];
        if (!c) continue;
        for (std::size_t u = 0; u < v.size(); ++u) v[u] = F.sub(v[u], F.mul(c, b.at(t, u)));
    }
    FVec out(free_cols.size());
    for (std::size_t u = 0; u < free_cols.size(); ++u) out[u] = v[free_cols[u]];
    return out;
}

} // namespace

Coker::Coker(FreeModule ambient, std::vector<std::vector<Element>> rel_columns,
             std::vector<int> rel_degrees)
    : amb_(std::move(ambient)), mod_(GradedModule::zero(amb_.ring_ptr())) {
    const GradedAlgebra& R = amb_.ring();
    const PrimeField& F = R.field();
    lo_ = amb_.min_degree();
    int hi = amb_.max_degree();
    std::size_t n = amb_.rank() == 0 ? 0 : static_cast<std::size_t>(hi - lo_ + 1);

    std::vector<FVec> colvecs(rel_columns.size());
    for (std::size_t c = 0; c < rel_columns.size(); ++c) {
        if (rel_columns[c].size() != amb_.rank())
            throw InputError("Coker: relation column length mismatch");
        FVec v(amb_.dim(rel_degrees[c]), 0);
        for (std::size_t i = 0; i < amb_.rank(); ++i)
            amb_.add_block(i, rel_degrees[c], rel_columns[c][i], v);
        colvecs[c] = std::move(v);
    }

    rel_.reserve(n);
    free_cols_.resize(n);
    std::vector<std::size_t> dims(n);
    for (std::size_t s = 0; s < n; ++s) {
        int d = lo_ + static_cast<int>(s);
        std::vector<FVec> rows;
        for (std::size_t c = 0; c < colvecs.size(); ++c) {
            int p = d - rel_degrees[c];
            if (p < 0 || p > 2) continue;
            for (const Element& w : R.piece_basis(p))
                rows.push_back(amb_.apply_element(w, rel_degrees[c], colvecs[c]));
        }
        FMatrix m(F, rows.size(), amb_.dim(d));
        for (std::size_t t = 0; t < rows.size(); ++t) m.set_row(t, rows[t]);
        rel_.push_back(Subspace::span_rows(m));
        std::size_t piv = 0;
        for (std::size_t u = 0; u < amb_.dim(d); ++u) {
            if (piv < rel_[s].dim() && rel_[s].pivots()[piv] == u) { ++piv; continue; }
            free_cols_[s].push_back(u);
        }
        dims[s] = free_cols_[s].size();
    }

    std::vector<std::vector<FMatrix>> a1(n >= 2 ? n - 1 : 0), a2(n >= 3 ? n - 2 : 0);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        int d = lo_ + static_cast<int>(s);
        for (std::size_t j = 0; j < R.dim1(); ++j) {
            FMatrix m(F, dims[s + 1], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec unit(amb_.dim(d), 0);
                unit[free_cols_[s][u]] = 1;
                FVec img = reduce_and_gather(F, rel_[s + 1], free_cols_[s + 1],
                                             amb_.apply1(j, d, unit));
                for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
            }
            a1[s].push_back(std::move(m));
        }
    }
    for (std::size_t s = 0; s + 2 < n; ++s) {
        int d = lo_ + static_cast<int>(s);
        for (std::size_t t = 0; t < R.dim2(); ++t) {
            FMatrix m(F, dims[s + 2], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec unit(amb_.dim(d), 0);
                unit[free_cols_[s][u]] = 1;
                FVec img = reduce_and_gather(F, rel_[s + 2], free_cols_[s + 2],
                                             amb_.apply2(t, d, unit));
                for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
            }
            a2[s].push_back(std::move(m));
        }
    }
    mod_ = GradedModule(amb_.ring_ptr(), lo_, std::move(dims), std::move(a1), std::move(a2));
}

FVec Coker::project(int degree, const FVec& v) const {
    int s = degree - lo_;
    if (s < 0 || s >= static_cast<int>(rel_.size())) return {};
    if (v.size() != amb_.dim(degree)) throw DimensionError("Coker::project: wrong slice size");
    return reduce_and_gather(amb_.ring().field(), rel_[static_cast<std::size_t>(s)],
                             free_cols_[static_cast<std::size_t>(s)], v);
}

FVec Coker::lift(int degree, const FVec& m) const {
    int s = degree - lo_;
    if (s < 0 || s >= static_cast<int>(rel_.size())) {
        if (!m.empty()) throw DimensionError("Coker::lift: degree out of range");
        return FVec(amb_.dim(degree), 0);
    }
    const auto& fc = free_cols_[static_cast<std::size_t>(s)];
    if (m.size() != fc.size()) throw DimensionError("Coker::lift: wrong module slice size");
    FVec v(amb_.dim(degree), 0);
    for (std::size_t u = 0; u < fc.size(); ++u) v[fc[u]] = m[u];
    return v;
}

Coker coker(const Presentation& p) {
    p.validate();
    FreeModule amb(p.ring, p.gen_degrees);
    std::vector<std::vector<Element>> cols(p.rels.cols);
    std::vector<int> degs(p.rels.cols);
    for (std::size_t c = 0; c < p.rels.cols; ++c) {
        degs[c] = p.col_degree(c);
        cols[c].reserve(p.rels.rows);
        for (std::size_t i = 0; i < p.rels.rows; ++i) cols[c].push_back(p.rels.at(i, c));
    }
    return Coker(std::move(amb), std::move(cols), std::move(degs));
}

GradedModule free_module(AlgebraPtr R, const std::vector<int>& shifts) {
    return FreeModule(std::move(R), shifts).to_graded_module();
}

MinimalGenerators minimal_generators(const GradedModule& M) {
    MinimalGenerators out;
    const PrimeField& F = M.ring().field();
    for (std::size_t s = 0; s < M.num_slices(); ++s) {
        int d = M.base_degree() + static_cast<int>(s);
        std::size_t dim = M.dims()[s];
        if (dim == 0) continue;
        RowBasis B(F, dim);
        if (s > 0) {
            for (std::size_t j = 0; j < M.ring().dim1() && !B.is_full(); ++j) {
                FMatrix m = M.act1_matrix(j, d - 1);
                for (std::size_t c = 0; c < m.cols() && !B.is_full(); ++c)
                    B.add(matrix_column(m, c));
            }
        }
        for (std::size_t u = 0; u < dim && !B.is_full(); ++u) {
            FVec unit(dim, 0);
            unit[u] = 1;
            if (B.add(unit)) out.gens.emplace_back(d, std::move(unit));
        }
    }
    out.count = out.gens.size();
    return out;
}

namespace {

/// Per-degree kernels of the cover F₀ -> M defined by generator images.
struct CoverKernel {
    int lo = 0;
    std::vector<PivotedBasis> pieces;
    std::vector<FMatrix> cover_blocks; // M.dim(d) × F₀.dim(d)
};

CoverKernel cover_kernel(const GradedModule& M, const FreeModule& F0,
                         const std::vector<std::pair<int, FVec>>& images) {
    const GradedAlgebra& R = M.ring();
    const PrimeField& F = R.field();
    CoverKernel K;
    K.lo = F0.min_degree();
    if (F0.rank() == 0) return K;
    for (int d = K.lo; d <= F0.max_degree(); ++d) {
        FMatrix A(F, M.dim(d), F0.dim(d));
        std::size_t col = 0;
        for (std::size_t i = 0; i < F0.rank(); ++i) {
            int p = d - F0.shift(i);
            if (p < 0 || p > 2) continue;
            for (const Element& w : R.piece_basis(p)) {
                FVec img = M.apply_element(w, images[i].first, images[i].second);
                for (std::size_t r = 0; r < img.size(); ++r) A.set(r, col, img[r]);
                ++col;
            }
        }
        K.cover_blocks.push_back(A);
        K.pieces.push_back(kernel_pivoted(A));
    }
    return K;
}

/// Dense module + inclusion blocks from per-degree pivoted bases inside F.
std::pair<GradedModule, std::vector<FMatrix>> materialize_free_sub(
    const FreeModule& F0, int lo, const std::vector<PivotedBasis>& pieces) {
    const GradedAlgebra& R = F0.ring();
    const PrimeField& F = R.field();
    std::size_t n = pieces.size();
    std::vector<std::size_t> dims(n);
    for (std::size_t s = 0; s < n; ++s) dims[s] = pieces[s].dim();
    std::vector<std::vector<FMatrix>> a1(n >= 2 ? n - 1 : 0), a2(n >= 3 ? n - 2 : 0);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        int d = lo + static_cast<int>(s);
        for (std::size_t j = 0; j < R.dim1(); ++j) {
            FMatrix m(F, dims[s + 1], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec c = pieces[s + 1].coords(F0.apply1(j, d, pieces[s].rows().row(u)));
                for (std::size_t r = 0; r < c.size(); ++r) m.set(r, u, c[r]);
            }
            a1[s].push_back(std::move(m));
        }
    }
    for (std::size_t s = 0; s + 2 < n; ++s) {
        int d = lo + static_cast<int>(s);
        for (std::size_t t = 0; t < R.dim2(); ++t) {
            FMatrix m(F, dims[s + 2], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec c = pieces[s + 2].coords(F0.apply2(t, d, pieces[s].rows().row(u)));
                for (std::size_t r = 0; r < c.size(); ++r) m.set(r, u, c[r]);
            }
            a2[s].push_back(std::move(m));
        }
    }
    GradedModule sub(F0.ring_ptr(), lo, dims, std::move(a1), std::move(a2));
    std::vector<FMatrix> inc;
    for (std::size_t s = 0; s < sub.num_slices(); ++s) {
        int d = sub.base_degree() + static_cast<int>(s);
        std::size_t sp = static_cast<std::size_t>(d - lo);
        FMatrix m(F, F0.dim(d), sub.dims()[s]);
        for (std::size_t u = 0; u < sub.dims()[s]; ++u)
            for (std::size_t r = 0; r < F0.dim(d); ++r) m.set(r, u, pieces[sp].rows().at(u, r));
        inc.push_back(std::move(m));
    }
    return {std::move(sub), std::move(inc)};
}

} // namespace

SyzygyResult syzygy(const GradedModule& M) {
    MinimalGenerators mg = minimal_generators(M);
    std::vector<int> shifts;
    for (const auto& [d, v] : mg.gens) shifts.push_back(d);
    FreeModule F0(M.ring_ptr(), shifts);
    CoverKernel K = cover_kernel(M, F0, mg.gens);

    auto [sub, inc_blocks] = materialize_free_sub(F0, K.lo, K.pieces);
    GradedModule cover_src = F0.to_graded_module();

    ModuleMap cover{cover_src, M, 0, {}};
    for (std::size_t s = 0; s < cover_src.num_slices(); ++s)
        cover.blocks.push_back(K.cover_blocks[static_cast<std::size_t>(
            cover_src.base_degree() + static_cast<int>(s) - K.lo)]);

    ModuleMap inclusion{sub, cover_src, 0, std::move(inc_blocks)};
    return SyzygyResult{std::move(sub), std::move(cover), std::move(inclusion)};
}

std::size_t BettiTable::at(int i, int j) const {
    auto it = beta.find({i, j});
    return it == beta.end() ? 0 : it->second;
}

std::size_t BettiTable::total(int i) const {
    std::size_t n = 0;
    for (const auto& [k, v] : beta)
        if (k.first == i) n += v;
    return n;
}

bool BettiTable::diagonal_only(int through) const {
    for (const auto& [k, v] : beta)
        if (k.first <= through && v != 0 && k.second != k.first) return false;
    return true;
}

Resolution minimal_resolution(const GradedModule& M, std::size_t N, bool keep_maps) {
    const GradedAlgebra& R = M.ring();
    const PrimeField& F = R.field();
    Resolution res;

    MinimalGenerators mg = minimal_generators(M);
    std::vector<int> shifts0;
    for (const auto& [d, v] : mg.gens) shifts0.push_back(d);
    res.shifts.push_back(shifts0);
    res.aug = mg.gens;
    for (int d : shifts0) ++res.betti.beta[{0, d}];
    if (mg.count == 0) {
        res.terminated = true;
        return res;
    }
    if (N == 0) return res;

    FreeModule Fprev(M.ring_ptr(), shifts0);
    CoverKernel ck = cover_kernel(M, Fprev, mg.gens);
    int Klo = ck.lo;
    std::vector<PivotedBasis> K = std::move(ck.pieces);

    for (std::size_t i = 1; i <= N; ++i) {
        std::vector<int> gdeg;
        std::vector<FVec> gimg;
        for (std::size_t s = 0; s < K.size(); ++s) {
            std::size_t kd = K[s].dim();
            if (kd == 0) continue;
            int d = Klo + static_cast<int>(s);
            bool has_seeds = s > 0 && K[s - 1].dim() > 0;
            if (!has_seeds) {
                // mK_d = 0: every kernel basis row is a generator
                for (std::size_t u = 0; u < kd; ++u) {
                    gdeg.push_back(d);
                    gimg.push_back(K[s].rows().row(u));
                }
                continue;
            }
            RowBasis B(F, Fprev.dim(d));
            for (std::size_t u = 0; u < K[s - 1].dim() && B.rank() < kd; ++u) {
                FVec v = K[s - 1].rows().row(u);
                for (std::size_t j = 0; j < R.dim1() && B.rank() < kd; ++j)
                    B.add(Fprev.apply1(j, d - 1, v));
            }
            for (std::size_t u = 0; u < kd && B.rank() < kd; ++u) {
                FVec row = K[s].rows().row(u);
                if (B.add(row)) {
                    gdeg.push_back(d);
                    gimg.push_back(std::move(row));
                }
            }
        }
        if (gdeg.empty()) {
            res.terminated = true;
            break;
        }
        res.shifts.push_back(gdeg);
        for (int d : gdeg) ++res.betti.beta[{static_cast<int>(i), d}];

        FreeModule Fi(M.ring_ptr(), gdeg);
        if (keep_maps) {
            ElementMatrix D(Fprev.rank(), Fi.rank());
            for (std::size_t j = 0; j < Fi.rank(); ++j)
                for (std::size_t g = 0; g < Fprev.rank(); ++g)
                    D.at(g, j) = Fprev.block(g, gdeg[j], gimg[j]);
            res.diffs.push_back(std::move(D));
        }
        if (i == N) break;

        int lo2 = Fi.min_degree();
        std::vector<PivotedBasis> K2;
        for (int d = lo2; d <= Fi.max_degree(); ++d) {
            FMatrix A(F, Fprev.dim(d), Fi.dim(d));
            std::size_t col = 0;
            for (std::size_t j = 0; j < Fi.rank(); ++j) {
                int p = d - gdeg[j];
                if (p < 0 || p > 2) continue;
                if (p == 0) {
                    for (std::size_t r = 0; r < gimg[j].size(); ++r) A.set(r, col, gimg[j][r]);
                    ++col;
                } else if (p == 1) {
                    for (std::size_t w = 0; w < R.dim1(); ++w) {
                        FVec img = Fprev.apply1(w, gdeg[j], gimg[j]);
                        for (std::size_t r = 0; r < img.size(); ++r) A.set(r, col, img[r]);
                        ++col;
                    }
                } else {
                    for (std::size_t t = 0; t < R.dim2(); ++t) {
                        FVec img = Fprev.apply2(t, gdeg[j], gimg[j]);
                        for (std::size_t r = 0; r < img.size(); ++r) A.set(r, col, img[r]);
                        ++col;
                    }
                }
            }
            K2.push_back(kernel_pivoted(A));
        }
        K = std::move(K2);
        Klo = lo2;
        Fprev = std::move(Fi);
    }
    return res;
}

ElementMatrix transpose(const ElementMatrix& m) {
    ElementMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

FMatrix element_matrix_block(const GradedAlgebra& R, const std::vector<int>& tgt,
                             const std::vector<int>& src, const ElementMatrix& D, int degree) {
    if (D.rows != tgt.size() || D.cols != src.size())
        throw InputError("element_matrix_block: shape mismatch");
    auto dim_of = [&](const std::vector<int>& sh) {
        std::size_t n = 0;
        for (int s : sh) n += R.piece_dim(degree - s);
        return n;
    };
    FMatrix out(R.field(), dim_of(tgt), dim_of(src));
    std::size_t col = 0;
    for (std::size_t j = 0; j < src.size(); ++j) {
        int p = degree - src[j];
        if (p < 0 || p > 2) continue;
        for (const Element& w : R.piece_basis(p)) {
            std::size_t rowoff = 0;
            for (std::size_t g = 0; g < tgt.size(); ++g) {
                const Element& e = D.at(g, j);
                if (!e.is_zero()) {
                    if (e.degree != src[j] - tgt[g])
                        throw InputError("element_matrix_block: entry degree mismatch");
                    Element prod = R.mul(w, e);
                    if (!prod.is_zero())
                        for (std::size_t r = 0; r < prod.coords.size(); ++r)
                            out.set(rowoff + r, col, prod.coords[r]);
                }
                rowoff += R.piece_dim(degree - tgt[g]);
            }
            ++col;
        }
    }
    return out;
}

std::vector<std::size_t> hilbert(const GradedModule& M) { return M.dims(); }

std::size_t length(const GradedModule& M) { return M.total_dim(); }

bool is_free(const GradedModule& M) {
    MinimalGenerators mg = minimal_generators(M);
    if (mg.count == 0) return true;
    std::vector<int> shifts;
    for (const auto& [d, v] : mg.gens) shifts.push_back(d);
    FreeModule F0(M.ring_ptr(), shifts);
    CoverKernel K = cover_kernel(M, F0, mg.gens);
    for (const PivotedBasis& p : K.pieces)
        if (p.dim() != 0) return false;
    return true;
}

SubmodulePieces submodule_closure(const GradedModule& M,
                                  const std::vector<std::pair<int, FVec>>& seeds) {
    const PrimeField& F = M.ring().field();
    std::size_t n = M.num_slices();
    std::vector<RowBasis> bases;
    bases.reserve(n);
    for (std::size_t s = 0; s < n; ++s) bases.emplace_back(F, M.dims()[s]);

    std::vector<std::pair<int, FVec>> work;
    for (const auto& [d, v] : seeds) {
        if (v.size() != M.dim(d)) throw DimensionError("submodule_closure: seed slice mismatch");
        if (fvec_is_zero(v)) continue;
        int s = d - M.base_degree();
        if (s < 0 || s >= static_cast<int>(n)) throw DimensionError("submodule_closure: seed degree");
        if (bases[static_cast<std::size_t>(s)].add(v)) work.emplace_back(d, v);
    }
    while (!work.empty()) {
        auto [d, v] = std::move(work.back());
        work.pop_back();
        int s = d - M.base_degree();
        if (s + 1 >= static_cast<int>(n)) continue;
        for (std::size_t j = 0; j < M.ring().dim1(); ++j) {
            FVec w = M.apply1(j, d, v);
            if (bases[static_cast<std::size_t>(s + 1)].add(w)) work.emplace_back(d + 1, w);
        }
    }
    SubmodulePieces out;
    out.min_degree = M.base_degree();
    for (std::size_t s = 0; s < n; ++s) out.pieces.push_back(bases[s].to_subspace());
    return out;
}

SubmoduleResult materialize_submodule(const GradedModule& M, const SubmodulePieces& pieces) {
    const GradedAlgebra& R = M.ring();
    const PrimeField& F = R.field();
    if (pieces.min_degree != M.base_degree() || pieces.pieces.size() != M.num_slices())
        throw InputError("materialize_submodule: pieces do not match the module slices");
    std::size_t n = pieces.pieces.size();
    std::vector<std::size_t> dims(n);
    for (std::size_t s = 0; s < n; ++s) dims[s] = pieces.pieces[s].dim();
    std::vector<std::vector<FMatrix>> a1(n >= 2 ? n - 1 : 0), a2(n >= 3 ? n - 2 : 0);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        int d = pieces.min_degree + static_cast<int>(s);
        for (std::size_t j = 0; j < R.dim1(); ++j) {
            FMatrix m(F, dims[s + 1], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec c = pieces.pieces[s + 1].coords_of(
                    M.apply1(j, d, pieces.pieces[s].basis().row(u)));
                for (std::size_t r = 0; r < c.size(); ++r) m.set(r, u, c[r]);
            }
            a1[s].push_back(std::move(m));
        }
    }
    for (std::size_t s = 0; s + 2 < n; ++s) {
        int d = pieces.min_degree + static_cast<int>(s);
        for (std::size_t t = 0; t < R.dim2(); ++t) {
            FMatrix m(F, dims[s + 2], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec c = pieces.pieces[s + 2].coords_of(
                    M.apply2(t, d, pieces.pieces[s].basis().row(u)));
                for (std::size_t r = 0; r < c.size(); ++r) m.set(r, u, c[r]);
            }
            a2[s].push_back(std::move(m));
        }
    }
    GradedModule sub(M.ring_ptr(), pieces.min_degree, dims, std::move(a1), std::move(a2));
    ModuleMap inc{sub, M, 0, {}};
    for (std::size_t s = 0; s < sub.num_slices(); ++s) {
        int d = sub.base_degree() + static_cast<int>(s);
        std::size_t sp = static_cast<std::size_t>(d - pieces.min_degree);
        FMatrix m(F, M.dim(d), sub.dims()[s]);
        for (std::size_t u = 0; u < sub.dims()[s]; ++u)
            for (std::size_t r = 0; r < M.dim(d); ++r)
                m.set(r, u, pieces.pieces[sp].basis().at(u, r));
        inc.blocks.push_back(std::move(m));
    }
    return SubmoduleResult{std::move(sub), std::move(inc)};
}

QuotientResult materialize_quotient(const GradedModule& M, const SubmodulePieces& pieces) {
    const GradedAlgebra& R = M.ring();
    const PrimeField& F = R.field();
    if (pieces.min_degree != M.base_degree() || pieces.pieces.size() != M.num_slices())
        throw InputError("materialize_quotient: pieces do not match the module slices");
    std::size_t n = pieces.pieces.size();
    std::vector<std::vector<std::size_t>> fc(n);
    std::vector<std::size_t> dims(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t piv = 0;
        for (std::size_t u = 0; u < M.dims()[s]; ++u) {
            if (piv < pieces.pieces[s].dim() && pieces.pieces[s].pivots()[piv] == u) {
                ++piv;
                continue;
            }
            fc[s].push_back(u);
        }
        dims[s] = fc[s].size();
    }
    std::vector<std::vector<FMatrix>> a1(n >= 2 ? n - 1 : 0), a2(n >= 3 ? n - 2 : 0);
    for (std::size_t s = 0; s + 1 < n; ++s) {
        int d = pieces.min_degree + static_cast<int>(s);
        for (std::size_t j = 0; j < R.dim1(); ++j) {
            FMatrix m(F, dims[s + 1], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec unit(M.dims()[s], 0);
                unit[fc[s][u]] = 1;
                FVec img = reduce_and_gather(F, pieces.pieces[s + 1], fc[s + 1],
                                             M.apply1(j, d, unit));
                for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
            }
            a1[s].push_back(std::move(m));
        }
    }
    for (std::size_t s = 0; s + 2 < n; ++s) {
        int d = pieces.min_degree + static_cast<int>(s);
        for (std::size_t t = 0; t < R.dim2(); ++t) {
            FMatrix m(F, dims[s + 2], dims[s]);
            for (std::size_t u = 0; u < dims[s]; ++u) {
                FVec unit(M.dims()[s], 0);
                unit[fc[s][u]] = 1;
                FVec img = reduce_and_gather(F, pieces.pieces[s + 2], fc[s + 2],
                                             M.apply2(t, d, unit));
                for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
            }
            a2[s].push_back(std::move(m));
        }
    }
    GradedModule q(M.ring_ptr(), pieces.min_degree, dims, std::move(a1), std::move(a2));
    ModuleMap proj{M, q, 0, {}};
    for (std::size_t s = 0; s < M.num_slices(); ++s) {
        int d = M.base_degree() + static_cast<int>(s);
        FMatrix m(F, q.dim(d), M.dims()[s]);
        for (std::size_t u = 0; u < M.dims()[s]; ++u) {
            FVec unit(M.dims()[s], 0);
            unit[u] = 1;
            FVec img = reduce_and_gather(F, pieces.pieces[s], fc[s], std::move(unit));
            for (std::size_t r = 0; r < img.size(); ++r) m.set(r, u, img[r]);
        }
        proj.blocks.push_back(std::move(m));
    }
    return QuotientResult{std::move(q), std::move(proj)};
}

} // namespace gdimlab
