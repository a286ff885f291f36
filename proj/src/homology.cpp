#include "gdimlab/homology.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace gdimlab {

namespace {

void require_same_ring(const GradedModule& M, const GradedModule& N, const char* who) {
    if (&M.ring() == &N.ring()) return;
    if (!(M.ring() == N.ring()))
        throw InputError(std::string(who) + ": modules live over different algebras");
}

/// Flat coordinates for the homogeneous maps M -> N of one internal degree:
/// block f_s maps M_{base+s} into N_{base+s+shift}, stored row-major, entry
/// (a, b) at off[s] + a·dim M_{base+s} + b.  off[s] = -1 when the block is
/// empty on either side.
struct ShiftLayout {
    int shift = 0;
    std::vector<std::ptrdiff_t> off;
    std::size_t dim = 0;
};

std::vector<ShiftLayout> hom_layouts(const GradedModule& M, const GradedModule& N) {
    std::vector<ShiftLayout> out;
    if (M.is_zero_module() || N.is_zero_module()) return out;
    int lo = N.min_degree() - M.max_degree();
    int hi = N.max_degree() - M.min_degree();
    for (int sh = lo; sh <= hi; ++sh) {
        ShiftLayout L;
        L.shift = sh;
        L.off.assign(M.num_slices(), -1);
        for (std::size_t s = 0; s < M.num_slices(); ++s) {
            int d = M.base_degree() + static_cast<int>(s);
            std::size_t sz = M.dim(d) * N.dim(d + sh);
            if (!sz) continue;
            L.off[s] = static_cast<std::ptrdiff_t>(L.dim);
            L.dim += sz;
        }
        if (L.dim) out.push_back(std::move(L));
    }
    return out;
}

struct HomData {
    std::vector<ShiftLayout> layouts;
    std::vector<PivotedBasis> bases;        // parallel to layouts
    std::map<int, std::size_t> shift_index; // shift -> layout position
};

/// Solves the commutation constraints act1(f) = f(act1) for all degree-1
/// generators and all internal degrees at once.  The system is block
/// diagonal across internal degrees, and every equation row touches only one
/// block, so each pivoted kernel row is supported in a single block; the
/// rows are partitioned back into per-degree bases.  Degree-2 commutation
/// follows from the module axioms and adds no equations.
HomData solve_hom(const GradedModule& M, const GradedModule& N) {
    const PrimeField F = M.ring().field();
    const std::uint64_t p = F.p();
    const std::size_t d1 = M.ring().dim1();

    HomData H;
    H.layouts = hom_layouts(M, N);
    std::vector<std::size_t> gbase(H.layouts.size(), 0);
    std::size_t unknowns = 0;
    for (std::size_t li = 0; li < H.layouts.size(); ++li) {
        gbase[li] = unknowns;
        unknowns += H.layouts[li].dim;
    }

    std::size_t n_rows = 0;
    auto for_each_equation = [&](auto&& emit) {
        for (std::size_t li = 0; li < H.layouts.size(); ++li) {
            const ShiftLayout& L = H.layouts[li];
            for (std::size_t s = 0; s < M.num_slices(); ++s) {
                int d = M.base_degree() + static_cast<int>(s);
                std::size_t mc = M.dim(d);
                std::size_t nr = N.dim(d + 1 + L.shift);
                if (!mc || !nr) continue;
                bool has_lhs = L.off[s] >= 0;
                bool has_rhs = s + 1 < M.num_slices() && L.off[s + 1] >= 0;
                if (!has_lhs && !has_rhs) continue;
                for (std::size_t j = 0; j < d1; ++j) emit(li, L, s, d, mc, nr, j, has_lhs, has_rhs);
            }
        }
    };
    for_each_equation([&](std::size_t, const ShiftLayout&, std::size_t, int, std::size_t mc,
                          std::size_t nr, std::size_t, bool, bool) { n_rows += nr * mc; });

    FMatrix C(F, n_rows, unknowns);
    std::size_t cursor = 0;
    for_each_equation([&](std::size_t li, const ShiftLayout& L, std::size_t s, int d,
                          std::size_t mc, std::size_t nr, std::size_t j, bool has_lhs,
                          bool has_rhs) {
        FMatrix a1n = has_lhs ? N.act1_matrix(j, d + L.shift) : FMatrix(F, 0, 0);
        FMatrix a1m = has_rhs ? M.act1_matrix(j, d) : FMatrix(F, 0, 0);
        for (std::size_t r = 0; r < nr; ++r) {
            for (std::size_t c = 0; c < mc; ++c) {
                std::uint32_t* row = C.row_ptr(cursor++);
                if (has_lhs) {
                    std::size_t base = gbase[li] + static_cast<std::size_t>(L.off[s]);
                    for (std::size_t q = 0; q < a1n.cols(); ++q)
                        row[base + q * mc + c] = a1n.at(r, q);
                }
                if (has_rhs) {
                    std::size_t mc1 = M.dim(d + 1);
                    std::size_t base = gbase[li] + static_cast<std::size_t>(L.off[s + 1]);
                    for (std::size_t q = 0; q < mc1; ++q) {
                        std::uint32_t v = a1m.at(q, c);
                        if (v) row[base + r * mc1 + q] = static_cast<std::uint32_t>(p - v);
                    }
                }
            }
        }
    });

    PivotedBasis ker = kernel_pivoted(C);

    std::vector<std::vector<std::size_t>> member_rows(H.layouts.size());
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        std::size_t u = ker.unit_cols()[i];
        std::size_t li = 0;
        while (li + 1 < H.layouts.size() && gbase[li + 1] <= u) ++li;
        const std::uint32_t* row = ker.rows().row_ptr(i);
        for (std::size_t c = 0; c < unknowns; ++c)
            if (row[c] && (c < gbase[li] || c >= gbase[li] + H.layouts[li].dim))
                throw DimensionError("hom solver: kernel row crosses shift blocks");
        member_rows[li].push_back(i);
    }
    for (std::size_t li = 0; li < H.layouts.size(); ++li) {
        const ShiftLayout& L = H.layouts[li];
        FMatrix rows(F, member_rows[li].size(), L.dim);
        std::vector<std::size_t> units;
        units.reserve(member_rows[li].size());
        for (std::size_t i = 0; i < member_rows[li].size(); ++i) {
            const std::uint32_t* src = ker.rows().row_ptr(member_rows[li][i]);
            std::uint32_t* dst = rows.row_ptr(i);
            std::copy(src + gbase[li], src + gbase[li] + L.dim, dst);
            units.push_back(ker.unit_cols()[member_rows[li][i]] - gbase[li]);
        }
        H.bases.push_back(PivotedBasis(std::move(rows), std::move(units)));
        H.shift_index.emplace(L.shift, li);
    }
    return H;
}

ModuleMap unflatten_map(const GradedModule& M, const GradedModule& N, const ShiftLayout& L,
                        const FVec& flat) {
    const PrimeField F = M.ring().field();
    std::vector<FMatrix> blocks;
    blocks.reserve(M.num_slices());
    for (std::size_t s = 0; s < M.num_slices(); ++s) {
        int d = M.base_degree() + static_cast<int>(s);
        std::size_t mc = M.dim(d);
        FMatrix B(F, N.dim(d + L.shift), mc);
        if (L.off[s] >= 0) {
            std::size_t base = static_cast<std::size_t>(L.off[s]);
            for (std::size_t a = 0; a < B.rows(); ++a)
                for (std::size_t b = 0; b < mc; ++b) B.set(a, b, flat[base + a * mc + b]);
        }
        blocks.push_back(std::move(B));
    }
    return ModuleMap{M, N, L.shift, std::move(blocks)};
}

struct DualData {
    GradedModule module; // renormalized: lowest nonzero Hom degree becomes 0
    int raw_offset = 0;  // module degree t corresponds to Hom degree t + raw_offset
    GradedModule rmod;
    HomData hom;
};

/// Applies a ring basis element to a flat Hom(M, R) vector: (w·f)_s =
/// act_w ∘ f_s, landing in the layout `to` (shift raised by deg w).
template <typename ActMatrix>
FVec flat_scale(const GradedModule& M, const ShiftLayout& from, const ShiftLayout& to,
                const FVec& f, ActMatrix&& act) {
    const std::uint64_t p = M.ring().field().p();
    FVec out(to.dim, 0);
    for (std::size_t s = 0; s < M.num_slices(); ++s) {
        if (to.off[s] < 0 || from.off[s] < 0) continue;
        int d = M.base_degree() + static_cast<int>(s);
        std::size_t mc = M.dim(d);
        FMatrix A = act(d + from.shift); // R_{d+from.shift} -> R_{d+to.shift}
        std::size_t obase = static_cast<std::size_t>(to.off[s]);
        std::size_t ibase = static_cast<std::size_t>(from.off[s]);
        for (std::size_t a = 0; a < A.rows(); ++a) {
            for (std::size_t b = 0; b < mc; ++b) {
                std::uint64_t acc = 0;
                for (std::size_t q = 0; q < A.cols(); ++q)
                    acc += static_cast<std::uint64_t>(A.at(a, q)) * f[ibase + q * mc + b];
                out[obase + a * mc + b] = static_cast<std::uint32_t>(acc % p);
            }
        }
    }
    return out;
}

DualData dual_data(const GradedModule& M) {
    AlgebraPtr R = M.ring_ptr();
    const PrimeField F = R->field();
    GradedModule rmod = free_module(R, {0});
    HomData H = solve_hom(M, rmod);

    int lo = 0, hi = -1;
    for (std::size_t li = 0; li < H.layouts.size(); ++li) {
        if (!H.bases[li].dim()) continue;
        if (hi < lo) lo = hi = H.layouts[li].shift;
        else hi = H.layouts[li].shift;
    }
    if (hi < lo)
        return DualData{GradedModule::zero(R), 0, std::move(rmod), std::move(H)};

    auto basis_at = [&](int sh) -> const PivotedBasis* {
        auto it = H.shift_index.find(sh);
        return it == H.shift_index.end() ? nullptr : &H.bases[it->second];
    };
    auto layout_at = [&](int sh) -> const ShiftLayout* {
        auto it = H.shift_index.find(sh);
        return it == H.shift_index.end() ? nullptr : &H.layouts[it->second];
    };

    std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::size_t> dims(n, 0);
    for (std::size_t t = 0; t < n; ++t)
        if (const PivotedBasis* B = basis_at(lo + static_cast<int>(t))) dims[t] = B->dim();

    std::vector<std::vector<FMatrix>> act1(n >= 2 ? n - 1 : 0), act2(n >= 3 ? n - 2 : 0);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        int sh = lo + static_cast<int>(t);
        const ShiftLayout* Lf = layout_at(sh);
        const ShiftLayout* Lt = layout_at(sh + 1);
        const PivotedBasis* Bf = basis_at(sh);
        const PivotedBasis* Bt = basis_at(sh + 1);
        for (std::size_t j = 0; j < R->dim1(); ++j) {
            FMatrix A(F, dims[t + 1], dims[t]);
            if (dims[t] && dims[t + 1]) {
                for (std::size_t u = 0; u < dims[t]; ++u) {
                    FVec img = flat_scale(M, *Lf, *Lt, Bf->rows().row(u),
                                          [&](int d) { return rmod.act1_matrix(j, d); });
                    FVec cv = Bt->coords(img, true);
                    for (std::size_t a = 0; a < dims[t + 1]; ++a) A.set(a, u, cv[a]);
                }
            }
            act1[t].push_back(std::move(A));
        }
    }
    for (std::size_t t = 0; t + 2 < n; ++t) {
        int sh = lo + static_cast<int>(t);
        const ShiftLayout* Lf = layout_at(sh);
        const ShiftLayout* Lt = layout_at(sh + 2);
        const PivotedBasis* Bf = basis_at(sh);
        const PivotedBasis* Bt = basis_at(sh + 2);
        for (std::size_t w = 0; w < R->dim2(); ++w) {
            FMatrix A(F, dims[t + 2], dims[t]);
            if (dims[t] && dims[t + 2]) {
                for (std::size_t u = 0; u < dims[t]; ++u) {
                    FVec img = flat_scale(M, *Lf, *Lt, Bf->rows().row(u),
                                          [&](int d) { return rmod.act2_matrix(w, d); });
                    FVec cv = Bt->coords(img, true);
                    for (std::size_t a = 0; a < dims[t + 2]; ++a) A.set(a, u, cv[a]);
                }
            }
            act2[t].push_back(std::move(A));
        }
    }

    GradedModule mod(R, 0, std::move(dims), std::move(act1), std::move(act2));
    return DualData{std::move(mod), lo, std::move(rmod), std::move(H)};
}

} // namespace

HomSpace hom_space(const GradedModule& M, const GradedModule& N) {
    require_same_ring(M, N, "hom_space");
    HomData H = solve_hom(M, N);
    HomSpace out;
    for (std::size_t li = 0; li < H.layouts.size(); ++li) {
        const PivotedBasis& B = H.bases[li];
        if (!B.dim()) continue;
        out.graded_dims[H.layouts[li].shift] = B.dim();
        for (std::size_t i = 0; i < B.dim(); ++i)
            out.basis.push_back(unflatten_map(M, N, H.layouts[li], B.rows().row(i)));
    }
    return out;
}

GradedModule dual(const GradedModule& M) { return dual_data(M).module; }

BidualReport bidual_check(const GradedModule& M) {
    const PrimeField F = M.ring().field();
    if (M.is_zero_module()) return BidualReport{true, ModuleMap{M, M, 0, {}}};

    DualData D1 = dual_data(M);
    DualData D2 = dual_data(D1.module);
    const GradedModule& DD = D2.module;
    int shift = D1.raw_offset - D2.raw_offset;

    std::vector<FMatrix> blocks;
    blocks.reserve(M.num_slices());
    for (std::size_t s = 0; s < M.num_slices(); ++s) {
        int d = M.base_degree() + static_cast<int>(s);
        int sh2 = d + D1.raw_offset; // Hom(M*, R) degree of ev on this slice
        std::size_t mc = M.dim(d);
        std::size_t rows = DD.dim(d + shift);
        FMatrix B(F, rows, mc);
        if (mc && rows) {
            std::size_t li2 = D2.hom.shift_index.at(sh2);
            const ShiftLayout& L2 = D2.hom.layouts[li2];
            for (std::size_t b = 0; b < mc; ++b) {
                // ev(e_b) evaluates every functional of M* at e_b.
                FVec flat(L2.dim, 0);
                for (std::size_t t = 0; t < D1.module.num_slices(); ++t) {
                    if (L2.off[t] < 0) continue;
                    int td = D1.module.base_degree() + static_cast<int>(t);
                    std::size_t cols_t = D1.module.dim(td);
                    std::size_t rr = D1.rmod.dim(td + sh2);
                    auto it1 = D1.hom.shift_index.find(td + D1.raw_offset);
                    if (it1 == D1.hom.shift_index.end()) continue;
                    const ShiftLayout& L1 = D1.hom.layouts[it1->second];
                    const PivotedBasis& B1 = D1.hom.bases[it1->second];
                    if (L1.off[s] < 0) continue;
                    std::size_t f_base = static_cast<std::size_t>(L1.off[s]);
                    std::size_t o_base = static_cast<std::size_t>(L2.off[t]);
                    for (std::size_t u = 0; u < cols_t; ++u) {
                        const std::uint32_t* phi = B1.rows().row_ptr(u);
                        for (std::size_t rho = 0; rho < rr; ++rho)
                            flat[o_base + rho * cols_t + u] = phi[f_base + rho * mc + b];
                    }
                }
                FVec cv = D2.hom.bases[li2].coords(flat, true);
                for (std::size_t a = 0; a < rows; ++a) B.set(a, b, cv[a]);
            }
        }
        blocks.push_back(std::move(B));
    }

    ModuleMap ev{M, DD, shift, std::move(blocks)};
    ev.validate();

    bool iso = !DD.is_zero_module() || M.is_zero_module();
    int dlo = std::min(M.min_degree(), DD.min_degree() - shift);
    int dhi = std::max(M.max_degree(), DD.max_degree() - shift);
    for (int d = dlo; d <= dhi && iso; ++d)
        if (M.dim(d) != DD.dim(d + shift)) iso = false;
    if (iso)
        for (std::size_t s = 0; s < M.num_slices() && iso; ++s)
            if (rank(ev.blocks[s]) != M.dim(M.base_degree() + static_cast<int>(s))) iso = false;
    return BidualReport{iso, std::move(ev)};
}

std::size_t ExtReport::at(int i, int t) const {
    auto it = dims.find({i, t});
    return it == dims.end() ? 0 : it->second;
}

std::size_t ExtReport::total(int i) const {
    std::size_t s = 0;
    for (const auto& [key, v] : dims)
        if (key.first == i) s += v;
    return s;
}

bool ExtReport::vanishes(int from, int to) const {
    for (int i = from; i <= to; ++i)
        if (total(i)) return false;
    return true;
}

namespace {

/// Matrix of Hom(F_{i-1}, N)_t -> Hom(F_i, N)_t, precomposition with the
/// differential D : F_i -> F_{i-1}.  Coordinates on both sides are tuples of
/// N-piece coordinates, one block per generator.
FMatrix hom_strand_map(const GradedModule& N, const std::vector<int>& tgt,
                       const std::vector<int>& src, const ElementMatrix& D, int t) {
    const PrimeField F = N.ring().field();
    const std::uint64_t p = F.p();
    std::vector<std::size_t> coff(tgt.size() + 1, 0), roff(src.size() + 1, 0);
    for (std::size_t g = 0; g < tgt.size(); ++g) coff[g + 1] = coff[g] + N.dim(tgt[g] + t);
    for (std::size_t j = 0; j < src.size(); ++j) roff[j + 1] = roff[j] + N.dim(src[j] + t);

    FMatrix out(F, roff.back(), coff.back());
    FVec col(roff.back());
    for (std::size_t g = 0; g < tgt.size(); ++g) {
        std::size_t ng = N.dim(tgt[g] + t);
        for (std::size_t beta = 0; beta < ng; ++beta) {
            std::fill(col.begin(), col.end(), 0);
            FVec e(ng, 0);
            e[beta] = 1;
            for (std::size_t j = 0; j < src.size(); ++j) {
                if (roff[j + 1] == roff[j]) continue;
                const Element& w = D.at(g, j);
                if (w.is_zero()) continue;
                FVec img = N.apply_element(w, tgt[g] + t, e);
                for (std::size_t rho = 0; rho < img.size(); ++rho)
                    col[roff[j] + rho] =
                        static_cast<std::uint32_t>((col[roff[j] + rho] + std::uint64_t(img[rho])) % p);
            }
            for (std::size_t r2 = 0; r2 < col.size(); ++r2) out.set(r2, coff[g] + beta, col[r2]);
        }
    }
    return out;
}

} // namespace

ExtReport ext(const GradedModule& M, const GradedModule& N, std::size_t i_max) {
    require_same_ring(M, N, "ext");
    ExtReport rep;
    rep.i_max = i_max;
    if (!i_max || M.is_zero_module() || N.is_zero_module()) return rep;

    Resolution res = minimal_resolution(M, i_max + 1, true);
    const std::vector<int> none;
    auto shifts_at = [&](std::size_t i) -> const std::vector<int>& {
        return i < res.shifts.size() ? res.shifts[i] : none;
    };
    auto hom_dim = [&](std::size_t i, int t) {
        std::size_t s = 0;
        for (int a : shifts_at(i)) s += N.dim(a + t);
        return s;
    };

    std::map<std::pair<std::size_t, int>, std::size_t> rank_memo;
    auto strand_rank = [&](std::size_t i, int t) -> std::size_t {
        if (i >= res.steps() || shifts_at(i).empty()) return 0;
        if (!hom_dim(i - 1, t) || !hom_dim(i, t)) return 0;
        auto it = rank_memo.find({i, t});
        if (it != rank_memo.end()) return it->second;
        std::size_t r =
            rank(hom_strand_map(N, res.shifts[i - 1], res.shifts[i], res.diffs[i - 1], t));
        rank_memo.emplace(std::make_pair(i, t), r);
        return r;
    };

    for (std::size_t i = 1; i <= i_max; ++i) {
        const std::vector<int>& sh = shifts_at(i);
        if (sh.empty()) continue;
        int tlo = N.min_degree() - *std::max_element(sh.begin(), sh.end());
        int thi = N.max_degree() - *std::min_element(sh.begin(), sh.end());
        for (int t = tlo; t <= thi; ++t) {
            std::size_t hd = hom_dim(i, t);
            if (!hd) continue;
            std::size_t kdim = hd - strand_rank(i + 1, t);
            std::size_t rprev = strand_rank(i, t);
            if (kdim < rprev)
                throw DimensionError("ext: strand ranks violate the complex property");
            if (kdim > rprev) rep.dims[{static_cast<int>(i), t}] = kdim - rprev;
        }
    }
    return rep;
}

GradedModule matlis_dual(AlgebraPtr R) {
    const GradedAlgebra& A = *R;
    const PrimeField F = A.field();
    std::size_t d1 = A.dim1(), d2 = A.dim2();

    std::vector<std::vector<FMatrix>> act1(2), act2(1);
    for (std::size_t j = 0; j < d1; ++j) act1[0].push_back(A.basis_mult1(j).transpose());
    for (std::size_t j = 0; j < d1; ++j) {
        FMatrix m(F, 1, d1);
        m.set(0, j, 1);
        act1[1].push_back(std::move(m));
    }
    for (std::size_t w = 0; w < d2; ++w) {
        FMatrix m(F, 1, d2);
        m.set(0, w, 1);
        act2[0].push_back(std::move(m));
    }
    return GradedModule(std::move(R), 0, {d2, d1, 1}, std::move(act1), std::move(act2));
}

std::vector<std::size_t> bass_numbers(AlgebraPtr R, std::size_t N) {
    GradedModule DR = matlis_dual(std::move(R));
    Resolution res = minimal_resolution(DR, N, false);
    std::vector<std::size_t> mu(N + 1, 0);
    for (std::size_t i = 0; i < res.shifts.size() && i <= N; ++i) mu[i] = res.shifts[i].size();
    return mu;
}

KoszulReport koszul_check(AlgebraPtr R, std::size_t N) {
    GradedModule k = GradedModule::residue_field(std::move(R));
    Resolution res = minimal_resolution(k, N, false);
    KoszulReport rep;
    rep.betti = res.betti;
    rep.is_koszul_to_N = rep.betti.diagonal_only(static_cast<int>(N));
    return rep;
}

} // namespace gdimlab
