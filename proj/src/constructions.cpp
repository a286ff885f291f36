#include "gdimlab/constructions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <random>
#include <utility>

#include "gdimlab/errors.hpp"

namespace gdimlab {

namespace {

FVec unit_fvec(std::size_t n, std::size_t i) {
    FVec v(n, 0);
    v[i] = 1;
    return v;
}

FVec product_entry(const DegreeTwoRingData& S, const ElementMatrix& a, const ElementMatrix& b,
                   std::size_t i, std::size_t k) {
    const PrimeField& F = S.field();
    FVec acc(S.dim2(), 0);
    for (std::size_t j = 0; j < a.cols; ++j) {
        const Element& u = a.at(i, j);
        const Element& v = b.at(j, k);
        if (u.is_zero() || v.is_zero()) continue;
        acc = fvec_add(F, acc, S.core().mul11(u.coords, v.coords));
    }
    return acc;
}

ElementMatrix bidiagonal(const Element& x, const Element& z, std::size_t n) {
    ElementMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        m.at(j, j) = x;
        if (j + 1 < n) m.at(j, j + 1) = z;
    }
    return m;
}

// Inclusion of the first sub.rank() coordinates, descended to the cokernels.
ModuleMap prefix_inclusion(const Coker& sub, const Coker& big) {
    const GradedModule& A = sub.module();
    const GradedModule& E = big.module();
    const GradedAlgebra& R = A.ring();
    const std::size_t kE = big.ambient().rank();
    std::vector<FMatrix> blocks;
    for (int d = A.min_degree(); d <= A.max_degree(); ++d) {
        FMatrix blk(R.field(), E.dim(d), A.dim(d));
        const std::size_t piece = R.piece_dim(d);
        for (std::size_t b = 0; b < A.dim(d); ++b) {
            FVec va = sub.lift(d, unit_fvec(A.dim(d), b));
            FVec ve(kE * piece, 0);
            std::copy(va.begin(), va.end(), ve.begin());
            FVec col = big.project(d, ve);
            for (std::size_t i = 0; i < col.size(); ++i) blk.set(i, b, col[i]);
        }
        blocks.push_back(std::move(blk));
    }
    return ModuleMap{A, E, 0, std::move(blocks)};
}

// Projection onto the last ambient coordinate, descended to the cokernels.
ModuleMap last_block_projection(const Coker& big, const Coker& quot) {
    const GradedModule& E = big.module();
    const GradedModule& B = quot.module();
    const GradedAlgebra& R = E.ring();
    std::vector<FMatrix> blocks;
    for (int d = E.min_degree(); d <= E.max_degree(); ++d) {
        FMatrix blk(R.field(), B.dim(d), E.dim(d));
        const std::size_t piece = R.piece_dim(d);
        for (std::size_t b = 0; b < E.dim(d); ++b) {
            FVec ve = big.lift(d, unit_fvec(E.dim(d), b));
            FVec last(ve.end() - static_cast<std::ptrdiff_t>(piece), ve.end());
            FVec col = quot.project(d, last);
            for (std::size_t i = 0; i < col.size(); ++i) blk.set(i, b, col[i]);
        }
        blocks.push_back(std::move(blk));
    }
    return ModuleMap{E, B, 0, std::move(blocks)};
}

FVec flatten_blocks(const ModuleMap& m) {
    FVec out;
    for (const FMatrix& b : m.blocks)
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(b.at(i, j));
    return out;
}

} // namespace

MatrixFactorizationData exterior_phi_psi(const DegreeTwoRingData& S,
                                         const std::vector<std::pair<Element, Element>>& pairs) {
    const std::size_t n = pairs.size();
    if (n == 0) throw InputError("exterior_phi_psi: at least one pair required");
    if (n > 12) throw InputError("exterior_phi_psi: exterior basis too large");
    const PrimeField& F = S.field();
    for (const auto& [x, y] : pairs)
        if (x.degree != 1 || y.degree != 1 || x.coords.size() != S.dim1() ||
            y.coords.size() != S.dim1())
            throw InputError("exterior_phi_psi: pairs must be degree-1 elements of the ring");

    const std::size_t dim = std::size_t{1} << n;
    ElementMatrix phi(dim, dim), psi(dim, dim);
    for (std::size_t mask = 0; mask < dim; ++mask) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t bit = std::size_t{1} << i;
            if (mask & bit) {
                // contraction: drop the pos-th factor, sign (-1)^{pos-1}
                ++pos;
                FVec c = pairs[i].first.coords;
                if (pos % 2 == 0) c = fvec_scale(F, F.neg(1), c);
                phi.at(mask ^ bit, mask) = Element{1, std::move(c)};
            } else {
                // wedge: e_i hops over every smaller factor already present
                FVec c = pairs[i].second.coords;
                if (std::popcount(mask & (bit - 1)) % 2 == 1) c = fvec_scale(F, F.neg(1), c);
                psi.at(mask | bit, mask) = Element{1, std::move(c)};
            }
        }
    }

    FVec fc(S.dim2(), 0);
    for (const auto& [x, y] : pairs) fc = fvec_add(F, fc, S.core().mul11(x.coords, y.coords));
    Element f{2, fc};

    const FVec zero2(S.dim2(), 0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            if (!fvec_is_zero(product_entry(S, phi, phi, i, k)))
                throw ConstructionError("exterior_phi_psi: phi^2 != 0");
            if (!fvec_is_zero(product_entry(S, psi, psi, i, k)))
                throw ConstructionError("exterior_phi_psi: psi^2 != 0");
            FVec anti =
                fvec_add(F, product_entry(S, phi, psi, i, k), product_entry(S, psi, phi, i, k));
            if (anti != (i == k ? fc : zero2))
                throw ConstructionError("exterior_phi_psi: phi·psi + psi·phi != f·1");
        }

    return {n, pairs, std::move(f), std::move(phi), std::move(psi)};
}

PeriodicModuleResult matrix_factorization_module(
    const DegreeTwoRingData& S, const std::vector<std::pair<Element, Element>>& pairs) {
    MatrixFactorizationData data = exterior_phi_psi(S, pairs);
    if (data.f.is_zero())
        throw InputError("matrix_factorization_module: the quadric sum of the pairs is zero");
    auto R = std::make_shared<const GradedAlgebra>(quotient_by_quadric(S, data.f));

    const std::size_t dim = data.phi.rows;
    ElementMatrix d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const Element& a = data.phi.at(i, j);
            const Element& b = data.psi.at(i, j);
            if (!a.is_zero() && !b.is_zero())
                d.at(i, j) = Element{1, fvec_add(R->field(), a.coords, b.coords)};
            else
                d.at(i, j) = a.is_zero() ? b : a;
        }

    PeriodicResult pr = verify_periodic_cr(R, d, "exterior matrix factorization");
    if (pr.module.base_degree() != 0 ||
        pr.module.dims() != std::vector<std::size_t>{dim, dim * R->dim2()})
        throw ConstructionError("matrix_factorization_module: Hilbert function is not 2^n(1 + rt)");
    return {std::move(R), std::move(pr.module), std::move(pr.cert)};
}

PeriodicModuleResult sample_matrix_factorization(const DegreeTwoRingData& S, std::size_t n_terms,
                                                 std::uint64_t seed, std::size_t budget) {
    if (n_terms == 0) throw InputError("sample_matrix_factorization: n_terms must be positive");
    std::mt19937_64 rng(seed);
    const PrimeField& F = S.field();
    for (std::size_t tries = 0; tries < budget; ++tries) {
        std::vector<std::pair<Element, Element>> pairs;
        FVec fc(S.dim2(), 0);
        for (std::size_t i = 0; i < n_terms; ++i) {
            FVec a(S.dim1()), b(S.dim1());
            for (auto& v : a) v = static_cast<std::uint32_t>(rng() % F.p());
            for (auto& v : b) v = static_cast<std::uint32_t>(rng() % F.p());
            fc = fvec_add(F, fc, S.core().mul11(a, b));
            pairs.emplace_back(Element{1, std::move(a)}, Element{1, std::move(b)});
        }
        if (fvec_is_zero(fc)) continue;
        try {
            return matrix_factorization_module(S, pairs);
        } catch (const CertificateRejected&) {
            continue; // this quadric's complex is not exact; resample
        }
    }
    throw SearchExhausted("sample_matrix_factorization: no certifying pairs within budget");
}

FamilyResult family_module(AlgebraPtr R, const FamilySpec& spec) {
    if (!R) throw InputError("family_module: null ring");
    const PrimeField& F = R->field();
    const std::size_t n1 = R->dim1();
    if (spec.x.degree != 1 || spec.x.coords.size() != n1 || spec.z.degree != 1 ||
        spec.z.coords.size() != n1)
        throw InputError("family_module: x and z must be degree-1 elements");
    if (spec.n == 0) throw InputError("family_module: n must be positive");
    if (!is_minimal_reduction(R->core(), spec.x))
        throw InputError("family_module: x must be a minimal reduction");
    FMatrix xz(F, 2, n1);
    xz.set_row(0, spec.x.coords);
    xz.set_row(1, spec.z.coords);
    if (rank(xz) != 2) throw InputError("family_module: x and z must be linearly independent");

    ElementMatrix dx = bidiagonal(spec.x, spec.z, 1);
    GdimCertificate quot_cert = [&] {
        if (R->mul(spec.x, spec.x).is_zero())
            return verify_periodic_cr(R, dx, "multiplication by x, period one").cert;
        Subspace ker = kernel_basis(R->core().mult_matrix(spec.x.coords));
        ElementMatrix dy(1, 1);
        dy.at(0, 0) = Element{1, ker.basis().row(0)};
        return verify_periodic_cr(R, dx, dy, "pair (x, ker x), period two").cert;
    }();

    Presentation p1{R, {0}, dx};
    Coker quot_ck = coker(p1);
    Coker prev_ck = quot_ck;

    std::vector<GdimCertificate> parts{quot_cert};
    std::vector<ModuleMap> inclusions;
    GdimCertificate chain = quot_cert;

    for (std::size_t i = 2; i <= spec.n; ++i) {
        Presentation pi{R, std::vector<int>(i, 0), bidiagonal(spec.x, spec.z, i)};
        Coker cur = coker(pi);
        ModuleMap incl = prefix_inclusion(prev_ck, cur);
        ModuleMap proj = last_block_projection(cur, quot_ck);
        chain = verify_extension(chain, quot_cert, cur.module(), incl, proj);
        parts.push_back(chain);
        inclusions.push_back(std::move(incl));
        prev_ck = std::move(cur);
    }

    GdimCertificate cert;
    cert.kind = GdimCertificate::Kind::Filtration;
    cert.note = "bidiagonal family, " + std::to_string(spec.n) + " filtration steps";
    cert.ring = R;
    cert.parts = std::move(parts);
    cert.seq = std::move(inclusions);
    cert.passed = true;
    cert.exact = true;
    return {prev_ck.module(), std::move(cert)};
}

Subspace fitting_degree1(const GradedModule& M) {
    const PrimeField& F = M.ring().field();
    const std::size_t n1 = M.ring().dim1();
    if (M.is_zero_module()) return Subspace::zero(F, n1);
    Resolution res = minimal_resolution(M, 1, true);
    if (res.diffs.empty()) return Subspace::zero(F, n1);
    std::vector<FVec> rows;
    for (const Element& e : res.diffs[0].entries)
        if (!e.is_zero() && e.degree == 1) rows.push_back(e.coords);
    if (rows.empty()) return Subspace::zero(F, n1);
    FMatrix mat(F, rows.size(), n1);
    for (std::size_t i = 0; i < rows.size(); ++i) mat.set_row(i, rows[i]);
    return Subspace::span_rows(mat);
}

EndoAlgebra endomorphism_algebra(const GradedModule& M) {
    HomSpace hs = hom_space(M, M);
    const PrimeField F = M.ring().field();
    const std::size_t k = hs.total_dim();

    std::vector<int> degrees;
    degrees.reserve(k);
    for (const ModuleMap& b : hs.basis) degrees.push_back(b.degree_shift);

    // one flat coordinate block per internal degree present in the basis
    std::map<int, std::size_t> offset;
    std::size_t total = 0;
    for (const auto& [sh, cnt] : hs.graded_dims) {
        offset[sh] = total;
        std::size_t len = 0;
        for (std::size_t s = 0; s < M.num_slices(); ++s) {
            int d = M.base_degree() + static_cast<int>(s);
            len += M.dim(d + sh) * M.dim(d);
        }
        total += len;
    }

    auto embed = [&](const ModuleMap& m) -> std::optional<FVec> {
        auto it = offset.find(m.degree_shift);
        if (it == offset.end()) {
            if (m.is_zero_map()) return FVec(total, 0);
            return std::nullopt;
        }
        FVec flat = flatten_blocks(m);
        FVec out(total, 0);
        std::copy(flat.begin(), flat.end(), out.begin() + static_cast<std::ptrdiff_t>(it->second));
        return out;
    };

    FMatrix B(F, k, total);
    for (std::size_t i = 0; i < k; ++i) B.set_row(i, *embed(hs.basis[i]));
    FMatrix Bt = B.transpose();

    auto coords_of = [&](const ModuleMap& m) {
        std::optional<FVec> flat = embed(m);
        std::optional<FVec> sol = flat ? solve(Bt, *flat) : std::nullopt;
        if (!sol) throw DimensionError("endomorphism_algebra: product escapes the Hom basis");
        return *sol;
    };

    std::vector<FVec> mult;
    mult.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            mult.push_back(coords_of(compose(hs.basis[i], hs.basis[j])));

    FVec idc;
    if (k > 0) {
        std::vector<FMatrix> idb;
        for (std::size_t s = 0; s < M.num_slices(); ++s)
            idb.push_back(FMatrix::identity(F, M.dim(M.base_degree() + static_cast<int>(s))));
        idc = coords_of(ModuleMap{M, M, 0, std::move(idb)});
    }

    return EndoAlgebra{F, k, std::move(hs.basis), std::move(degrees), std::move(mult),
                       std::move(idc)};
}

bool is_local(const EndoAlgebra& L) {
    if (L.dim == 0) return false;
    if (L.field.p() <= L.dim)
        throw FieldTooSmall("is_local: the trace-form radical needs p > dim of the algebra");

    std::vector<std::size_t> idx0;
    for (std::size_t i = 0; i < L.dim; ++i)
        if (L.degrees[i] == 0) idx0.push_back(i);
    const std::size_t n0 = idx0.size();
    if (n0 == 0) return false;

    // regular representation of the degree-0 subalgebra
    std::vector<FMatrix> lm;
    lm.reserve(n0);
    for (std::size_t a = 0; a < n0; ++a) {
        FMatrix La(L.field, n0, n0);
        for (std::size_t c = 0; c < n0; ++c) {
            const FVec& prod = L.product(idx0[a], idx0[c]);
            for (std::size_t r = 0; r < n0; ++r) La.set(r, c, prod[idx0[r]]);
        }
        lm.push_back(std::move(La));
    }

    FMatrix T(L.field, n0, n0);
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j) {
            std::uint64_t tr = 0;
            for (std::size_t u = 0; u < n0; ++u)
                for (std::size_t v = 0; v < n0; ++v)
                    tr += static_cast<std::uint64_t>(lm[i].at(u, v)) * lm[j].at(v, u) % L.field.p();
            T.set(i, j, static_cast<std::uint32_t>(tr % L.field.p()));
        }

    // dim of the semisimple quotient: positive degrees and the trace radical
    // are the whole radical when p exceeds the algebra dimension
    return rank(T) == 1;
}

SweepReport pairwise_noniso_sweep(AlgebraPtr R, const std::vector<Element>& xs,
                                  const std::vector<std::size_t>& ns) {
    if (!R) throw InputError("pairwise_noniso_sweep: null ring");
    const PrimeField& F = R->field();
    const std::size_t n1 = R->dim1();
    for (const Element& x : xs)
        if (x.degree != 1 || x.coords.size() != n1 || fvec_is_zero(x.coords))
            throw InputError("pairwise_noniso_sweep: x inputs must be nonzero degree-1 elements");
    for (std::size_t n : ns)
        if (n == 0) throw InputError("pairwise_noniso_sweep: n inputs must be positive");

    auto parallel = [&](const FVec& a, const FVec& b) {
        FMatrix two(F, 2, n1);
        two.set_row(0, a);
        two.set_row(1, b);
        return rank(two) < 2;
    };

    // shared direction: a fixed vector independent from every x
    std::optional<Element> zpick;
    for (std::size_t j = 0; j < n1 && !zpick; ++j) {
        FVec cand = unit_fvec(n1, j);
        if (std::none_of(xs.begin(), xs.end(),
                         [&](const Element& x) { return parallel(cand, x.coords); }))
            zpick = Element{1, cand};
    }
    for (std::uint32_t c = 1; c < F.p() && !zpick && n1 >= 2; ++c) {
        FVec cand = unit_fvec(n1, 0);
        cand[1] = c;
        if (std::none_of(xs.begin(), xs.end(),
                         [&](const Element& x) { return parallel(cand, x.coords); }))
            zpick = Element{1, cand};
    }
    if (!zpick) throw SearchExhausted("pairwise_noniso_sweep: no direction independent from all x");
    const Element z = *zpick;

    auto normalize = [&](const FVec& v) {
        for (std::uint32_t c : v)
            if (c != 0) return fvec_scale(F, F.inv(c), v);
        return v;
    };

    SweepReport rep{z, {}, {}, true};
    for (const Element& x : xs)
        for (std::size_t n : ns) {
            Presentation p{R, std::vector<int>(n, 0), bidiagonal(x, z, n)};
            GradedModule M = coker(p).module();
            rep.entries.push_back(SweepEntry{normalize(x.coords), n, minimal_generators(M).count,
                                             fitting_degree1(M)});
        }

    for (std::size_t a = 0; a < rep.entries.size(); ++a)
        for (std::size_t b = a + 1; b < rep.entries.size(); ++b) {
            const SweepEntry& A = rep.entries[a];
            const SweepEntry& Bb = rep.entries[b];
            std::string verdict;
            if (A.x == Bb.x && A.n == Bb.n) {
                verdict = "duplicate-spec";
            } else if (A.min_gens != Bb.min_gens) {
                verdict = "generator-count";
            } else if (!subspace_equal(A.fitting, Bb.fitting)) {
                verdict = "fitting-subspace";
            } else {
                verdict = "none";
                rep.all_distinguished = false;
            }
            rep.pairs.push_back(SweepPairVerdict{a, b, std::move(verdict)});
        }
    return rep;
}

VerifiedQuotient sample_verified_quotient(const DegreeTwoRingData& S, std::uint64_t seed,
                                          std::size_t budget) {
    const PrimeField& F = S.core().field();
    std::size_t r = S.dim1() - 1;
    std::mt19937_64 rng(seed);
    for (std::size_t t = 1; t <= budget; ++t) {
        FVec f(S.dim2());
        for (auto& c : f) c = static_cast<std::uint32_t>(rng() % F.p());
        if (fvec_is_zero(f)) continue;
        GradedAlgebra R = quotient_by_quadric(S, Element{2, f});
        HilbertCoeffs h = hilbert_coeffs(R);
        if (h.h0 != 1 || h.h1 != r + 1 || h.h2 != r) continue;
        if (socle(R).dim() != R.dim2()) continue;
        return VerifiedQuotient{std::make_shared<const GradedAlgebra>(std::move(R)), f, t};
    }
    throw SearchExhausted("sample_verified_quotient: no quadric kept the shape within budget");
}

FamilyInputs sample_family_inputs(const AlgebraPtr& R, std::size_t count, std::uint64_t seed,
                                  std::size_t budget) {
    if (!R) throw InputError("sample_family_inputs: null ring");
    if (count == 0) throw InputError("sample_family_inputs: count must be positive");
    const PrimeField& F = R->field();
    const std::size_t n1 = R->dim1();
    std::mt19937_64 rng(seed);

    Element z{1, unit_fvec(n1, 0)};
    std::vector<Element> xs;
    std::vector<Subspace> planes;

    for (std::size_t t = 0; t < budget && xs.size() < count; ++t) {
        FVec xc(n1);
        for (auto& v : xc) v = static_cast<std::uint32_t>(rng() % F.p());
        if (fvec_is_zero(xc)) continue;
        Element x{1, xc};
        if (!is_minimal_reduction(R->core(), x)) continue;

        FMatrix xz(F, 2, n1);
        xz.set_row(0, xc);
        xz.set_row(1, z.coords);
        if (rank(xz) != 2) continue;

        Subspace ker = kernel_basis(R->core().mult_matrix(xc));
        if (ker.dim() != 1) continue;
        if (!is_minimal_reduction(R->core(), Element{1, ker.basis().row(0)})) continue;

        Subspace plane = Subspace::span_rows(xz);
        bool clash = false;
        for (const Subspace& seen : planes)
            if (subspace_equal(seen, plane)) {
                clash = true;
                break;
            }
        if (clash) continue;

        xs.push_back(std::move(x));
        planes.push_back(std::move(plane));
    }
    if (xs.size() < count)
        throw SearchExhausted("sample_family_inputs: budget exhausted before finding enough points");
    return {std::move(z), std::move(xs)};
}

} // namespace gdimlab
