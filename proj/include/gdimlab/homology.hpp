#pragma once

#include <map>
#include <vector>

#include "gdimlab/gmodule.hpp"

namespace gdimlab {

/// Graded Hom space Hom_R(M, N).  Every element is a sum of homogeneous maps;
/// the basis lists homogeneous ones, with the internal degree recorded as the
/// ModuleMap degree_shift.
struct HomSpace {
    std::vector<ModuleMap> basis;
    std::map<int, std::size_t> graded_dims; // internal degree -> dim, nonzero only

    std::size_t total_dim() const noexcept { return basis.size(); }
    std::size_t dim_at(int degree) const {
        auto it = graded_dims.find(degree);
        return it == graded_dims.end() ? 0 : it->second;
    }
};

/// All module homomorphisms M -> N, solved as one linear system: unknown
/// block entries for every internal degree at once, constrained to commute
/// with the degree-1 action (degree-2 compatibility follows from the module
/// invariants).  Throws InputError when the algebras differ.
HomSpace hom_space(const GradedModule& M, const GradedModule& N);

/// M* = Hom_R(M, R), graded by Hom internal degree, renormalized so the
/// lowest nonzero piece sits in degree 0.
GradedModule dual(const GradedModule& M);

struct BidualReport {
    bool is_iso = false;
    /// Evaluation M -> M**; degree_shift absorbs the dual renormalizations.
    ModuleMap map;
};

/// Builds the evaluation map into the double dual and tests bijectivity in
/// every degree.
BidualReport bidual_check(const GradedModule& M);

struct ExtReport {
    std::map<std::pair<int, int>, std::size_t> dims; // (i, internal degree) -> dim
    std::size_t i_max = 0;

    std::size_t at(int i, int t) const;
    std::size_t total(int i) const;
    /// total(i) == 0 for all from <= i <= to.
    bool vanishes(int from, int to) const;
};

/// Ext^i(M, N) for 1 <= i <= i_max as cohomology of Hom(F_., N) over the
/// minimal resolution prefix of M.
ExtReport ext(const GradedModule& M, const GradedModule& N, std::size_t i_max);

/// Hom_k(R, k) as a graded R-module: dimensions of R reversed, action
/// matrices transposed.
GradedModule matlis_dual(AlgebraPtr R);

/// mu_i = dim_k Ext^i(k, R) for 0 <= i <= N, computed as the Betti numbers
/// of the Matlis dual of R (tests cross-check against the direct Ext route).
std::vector<std::size_t> bass_numbers(AlgebraPtr R, std::size_t N);

struct KoszulReport {
    bool is_koszul_to_N = false; // Betti table of k diagonal through N
    BettiTable betti;
};

KoszulReport koszul_check(AlgebraPtr R, std::size_t N);

} // namespace gdimlab
