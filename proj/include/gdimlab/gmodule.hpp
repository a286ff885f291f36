#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "gdimlab/algebra.hpp"

namespace gdimlab {

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Dense matrix of ring elements.  Used for presentations and resolution
/// differentials; entry degrees are whatever the context assigns (column
/// degree minus row degree for a graded map of free modules).
struct ElementMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Element> entries; // row-major

    ElementMatrix() = default;
    ElementMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    const Element& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    Element& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }

    friend bool operator==(const ElementMatrix&, const ElementMatrix&) = default;
};

/// Entry-wise transpose: out(i, j) = in(j, i).
ElementMatrix transpose(const ElementMatrix& m);

/// Graded module given by per-degree dimensions and dense action tensors.
/// act1 slice s maps M_{base+s} -> M_{base+s+1} for each degree-1 ring basis
/// element; act2 slice s maps M_{base+s} -> M_{base+s+2}.  Construction
/// normalizes away zero boundary slices and validates the module axioms.
class GradedModule {
  public:
    GradedModule(AlgebraPtr R, int base_degree, std::vector<std::size_t> dims,
                 std::vector<std::vector<FMatrix>> act1, std::vector<std::vector<FMatrix>> act2);

    static GradedModule zero(AlgebraPtr R);
    /// k = R/m concentrated in degree 0.
    static GradedModule residue_field(AlgebraPtr R);

    const GradedAlgebra& ring() const noexcept { return *ring_; }
    const AlgebraPtr& ring_ptr() const noexcept { return ring_; }

    int base_degree() const noexcept { return base_; }
    std::size_t num_slices() const noexcept { return dims_.size(); }
    int min_degree() const noexcept { return base_; }
    int max_degree() const noexcept { return base_ + static_cast<int>(dims_.size()) - 1; }
    bool is_zero_module() const noexcept { return dims_.empty(); }

    std::size_t dim(int degree) const noexcept;
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dim() const noexcept;

    /// Action matrix of e_j : M_d -> M_{d+1} (zero-shaped outside the range).
    FMatrix act1_matrix(std::size_t j, int degree) const;
    /// Action matrix of the degree-2 basis element f_t : M_d -> M_{d+2}.
    FMatrix act2_matrix(std::size_t t, int degree) const;

    FVec apply1(std::size_t j, int degree, const FVec& v) const;
    FVec apply2(std::size_t t, int degree, const FVec& v) const;
    /// Action of an arbitrary homogeneous ring element; result lives in
    /// degree + e.degree.
    FVec apply_element(const Element& e, int degree, const FVec& v) const;

    /// Checks shapes, act1/act2 compatibility (commutativity + products) and
    /// that degree-3 composites vanish.  Throws InputError on violation.
    void validate() const;

    friend bool operator==(const GradedModule& a, const GradedModule& b) {
        return *a.ring_ == *b.ring_ && a.base_ == b.base_ && a.dims_ == b.dims_ &&
               a.act1_ == b.act1_ && a.act2_ == b.act2_;
    }

  private:
    AlgebraPtr ring_;
    int base_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<FMatrix>> act1_, act2_;
};

/// Free module ⊕_i R(-s_i) kept as shifts only.  Degree-d coordinates are
/// grouped in blocks, one per summand, block i spanning the ring piece of
/// degree d - s_i.  Action is applied blockwise, so no dense tensors are ever
/// materialized; resolutions of size 10^4 generators stay cheap.
class FreeModule {
  public:
    FreeModule(AlgebraPtr R, std::vector<int> shifts);

    const GradedAlgebra& ring() const noexcept { return *ring_; }
    const AlgebraPtr& ring_ptr() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return shifts_.size(); }
    const std::vector<int>& shifts() const noexcept { return shifts_; }
    int shift(std::size_t i) const { return shifts_[i]; }
    int min_degree() const;            // lowest degree with a nonzero piece
    int max_degree() const;            // highest; min > max when rank is 0

    std::size_t dim(int degree) const;
    std::size_t block_width(std::size_t i, int degree) const {
        return ring_->piece_dim(degree - shifts_[i]);
    }
    std::size_t block_offset(std::size_t i, int degree) const;

    /// Extract summand i of v ∈ F_degree as a ring element (zero Element when
    /// the block is empty or vanishes).
    Element block(std::size_t i, int degree, const FVec& v) const;
    /// Scatter-add e into summand i of v ∈ F_degree.
    void add_block(std::size_t i, int degree, const Element& e, FVec& v) const;
    /// Coordinates of e placed in summand i (at degree shift_i + e.degree).
    FVec basis_image(std::size_t i, const Element& e) const;

    FVec apply1(std::size_t j, int degree, const FVec& v) const;
    FVec apply2(std::size_t t, int degree, const FVec& v) const;
    FVec apply_element(const Element& e, int degree, const FVec& v) const;

    /// Dense materialization; intended for small ranks (tests, Hom spaces).
    GradedModule to_graded_module() const;

  private:
    AlgebraPtr ring_;
    std::vector<int> shifts_;
};

/// Degree-0 graded homomorphism between dense modules, stored as one matrix
/// per source slice.  degree_shift t generalizes to maps M_d -> N_{d+t}
/// (internal-degree-t elements of Hom).
struct ModuleMap {
    GradedModule source, target;
    int degree_shift = 0;
    std::vector<FMatrix> blocks; // blocks[s]: M_{base+s} -> N_{base+s+shift}

    /// Matrix acting on the degree-d slice of the source.
    FMatrix at(int degree) const;
    FVec apply(int degree, const FVec& v) const;
    /// Commutation with act1 and act2 in every degree; throws InputError.
    void validate() const;
    bool is_zero_map() const;

    friend bool operator==(const ModuleMap&, const ModuleMap&) = default;
};

/// Composite f∘g of graded maps; degree shifts add.
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);

/// Presentation: generators with degrees, relations as homogeneous columns.
struct Presentation {
    AlgebraPtr ring;
    std::vector<int> gen_degrees;
    ElementMatrix rels; // rows = generators, one column per relation

    /// Degree of relation column c (degree of entry + row generator degree);
    /// throws InputError on inconsistent or all-zero columns.
    int col_degree(std::size_t c) const;
    void validate() const;
};

/// coker of a presentation with its projection/lift data.  The module basis
/// in each degree is the set of non-pivot coordinates of the ambient free
/// module relative to the echelonized relation span.
class Coker {
  public:
    Coker(FreeModule ambient, std::vector<std::vector<Element>> rel_columns,
          std::vector<int> rel_degrees);

    const GradedModule& module() const noexcept { return mod_; }
    const FreeModule& ambient() const noexcept { return amb_; }

    /// F_d -> M_d in module coordinates.
    FVec project(int degree, const FVec& v) const;
    /// Canonical representative (pivot coordinates zero) of a module vector.
    FVec lift(int degree, const FVec& m) const;

  private:
    FreeModule amb_;
    int lo_ = 0;
    std::vector<Subspace> rel_;                       // per ambient degree
    std::vector<std::vector<std::size_t>> free_cols_; // per ambient degree
    GradedModule mod_;

    friend Coker coker(const Presentation& p);
};

Coker coker(const Presentation& p);

/// Dense free module (for small shift lists).
GradedModule free_module(AlgebraPtr R, const std::vector<int>& shifts);

struct MinimalGenerators {
    std::size_t count = 0;
    std::vector<std::pair<int, FVec>> gens; // (degree, coordinates in M_degree)
};

/// Basis of M/mM lifted by first-extending-unit-vector echelon selection.
MinimalGenerators minimal_generators(const GradedModule& M);

struct SyzygyResult {
    GradedModule module;  // ΩM
    ModuleMap cover;      // minimal free cover F₀ -> M (dense F₀)
    ModuleMap inclusion;  // ΩM -> F₀
};

/// Kernel of the minimal free cover, with its graded structure.
SyzygyResult syzygy(const GradedModule& M);

struct BettiTable {
    std::map<std::pair<int, int>, std::size_t> beta; // (homological i, internal j)

    std::size_t at(int i, int j) const;
    std::size_t total(int i) const;
    /// True when every nonzero entry with i <= through has j == i.
    bool diagonal_only(int through) const;

    friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// Minimal graded free resolution prefix F_N -> … -> F_0 -> M -> 0.
struct Resolution {
    std::vector<std::vector<int>> shifts;    // shifts[i] = generator degrees of F_i
    std::vector<ElementMatrix> diffs;        // diffs[i] : F_{i+1} -> F_i (when kept)
    std::vector<std::pair<int, FVec>> aug;   // images of F_0 generators in M
    BettiTable betti;
    bool terminated = false;                 // syzygy hit zero before depth N

    std::size_t steps() const noexcept { return shifts.size(); }
};

/// First N steps of the minimal resolution.  keep_maps=false drops the
/// differentials (Betti/Bass number runs) to save memory.
Resolution minimal_resolution(const GradedModule& M, std::size_t N, bool keep_maps = true);

/// Degree-d matrix of the map ⊕R(-src_j) -> ⊕R(-tgt_g) whose entry (g, j)
/// multiplies summand j into summand g.  Nonzero entries must have degree
/// src_j - tgt_g.
FMatrix element_matrix_block(const GradedAlgebra& R, const std::vector<int>& tgt,
                             const std::vector<int>& src, const ElementMatrix& D, int degree);

std::vector<std::size_t> hilbert(const GradedModule& M);
std::size_t length(const GradedModule& M);
/// Zero first syzygy.
bool is_free(const GradedModule& M);

/// Per-degree reduced bases of the submodule generated by seed vectors,
/// closed under the ring action.
struct SubmodulePieces {
    int min_degree = 0;
    std::vector<Subspace> pieces; // pieces[t] ⊆ M_{min_degree+t}, echelon basis
};

SubmodulePieces submodule_closure(const GradedModule& M,
                                  const std::vector<std::pair<int, FVec>>& seeds);

struct SubmoduleResult {
    GradedModule module;
    ModuleMap inclusion; // module -> M
};
SubmoduleResult materialize_submodule(const GradedModule& M, const SubmodulePieces& pieces);

struct QuotientResult {
    GradedModule module;
    ModuleMap projection; // M -> module
};
QuotientResult materialize_quotient(const GradedModule& M, const SubmodulePieces& pieces);

} // namespace gdimlab
