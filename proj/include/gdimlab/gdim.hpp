#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdimlab/gmodule.hpp"
#include "gdimlab/homology.hpp"

namespace gdimlab {

/// Evidence that a module has G-dimension zero.  PeriodicCR, Filtration and
/// Extension are exact proofs: their constructors verify every claim with
/// finite linear algebra and throw on failure.  BoundedExt is a semi-decision
/// up to the recorded depth; `exact` stays false unless the module is free
/// (freeness is decidable outright).
struct GdimCertificate {
    enum class Kind { PeriodicCR, Filtration, Extension, BoundedExt };

    Kind kind = Kind::BoundedExt;
    std::string note;
    AlgebraPtr ring;

    /// PeriodicCR: one matrix d (1-periodic, d·d = 0) or a pair d1, d2
    /// (2-periodic, d1·d2 = d2·d1 = 0) acting on R^m with generators in
    /// degree 0.  The certified module is coker(d1).
    std::vector<ElementMatrix> periodic;

    /// Extension: parts = {A_cert, B_cert}, seq = {A -> E, E -> B}.
    /// Filtration: parts = certificates of the chain, bottom step first;
    /// seq = the inclusions M_i -> M_{i+1}.
    std::vector<GdimCertificate> parts;
    std::vector<ModuleMap> seq;

    /// BoundedExt payload.
    std::size_t depth = 0;
    std::optional<BidualReport> bidual;
    std::optional<ExtReport> ext_module; // Ext^i(M, R)
    std::optional<ExtReport> ext_dual;   // Ext^i(M*, R)

    bool passed = true;
    bool exact = true;

    bool is_exact_kind() const noexcept { return kind != Kind::BoundedExt; }
};

/// The module a certificate talks about, rebuilt from its payload.
GradedModule certified_module(const GdimCertificate& c);

struct PeriodicResult {
    GdimCertificate cert;
    GradedModule module;
};

/// Verifies a 1-periodic complete resolution ... -> R^m -d-> R^m -d-> R^m -> ...
/// on the finite graded pieces: d·d = 0 (else NotAComplex), then kernel =
/// image in every degree for d and for its transpose (else
/// CertificateRejected).  Entries must be homogeneous of degree 1.
PeriodicResult verify_periodic_cr(AlgebraPtr R, const ElementMatrix& d, std::string note = {});

/// 2-periodic variant: ... -d2-> R^m -d1-> R^m -d2-> ...; checks both
/// products, both kernel/image interleavings, and both transposes.  The
/// certified module is coker(d1).
PeriodicResult verify_periodic_cr(AlgebraPtr R, const ElementMatrix& d1, const ElementMatrix& d2,
                                  std::string note = {});

/// Certifies E from 0 -> A -incl-> E -proj-> B -> 0: the maps must be module
/// maps forming a degreewise exact sequence, and the endpoint modules must
/// equal the modules certified by the part certificates.  Throws InputError
/// on any failure.
GdimCertificate verify_extension(const GdimCertificate& A_cert, const GdimCertificate& B_cert,
                                 const GradedModule& E, const ModuleMap& incl,
                                 const ModuleMap& proj);

/// Semi-decision: bidual isomorphism plus vanishing of Ext^i(M, R) and
/// Ext^i(M*, R) for 1 <= i <= N.  Negative outcomes are reported in
/// `passed`, never thrown.
GdimCertificate check_gdim_zero_bounded(const GradedModule& M, std::size_t N);

/// Conclusions of the structure theorem for a certified nonfree module over
/// a short graded ring, each flag backed by the numbers recorded next to it.
struct Theorem31Report {
    bool nonfree = false;      // certificate passed and M is not free
    bool cert_matches = false; // certificate rebuilds exactly M
    bool hilbert_ok = false;   // H_R = (1, r+1, r)
    bool socle_ok = false;     // socle(R) = R_2
    bool a_eq_rb = false;      // M = M_0 + M_1 with dim M_1 = r * dim M_0
    bool dual_length_ok = false;
    bool linear_resolution_ok = false; // constant Betti numbers b on the diagonal
    bool bass_ok = false;              // mu_0 = r, mu_i = r^{i+1} - r^{i-1}
    bool koszul_ok = false;            // k diagonal with beta_i = 1 + r + ... + r^i

    std::size_t r = 0;
    std::size_t b = 0; // dim of the generating degree piece
    std::size_t a = 0; // dim of the top piece
    std::size_t length_module = 0, length_dual = 0;
    std::vector<std::size_t> betti_row;
    std::vector<std::size_t> bass_measured, bass_expected;
    std::vector<std::size_t> koszul_diagonal, koszul_expected;

    bool all_ok() const noexcept {
        return nonfree && cert_matches && hilbert_ok && socle_ok && a_eq_rb && dual_length_ok &&
               linear_resolution_ok && bass_ok && koszul_ok;
    }
};

Theorem31Report verify_theorem31(AlgebraPtr R, const GradedModule& M, const GdimCertificate& cert,
                                 std::size_t N);

} // namespace gdimlab
