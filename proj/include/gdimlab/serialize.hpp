#pragma once

#include <string>

#include "json.hpp"

#include "gdimlab/approximation.hpp"
#include "gdimlab/gdim.hpp"

namespace gdimlab {

/// JSON interchange, all documents carrying {"schema": 1, "kind": ...}.
/// Loads re-validate every structural invariant and throw SchemaError on
/// malformed documents; mathematical invariant violations surface as the
/// constructors' own InputError.

nlohmann::json ring_to_json(const GradedAlgebra& R);
GradedAlgebra ring_from_json(const nlohmann::json& j);

/// FNV-1a 64 over the canonical ring document; modules and certificates
/// reference their ring by this value.
std::string ring_hash(const GradedAlgebra& R);

nlohmann::json element_matrix_to_json(const ElementMatrix& m);
ElementMatrix element_matrix_from_json(const nlohmann::json& j, const PrimeField& F);

nlohmann::json module_to_json(const GradedModule& M);
/// Requires the ring the document was written against (hash must match).
GradedModule module_from_json(const nlohmann::json& j, const AlgebraPtr& R);

nlohmann::json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j, const AlgebraPtr& R);

/// Periodic certificates round-trip with their payload matrices and are
/// re-verified on load; bounded certificates store the module and depth and
/// re-run the check.  Filtration and extension certificates export a
/// non-reimportable summary: their evidence is cheaper to re-derive from the
/// generating spec than to ship.
nlohmann::json certificate_to_json(const GdimCertificate& c);
GdimCertificate certificate_from_json(const nlohmann::json& j, const AlgebraPtr& R);

/// Maps serialize as degree payload only ({degree_shift, blocks}); source and
/// target come from the enclosing document.  Import re-checks block shapes
/// (SchemaError) and the homomorphism property (InputError via validate).
nlohmann::json module_map_to_json(const ModuleMap& m);
ModuleMap module_map_from_json(const nlohmann::json& j, GradedModule source,
                               GradedModule target);

/// Complete audit candidate: modules, both maps, the declared summand
/// structure, and the certificate (re-verified on load).
nlohmann::json candidate_to_json(const ApproximationCandidate& c);
ApproximationCandidate candidate_from_json(const nlohmann::json& j, const AlgebraPtr& R);

} // namespace gdimlab
