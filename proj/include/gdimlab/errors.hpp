#pragma once

#include <stdexcept>
#include <string>

namespace gdimlab {

/// Matrix/vector shape mismatch or graded-piece dimension mismatch.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data: bad prime, asymmetric structure constants,
/// inconsistent presentation degrees, ring mismatch between operands.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A seeded randomized search ran out of its sample budget.
struct SearchExhausted : std::runtime_error {
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A would-be complex fails d∘d = 0.
struct NotAComplex : std::runtime_error {
    explicit NotAComplex(const std::string& what) : std::runtime_error(what) {}
};

/// Certificate data is well-formed but the certified property fails numerically.
struct CertificateRejected : std::runtime_error {
    explicit CertificateRejected(const std::string& what) : std::runtime_error(what) {}
};

/// The session prime is too small for a criterion that needs p > dim.
struct FieldTooSmall : std::runtime_error {
    explicit FieldTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// A construction whose defining identities are theorems failed to verify them.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

/// JSON payload does not match the expected schema.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gdimlab
