#pragma once

#include <stdexcept>
#include <string>

namespace loopsmith {

// Every domain failure carries a stable machine-readable kind; messages add
// the first violating cell/triple or clause detail for humans.
enum class errc {
    not_latin,
    not_associative,
    no_identity,
    no_two_sided_identity,
    size_cap_exceeded,
    order_cap_exceeded,
    not_normal,
    not_sharply_transitive,
    core_not_trivial,
    size_mismatch,
    g_not_identity_preserving,
    phi_not_mono,
    centre_intersection,
    generation_failure,
    g_is_homomorphism,
    p_abelian,
    builder_precondition,
    closure_not_found,
    overflow,
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_latin: return "NotLatin";
        case errc::not_associative: return "NotAssociative";
        case errc::no_identity: return "NoIdentity";
        case errc::no_two_sided_identity: return "NoTwoSidedIdentity";
        case errc::size_cap_exceeded: return "SizeCapExceeded";
        case errc::order_cap_exceeded: return "OrderCapExceeded";
        case errc::not_normal: return "NotNormal";
        case errc::not_sharply_transitive: return "NotSharplyTransitive";
        case errc::core_not_trivial: return "CoreNotTrivial";
        case errc::size_mismatch: return "SizeMismatch";
        case errc::g_not_identity_preserving: return "GNotIdentityPreserving";
        case errc::phi_not_mono: return "PhiNotMono";
        case errc::centre_intersection: return "CentreIntersection";
        case errc::generation_failure: return "GenerationFailure";
        case errc::g_is_homomorphism: return "GIsHomomorphism";
        case errc::p_abelian: return "PAbelian";
        case errc::builder_precondition: return "BuilderPrecondition";
        case errc::closure_not_found: return "ClosureNotFound";
        case errc::overflow: return "Overflow";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

class loop_error : public std::runtime_error {
  public:
    loop_error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

} // namespace loopsmith
