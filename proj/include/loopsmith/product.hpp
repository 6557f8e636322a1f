#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopsmith/group.hpp"
#include "loopsmith/loop.hpp"
#include "loopsmith/sections.hpp"

namespace loopsmith {

// Ingredients of the twisted-product loop on K x P:
//   (a1, b1) * (a2, b2) = (a1 a2, b1 c b2 c^-1)  with  c = phi(g(a1)),
// where phi : S -> P is a monomorphism whose nontrivial image avoids the
// centre of P, and g : K -> S is an identity-preserving map. The loop is a
// group exactly when g is a homomorphism, so validation for building
// demands a non-homomorphic g.
struct ProductSpec {
    FiniteGroup K; // left factor, surviving as a subloop and as the quotient
    FiniteGroup P; // twisted factor, surviving as a normal subloop
    FiniteGroup S; // twisting group, embedded into P via phi
    Mapping phi;   // S -> P
    Mapping g;     // K -> S
};

// Validation depth. `experiment` stops after the structural clauses so that
// homomorphic g maps can be built and compared (the associativity study);
// `full` additionally demands that {(k, g(k))} generates K x S and that g
// is not a homomorphism, which makes the loop proper.
enum class ValidationMode { full, experiment };

// Checks the spec clause by clause, throwing the first failure:
//   SizeMismatch             map lengths or table shapes are inconsistent
//   PAbelian                 P is abelian (no usable twist exists)
//   GNotIdentityPreserving   g(0) != 0
//   PhiNotMono               phi is not an injective homomorphism
//   CentreIntersection       phi sends some x != 0 into the centre of P
//   GenerationFailure        {(k, g(k))} does not generate K x S   [full]
//   GIsHomomorphism          g is a homomorphism                   [full]
void validate_spec(const ProductSpec& spec, ValidationMode mode = ValidationMode::full);

// The loop on K x P defined by the twisted product, element (a, b)
// encoded as a * |P| + b. Validates in the given mode first.
FiniteLoop build_product_loop(const ProductSpec& spec, ValidationMode mode = ValidationMode::full);

// The same loop realized as a section: G = K x P x S (mixed-radix encoding),
// H = {(1, phi(x), x)}, and sigma picks (x, y phi(g(x)), g(x)) from the coset
// of (x, y, 1). coset_pair[c] is the product-loop element a*|P|+b whose pair
// (a, b) labels coset c, aligning the two constructions element by element.
struct ProductRealization {
    FiniteGroup G;
    Subgroup H;
    Section section;
    std::vector<int> coset_pair;
};
ProductRealization build_group_and_section(const ProductSpec& spec);

// Human-readable summary plus machine-readable key=value pairs.
struct Report {
    std::string text;
    std::vector<std::pair<std::string, std::string>> trailer;
};

// Builds the loop in experiment mode and reports whether it is associative,
// whether g is a homomorphism, and whether the two verdicts agree.
Report properness_report(const ProductSpec& spec);

// Builds the loop in full mode and verifies its anatomy: N = {(1, b)} is a
// normal subloop isomorphic to P, {(a, 1)} is a subgroup isomorphic to K,
// every element factors uniquely as n * k, and the quotient L/N is
// isomorphic to K.
Report decomposition_report(const ProductSpec& spec);

// Cyclic-factor variant: K = cyclic(m), S = cyclic(s). Demands s >= 1, s | m
// and a surjective g (BuilderPrecondition), g(0) == 0
// (GNotIdentityPreserving) and a non-homomorphic g (GIsHomomorphism), then
// validates the assembled spec in full mode.
ProductSpec torus_variant_spec(int m, int s, const FiniteGroup& P, const Mapping& phi, const Mapping& g);

} // namespace loopsmith
