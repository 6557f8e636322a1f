#pragma once

#include <string>
#include <vector>

#include "loopsmith/errors.hpp"

namespace loopsmith {

// Finite group on elements {0, ..., order-1} with identity fixed at 0.
// The Cayley table is stored row-major: table[a*order + b] = a*b.
struct FiniteGroup {
    int order = 0;
    std::vector<int> table;
    std::vector<int> inverse;

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
    int inv(int a) const { return inverse[static_cast<std::size_t>(a)]; }
};

// A subgroup is carried as its sorted member list (always containing 0).
// The owning group is passed explicitly to every operation.
struct Subgroup {
    std::vector<int> members;
};

// Left cosets xH of a subgroup. Coset indices follow first-discovery order
// scanning elements 0..n-1, so the coset of the identity is index 0 and
// representative[c] is the smallest element of coset c.
struct CosetSpace {
    int count = 0;
    std::vector<int> coset_of;       // element -> coset index
    std::vector<int> representative; // coset index -> smallest member
};

// A map between groups, stored as image[x] for x in the source.
struct Mapping {
    std::vector<int> image;
};

// Validates a raw Cayley table: Latin property (first violating cell named),
// two-sided identity (relabelled to index 0 when found elsewhere),
// associativity (first violating triple named). Throws loop_error with kinds
// NotLatin / NoIdentity / NotAssociative.
FiniteGroup make_group(const std::vector<std::vector<int>>& rows);
FiniteGroup make_group(int order, std::vector<int> flat);

// Constructs a group from a table known to be correct (builders, closures).
// Computes inverses; only cheap sanity checks in debug builds.
FiniteGroup group_from_table_unchecked(int order, std::vector<int> flat);

FiniteGroup cyclic(int n);
FiniteGroup dihedral(int n);          // order 2n symmetries of the n-gon
FiniteGroup symmetric(int n);         // permutations ranked lexicographically; n <= 8
FiniteGroup quaternion8();
FiniteGroup direct_product(const std::vector<FiniteGroup>& factors);
// Element encoding of products is mixed-radix, left-associated:
// (i1, i2, ..., ik) -> ((i1*n2 + i2)*n3 + i3)... so two factors give i*|G2| + j.

// Smallest subgroup containing gens (worklist closure under the product;
// inverses follow from finiteness). Empty gens give the trivial subgroup.
Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens);

Subgroup center(const FiniteGroup& G);

bool is_normal(const FiniteGroup& G, const Subgroup& H);

// Largest normal subgroup of G contained in H: intersection of all
// conjugates g H g^-1.
Subgroup normal_core(const FiniteGroup& G, const Subgroup& H);

CosetSpace left_cosets(const FiniteGroup& G, const Subgroup& H);

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const Mapping& f);
bool is_monomorphism(const FiniteGroup& src, const FiniteGroup& dst, const Mapping& f);

// True when members is closed under the product and contains 0.
bool is_subgroup_members(const FiniteGroup& G, const std::vector<int>& members);

} // namespace loopsmith
