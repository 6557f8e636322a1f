#pragma once

#include <array>
#include <optional>
#include <vector>

#include "loopsmith/group.hpp"
#include "loopsmith/perm.hpp"

namespace loopsmith {

// Finite loop: a Latin-square multiplication with two-sided identity 0.
// Division tables are precomputed: ldiv(a,b) is the unique y with a*y = b,
// rdiv(a,b) the unique x with x*a = b.
struct FiniteLoop {
    int order = 0;
    std::vector<int> table;
    std::vector<int> left_div;
    std::vector<int> right_div;

    int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * order + b]; }
    int ldiv(int a, int b) const { return left_div[static_cast<std::size_t>(a) * order + b]; }
    int rdiv(int a, int b) const { return right_div[static_cast<std::size_t>(a) * order + b]; }
};

// A subloop is its sorted member list; closed under the product (divisions
// and the identity follow automatically in the finite case).
struct Subloop {
    std::vector<int> members;
};

// Quotient of a loop by a normal subloop, with the block partition kept for
// serialization (block 0 always contains element 0).
struct FactorLoop {
    FiniteLoop loop;
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of;
};

// Validates Latin property and the existence of a two-sided identity
// (relabelled to index 0 when found elsewhere, mirroring make_group).
// Throws NotLatin / NoTwoSidedIdentity.
FiniteLoop make_loop(const std::vector<std::vector<int>>& rows);
FiniteLoop make_loop(int order, std::vector<int> flat);

// Group viewed as a loop.
FiniteLoop as_loop(const FiniteGroup& G);

bool is_associative(const FiniteLoop& L);
// Lexicographically first (a,b,c) with (a*b)*c != a*(b*c), if any.
std::optional<std::array<int, 3>> first_associator_witness(const FiniteLoop& L);

// Moufang identity (x*y)*(z*x) == (x*(y*z))*x over all triples.
bool is_moufang(const FiniteLoop& L);
std::optional<std::array<int, 3>> first_moufang_witness(const FiniteLoop& L);

// Left translation of a is row a of the table as a permutation.
std::vector<Perm> left_translations(const FiniteLoop& L);

// Group generated by all left translations.
PermClosure mlt_left(const FiniteLoop& L, std::size_t cap = default_perm_cap());

Subloop subloop_generated(const FiniteLoop& L, const std::vector<int>& gens);

// Diassociativity probe: every subloop generated by two elements is
// associative.
bool two_generated_subloops_associative(const FiniteLoop& L);

// Normality via the defining set equations, all verified literally:
//   x*N = N*x, (x*N)*y = x*(N*y), x*(y*N) = (x*y)*N for all x, y.
bool is_normal_subloop(const FiniteLoop& L, const Subloop& N);

// Quotient by the block partition {x*N}. Throws NotNormal when the blocks do
// not partition or the induced product is representative-dependent.
FactorLoop factor_loop(const FiniteLoop& L, const Subloop& N);

// Elements that commute with everything and associate in all three
// positions with every pair. Always a normal subloop (asserted).
Subloop centre_of_loop(const FiniteLoop& L);

// Backtracking isomorphism test (identity maps to identity), pruned by
// translation cycle types. Throws SizeCapExceeded above the cap.
bool is_isomorphic(const FiniteLoop& A, const FiniteLoop& B, int cap = 64);

// Restriction of the loop to a closed member set, reindexed by rank.
FiniteLoop restrict_to_members(const FiniteLoop& L, const std::vector<int>& members);

} // namespace loopsmith
