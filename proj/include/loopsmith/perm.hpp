#pragma once

#include <cstddef>
#include <vector>

#include "loopsmith/group.hpp"

namespace loopsmith {

// Permutations of {0..degree-1} as image vectors; composition applies the
// right factor first: (p*q)(x) = p[q[x]].
using Perm = std::vector<int>;

Perm perm_identity(int degree);
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);

// Sorted multiset of cycle lengths; conjugation-invariant signature.
std::vector<int> perm_cycle_type(const Perm& p);

// Closure of a generating set under composition, stored with elements
// sorted lexicographically (the identity is always index 0: it is the
// lexicographic minimum of any permutation set containing it).
struct PermClosure {
    int degree = 0;
    std::vector<Perm> elements;
};

// Default element cap for closures; the LOOPSMITH_CAP environment variable
// overrides it (parsed once per process).
std::size_t default_perm_cap();

// Breadth-first closure; throws OrderCapExceeded when more than cap distinct
// elements appear.
PermClosure perm_closure(int degree, const std::vector<Perm>& gens, std::size_t cap = default_perm_cap());

// Abstract Cayley table of a closure; element i of the group is
// pc.elements[i], so the identity permutation becomes group element 0.
FiniteGroup group_from_perm_closure(const PermClosure& pc);

// Indices of closure elements fixing point 0 (a subgroup as permutations).
std::vector<int> stabilizer_of_identity(const PermClosure& pc);

// True when the perms act sharply transitively on points: for every ordered
// point pair exactly one element maps the first to the second.
bool is_sharply_transitive_on_points(const std::vector<Perm>& perms, int degree);

} // namespace loopsmith
