#pragma once

#include <cstdint>
#include <functional>
#include <limits>

#include "loopsmith/group.hpp"
#include "loopsmith/loop.hpp"
#include "loopsmith/perm.hpp"

namespace loopsmith {

// A section assigns an element of G to every coset of H: choice[c].
// Invariants: choice[0] == 0 (the identity coset carries the identity
// element), and the image is a transversal — c -> cosetOf(choice[c]) is a
// bijection on cosets. The representative assigned to a coset need not lie
// in that coset; when it always does the section is called aligned.
struct Section {
    std::vector<int> choice;
};

struct SearchOptions {
    std::uint64_t max_solutions = std::numeric_limits<std::uint64_t>::max();
    bool symmetry_breaking = false; // emit one representative per conjugation orbit
    bool parallel = false;          // split on the first coset's candidates
    bool require_generation = false;
};

// One enumeration result. With symmetry breaking the section is the aligned
// labelling of the orbit's lexicographically minimal set and orbit_size is
// the number of sections the orbit represents; otherwise orbit_size is 1.
struct SectionHit {
    Section section;
    std::uint64_t orbit_size = 1;
};

// Exactly one element of S carries each ordered coset pair (c, c').
bool is_sharply_transitive(const FiniteGroup& G, const CosetSpace& cs, const std::vector<int>& S);
bool is_sharply_transitive(const FiniteGroup& G, const Subgroup& H, const std::vector<int>& S);

// Reformulation used by the solver: |S| = [G:H] (else SizeMismatch) and
// every difference z1^-1 z2 of distinct members fixes no coset.
bool fpf_difference_check(const FiniteGroup& G, const CosetSpace& cs, const std::vector<int>& S);
bool fpf_difference_check(const FiniteGroup& G, const Subgroup& H, const std::vector<int>& S);

// Loop on coset indices induced by a section; identity is coset 0. With
// pi(c) = cosetOf(choice[c]) the table is
//   T[c][d] = pi^-1(cosetOf(choice[c] * choice[d])),
// which for aligned sections reduces to cosetOf(sigma(c) * rep(d)).
// Throws NotSharplyTransitive (invalid or non-sharply-transitive section)
// and CoreNotTrivial (H contains a nontrivial normal subgroup of G).
FiniteLoop loop_from_section(const FiniteGroup& G, const Subgroup& H, const Section& s);

// Canonical realization of a loop inside its left multiplication group:
// G = mlt_left(L), H = stabilizer of 0, sigma maps the coset of a left
// translation to that translation (an aligned section).
struct LoopSection {
    PermClosure mlt;             // closure of the left translations
    std::vector<int> stabilizer; // indices into mlt.elements fixing point 0
    FiniteGroup group;           // abstract Cayley table of the closure
    Subgroup subgroup;           // the stabilizer inside `group`
    Section section;
};
LoopSection section_from_loop(const FiniteLoop& L, std::size_t cap = default_perm_cap());

// Streams sections; emit returns false to stop early. Single-threaded
// enumeration order is deterministic; with parallel=true results are merged
// from the first-coset split and sorted before emission.
void enumerate_sections(const FiniteGroup& G, const Subgroup& H, const SearchOptions& opts,
                        const std::function<bool(const SectionHit&)>& emit);

std::uint64_t count_sections(const FiniteGroup& G, const Subgroup& H, const SearchOptions& opts = {});

struct LoopClass {
    FiniteLoop representative;
    std::uint64_t multiplicity = 0;
};

// Loops induced by all sections, deduplicated up to isomorphism;
// multiplicities sum to count_sections under the same options.
std::vector<LoopClass> classify_section_loops(const FiniteGroup& G, const Subgroup& H,
                                              const SearchOptions& opts = {});

} // namespace loopsmith
