#pragma once

#include <array>
#include <vector>

#include "loopsmith/loop.hpp"

namespace loopsmith {

// Octonion with real coordinates.
using OctonionF = std::array<double, 8>;

// Octonion on the half-integer lattice: coordinates are stored doubled
// (the represented value is coord/2), so all 240 unit octavians have
// integer storage and their products stay exact.
using OctonionH = std::array<long long, 8>;

// Basis products e_i * e_j = sign[i][j] * e_(index[i][j]), generated once
// from the doubling construction R -> C -> H -> O with
//   (a, b) (c, d) = (a c - conj(d) b,  d a + b conj(c)).
struct OctStructure {
    int sign[8][8];
    int index[8][8];
};
const OctStructure& oct_structure();

OctonionF oct_mul(const OctonionF& x, const OctonionF& y);
OctonionF oct_conj(OctonionF x);
double oct_norm2(const OctonionF& x);

// Exact product. Internally computed at four times the value scale; throws
// Overflow when a coordinate exceeds the integer budget or the result
// leaves the half-integer lattice.
OctonionH oct_mul(const OctonionH& x, const OctonionH& y);
OctonionH oct_conj(OctonionH x);
long long oct_norm4(const OctonionH& x); // four times the squared norm

OctonionF to_float(const OctonionH& x);

// Euclidean norm of (x y)(z x) - (x (y z)) x; zero for exact octonion
// algebra, small for floats.
double moufang_residual(const OctonionF& x, const OctonionF& y, const OctonionF& z);

// The 240 octavian units as an exact loop: the 16 signed unit vectors plus
// 224 half-vectors, found by closing the units together with the first
// half-vector seed (in lexicographic order) whose closure stays inside the
// norm-1 candidate shape and reaches exactly 240 elements.
struct OctavianLoop {
    FiniteLoop loop;                 // order 240, identity at index 0
    std::vector<OctonionH> elements; // exact value of loop element i
    OctonionH seed;                  // the half-vector that completed the set
    int seed_index = -1;             // position among the 1120 candidates
};
// Throws ClosureNotFound when no seed works (broken multiplication table).
OctavianLoop build_octavian_units();

// Quotient of the unit loop by its centre {+1, -1}: order 120.
FiniteLoop octavian_factor_by_centre(const OctavianLoop& o);

} // namespace loopsmith
