#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "loopsmith/group.hpp"
#include "loopsmith/loop.hpp"
#include "loopsmith/octonion.hpp"
#include "loopsmith/product.hpp"
#include "loopsmith/sections.hpp"

namespace loopsmith {

// Multiplication-table file (".tbl"): first line is the order n, followed by
// n lines of n integers in [0, n). Blank lines are ignored. All format
// violations throw ParseError naming file, line and column; algebraic
// validation is left to make_group / make_loop.
std::vector<std::vector<int>> read_table_rows(const std::string& path);
FiniteGroup read_group_file(const std::string& path);
FiniteLoop read_loop_file(const std::string& path);
void write_table(std::ostream& os, int order, const std::vector<int>& flat);
void write_table_file(const std::string& path, int order, const std::vector<int>& flat);

// Group builder expressions: cyclic(n), dihedral(n), symmetric(n),
// quaternion8, direct_product(expr, expr, ...). Anything that is not a
// recognized builder is treated as a path to a ".tbl" file.
FiniteGroup group_from_expression(const std::string& expr);

// Section-search instance (".sect.json"):
//   {"group": builder-or-path, "subgroup": [indices],
//    "options": {"maxSolutions": n | "unlimited", "symmetryBreaking": bool,
//                "parallel": bool, "requireGeneration": bool}}
// The subgroup member list must contain 0 and be closed under the product
// (BuilderPrecondition otherwise). Options are optional and default to an
// unlimited, sequential, unfiltered search.
struct SectionInstance {
    FiniteGroup group;
    Subgroup subgroup;
    SearchOptions options;
};
SectionInstance read_section_instance(const std::string& path);

// Product spec (".prod.json"): either
//   {"K": builder-or-path, "P": ..., "S": ..., "phi": [images], "g": [images]}
// or the cyclic shorthand
//   {"torus": {"m": m, "s": s}, "P": ..., "phi": [images], "g": [images]}
// which routes through torus_variant_spec (so its preconditions apply).
ProductSpec read_product_spec(const std::string& path);

// Section streams: one section per line as space-separated element indices;
// anything after '#' on a line is a comment. parse_section_line throws
// ParseError (with the given line number) on malformed input.
void write_section_line(std::ostream& os, const Section& s);
Section parse_section_line(const std::string& line, int line_number);

// Block partition of a factor loop: one line "i: m1 m2 ..." per block.
void write_blocks_file(const std::string& path, const FactorLoop& f);

// Exact octonion coordinates, one element per line as 8 doubled integers.
void write_coords_file(const std::string& path, const std::vector<OctonionH>& elements);
std::vector<OctonionH> read_coords_file(const std::string& path);

} // namespace loopsmith
