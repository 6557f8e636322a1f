#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <loopsmith/errors.hpp>
#include <loopsmith/group.hpp>
#include <loopsmith/io.hpp>
#include <loopsmith/loop.hpp>
#include <loopsmith/product.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace loopsmith;
namespace fs = std::filesystem;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string expect_error(const std::function<void()>& fn, errc expected) {
    try {
        fn();
    } catch (const loop_error& e) {
        CHECK(e.code() == expected);
        return e.what();
    }
    FAIL("expected a loop_error, none was thrown");
    return {};
}

// Fresh per-process scratch directory for fixture files.
fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "loopsmith_io_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_text(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    return p.string();
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("table files round trip through write and read") {
    FiniteGroup c6 = cyclic(6);
    fs::path p = scratch_dir() / "c6.tbl";
    write_table_file(p.string(), c6.order, c6.table);

    FiniteGroup back = read_group_file(p.string());
    CHECK(back.order == 6);
    CHECK(back.table == c6.table);

    // The writer emits the order line followed by one space-separated row per line.
    std::ostringstream os;
    write_table(os, 3, cyclic(3).table);
    CHECK(os.str() == "3\n0 1 2\n1 2 0\n2 0 1\n");

    // Comments and blank lines are ignored anywhere in a table file.
    std::string commented = write_text("commented.tbl",
                                       "# three-element table\n"
                                       "\n"
                                       "3\n"
                                       "0 1 2   # identity row\n"
                                       "1 2 0\n"
                                       "2 0 1\n");
    std::vector<std::vector<int>> rows = read_table_rows(commented);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<int>{0, 1, 2});
    CHECK(rows[2] == std::vector<int>{2, 0, 1});

    // A table that is Latin with identity but not associative loads as a loop
    // and is rejected as a group.
    std::string quintic = write_text("small5.tbl",
                                     "5\n"
                                     "0 1 2 3 4\n"
                                     "1 0 3 4 2\n"
                                     "2 4 0 1 3\n"
                                     "3 2 4 0 1\n"
                                     "4 3 1 2 0\n");
    FiniteLoop loop = read_loop_file(quintic);
    CHECK(loop.order == 5);
    std::string msg = expect_error([&] { read_group_file(quintic); }, errc::not_associative);
    CHECK(contains(msg, "NotAssociative"));
}

TEST_CASE("table parse errors carry path, line, and column") {
    std::string missing = (scratch_dir() / "no_such.tbl").string();
    std::string msg = expect_error([&] { read_group_file(missing); }, errc::parse_error);
    CHECK(msg == "ParseError: " + missing + ": cannot open file");

    auto fail_with = [&](const std::string& name, const std::string& text, const std::string& suffix) {
        std::string p = write_text(name, text);
        std::string what = expect_error([&] { read_table_rows(p); }, errc::parse_error);
        CHECK(what == "ParseError: " + p + suffix);
    };

    fail_with("two_on_first.tbl", "3 3\n", ":1:1: first line must hold exactly the order");
    fail_with("zero_order.tbl", "0\n", ":1:1: order must be at least 1");
    fail_with("short_row.tbl", "3\n0 1 2\n1 2\n2 0 1\n", ":3:1: row 1 has 2 entries, expected 3");
    fail_with("big_entry.tbl", "3\n0 1 2\n1 2 5\n2 0 1\n", ":3:3: entry 5 out of range [0, 3)");
    fail_with("neg_entry.tbl", "3\n0 1 -1\n1 2 0\n2 0 1\n", ":2:3: entry -1 out of range [0, 3)");
    fail_with("trailing.tbl", "3\n0 1 2\n1 2 0\n2 0 1\n7\n", ":5:1: unexpected content after the table");
    fail_with("too_few_rows.tbl", "3\n0 1 2\n", ":2:1: expected 3 rows, found 1");
    fail_with("empty.tbl", "", ":1:1: empty table file");
    fail_with("only_comments.tbl", "# nothing here\n", ":1:1: empty table file");
    fail_with("letter.tbl", "3\n0 a 2\n1 2 0\n2 0 1\n", ":2:3: expected an integer");
    fail_with("glued.tbl", "3\n0 1x 2\n1 2 0\n2 0 1\n", ":2:4: unexpected character in number");
    fail_with("huge.tbl", "99999999999\n", ":1:1: integer out of range");
}

TEST_CASE("builder expressions construct groups") {
    CHECK(group_from_expression("cyclic(6)").table == cyclic(6).table);
    CHECK(group_from_expression("  dihedral( 4 )  ").order == 8);
    CHECK(group_from_expression("symmetric(4)").order == 24);
    CHECK(group_from_expression("quaternion8").table == quaternion8().table);
    CHECK(group_from_expression("quaternion8()").order == 8);

    FiniteGroup d = group_from_expression("direct_product(cyclic(2), cyclic(3))");
    CHECK(d.table == direct_product({cyclic(2), cyclic(3)}).table);

    FiniteGroup nested = group_from_expression("direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2)))");
    CHECK(nested.order == 8);
    for (int x = 0; x < nested.order; ++x) CHECK(nested.mul(x, x) == 0); // elementary abelian

    // Anything that is not a builder call is treated as a table file path.
    FiniteGroup c6 = cyclic(6);
    fs::path p = scratch_dir() / "expr_c6.tbl";
    write_table_file(p.string(), c6.order, c6.table);
    CHECK(group_from_expression(p.string()).table == c6.table);
    std::string msg =
        expect_error([&] { group_from_expression((scratch_dir() / "absent.tbl").string()); }, errc::parse_error);
    CHECK(contains(msg, "cannot open file"));
}

TEST_CASE("builder expressions reject malformed input") {
    auto fail_msg = [&](const std::string& expr) {
        return expect_error([&] { group_from_expression(expr); }, errc::parse_error);
    };
    CHECK(fail_msg("") == "ParseError: empty group expression");
    CHECK(fail_msg("   ") == "ParseError: empty group expression");
    CHECK(fail_msg("cyclic()") == "ParseError: builder expression 'cyclic()': missing argument");
    CHECK(fail_msg("cyclic(x)") == "ParseError: builder expression 'cyclic(x)': argument must be a number");
    CHECK(fail_msg("cyclic(-3)") == "ParseError: builder expression 'cyclic(-3)': argument must be a number");
    CHECK(fail_msg("cyclic(0)") == "ParseError: builder expression 'cyclic(0)': argument out of range");
    CHECK(fail_msg("cyclic(99999999999)") ==
          "ParseError: builder expression 'cyclic(99999999999)': argument out of range");
    CHECK(fail_msg("quaternion8(3)") ==
          "ParseError: builder expression 'quaternion8(3)': quaternion8 takes no argument");
    CHECK(fail_msg("direct_product(cyclic(2),)") ==
          "ParseError: builder expression 'direct_product(cyclic(2),)': empty factor");
    CHECK(fail_msg("frobnicate(3)") == "ParseError: unknown builder 'frobnicate' in expression 'frobnicate(3)'");

    // Builder caps propagate from the constructors themselves.
    expect_error([&] { group_from_expression("symmetric(9)"); }, errc::size_cap_exceeded);
}

TEST_CASE("section instance files parse groups, subgroups, and options") {
    std::string minimal =
        write_text("s3.sect.json", R"j({"group": "symmetric(3)", "subgroup": [2, 0]})j");
    SectionInstance inst = read_section_instance(minimal);
    CHECK(inst.group.order == 6);
    CHECK(inst.subgroup.members == std::vector<int>{0, 2}); // stored sorted
    CHECK(inst.options.max_solutions == std::numeric_limits<std::uint64_t>::max());
    CHECK_FALSE(inst.options.symmetry_breaking);
    CHECK_FALSE(inst.options.parallel);
    CHECK_FALSE(inst.options.require_generation);

    std::string full = write_text("s4.sect.json", R"j({
        "group": "symmetric(4)",
        "subgroup": [0, 2, 6, 8, 12, 14],
        "options": {"maxSolutions": 10, "symmetryBreaking": true, "parallel": true, "requireGeneration": true}
    })j");
    SectionInstance s4 = read_section_instance(full);
    CHECK(s4.group.order == 24);
    CHECK(s4.subgroup.members.size() == 6);
    CHECK(s4.options.max_solutions == 10);
    CHECK(s4.options.symmetry_breaking);
    CHECK(s4.options.parallel);
    CHECK(s4.options.require_generation);

    std::string unlimited = write_text(
        "unlim.sect.json",
        R"j({"group": "symmetric(3)", "subgroup": [0, 2], "options": {"maxSolutions": "unlimited"}})j");
    CHECK(read_section_instance(unlimited).options.max_solutions == std::numeric_limits<std::uint64_t>::max());

    // The group field accepts a table-file path as well.
    FiniteGroup c6 = cyclic(6);
    fs::path tbl = scratch_dir() / "inst_c6.tbl";
    write_table_file(tbl.string(), c6.order, c6.table);
    std::string via_path =
        write_text("path.sect.json", "{\"group\": \"" + tbl.string() + "\", \"subgroup\": [0, 3]}");
    SectionInstance from_file = read_section_instance(via_path);
    CHECK(from_file.group.table == c6.table);
    CHECK(from_file.subgroup.members == std::vector<int>{0, 3});
}

TEST_CASE("section instance files reject bad subgroups and options") {
    auto fail_with = [&](const std::string& name, const std::string& text, errc code, const std::string& fragment) {
        std::string p = write_text(name, text);
        std::string msg = expect_error([&] { read_section_instance(p); }, code);
        CHECK(contains(msg, p));
        CHECK(contains(msg, fragment));
    };

    fail_with("oob.sect.json", R"j({"group": "symmetric(3)", "subgroup": [0, 99]})j", errc::parse_error,
              "subgroup index 99 out of range");
    fail_with("neg.sect.json", R"j({"group": "symmetric(3)", "subgroup": [-1, 0]})j", errc::parse_error,
              "subgroup index -1 out of range");
    fail_with("open.sect.json", R"j({"group": "symmetric(3)", "subgroup": [0, 1, 2]})j", errc::builder_precondition,
              "subgroup member list is not closed under the product (or misses the identity)");
    fail_with("noid.sect.json", R"j({"group": "symmetric(3)", "subgroup": [2]})j", errc::builder_precondition,
              "misses the identity");
    fail_with("zero_max.sect.json",
              R"j({"group": "symmetric(3)", "subgroup": [0, 2], "options": {"maxSolutions": 0}})j",
              errc::parse_error, "maxSolutions must be at least 1");
    fail_with("bad_max.sect.json",
              R"j({"group": "symmetric(3)", "subgroup": [0, 2], "options": {"maxSolutions": "all"}})j",
              errc::parse_error, "maxSolutions must be a count or \"unlimited\"");
    fail_with("bool_max.sect.json",
              R"j({"group": "symmetric(3)", "subgroup": [0, 2], "options": {"maxSolutions": true}})j",
              errc::parse_error, "maxSolutions must be a count or \"unlimited\"");
    fail_with("int_flag.sect.json",
              R"j({"group": "symmetric(3)", "subgroup": [0, 2], "options": {"parallel": 1}})j", errc::parse_error,
              "option \"parallel\" must be a boolean");
    fail_with("arr_opts.sect.json", R"j({"group": "symmetric(3)", "subgroup": [0, 2], "options": []})j",
              errc::parse_error, "\"options\" must be an object");
    fail_with("no_subgroup.sect.json", R"j({"group": "symmetric(3)"})j", errc::parse_error,
              "missing required field \"subgroup\"");
    fail_with("no_group.sect.json", R"j({"subgroup": [0]})j", errc::parse_error,
              "missing required field \"group\"");
    fail_with("num_group.sect.json", R"j({"group": 5, "subgroup": [0]})j", errc::parse_error,
              "field \"group\" must be a builder or path string");
    fail_with("str_subgroup.sect.json", R"j({"group": "cyclic(2)", "subgroup": "x"})j", errc::parse_error,
              "field \"subgroup\" must be an array of integers");
    fail_with("mixed_subgroup.sect.json", R"j({"group": "cyclic(2)", "subgroup": [0, "a"]})j", errc::parse_error,
              "field \"subgroup\" must contain only integers");

    // Malformed JSON surfaces the parser's message prefixed by the path.
    std::string broken = write_text("broken.sect.json", "{");
    std::string msg = expect_error([&] { read_section_instance(broken); }, errc::parse_error);
    CHECK(contains(msg, broken + ":"));
}

TEST_CASE("product spec files parse direct and torus forms") {
    std::string direct = write_text("prod18.json", R"j({
        "K": "cyclic(3)", "P": "symmetric(3)", "S": "cyclic(2)",
        "phi": [0, 2], "g": [0, 1, 1]
    })j");
    ProductSpec spec = read_product_spec(direct);
    CHECK(spec.K.order == 3);
    CHECK(spec.P.order == 6);
    CHECK(spec.S.order == 2);
    CHECK(spec.phi.image == std::vector<int>{0, 2});
    CHECK(spec.g.image == std::vector<int>{0, 1, 1});
    CHECK(build_product_loop(spec).order == 18);

    std::string torus = write_text("torus24.json", R"j({
        "torus": {"m": 4, "s": 2}, "P": "symmetric(3)",
        "phi": [0, 2], "g": [0, 1, 1, 0]
    })j");
    ProductSpec ts = read_product_spec(torus);
    CHECK(ts.K.order == 4);
    CHECK(ts.K.table == cyclic(4).table);
    CHECK(ts.S.order == 2);
    CHECK(ts.g.image == std::vector<int>{0, 1, 1, 0});
    CHECK(build_product_loop(ts).order == 24);

    auto fail_with = [&](const std::string& name, const std::string& text, errc code, const std::string& fragment) {
        std::string p = write_text(name, text);
        std::string msg = expect_error([&] { read_product_spec(p); }, code);
        CHECK(contains(msg, fragment));
    };
    fail_with("torus_num.json", R"j({"torus": 5, "P": "symmetric(3)", "phi": [0, 2], "g": [0]})j",
              errc::parse_error, "\"torus\" must be an object {\"m\": int, \"s\": int}");
    fail_with("torus_no_s.json", R"j({"torus": {"m": 4}, "P": "symmetric(3)", "phi": [0, 2], "g": [0]})j",
              errc::parse_error, "\"torus\" must be an object {\"m\": int, \"s\": int}");
    fail_with("torus_bad_m.json", R"j({"torus": {"m": 0, "s": 1}, "P": "symmetric(3)", "phi": [0], "g": [0]})j",
              errc::builder_precondition, "m must be positive");
    fail_with("no_phi.json", R"j({"K": "cyclic(3)", "P": "symmetric(3)", "S": "cyclic(2)", "g": [0, 1, 1]})j",
              errc::parse_error, "missing required field \"phi\"");
}

TEST_CASE("section lines round trip and report malformed input") {
    Section s{{0, 4, 3}};
    std::ostringstream os;
    write_section_line(os, s);
    CHECK(os.str() == "0 4 3\n");

    CHECK(parse_section_line("0 4 3", 1).choice == std::vector<int>{0, 4, 3});
    CHECK(parse_section_line("0 7 16 23 # orbit=6", 4).choice == std::vector<int>{0, 7, 16, 23});
    CHECK(parse_section_line("", 2).choice.empty());
    CHECK(parse_section_line("# comment only", 3).choice.empty());

    std::string msg = expect_error([&] { parse_section_line("0 x", 9); }, errc::parse_error);
    CHECK(msg == "ParseError: <sections>:9:3: expected an integer");
}

TEST_CASE("block files list factor classes by block index") {
    FactorLoop f = factor_loop(as_loop(cyclic(6)), Subloop{{0, 3}});
    fs::path p = scratch_dir() / "blocks.txt";
    write_blocks_file(p.string(), f);
    CHECK(read_text(p.string()) == "0: 0 3\n1: 1 4\n2: 2 5\n");
}

TEST_CASE("coordinate files round trip doubled octonion vectors") {
    std::vector<OctonionH> coords = {
        OctonionH{2, 0, 0, 0, 0, 0, 0, 0},
        OctonionH{-1, -1, -1, 0, -1, 0, 0, 0},
    };
    fs::path p = scratch_dir() / "coords.txt";
    write_coords_file(p.string(), coords);
    std::vector<OctonionH> back = read_coords_file(p.string());
    REQUIRE(back.size() == 2);
    CHECK(back[0] == coords[0]);
    CHECK(back[1] == coords[1]);

    std::string skipping = write_text("coords_comments.txt", "# header\n2 0 0 0 0 0 0 0\n\n");
    CHECK(read_coords_file(skipping).size() == 1);

    std::string short_row = write_text("coords_short.txt", "1 2 3 4 5 6 7\n");
    std::string msg = expect_error([&] { read_coords_file(short_row); }, errc::parse_error);
    CHECK(msg == "ParseError: " + short_row + ":1:1: expected 8 coordinates per line");
}
