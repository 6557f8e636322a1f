#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopsmith/group.hpp"
#include "loopsmith/io.hpp"
#include "loopsmith/loop.hpp"
#include "loopsmith/octonion.hpp"
#include "loopsmith/product.hpp"
#include "loopsmith/sections.hpp"

namespace fs = std::filesystem;
using namespace loopsmith;

namespace {

std::string witness_suffix(const std::optional<std::array<int, 3>>& w) {
    if (!w) return "";
    return " (witness=(" + std::to_string((*w)[0]) + "," + std::to_string((*w)[1]) + "," + std::to_string((*w)[2]) +
           "))";
}

void print_trailer(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
}

const char* yn(bool b) { return b ? "yes" : "no"; }
const char* tf(bool b) { return b ? "true" : "false"; }

int cmd_validate(const std::string& path) {
    std::vector<std::vector<int>> rows = read_table_rows(path);
    std::cout << "order: " << rows.size() << "\n";
    std::vector<std::pair<std::string, std::string>> trailer{{"order", std::to_string(rows.size())}};
    FiniteLoop loop;
    try {
        loop = make_loop(rows);
    } catch (const loop_error& e) {
        if (e.code() == errc::not_latin) {
            std::cout << "latin: no -- " << e.what() << "\n";
            trailer.emplace_back("latin", "false");
        } else {
            std::cout << "latin: yes\n";
            std::cout << "identity: no -- " << e.what() << "\n";
            trailer.emplace_back("latin", "true");
            trailer.emplace_back("identity", "false");
        }
        trailer.emplace_back("loop", "false");
        print_trailer(std::cout, trailer);
        return 1;
    }
    bool assoc = is_associative(loop);
    bool moufang = is_moufang(loop);
    std::cout << "latin: yes\n";
    std::cout << "identity: yes\n";
    std::cout << "loop: yes\n";
    std::cout << "group: " << yn(assoc) << "\n";
    std::cout << "associative: " << yn(assoc) << (assoc ? "" : witness_suffix(first_associator_witness(loop))) << "\n";
    std::cout << "moufang: " << yn(moufang) << (moufang ? "" : witness_suffix(first_moufang_witness(loop))) << "\n";
    trailer.emplace_back("latin", "true");
    trailer.emplace_back("identity", "true");
    trailer.emplace_back("loop", "true");
    trailer.emplace_back("group", tf(assoc));
    trailer.emplace_back("associative", tf(assoc));
    trailer.emplace_back("moufang", tf(moufang));
    print_trailer(std::cout, trailer);
    return 0;
}

int cmd_build_product(const std::string& spec_path, const std::string& out_dir) {
    ProductSpec spec = read_product_spec(spec_path);
    FiniteLoop loop = build_product_loop(spec);
    ProductRealization real = build_group_and_section(spec);
    fs::create_directories(out_dir);
    fs::path out(out_dir);
    write_table_file((out / "loop.tbl").string(), loop.order, loop.table);
    write_table_file((out / "group.tbl").string(), real.G.order, real.G.table);
    {
        std::ofstream sf(out / "section.txt");
        write_section_line(sf, real.section);
    }
    Report prop = properness_report(spec);
    Report dec = decomposition_report(spec);
    std::vector<std::pair<std::string, std::string>> trailer;
    std::vector<std::string> seen;
    for (const auto& src : {prop.trailer, dec.trailer})
        for (const auto& kv : src) {
            if (std::find(seen.begin(), seen.end(), kv.first) != seen.end()) continue;
            seen.push_back(kv.first);
            trailer.push_back(kv);
        }
    trailer.emplace_back("group_order", std::to_string(real.G.order));
    trailer.emplace_back("section_length", std::to_string(real.section.choice.size()));
    trailer.emplace_back("out", out_dir);
    std::string body = prop.text + dec.text;
    std::cout << body;
    print_trailer(std::cout, trailer);
    std::ofstream rf(out / "report.txt");
    rf << body;
    print_trailer(rf, trailer);
    return 0;
}

int cmd_check(const std::string& instance_path, const std::string& stream_path) {
    SectionInstance inst = read_section_instance(instance_path);
    CosetSpace cs = left_cosets(inst.group, inst.subgroup);
    std::ifstream in(stream_path);
    if (!in) throw loop_error(errc::parse_error, stream_path + ": cannot open file");
    std::string line;
    int line_no = 0;
    long long checked = 0, failed = 0;
    while (std::getline(in, line)) {
        ++line_no;
        Section s = parse_section_line(line, line_no);
        if (s.choice.empty()) continue;
        ++checked;
        std::string reason;
        if (static_cast<int>(s.choice.size()) != cs.count) {
            reason = "expected " + std::to_string(cs.count) + " entries, found " + std::to_string(s.choice.size());
        } else if (s.choice[0] != 0) {
            reason = "identity coset must carry element 0";
        } else {
            std::vector<char> covered(static_cast<std::size_t>(cs.count), 0);
            for (int z : s.choice) {
                if (z < 0 || z >= inst.group.order) {
                    reason = "element " + std::to_string(z) + " out of range";
                    break;
                }
                int c = cs.coset_of[static_cast<std::size_t>(z)];
                if (covered[static_cast<std::size_t>(c)]) {
                    reason = "image is not a transversal (coset " + std::to_string(c) + " hit twice)";
                    break;
                }
                covered[static_cast<std::size_t>(c)] = 1;
            }
            if (reason.empty() && !is_sharply_transitive(inst.group, cs, s.choice))
                reason = "image does not act sharply transitively";
            if (reason.empty() && inst.options.require_generation &&
                static_cast<int>(subgroup_closure(inst.group, s.choice).members.size()) != inst.group.order)
                reason = "image does not generate the group";
        }
        if (!reason.empty()) {
            ++failed;
            std::cout << "line " << line_no << ": FAIL -- " << reason << "\n";
        }
    }
    print_trailer(std::cout, {{"checked", std::to_string(checked)},
                              {"passed", std::to_string(checked - failed)},
                              {"failed", std::to_string(failed)}});
    return failed == 0 ? 0 : 1;
}

struct SearchFlags {
    std::uint64_t limit = 0; // 0 = keep instance setting
    bool count_only = false;
    bool require_generation = false;
    bool symmetry_breaking = false;
    bool parallel = false;
};

int cmd_search(const std::string& instance_path, const SearchFlags& flags) {
    SectionInstance inst = read_section_instance(instance_path);
    SearchOptions opts = inst.options;
    if (flags.limit > 0) opts.max_solutions = flags.limit;
    if (flags.require_generation) opts.require_generation = true;
    if (flags.symmetry_breaking) opts.symmetry_breaking = true;
    if (flags.parallel) opts.parallel = true;
    if (flags.count_only) {
        std::uint64_t n = count_sections(inst.group, inst.subgroup, opts);
        print_trailer(std::cout, {{"count", std::to_string(n)}});
        return 0;
    }
    std::uint64_t emitted = 0, total = 0;
    enumerate_sections(inst.group, inst.subgroup, opts, [&](const SectionHit& hit) {
        for (std::size_t i = 0; i < hit.section.choice.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << hit.section.choice[i];
        }
        if (opts.symmetry_breaking) std::cout << " # orbit=" << hit.orbit_size;
        std::cout << "\n";
        ++emitted;
        total += hit.orbit_size;
        return true;
    });
    std::vector<std::pair<std::string, std::string>> trailer{{"count", std::to_string(emitted)}};
    if (opts.symmetry_breaking) trailer.emplace_back("total", std::to_string(total));
    print_trailer(std::cout, trailer);
    return 0;
}

int cmd_classify(const std::string& instance_path) {
    SectionInstance inst = read_section_instance(instance_path);
    std::vector<LoopClass> classes = classify_section_loops(inst.group, inst.subgroup, inst.options);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const LoopClass& c = classes[i];
        total += c.multiplicity;
        std::cout << "class " << i << ": order " << c.representative.order << " multiplicity " << c.multiplicity
                  << " associative " << yn(is_associative(c.representative)) << "\n";
        for (int r = 0; r < c.representative.order; ++r) {
            std::cout << " ";
            for (int cc = 0; cc < c.representative.order; ++cc)
                std::cout << ' ' << c.representative.mul(r, cc);
            std::cout << "\n";
        }
    }
    print_trailer(std::cout, {{"classes", std::to_string(classes.size())}, {"total", std::to_string(total)}});
    return 0;
}

OctonionF random_unit_octonion(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        OctonionF x{};
        double n2 = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            x[i] = gauss(rng);
            n2 += x[i] * x[i];
        }
        if (n2 < 1e-12) continue;
        double inv = 1.0 / std::sqrt(n2);
        for (std::size_t i = 0; i < 8; ++i) x[i] *= inv;
        return x;
    }
}

int cmd_octonion_demo(long long samples, std::uint64_t seed, const std::string& out_dir) {
    OctavianLoop oct = build_octavian_units();
    bool closure_ok = oct.loop.order == 240;
    Subloop centre = centre_of_loop(oct.loop);
    FiniteLoop factor = octavian_factor_by_centre(oct);
    bool moufang240 = is_moufang(oct.loop);
    bool assoc240 = is_associative(oct.loop);
    auto wit = first_associator_witness(oct.loop);
    bool moufang120 = is_moufang(factor);
    bool assoc120 = is_associative(factor);
    bool diassoc = two_generated_subloops_associative(oct.loop);
    std::cout << "octavian unit system: closure size " << oct.loop.order << " (seed candidate " << oct.seed_index
              << ")\n";
    std::cout << "moufang identity on all 240^3 triples: " << yn(moufang240) << "\n";
    std::cout << "associative: " << yn(assoc240) << witness_suffix(wit) << "\n";
    std::cout << "centre size: " << centre.members.size() << "\n";
    std::cout << "central factor: order " << factor.order << ", moufang " << yn(moufang120) << ", associative "
              << yn(assoc120) << "\n";
    std::cout << "every 2-generated subloop associative: " << yn(diassoc) << "\n";
    double max_residual = 0, max_norm_err = 0, max_embed_err = 0;
    if (samples > 0) {
        std::mt19937_64 rng(seed);
        for (long long t = 0; t < samples; ++t) {
            OctonionF x = random_unit_octonion(rng), y = random_unit_octonion(rng), z = random_unit_octonion(rng);
            max_residual = std::max(max_residual, moufang_residual(x, y, z));
            double err = std::abs(oct_norm2(oct_mul(x, y)) - oct_norm2(x) * oct_norm2(y));
            max_norm_err = std::max(max_norm_err, err);
        }
        std::uniform_int_distribution<int> pick(0, 239);
        for (long long t = 0; t < samples; ++t) {
            const OctonionH& a = oct.elements[static_cast<std::size_t>(pick(rng))];
            const OctonionH& b = oct.elements[static_cast<std::size_t>(pick(rng))];
            OctonionF ff = oct_mul(to_float(a), to_float(b));
            OctonionF ee = to_float(oct_mul(a, b));
            for (std::size_t i = 0; i < 8; ++i) max_embed_err = std::max(max_embed_err, std::abs(ff[i] - ee[i]));
        }
        std::cout << "max moufang residual over " << samples << " random unit triples: " << max_residual << "\n";
        std::cout << "max norm-multiplicativity error: " << max_norm_err << "\n";
        std::cout << "max exact-vs-float coordinate gap on unit products: " << max_embed_err << "\n";
    } else {
        std::cout << "float sampling skipped (samples=0)\n";
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        fs::path out(out_dir);
        write_table_file((out / "oct240.tbl").string(), oct.loop.order, oct.loop.table);
        write_coords_file((out / "oct240.coords").string(), oct.elements);
        write_table_file((out / "factor120.tbl").string(), factor.order, factor.table);
        FactorLoop blocks = factor_loop(oct.loop, centre);
        write_blocks_file((out / "factor120.blocks").string(), blocks);
        std::cout << "files written to " << out_dir << "\n";
    }
    bool pass = closure_ok && moufang240 && !assoc240 && centre.members.size() == 2 && factor.order == 120 &&
                moufang120 && !assoc120 && diassoc &&
                (samples == 0 || (max_residual <= 1e-12 && max_norm_err <= 1e-12 && max_embed_err <= 1e-14));
    std::vector<std::pair<std::string, std::string>> trailer{
        {"closure", std::to_string(oct.loop.order)},
        {"seed_candidate", std::to_string(oct.seed_index)},
        {"centre", std::to_string(centre.members.size())},
        {"factor", std::to_string(factor.order)},
        {"moufang", moufang240 && moufang120 ? "exact" : "violated"},
        {"associative", tf(assoc240)},
        {"diassociative", tf(diassoc)},
        {"samples", std::to_string(samples)},
        {"seed", std::to_string(seed)},
    };
    if (samples > 0) {
        std::ostringstream r1, r2, r3;
        r1 << max_residual;
        r2 << max_norm_err;
        r3 << max_embed_err;
        trailer.emplace_back("max_moufang_residual", r1.str());
        trailer.emplace_back("max_norm_error", r2.str());
        trailer.emplace_back("max_embed_error", r3.str());
    }
    trailer.emplace_back("pass", tf(pass));
    print_trailer(std::cout, trailer);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite loops realized as sharply transitive sections in finite groups"};
    app.require_subcommand(1);

    std::string table_path;
    CLI::App* validate = app.add_subcommand("validate", "check a .tbl multiplication table for loop and group axioms");
    validate->add_option("table", table_path, "path to a .tbl file")->required();

    std::string prod_path, prod_out;
    CLI::App* build = app.add_subcommand("build-product", "build the twisted-product loop from a .prod.json spec");
    build->add_option("spec", prod_path, "path to a .prod.json file")->required();
    build->add_option("--out", prod_out, "output directory for loop/group/section/report files")->required();

    std::string check_instance, check_stream;
    CLI::App* check = app.add_subcommand("check", "verify a stream of sections against a .sect.json instance");
    check->add_option("instance", check_instance, "path to a .sect.json file")->required();
    check->add_option("sections", check_stream, "file with one section per line")->required();

    std::string search_instance;
    SearchFlags flags;
    CLI::App* search = app.add_subcommand("search-sections", "enumerate sharply transitive sections of an instance");
    search->add_option("instance", search_instance, "path to a .sect.json file")->required();
    search->add_option("--limit", flags.limit, "stop after this many sections");
    search->add_flag("--count-only", flags.count_only, "print only the count");
    search->add_flag("--require-generation", flags.require_generation, "keep only sections whose image generates");
    search->add_flag("--symmetry-breaking", flags.symmetry_breaking, "one representative per conjugation orbit");
    search->add_flag("--parallel", flags.parallel, "split the search across threads (sorted, deterministic output)");

    std::string classify_instance;
    CLI::App* classify = app.add_subcommand("classify", "group the section-induced loops into isomorphism classes");
    classify->add_option("instance", classify_instance, "path to a .sect.json file")->required();

    long long samples = 10000;
    std::uint64_t seed = 12345;
    std::string oct_out;
    CLI::App* demo = app.add_subcommand("octonion-demo", "exact octavian loop plus float Moufang residuals");
    demo->add_option("--samples", samples, "number of random float samples (0 skips the float section)");
    demo->add_option("--seed", seed, "random seed");
    demo->add_option("--out", oct_out, "directory for table and coordinate files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(table_path);
        if (*build) return cmd_build_product(prod_path, prod_out);
        if (*check) return cmd_check(check_instance, check_stream);
        if (*search) return cmd_search(search_instance, flags);
        if (*classify) return cmd_classify(classify_instance);
        if (*demo) return cmd_octonion_demo(samples, seed, oct_out);
    } catch (const loop_error& e) {
        std::cerr << e.what() << "\n";
        return e.code() == errc::parse_error ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
