#include "loopsmith/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace loopsmith {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, int line, int col, const std::string& msg) {
    throw loop_error(errc::parse_error,
                     path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

// Splits a line into integers, reporting the 1-based column of the first
// offending character on failure.
std::vector<int> parse_int_line(const std::string& path, const std::string& line, int line_no) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        if (line[i] == '-' || line[i] == '+') ++i;
        if (i >= line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
            parse_fail(path, line_no, static_cast<int>(start) + 1, "expected an integer");
        long long v = 0;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
            v = v * 10 + (line[i] - '0');
            if (v > std::numeric_limits<int>::max())
                parse_fail(path, line_no, static_cast<int>(start) + 1, "integer out of range");
            ++i;
        }
        if (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#')
            parse_fail(path, line_no, static_cast<int>(i) + 1, "unexpected character in number");
        if (line[start] == '-') v = -v;
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::ifstream open_or_fail(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw loop_error(errc::parse_error, path + ": cannot open file");
    return in;
}

std::ofstream create_or_fail(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw loop_error(errc::parse_error, path + ": cannot create file");
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

int parse_builder_arg(const std::string& expr, const std::string& inner) {
    std::string t = trim(inner);
    if (t.empty()) throw loop_error(errc::parse_error, "builder expression '" + expr + "': missing argument");
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw loop_error(errc::parse_error, "builder expression '" + expr + "': argument must be a number");
    long long v = std::stoll(t);
    if (v < 1 || v > std::numeric_limits<int>::max())
        throw loop_error(errc::parse_error, "builder expression '" + expr + "': argument out of range");
    return static_cast<int>(v);
}

// Splits "a, b, c" at top-level commas (respecting nested parentheses).
std::vector<std::string> split_args(const std::string& inner) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : inner) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

json load_json(const std::string& path) {
    std::ifstream in = open_or_fail(path);
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw loop_error(errc::parse_error, path + ": " + e.what());
    }
}

FiniteGroup group_from_json_field(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key))
        throw loop_error(errc::parse_error, path + ": missing required field \"" + key + "\"");
    if (!j.at(key).is_string())
        throw loop_error(errc::parse_error, path + ": field \"" + key + "\" must be a builder or path string");
    return group_from_expression(j.at(key).get<std::string>());
}

std::vector<int> int_array_field(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key))
        throw loop_error(errc::parse_error, path + ": missing required field \"" + key + "\"");
    const json& a = j.at(key);
    if (!a.is_array())
        throw loop_error(errc::parse_error, path + ": field \"" + key + "\" must be an array of integers");
    std::vector<int> out;
    for (const json& v : a) {
        if (!v.is_number_integer())
            throw loop_error(errc::parse_error, path + ": field \"" + key + "\" must contain only integers");
        out.push_back(v.get<int>());
    }
    return out;
}

} // namespace

std::vector<std::vector<int>> read_table_rows(const std::string& path) {
    std::ifstream in = open_or_fail(path);
    std::string line;
    int line_no = 0;
    int order = -1;
    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<int> vals = parse_int_line(path, line, line_no);
        if (vals.empty()) continue;
        if (order < 0) {
            if (vals.size() != 1) parse_fail(path, line_no, 1, "first line must hold exactly the order");
            order = vals[0];
            if (order < 1) parse_fail(path, line_no, 1, "order must be at least 1");
            continue;
        }
        if (static_cast<int>(rows.size()) == order)
            parse_fail(path, line_no, 1, "unexpected content after the table");
        if (static_cast<int>(vals.size()) != order)
            parse_fail(path, line_no, 1,
                       "row " + std::to_string(rows.size()) + " has " + std::to_string(vals.size()) +
                           " entries, expected " + std::to_string(order));
        for (std::size_t c = 0; c < vals.size(); ++c)
            if (vals[c] < 0 || vals[c] >= order)
                parse_fail(path, line_no, static_cast<int>(c) + 1,
                           "entry " + std::to_string(vals[c]) + " out of range [0, " + std::to_string(order) + ")");
        rows.push_back(std::move(vals));
    }
    if (order < 0) parse_fail(path, line_no == 0 ? 1 : line_no, 1, "empty table file");
    if (static_cast<int>(rows.size()) != order)
        parse_fail(path, line_no, 1,
                   "expected " + std::to_string(order) + " rows, found " + std::to_string(rows.size()));
    return rows;
}

FiniteGroup read_group_file(const std::string& path) { return make_group(read_table_rows(path)); }

FiniteLoop read_loop_file(const std::string& path) { return make_loop(read_table_rows(path)); }

void write_table(std::ostream& os, int order, const std::vector<int>& flat) {
    os << order << "\n";
    for (int r = 0; r < order; ++r) {
        for (int c = 0; c < order; ++c) {
            if (c) os << ' ';
            os << flat[static_cast<std::size_t>(r) * order + c];
        }
        os << "\n";
    }
}

void write_table_file(const std::string& path, int order, const std::vector<int>& flat) {
    std::ofstream out = create_or_fail(path);
    write_table(out, order, flat);
}

FiniteGroup group_from_expression(const std::string& raw) {
    std::string expr = trim(raw);
    if (expr.empty()) throw loop_error(errc::parse_error, "empty group expression");
    std::size_t open = expr.find('(');
    if (open != std::string::npos && expr.back() == ')') {
        std::string head = trim(expr.substr(0, open));
        std::string inner = expr.substr(open + 1, expr.size() - open - 2);
        if (head == "cyclic") return cyclic(parse_builder_arg(expr, inner));
        if (head == "dihedral") return dihedral(parse_builder_arg(expr, inner));
        if (head == "symmetric") return symmetric(parse_builder_arg(expr, inner));
        if (head == "quaternion8") {
            if (!trim(inner).empty())
                throw loop_error(errc::parse_error, "builder expression '" + expr + "': quaternion8 takes no argument");
            return quaternion8();
        }
        if (head == "direct_product") {
            std::vector<FiniteGroup> parts;
            for (const std::string& arg : split_args(inner)) {
                if (trim(arg).empty())
                    throw loop_error(errc::parse_error, "builder expression '" + expr + "': empty factor");
                parts.push_back(group_from_expression(arg));
            }
            return direct_product(parts);
        }
        throw loop_error(errc::parse_error, "unknown builder '" + head + "' in expression '" + expr + "'");
    }
    if (expr == "quaternion8") return quaternion8();
    return read_group_file(expr);
}

SectionInstance read_section_instance(const std::string& path) {
    json j = load_json(path);
    SectionInstance inst;
    inst.group = group_from_json_field(j, path, "group");
    std::vector<int> members = int_array_field(j, path, "subgroup");
    std::sort(members.begin(), members.end());
    for (int m : members)
        if (m < 0 || m >= inst.group.order)
            throw loop_error(errc::parse_error, path + ": subgroup index " + std::to_string(m) + " out of range");
    if (!is_subgroup_members(inst.group, members))
        throw loop_error(errc::builder_precondition,
                         path + ": subgroup member list is not closed under the product (or misses the identity)");
    inst.subgroup = Subgroup{std::move(members)};
    if (j.contains("options")) {
        const json& o = j.at("options");
        if (!o.is_object()) throw loop_error(errc::parse_error, path + ": \"options\" must be an object");
        if (o.contains("maxSolutions")) {
            const json& ms = o.at("maxSolutions");
            if (ms.is_string()) {
                if (ms.get<std::string>() != "unlimited")
                    throw loop_error(errc::parse_error, path + ": maxSolutions must be a count or \"unlimited\"");
            } else if (ms.is_number_integer()) {
                long long v = ms.get<long long>();
                if (v < 1) throw loop_error(errc::parse_error, path + ": maxSolutions must be at least 1");
                inst.options.max_solutions = static_cast<std::uint64_t>(v);
            } else {
                throw loop_error(errc::parse_error, path + ": maxSolutions must be a count or \"unlimited\"");
            }
        }
        auto bool_opt = [&](const char* key, bool& slot) {
            if (!o.contains(key)) return;
            if (!o.at(key).is_boolean())
                throw loop_error(errc::parse_error, path + ": option \"" + std::string(key) + "\" must be a boolean");
            slot = o.at(key).get<bool>();
        };
        bool_opt("symmetryBreaking", inst.options.symmetry_breaking);
        bool_opt("parallel", inst.options.parallel);
        bool_opt("requireGeneration", inst.options.require_generation);
    }
    return inst;
}

ProductSpec read_product_spec(const std::string& path) {
    json j = load_json(path);
    ProductSpec spec;
    if (j.contains("torus")) {
        const json& t = j.at("torus");
        if (!t.is_object() || !t.contains("m") || !t.contains("s") || !t.at("m").is_number_integer() ||
            !t.at("s").is_number_integer())
            throw loop_error(errc::parse_error, path + ": \"torus\" must be an object {\"m\": int, \"s\": int}");
        FiniteGroup P = group_from_json_field(j, path, "P");
        Mapping phi{int_array_field(j, path, "phi")};
        Mapping g{int_array_field(j, path, "g")};
        return torus_variant_spec(t.at("m").get<int>(), t.at("s").get<int>(), P, phi, g);
    }
    spec.K = group_from_json_field(j, path, "K");
    spec.P = group_from_json_field(j, path, "P");
    spec.S = group_from_json_field(j, path, "S");
    spec.phi = Mapping{int_array_field(j, path, "phi")};
    spec.g = Mapping{int_array_field(j, path, "g")};
    return spec;
}

void write_section_line(std::ostream& os, const Section& s) {
    for (std::size_t i = 0; i < s.choice.size(); ++i) {
        if (i) os << ' ';
        os << s.choice[i];
    }
    os << "\n";
}

Section parse_section_line(const std::string& line, int line_number) {
    Section s;
    s.choice = parse_int_line("<sections>", line, line_number);
    return s;
}

void write_blocks_file(const std::string& path, const FactorLoop& f) {
    std::ofstream out = create_or_fail(path);
    for (std::size_t b = 0; b < f.blocks.size(); ++b) {
        out << b << ":";
        for (int m : f.blocks[b]) out << ' ' << m;
        out << "\n";
    }
}

void write_coords_file(const std::string& path, const std::vector<OctonionH>& elements) {
    std::ofstream out = create_or_fail(path);
    for (const OctonionH& x : elements) {
        for (std::size_t i = 0; i < 8; ++i) {
            if (i) out << ' ';
            out << x[i];
        }
        out << "\n";
    }
}

std::vector<OctonionH> read_coords_file(const std::string& path) {
    std::ifstream in = open_or_fail(path);
    std::vector<OctonionH> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<int> vals = parse_int_line(path, line, line_no);
        if (vals.empty()) continue;
        if (vals.size() != 8) parse_fail(path, line_no, 1, "expected 8 coordinates per line");
        OctonionH x{};
        for (std::size_t i = 0; i < 8; ++i) x[i] = vals[i];
        out.push_back(x);
    }
    return out;
}

} // namespace loopsmith
