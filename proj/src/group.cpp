#include "loopsmith/group.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace loopsmith {

namespace {

void check_latin_and_range(int n, const std::vector<int>& t) {
    // Scan row-major; at cell (r,c) report the first duplicate seen in its
    // row prefix or column prefix, so the named cell is deterministic.
    std::vector<char> row_seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<char> col_seen(static_cast<std::size_t>(n) * n, 0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            int v = t[static_cast<std::size_t>(r) * n + c];
            if (v < 0 || v >= n)
                throw loop_error(errc::not_latin, "entry " + std::to_string(v) + " out of range at cell (" +
                                                      std::to_string(r) + "," + std::to_string(c) + ")");
            if (row_seen[static_cast<std::size_t>(r) * n + v])
                throw loop_error(errc::not_latin, "value " + std::to_string(v) + " repeated in row " +
                                                      std::to_string(r) + " at cell (" + std::to_string(r) + "," +
                                                      std::to_string(c) + ")");
            if (col_seen[static_cast<std::size_t>(c) * n + v])
                throw loop_error(errc::not_latin, "value " + std::to_string(v) + " repeated in column " +
                                                      std::to_string(c) + " at cell (" + std::to_string(r) + "," +
                                                      std::to_string(c) + ")");
            row_seen[static_cast<std::size_t>(r) * n + v] = 1;
            col_seen[static_cast<std::size_t>(c) * n + v] = 1;
        }
    }
}

int find_two_sided_identity(int n, const std::vector<int>& t) {
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = t[static_cast<std::size_t>(e) * n + x] == x && t[static_cast<std::size_t>(x) * n + e] == x;
        if (ok) return e;
    }
    return -1;
}

std::vector<int> relabel_identity_to_zero(int n, const std::vector<int>& t, int e) {
    if (e == 0) return t;
    auto tau = [e](int x) { return x == 0 ? e : (x == e ? 0 : x); };
    std::vector<int> out(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out[static_cast<std::size_t>(tau(a)) * n + tau(b)] = tau(t[static_cast<std::size_t>(a) * n + b]);
    return out;
}

std::vector<int> compute_inverses(int n, const std::vector<int>& t) {
    std::vector<int> inv(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (t[static_cast<std::size_t>(a) * n + b] == 0) {
                inv[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
    }
    return inv;
}

} // namespace

FiniteGroup make_group(int order, std::vector<int> flat) {
    if (order <= 0) throw loop_error(errc::not_latin, "order must be positive");
    if (flat.size() != static_cast<std::size_t>(order) * order)
        throw loop_error(errc::not_latin, "table size does not match order");
    check_latin_and_range(order, flat);
    int e = find_two_sided_identity(order, flat);
    if (e < 0) throw loop_error(errc::no_identity, "no two-sided identity element");
    flat = relabel_identity_to_zero(order, flat, e);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c) {
                int ab = flat[static_cast<std::size_t>(a) * order + b];
                int bc = flat[static_cast<std::size_t>(b) * order + c];
                if (flat[static_cast<std::size_t>(ab) * order + c] !=
                    flat[static_cast<std::size_t>(a) * order + bc])
                    throw loop_error(errc::not_associative, "triple (" + std::to_string(a) + "," +
                                                                std::to_string(b) + "," + std::to_string(c) + ")");
            }
    FiniteGroup G;
    G.order = order;
    G.table = std::move(flat);
    G.inverse = compute_inverses(order, G.table);
    return G;
}

FiniteGroup make_group(const std::vector<std::vector<int>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw loop_error(errc::not_latin, "table is not square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return make_group(n, std::move(flat));
}

FiniteGroup group_from_table_unchecked(int order, std::vector<int> flat) {
    FiniteGroup G;
    G.order = order;
    G.table = std::move(flat);
    G.inverse = compute_inverses(order, G.table);
    return G;
}

FiniteGroup cyclic(int n) {
    if (n < 1) throw loop_error(errc::builder_precondition, "cyclic order must be >= 1");
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    return group_from_table_unchecked(n, std::move(t));
}

FiniteGroup dihedral(int n) {
    if (n < 1) throw loop_error(errc::builder_precondition, "dihedral parameter must be >= 1");
    // Elements: a^i for i < n, then a^i b for i < n, with b a = a^-1 b.
    int m = 2 * n;
    auto enc = [n](int i, bool refl) { return (refl ? n : 0) + ((i % n) + n) % n; };
    std::vector<int> t(static_cast<std::size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int xi = x % n;
            bool xb = x >= n;
            int yi = y % n;
            bool yb = y >= n;
            int r;
            if (!xb && !yb) r = enc(xi + yi, false);
            else if (!xb && yb) r = enc(xi + yi, true);
            else if (xb && !yb) r = enc(xi - yi, true);
            else r = enc(xi - yi, false);
            t[static_cast<std::size_t>(x) * m + y] = r;
        }
    return group_from_table_unchecked(m, std::move(t));
}

FiniteGroup symmetric(int n) {
    if (n < 1) throw loop_error(errc::builder_precondition, "symmetric parameter must be >= 1");
    if (n > 8) throw loop_error(errc::size_cap_exceeded, "symmetric(n) supported for n <= 8");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int N = static_cast<int>(perms.size());
    // Pack each permutation into an integer key (4 bits per point) for ranking.
    auto key = [n](const std::vector<int>& q) {
        std::uint64_t k = 0;
        for (int i = 0; i < n; ++i) k |= static_cast<std::uint64_t>(q[static_cast<std::size_t>(i)]) << (4 * i);
        return k;
    };
    std::unordered_map<std::uint64_t, int> rank;
    rank.reserve(static_cast<std::size_t>(N) * 2);
    for (int i = 0; i < N; ++i) rank.emplace(key(perms[static_cast<std::size_t>(i)]), i);
    std::vector<int> t(static_cast<std::size_t>(N) * N);
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int i = 0; i < N; ++i) {
        const auto& pi = perms[static_cast<std::size_t>(i)];
        for (int j = 0; j < N; ++j) {
            const auto& pj = perms[static_cast<std::size_t>(j)];
            for (int x = 0; x < n; ++x) comp[static_cast<std::size_t>(x)] = pi[static_cast<std::size_t>(pj[static_cast<std::size_t>(x)])];
            t[static_cast<std::size_t>(i) * N + j] = rank.at(key(comp));
        }
    }
    return group_from_table_unchecked(N, std::move(t));
}

FiniteGroup quaternion8() {
    // Index encoding: 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k.
    // Basis products on axes (1,i,j,k) with result sign.
    static const int axis_res[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int axis_sgn[4][4] = {{+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
    std::vector<int> t(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int ax = x >> 1, sx = (x & 1) ? -1 : +1;
            int ay = y >> 1, sy = (y & 1) ? -1 : +1;
            int az = axis_res[ax][ay];
            int sz = axis_sgn[ax][ay] * sx * sy;
            t[static_cast<std::size_t>(x) * 8 + y] = 2 * az + (sz < 0 ? 1 : 0);
        }
    return group_from_table_unchecked(8, std::move(t));
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors) {
    if (factors.empty()) throw loop_error(errc::builder_precondition, "direct product needs at least one factor");
    long long total = 1;
    for (const auto& f : factors) {
        total *= f.order;
        if (total > (1LL << 26))
            throw loop_error(errc::size_cap_exceeded, "direct product order too large");
    }
    int n = static_cast<int>(total);
    int k = static_cast<int>(factors.size());
    std::vector<int> radix(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) radix[static_cast<std::size_t>(i)] = factors[static_cast<std::size_t>(i)].order;
    auto decode = [&](int e, std::vector<int>& out) {
        for (int i = k - 1; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = e % radix[static_cast<std::size_t>(i)];
            e /= radix[static_cast<std::size_t>(i)];
        }
    };
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    std::vector<int> xs(static_cast<std::size_t>(k)), ys(static_cast<std::size_t>(k));
    for (int x = 0; x < n; ++x) {
        decode(x, xs);
        for (int y = 0; y < n; ++y) {
            decode(y, ys);
            int e = 0;
            for (int i = 0; i < k; ++i)
                e = e * radix[static_cast<std::size_t>(i)] +
                    factors[static_cast<std::size_t>(i)].mul(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(i)]);
            t[static_cast<std::size_t>(x) * n + y] = e;
        }
    }
    return group_from_table_unchecked(n, std::move(t));
}

Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
    std::vector<char> in(static_cast<std::size_t>(G.order), 0);
    std::vector<int> members;
    auto add = [&](int x) {
        if (!in[static_cast<std::size_t>(x)]) {
            in[static_cast<std::size_t>(x)] = 1;
            members.push_back(x);
            return true;
        }
        return false;
    };
    add(0);
    for (int g : gens) add(g);
    std::size_t next = 0;
    while (next < members.size()) {
        int x = members[next++];
        // Products against everything currently known, both sides.
        for (std::size_t i = 0; i < members.size(); ++i) {
            int y = members[i];
            add(G.mul(x, y));
            add(G.mul(y, x));
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup{std::move(members)};
}

Subgroup center(const FiniteGroup& G) {
    std::vector<int> members;
    for (int z = 0; z < G.order; ++z) {
        bool central = true;
        for (int x = 0; x < G.order && central; ++x) central = G.mul(z, x) == G.mul(x, z);
        if (central) members.push_back(z);
    }
    return Subgroup{std::move(members)};
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) {
    std::vector<char> in(static_cast<std::size_t>(G.order), 0);
    for (int h : H.members) in[static_cast<std::size_t>(h)] = 1;
    for (int g = 0; g < G.order; ++g)
        for (int h : H.members)
            if (!in[static_cast<std::size_t>(G.mul(G.mul(g, h), G.inv(g)))]) return false;
    return true;
}

Subgroup normal_core(const FiniteGroup& G, const Subgroup& H) {
    std::vector<char> in(static_cast<std::size_t>(G.order), 0);
    for (int h : H.members) in[static_cast<std::size_t>(h)] = 1;
    for (int g = 0; g < G.order; ++g) {
        std::vector<char> conj(static_cast<std::size_t>(G.order), 0);
        for (int h : H.members) conj[static_cast<std::size_t>(G.mul(G.mul(g, h), G.inv(g)))] = 1;
        for (int x = 0; x < G.order; ++x)
            if (in[static_cast<std::size_t>(x)] && !conj[static_cast<std::size_t>(x)]) in[static_cast<std::size_t>(x)] = 0;
    }
    std::vector<int> members;
    for (int x = 0; x < G.order; ++x)
        if (in[static_cast<std::size_t>(x)]) members.push_back(x);
    return Subgroup{std::move(members)};
}

CosetSpace left_cosets(const FiniteGroup& G, const Subgroup& H) {
    CosetSpace cs;
    cs.coset_of.assign(static_cast<std::size_t>(G.order), -1);
    for (int x = 0; x < G.order; ++x) {
        if (cs.coset_of[static_cast<std::size_t>(x)] != -1) continue;
        int c = cs.count++;
        cs.representative.push_back(x);
        for (int h : H.members) cs.coset_of[static_cast<std::size_t>(G.mul(x, h))] = c;
    }
    return cs;
}

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const Mapping& f) {
    if (f.image.size() != static_cast<std::size_t>(src.order)) return false;
    for (int v : f.image)
        if (v < 0 || v >= dst.order) return false;
    for (int x = 0; x < src.order; ++x)
        for (int y = 0; y < src.order; ++y)
            if (f.image[static_cast<std::size_t>(src.mul(x, y))] !=
                dst.mul(f.image[static_cast<std::size_t>(x)], f.image[static_cast<std::size_t>(y)]))
                return false;
    return true;
}

bool is_monomorphism(const FiniteGroup& src, const FiniteGroup& dst, const Mapping& f) {
    if (!is_homomorphism(src, dst, f)) return false;
    std::vector<char> seen(static_cast<std::size_t>(dst.order), 0);
    for (int v : f.image) {
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

bool is_subgroup_members(const FiniteGroup& G, const std::vector<int>& members) {
    std::vector<char> in(static_cast<std::size_t>(G.order), 0);
    bool has_id = false;
    for (int m : members) {
        if (m < 0 || m >= G.order) return false;
        in[static_cast<std::size_t>(m)] = 1;
        has_id |= m == 0;
    }
    if (!has_id) return false;
    for (int a : members)
        for (int b : members)
            if (!in[static_cast<std::size_t>(G.mul(a, b))]) return false;
    return true;
}

} // namespace loopsmith
