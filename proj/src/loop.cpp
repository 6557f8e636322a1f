#include "loopsmith/loop.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "loopsmith/parallel.hpp"

namespace loopsmith {

namespace {

void check_latin(int n, const std::vector<int>& t) {
    std::vector<char> row_seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<char> col_seen(static_cast<std::size_t>(n) * n, 0);
    for (int r = 0; r < n; ++r)
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

void fill_divisions(FiniteLoop& L) {
    int n = L.order;
    L.left_div.assign(static_cast<std::size_t>(n) * n, -1);
    L.right_div.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int y = 0; y < n; ++y) {
            int b = L.table[static_cast<std::size_t>(a) * n + y];
            L.left_div[static_cast<std::size_t>(a) * n + b] = y; // a*y = b
        }
    for (int x = 0; x < n; ++x)
        for (int a = 0; a < n; ++a) {
            int b = L.table[static_cast<std::size_t>(x) * n + a];
            L.right_div[static_cast<std::size_t>(a) * n + b] = x; // x*a = b
        }
}

} // namespace

FiniteLoop make_loop(int order, std::vector<int> flat) {
    if (order <= 0) throw loop_error(errc::not_latin, "order must be positive");
    if (flat.size() != static_cast<std::size_t>(order) * order)
        throw loop_error(errc::not_latin, "table size does not match order");
    check_latin(order, flat);
    int e = -1;
    for (int cand = 0; cand < order && e < 0; ++cand) {
        bool ok = true;
        for (int x = 0; x < order && ok; ++x)
            ok = flat[static_cast<std::size_t>(cand) * order + x] == x &&
                 flat[static_cast<std::size_t>(x) * order + cand] == x;
        if (ok) e = cand;
    }
    if (e < 0) throw loop_error(errc::no_two_sided_identity, "no two-sided identity element");
    if (e != 0) {
        auto tau = [e](int x) { return x == 0 ? e : (x == e ? 0 : x); };
        std::vector<int> out(static_cast<std::size_t>(order) * order);
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                out[static_cast<std::size_t>(tau(a)) * order + tau(b)] =
                    tau(flat[static_cast<std::size_t>(a) * order + b]);
        flat = std::move(out);
    }
    FiniteLoop L;
    L.order = order;
    L.table = std::move(flat);
    fill_divisions(L);
    return L;
}

FiniteLoop make_loop(const std::vector<std::vector<int>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw loop_error(errc::not_latin, "table is not square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return make_loop(n, std::move(flat));
}

FiniteLoop as_loop(const FiniteGroup& G) {
    FiniteLoop L;
    L.order = G.order;
    L.table = G.table;
    fill_divisions(L);
    return L;
}

namespace {

// Shared scaffold for exhaustive triple scans: partitions the outer index
// across threads, each recording its chunk-local lexicographically first
// violation; the global witness is the first over chunks in order.
template <typename Violation>
std::optional<std::array<int, 3>> first_triple_violation(const FiniteLoop& L, Violation viol) {
    int n = L.order;
    std::vector<std::optional<std::array<int, 3>>> found(static_cast<std::size_t>(chunk_count(n)));
    for_each_chunk(n, [&](int chunk, int begin, int end) {
        for (int x = begin; x < end; ++x) {
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (viol(x, y, z)) {
                        found[static_cast<std::size_t>(chunk)] = std::array<int, 3>{x, y, z};
                        y = n;
                        break;
                    }
            if (found[static_cast<std::size_t>(chunk)]) break;
        }
    });
    for (const auto& f : found)
        if (f) return f;
    return std::nullopt;
}

} // namespace

std::optional<std::array<int, 3>> first_associator_witness(const FiniteLoop& L) {
    return first_triple_violation(L, [&L](int x, int y, int z) {
        return L.mul(L.mul(x, y), z) != L.mul(x, L.mul(y, z));
    });
}

bool is_associative(const FiniteLoop& L) { return !first_associator_witness(L).has_value(); }

std::optional<std::array<int, 3>> first_moufang_witness(const FiniteLoop& L) {
    return first_triple_violation(L, [&L](int x, int y, int z) {
        return L.mul(L.mul(x, y), L.mul(z, x)) != L.mul(L.mul(x, L.mul(y, z)), x);
    });
}

bool is_moufang(const FiniteLoop& L) { return !first_moufang_witness(L).has_value(); }

std::vector<Perm> left_translations(const FiniteLoop& L) {
    std::vector<Perm> rows;
    rows.reserve(static_cast<std::size_t>(L.order));
    for (int a = 0; a < L.order; ++a)
        rows.emplace_back(L.table.begin() + static_cast<std::size_t>(a) * L.order,
                          L.table.begin() + static_cast<std::size_t>(a + 1) * L.order);
    return rows;
}

PermClosure mlt_left(const FiniteLoop& L, std::size_t cap) {
    return perm_closure(L.order, left_translations(L), cap);
}

Subloop subloop_generated(const FiniteLoop& L, const std::vector<int>& gens) {
    std::vector<char> in(static_cast<std::size_t>(L.order), 0);
    std::vector<int> members;
    auto add = [&](int x) {
        if (!in[static_cast<std::size_t>(x)]) {
            in[static_cast<std::size_t>(x)] = 1;
            members.push_back(x);
        }
    };
    add(0);
    for (int g : gens) {
        if (g < 0 || g >= L.order) throw loop_error(errc::size_mismatch, "generator out of range");
        add(g);
    }
    std::size_t next = 0;
    while (next < members.size()) {
        int x = members[next++];
        for (std::size_t i = 0; i < members.size(); ++i) {
            int y = members[i];
            add(L.mul(x, y));
            add(L.mul(y, x));
        }
    }
    std::sort(members.begin(), members.end());
    return Subloop{std::move(members)};
}

bool two_generated_subloops_associative(const FiniteLoop& L) {
    for (int a = 0; a < L.order; ++a)
        for (int b = a; b < L.order; ++b) {
            Subloop S = subloop_generated(L, {a, b});
            for (int x : S.members)
                for (int y : S.members)
                    for (int z : S.members)
                        if (L.mul(L.mul(x, y), z) != L.mul(x, L.mul(y, z))) return false;
        }
    return true;
}

namespace {

std::vector<int> sorted_product_set(const FiniteLoop& L, int x, const std::vector<int>& N, bool left) {
    std::vector<int> out;
    out.reserve(N.size());
    for (int n : N) out.push_back(left ? L.mul(x, n) : L.mul(n, x));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool is_normal_subloop(const FiniteLoop& L, const Subloop& N) {
    const auto& M = N.members;
    // x*N = N*x
    for (int x = 0; x < L.order; ++x)
        if (sorted_product_set(L, x, M, true) != sorted_product_set(L, x, M, false)) return false;
    // (x*N)*y = x*(N*y)
    for (int x = 0; x < L.order; ++x)
        for (int y = 0; y < L.order; ++y) {
            std::vector<int> lhs, rhs;
            lhs.reserve(M.size());
            rhs.reserve(M.size());
            for (int n : M) lhs.push_back(L.mul(L.mul(x, n), y));
            for (int n : M) rhs.push_back(L.mul(x, L.mul(n, y)));
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs) return false;
        }
    // x*(y*N) = (x*y)*N
    for (int x = 0; x < L.order; ++x)
        for (int y = 0; y < L.order; ++y) {
            std::vector<int> lhs, rhs;
            lhs.reserve(M.size());
            rhs.reserve(M.size());
            for (int n : M) lhs.push_back(L.mul(x, L.mul(y, n)));
            for (int n : M) rhs.push_back(L.mul(L.mul(x, y), n));
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs) return false;
        }
    return true;
}

FactorLoop factor_loop(const FiniteLoop& L, const Subloop& N) {
    int n = L.order;
    // Blocks are the left product sets x*N, keyed by their sorted contents.
    std::map<std::vector<int>, int> block_index;
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        auto key = sorted_product_set(L, x, N.members, true);
        auto [it, inserted] = block_index.try_emplace(key, static_cast<int>(blocks.size()));
        if (inserted) blocks.push_back(key);
        int b = it->second;
        if (block_of[static_cast<std::size_t>(x)] == -1) block_of[static_cast<std::size_t>(x)] = b;
    }
    // Partition check: every element lies in exactly the block it generated.
    std::vector<int> seen(static_cast<std::size_t>(n), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int m : blocks[static_cast<std::size_t>(b)]) {
            if (seen[static_cast<std::size_t>(m)] != -1)
                throw loop_error(errc::not_normal, "cosets of the subloop overlap without coinciding");
            seen[static_cast<std::size_t>(m)] = b;
        }
    for (int x = 0; x < n; ++x) {
        if (seen[static_cast<std::size_t>(x)] == -1)
            throw loop_error(errc::not_normal, "cosets of the subloop do not cover the loop");
        block_of[static_cast<std::size_t>(x)] = seen[static_cast<std::size_t>(x)];
    }
    // Renumber blocks by smallest member so the identity block is 0.
    int m = static_cast<int>(blocks.size());
    std::vector<int> order_idx(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b) order_idx[static_cast<std::size_t>(b)] = b;
    std::sort(order_idx.begin(), order_idx.end(),
              [&blocks](int a, int b) { return blocks[static_cast<std::size_t>(a)][0] < blocks[static_cast<std::size_t>(b)][0]; });
    std::vector<int> rank(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) rank[static_cast<std::size_t>(order_idx[static_cast<std::size_t>(i)])] = i;
    std::vector<std::vector<int>> blocks2(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b) blocks2[static_cast<std::size_t>(rank[static_cast<std::size_t>(b)])] = blocks[static_cast<std::size_t>(b)];
    for (int x = 0; x < n; ++x) block_of[static_cast<std::size_t>(x)] = rank[static_cast<std::size_t>(block_of[static_cast<std::size_t>(x)])];
    // Induced product must be independent of representatives.
    std::vector<int> ft(static_cast<std::size_t>(m) * m, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int bx = block_of[static_cast<std::size_t>(x)], by = block_of[static_cast<std::size_t>(y)];
            int bz = block_of[static_cast<std::size_t>(L.mul(x, y))];
            int& cell = ft[static_cast<std::size_t>(bx) * m + by];
            if (cell == -1) cell = bz;
            else if (cell != bz)
                throw loop_error(errc::not_normal, "quotient product depends on representatives at blocks (" +
                                                       std::to_string(bx) + "," + std::to_string(by) + ")");
        }
    FactorLoop F;
    F.loop = make_loop(m, std::move(ft));
    F.blocks = std::move(blocks2);
    F.block_of = std::move(block_of);
    return F;
}

Subloop centre_of_loop(const FiniteLoop& L) {
    int n = L.order;
    std::vector<int> members;
    for (int a = 0; a < n; ++a) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = L.mul(a, x) == L.mul(x, a);
        for (int x = 0; x < n && ok; ++x)
            for (int y = 0; y < n && ok; ++y)
                ok = L.mul(L.mul(a, x), y) == L.mul(a, L.mul(x, y)) &&
                     L.mul(L.mul(x, a), y) == L.mul(x, L.mul(a, y)) &&
                     L.mul(L.mul(x, y), a) == L.mul(x, L.mul(y, a));
        if (ok) members.push_back(a);
    }
    Subloop Z{std::move(members)};
    assert(is_normal_subloop(L, Z));
    return Z;
}

namespace {

// Conjugation-invariant per-element signature: cycle types of the left and
// right translations.
std::vector<std::vector<int>> element_signatures(const FiniteLoop& L) {
    int n = L.order;
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        Perm lt(static_cast<std::size_t>(n)), rt(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            lt[static_cast<std::size_t>(x)] = L.mul(a, x);
            rt[static_cast<std::size_t>(x)] = L.mul(x, a);
        }
        auto s = perm_cycle_type(lt);
        auto r = perm_cycle_type(rt);
        s.push_back(-1); // separator
        s.insert(s.end(), r.begin(), r.end());
        sig[static_cast<std::size_t>(a)] = std::move(s);
    }
    return sig;
}

bool extend_isomorphism(const FiniteLoop& A, const FiniteLoop& B, std::vector<int>& f, std::vector<char>& used,
                        const std::vector<std::vector<int>>& sa, const std::vector<std::vector<int>>& sb, int next) {
    int n = A.order;
    if (next == n) return true;
    if (f[static_cast<std::size_t>(next)] != -1) return extend_isomorphism(A, B, f, used, sa, sb, next + 1);
    for (int img = 0; img < n; ++img) {
        if (used[static_cast<std::size_t>(img)]) continue;
        if (sa[static_cast<std::size_t>(next)] != sb[static_cast<std::size_t>(img)]) continue;
        f[static_cast<std::size_t>(next)] = img;
        used[static_cast<std::size_t>(img)] = 1;
        bool ok = true;
        for (int y = 0; y < n && ok; ++y) {
            if (f[static_cast<std::size_t>(y)] == -1) continue;
            int p = A.mul(next, y);
            if (f[static_cast<std::size_t>(p)] != -1 &&
                f[static_cast<std::size_t>(p)] != B.mul(img, f[static_cast<std::size_t>(y)]))
                ok = false;
            int q = A.mul(y, next);
            if (ok && f[static_cast<std::size_t>(q)] != -1 &&
                f[static_cast<std::size_t>(q)] != B.mul(f[static_cast<std::size_t>(y)], img))
                ok = false;
        }
        if (ok && extend_isomorphism(A, B, f, used, sa, sb, next + 1)) return true;
        f[static_cast<std::size_t>(next)] = -1;
        used[static_cast<std::size_t>(img)] = 0;
    }
    return false;
}

} // namespace

bool is_isomorphic(const FiniteLoop& A, const FiniteLoop& B, int cap) {
    if (A.order != B.order) return false;
    if (A.order > cap)
        throw loop_error(errc::size_cap_exceeded,
                         "isomorphism search capped at order " + std::to_string(cap));
    int n = A.order;
    auto sa = element_signatures(A);
    auto sb = element_signatures(B);
    auto sa_sorted = sa;
    auto sb_sorted = sb;
    std::sort(sa_sorted.begin(), sa_sorted.end());
    std::sort(sb_sorted.begin(), sb_sorted.end());
    if (sa_sorted != sb_sorted) return false;
    std::vector<int> f(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    f[0] = 0;
    used[0] = 1;
    if (sa[0] != sb[0]) return false;
    bool found = extend_isomorphism(A, B, f, used, sa, sb, 1);
    if (!found) return false;
    // Completed partial checks guarantee full consistency, but verify anyway:
    // the map must transport the whole table.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (f[static_cast<std::size_t>(A.mul(x, y))] !=
                B.mul(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]))
                return false;
    return true;
}

FiniteLoop restrict_to_members(const FiniteLoop& L, const std::vector<int>& members) {
    int m = static_cast<int>(members.size());
    std::vector<int> rank(static_cast<std::size_t>(L.order), -1);
    for (int i = 0; i < m; ++i) rank[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = i;
    std::vector<int> t(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int p = L.mul(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
            int r = rank[static_cast<std::size_t>(p)];
            if (r < 0) throw loop_error(errc::not_latin, "member set is not closed under the product");
            t[static_cast<std::size_t>(i) * m + j] = r;
        }
    return make_loop(m, std::move(t));
}

} // namespace loopsmith
