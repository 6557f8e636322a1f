#include "loopsmith/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace loopsmith {

namespace {

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : p) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Perm perm_identity(int degree) {
    Perm p(static_cast<std::size_t>(degree));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[static_cast<std::size_t>(q[x])];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
    return r;
}

std::vector<int> perm_cycle_type(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    std::vector<int> lens;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        std::size_t x = s;
        while (!seen[x]) {
            seen[x] = 1;
            x = static_cast<std::size_t>(p[x]);
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

std::size_t default_perm_cap() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("LOOPSMITH_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1000000);
    }();
    return cap;
}

PermClosure perm_closure(int degree, const std::vector<Perm>& gens, std::size_t cap) {
    for (const auto& g : gens)
        if (static_cast<int>(g.size()) != degree)
            throw loop_error(errc::size_mismatch, "generator degree mismatch");
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> order;
    Perm id = perm_identity(degree);
    seen.insert(id);
    order.push_back(id);
    std::size_t next = 0;
    while (next < order.size()) {
        Perm p = order[next++];
        for (const auto& g : gens) {
            Perm q = perm_compose(p, g);
            if (seen.insert(q).second) {
                if (seen.size() > cap)
                    throw loop_error(errc::order_cap_exceeded,
                                     "closure exceeded cap of " + std::to_string(cap) + " elements");
                order.push_back(std::move(q));
            }
        }
    }
    PermClosure pc;
    pc.degree = degree;
    pc.elements = std::move(order);
    std::sort(pc.elements.begin(), pc.elements.end());
    return pc;
}

FiniteGroup group_from_perm_closure(const PermClosure& pc) {
    int n = static_cast<int>(pc.elements.size());
    std::unordered_map<Perm, int, PermHash> index;
    index.reserve(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i) index.emplace(pc.elements[static_cast<std::size_t>(i)], i);
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[static_cast<std::size_t>(i) * n + j] =
                index.at(perm_compose(pc.elements[static_cast<std::size_t>(i)], pc.elements[static_cast<std::size_t>(j)]));
    return group_from_table_unchecked(n, std::move(t));
}

std::vector<int> stabilizer_of_identity(const PermClosure& pc) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(pc.elements.size()); ++i)
        if (pc.elements[static_cast<std::size_t>(i)][0] == 0) idx.push_back(i);
    return idx;
}

bool is_sharply_transitive_on_points(const std::vector<Perm>& perms, int degree) {
    if (perms.size() != static_cast<std::size_t>(degree)) return false;
    // For each source point the images across the set must cover every
    // target point exactly once.
    std::vector<char> hit(static_cast<std::size_t>(degree), 0);
    for (int x = 0; x < degree; ++x) {
        std::fill(hit.begin(), hit.end(), 0);
        for (const auto& p : perms) {
            int y = p[static_cast<std::size_t>(x)];
            if (hit[static_cast<std::size_t>(y)]) return false;
            hit[static_cast<std::size_t>(y)] = 1;
        }
    }
    return true;
}

} // namespace loopsmith
