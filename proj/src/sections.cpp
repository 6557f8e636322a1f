#include "loopsmith/sections.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <thread>

#include "loopsmith/parallel.hpp"

namespace loopsmith {

bool is_sharply_transitive(const FiniteGroup& G, const CosetSpace& cs, const std::vector<int>& S) {
    int m = cs.count;
    if (static_cast<int>(S.size()) != m) return false;
    for (int z : S)
        if (z < 0 || z >= G.order) return false;
    // For each source coset the images across S must cover every coset
    // exactly once; |S| = m makes "at most once" equivalent to "exactly once".
    std::vector<char> hit(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        std::fill(hit.begin(), hit.end(), 0);
        int r = cs.representative[static_cast<std::size_t>(c)];
        for (int z : S) {
            int t = cs.coset_of[static_cast<std::size_t>(G.mul(z, r))];
            if (hit[static_cast<std::size_t>(t)]) return false;
            hit[static_cast<std::size_t>(t)] = 1;
        }
    }
    return true;
}

bool is_sharply_transitive(const FiniteGroup& G, const Subgroup& H, const std::vector<int>& S) {
    return is_sharply_transitive(G, left_cosets(G, H), S);
}

bool fpf_difference_check(const FiniteGroup& G, const CosetSpace& cs, const std::vector<int>& S) {
    if (static_cast<int>(S.size()) != cs.count)
        throw loop_error(errc::size_mismatch, "candidate set size " + std::to_string(S.size()) +
                                                  " differs from coset count " + std::to_string(cs.count));
    int m = cs.count;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            if (i == j) continue;
            int d = G.mul(G.inv(S[i]), S[j]);
            for (int c = 0; c < m; ++c)
                if (cs.coset_of[static_cast<std::size_t>(G.mul(d, cs.representative[static_cast<std::size_t>(c)]))] == c)
                    return false;
        }
    return true;
}

bool fpf_difference_check(const FiniteGroup& G, const Subgroup& H, const std::vector<int>& S) {
    return fpf_difference_check(G, left_cosets(G, H), S);
}

FiniteLoop loop_from_section(const FiniteGroup& G, const Subgroup& H, const Section& s) {
    CosetSpace cs = left_cosets(G, H);
    int m = cs.count;
    if (static_cast<int>(s.choice.size()) != m)
        throw loop_error(errc::size_mismatch, "section length " + std::to_string(s.choice.size()) +
                                                  " differs from coset count " + std::to_string(m));
    for (int z : s.choice)
        if (z < 0 || z >= G.order)
            throw loop_error(errc::not_sharply_transitive, "section references an element out of range");
    if (s.choice[0] != 0)
        throw loop_error(errc::not_sharply_transitive, "section must assign the identity to the identity coset");
    // pi: coset label -> coset actually containing the assigned element.
    std::vector<int> pi(static_cast<std::size_t>(m)), inv_pi(static_cast<std::size_t>(m), -1);
    for (int c = 0; c < m; ++c) {
        pi[static_cast<std::size_t>(c)] = cs.coset_of[static_cast<std::size_t>(s.choice[static_cast<std::size_t>(c)])];
        int& slot = inv_pi[static_cast<std::size_t>(pi[static_cast<std::size_t>(c)])];
        if (slot != -1)
            throw loop_error(errc::not_sharply_transitive, "section image is not a transversal");
        slot = c;
    }
    Subgroup core = normal_core(G, H);
    if (core.members.size() > 1)
        throw loop_error(errc::core_not_trivial,
                         "subgroup contains a normal subgroup of order " + std::to_string(core.members.size()));
    if (!is_sharply_transitive(G, cs, s.choice))
        throw loop_error(errc::not_sharply_transitive, "section image does not act sharply transitively");
    std::vector<int> t(static_cast<std::size_t>(m) * m);
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
            int prod = G.mul(s.choice[static_cast<std::size_t>(c)], s.choice[static_cast<std::size_t>(d)]);
            t[static_cast<std::size_t>(c) * m + d] = inv_pi[static_cast<std::size_t>(cs.coset_of[static_cast<std::size_t>(prod)])];
        }
    return make_loop(m, std::move(t));
}

LoopSection section_from_loop(const FiniteLoop& L, std::size_t cap) {
    LoopSection out;
    out.mlt = mlt_left(L, cap);
    out.stabilizer = stabilizer_of_identity(out.mlt);
    out.group = group_from_perm_closure(out.mlt);
    out.subgroup = Subgroup{out.stabilizer};
    CosetSpace cs = left_cosets(out.group, out.subgroup);
    out.section.choice.assign(static_cast<std::size_t>(cs.count), -1);
    auto translations = left_translations(L);
    for (const auto& lt : translations) {
        auto it = std::lower_bound(out.mlt.elements.begin(), out.mlt.elements.end(), lt);
        int idx = static_cast<int>(it - out.mlt.elements.begin());
        out.section.choice[static_cast<std::size_t>(cs.coset_of[static_cast<std::size_t>(idx)])] = idx;
    }
    return out;
}

namespace {

struct SearchContext {
    const FiniteGroup& G;
    CosetSpace cs;
    int m = 0;
    std::vector<char> fix_free;                  // element fixes no coset
    std::vector<std::vector<int>> coset_members; // elements grouped by coset
    std::vector<int> normalizer;                 // of H, for symmetry breaking

    bool compatible(int w, int z) const { return fix_free[static_cast<std::size_t>(G.mul(G.inv(w), z))] != 0; }
};

SearchContext make_context(const FiniteGroup& G, const Subgroup& H, bool need_normalizer) {
    SearchContext ctx{G, left_cosets(G, H)};
    ctx.m = ctx.cs.count;
    ctx.fix_free.assign(static_cast<std::size_t>(G.order), 0);
    for (int g = 0; g < G.order; ++g) {
        bool free = true;
        for (int c = 0; c < ctx.m && free; ++c)
            free = ctx.cs.coset_of[static_cast<std::size_t>(G.mul(g, ctx.cs.representative[static_cast<std::size_t>(c)]))] != c;
        ctx.fix_free[static_cast<std::size_t>(g)] = free ? 1 : 0;
    }
    ctx.coset_members.assign(static_cast<std::size_t>(ctx.m), {});
    for (int g = 0; g < G.order; ++g) ctx.coset_members[static_cast<std::size_t>(ctx.cs.coset_of[static_cast<std::size_t>(g)])].push_back(g);
    if (need_normalizer) {
        std::vector<char> in(static_cast<std::size_t>(G.order), 0);
        for (int h : H.members) in[static_cast<std::size_t>(h)] = 1;
        for (int g = 0; g < G.order; ++g) {
            bool norm = true;
            for (int h : H.members)
                if (!in[static_cast<std::size_t>(G.mul(G.mul(g, h), G.inv(g)))]) {
                    norm = false;
                    break;
                }
            if (norm) ctx.normalizer.push_back(g);
        }
    }
    return ctx;
}

// Depth-first enumeration of sharply transitive transversal sets containing
// the identity (aligned assignment: set[c] lies in coset c). Candidates carry
// the fixed-point-free pairwise-difference invariant; the next coset is the
// most constrained one (fail-first). on_set returns false to stop the walk.
bool enumerate_sets(const SearchContext& ctx, std::vector<int>& assign,
                    std::vector<std::vector<int>>& cands, int assigned,
                    const std::function<bool(const std::vector<int>&)>& on_set) {
    int m = ctx.m;
    if (assigned == m) return on_set(assign);
    int best = -1;
    std::size_t best_size = 0;
    for (int c = 0; c < m; ++c) {
        if (assign[static_cast<std::size_t>(c)] != -1) continue;
        std::size_t sz = cands[static_cast<std::size_t>(c)].size();
        if (sz == 0) return true; // dead branch
        if (best == -1 || sz < best_size) {
            best = c;
            best_size = sz;
        }
    }
    std::vector<int> local = cands[static_cast<std::size_t>(best)];
    for (int z : local) {
        assign[static_cast<std::size_t>(best)] = z;
        // Filter the remaining cosets' candidates against z.
        bool dead = false;
        std::vector<std::pair<int, std::vector<int>>> undo;
        for (int c = 0; c < m && !dead; ++c) {
            if (assign[static_cast<std::size_t>(c)] != -1) continue;
            auto& vec = cands[static_cast<std::size_t>(c)];
            std::vector<int> filtered;
            filtered.reserve(vec.size());
            for (int w : vec)
                if (ctx.compatible(z, w)) filtered.push_back(w);
            if (filtered.empty()) dead = true;
            undo.emplace_back(c, std::move(vec));
            vec = std::move(filtered);
        }
        bool keep_going = true;
        if (!dead) keep_going = enumerate_sets(ctx, assign, cands, assigned + 1, on_set);
        for (auto& [c, vec] : undo) cands[static_cast<std::size_t>(c)] = std::move(vec);
        assign[static_cast<std::size_t>(best)] = -1;
        if (!keep_going) return false;
    }
    return true;
}

std::vector<std::vector<int>> initial_candidates(const SearchContext& ctx) {
    std::vector<std::vector<int>> cands(static_cast<std::size_t>(ctx.m));
    for (int c = 1; c < ctx.m; ++c) {
        for (int z : ctx.coset_members[static_cast<std::size_t>(c)])
            if (ctx.fix_free[static_cast<std::size_t>(z)]) cands[static_cast<std::size_t>(c)].push_back(z);
    }
    cands[0] = {0}; // identity pinned to the identity coset
    return cands;
}

bool walk_sets(const SearchContext& ctx, const std::function<bool(const std::vector<int>&)>& on_set) {
    std::vector<int> assign(static_cast<std::size_t>(ctx.m), -1);
    auto cands = initial_candidates(ctx);
    assign[0] = 0;
    return enumerate_sets(ctx, assign, cands, 1, on_set);
}

// Conjugates the set by every normalizer element; returns the number of
// distinct images and whether the set is the lexicographic minimum among
// them (the canonical orbit representative).
std::pair<bool, std::uint64_t> orbit_scan(const SearchContext& ctx, const std::vector<int>& assign) {
    std::vector<int> base;
    base.reserve(static_cast<std::size_t>(ctx.m));
    for (int c = 0; c < ctx.m; ++c) base.push_back(assign[static_cast<std::size_t>(c)]);
    std::sort(base.begin(), base.end());
    std::set<std::vector<int>> images;
    bool canonical = true;
    for (int g : ctx.normalizer) {
        std::vector<int> img;
        img.reserve(base.size());
        for (int z : base) img.push_back(ctx.G.mul(ctx.G.mul(g, z), ctx.G.inv(g)));
        std::sort(img.begin(), img.end());
        if (img < base) canonical = false;
        images.insert(std::move(img));
    }
    return {canonical, static_cast<std::uint64_t>(images.size())};
}

bool generates_whole_group(const FiniteGroup& G, const std::vector<int>& assign) {
    return static_cast<int>(subgroup_closure(G, assign).members.size()) == G.order;
}

unsigned long long factorial_saturating(int k, bool& overflowed) {
    unsigned __int128 f = 1;
    overflowed = false;
    for (int i = 2; i <= k; ++i) {
        f *= static_cast<unsigned>(i);
        if (f > std::numeric_limits<std::uint64_t>::max()) {
            overflowed = true;
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<unsigned long long>(f);
}

// Emits every labelling of a completed set: sigma(c) = set[pi(c)] for each
// permutation pi of the nonzero cosets, in lexicographic pi order.
bool emit_labellings(const std::vector<int>& assign, std::uint64_t& emitted, std::uint64_t max_solutions,
                     const std::function<bool(const SectionHit&)>& emit) {
    int m = static_cast<int>(assign.size());
    std::vector<int> pi(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pi[static_cast<std::size_t>(i)] = i;
    do {
        SectionHit hit;
        hit.section.choice.resize(static_cast<std::size_t>(m));
        for (int c = 0; c < m; ++c)
            hit.section.choice[static_cast<std::size_t>(c)] = assign[static_cast<std::size_t>(pi[static_cast<std::size_t>(c)])];
        hit.orbit_size = 1;
        ++emitted;
        if (!emit(hit)) return false;
        if (emitted >= max_solutions) return false;
    } while (std::next_permutation(pi.begin() + 1, pi.end()));
    return true;
}

} // namespace

void enumerate_sections(const FiniteGroup& G, const Subgroup& H, const SearchOptions& opts,
                        const std::function<bool(const SectionHit&)>& emit) {
    SearchContext ctx = make_context(G, H, opts.symmetry_breaking);
    if (opts.max_solutions == 0) return;
    bool fact_overflow = false;
    unsigned long long fact = factorial_saturating(ctx.m - 1, fact_overflow);

    std::uint64_t emitted = 0;
    auto handle_set = [&](const std::vector<int>& assign) -> bool {
        if (opts.require_generation && !generates_whole_group(G, assign)) return true;
        if (opts.symmetry_breaking) {
            auto [canonical, orbit_sets] = orbit_scan(ctx, assign);
            if (!canonical) return true;
            unsigned __int128 orbit = static_cast<unsigned __int128>(orbit_sets) * fact;
            if (fact_overflow || orbit > std::numeric_limits<std::uint64_t>::max())
                throw loop_error(errc::size_cap_exceeded, "orbit size exceeds 64-bit range");
            SectionHit hit;
            hit.section.choice.assign(assign.begin(), assign.end());
            hit.orbit_size = static_cast<std::uint64_t>(orbit);
            ++emitted;
            if (!emit(hit)) return false;
            return emitted < opts.max_solutions;
        }
        return emit_labellings(assign, emitted, opts.max_solutions, emit);
    };

    if (!opts.parallel) {
        walk_sets(ctx, handle_set);
        return;
    }

    // Parallel mode: split on the candidates of the most constrained coset,
    // solve each branch to completion, then merge (sorted) and emit.
    auto cands = initial_candidates(ctx);
    int first = -1;
    std::size_t best = 0;
    for (int c = 1; c < ctx.m; ++c) {
        std::size_t sz = cands[static_cast<std::size_t>(c)].size();
        if (sz == 0) return;
        if (first == -1 || sz < best) {
            first = c;
            best = sz;
        }
    }
    if (first == -1) {
        // H has index 1; the only set is {0}.
        std::vector<int> assign{0};
        handle_set(assign);
        return;
    }
    const std::vector<int> branch_roots = cands[static_cast<std::size_t>(first)];
    std::vector<std::vector<std::vector<int>>> branch_sets(branch_roots.size());
    std::atomic<std::size_t> next_item{0};
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(hw ? hw : 1, branch_roots.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t item = next_item.fetch_add(1);
                if (item >= branch_roots.size()) break;
                int z = branch_roots[item];
                std::vector<int> assign(static_cast<std::size_t>(ctx.m), -1);
                assign[0] = 0;
                assign[static_cast<std::size_t>(first)] = z;
                auto local = cands;
                local[static_cast<std::size_t>(first)] = {z};
                bool dead = false;
                for (int c = 1; c < ctx.m; ++c) {
                    if (c == first) continue;
                    auto& vec = local[static_cast<std::size_t>(c)];
                    std::vector<int> filtered;
                    for (int v : vec)
                        if (ctx.compatible(z, v)) filtered.push_back(v);
                    vec = std::move(filtered);
                    if (vec.empty()) dead = true;
                }
                if (dead) continue;
                enumerate_sets(ctx, assign, local, 2, [&](const std::vector<int>& a) {
                    branch_sets[item].push_back(a);
                    return true;
                });
            }
        });
    for (auto& t : pool) t.join();
    std::vector<std::vector<int>> all;
    for (auto& bucket : branch_sets)
        for (auto& a : bucket) all.push_back(std::move(a));
    std::sort(all.begin(), all.end());
    for (const auto& a : all)
        if (!handle_set(a)) return;
}

std::uint64_t count_sections(const FiniteGroup& G, const Subgroup& H, const SearchOptions& opts) {
    SearchContext ctx = make_context(G, H, opts.symmetry_breaking);
    if (opts.max_solutions == 0) return 0;
    bool fact_overflow = false;
    unsigned long long fact = factorial_saturating(ctx.m - 1, fact_overflow);
    unsigned __int128 total = 0;
    bool capped = false;
    walk_sets(ctx, [&](const std::vector<int>& assign) -> bool {
        if (opts.require_generation && !generates_whole_group(G, assign)) return true;
        if (opts.symmetry_breaking) {
            auto [canonical, orbit_sets] = orbit_scan(ctx, assign);
            (void)orbit_sets;
            if (!canonical) return true;
            total += 1;
        } else {
            if (fact_overflow) {
                capped = true;
                return false;
            }
            total += fact;
        }
        if (total >= opts.max_solutions) {
            capped = true;
            return false;
        }
        return true;
    });
    if (capped || total > opts.max_solutions) return opts.max_solutions;
    if (total > std::numeric_limits<std::uint64_t>::max())
        throw loop_error(errc::size_cap_exceeded, "section count exceeds 64-bit range");
    return static_cast<std::uint64_t>(total);
}

std::vector<LoopClass> classify_section_loops(const FiniteGroup& G, const Subgroup& H, const SearchOptions& opts) {
    std::vector<LoopClass> classes;
    enumerate_sections(G, H, opts, [&](const SectionHit& hit) {
        FiniteLoop L = loop_from_section(G, H, hit.section);
        for (auto& cls : classes)
            if (is_isomorphic(cls.representative, L)) {
                cls.multiplicity += hit.orbit_size;
                return true;
            }
        classes.push_back(LoopClass{std::move(L), hit.orbit_size});
        return true;
    });
    return classes;
}

} // namespace loopsmith
