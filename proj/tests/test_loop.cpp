#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "loopsmith/group.hpp"
#include "loopsmith/loop.hpp"
#include "loopsmith/perm.hpp"
#include "loopsmith/product.hpp"

using namespace loopsmith;

namespace {

template <typename Fn>
std::string expect_error(errc kind, Fn&& fn) {
    try {
        fn();
    } catch (const loop_error& e) {
        CHECK(e.code() == kind);
        return e.what();
    }
    FAIL("expected a loop_error");
    return {};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Smallest nonassociative loop used throughout: order 5, identity 0.
FiniteLoop small5() {
    return make_loop({{0, 1, 2, 3, 4},
                      {1, 0, 3, 4, 2},
                      {2, 3, 4, 0, 1},
                      {3, 4, 1, 2, 0},
                      {4, 2, 0, 1, 3}});
}

// Twisted product of cyclic(3) by symmetric(3) along cyclic(2): the standard
// order-18 proper example used across the suite.
FiniteLoop twisted18() {
    ProductSpec spec{cyclic(3), symmetric(3), cyclic(2), Mapping{{0, 2}}, Mapping{{0, 1, 1}}};
    return build_product_loop(spec);
}

} // namespace

TEST_CASE("make_loop validates, relabels the identity, and fills divisions") {
    FiniteLoop g = make_loop({{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
    CHECK(g.table == cyclic(3).table);

    FiniteLoop L = small5();
    CHECK(L.order == 5);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            CHECK(L.mul(a, L.ldiv(a, b)) == b);
            CHECK(L.mul(L.rdiv(a, b), a) == b);
        }

    expect_error(errc::not_latin, [] { make_loop({{0, 0}, {1, 1}}); });
    auto msg = expect_error(errc::no_two_sided_identity, [] {
        make_loop({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
    });
    CHECK(contains(msg, "no two-sided identity element"));
}

TEST_CASE("associator and Moufang witnesses are lexicographically first") {
    FiniteLoop L = small5();
    CHECK_FALSE(is_associative(L));
    REQUIRE(first_associator_witness(L).has_value());
    CHECK(*first_associator_witness(L) == std::array<int, 3>{1, 1, 2});
    CHECK_FALSE(is_moufang(L));

    FiniteLoop s3 = as_loop(symmetric(3));
    CHECK(is_associative(s3));
    CHECK(is_moufang(s3));
    CHECK_FALSE(first_associator_witness(s3).has_value());
    CHECK_FALSE(first_moufang_witness(s3).has_value());
}

TEST_CASE("the order-18 twisted product has the expected witnesses and counts") {
    FiniteLoop L = twisted18();
    REQUIRE(L.order == 18);
    REQUIRE(first_associator_witness(L).has_value());
    CHECK(*first_associator_witness(L) == std::array<int, 3>{6, 6, 1});
    REQUIRE(first_moufang_witness(L).has_value());
    CHECK(*first_moufang_witness(L) == std::array<int, 3>{1, 6, 6});

    // Independent count of Moufang violations over all 18^3 triples.
    long long violations = 0;
    for (int x = 0; x < 18; ++x)
        for (int y = 0; y < 18; ++y)
            for (int z = 0; z < 18; ++z)
                if (L.mul(L.mul(x, y), L.mul(z, x)) != L.mul(L.mul(x, L.mul(y, z)), x)) ++violations;
    CHECK(violations == 1440);
}

TEST_CASE("left translations generate the expected multiplication group") {
    FiniteLoop L = twisted18();
    PermClosure pc = mlt_left(L);
    CHECK(pc.degree == 18);
    CHECK(pc.elements.size() == 36);
    CHECK(pc.elements[0] == perm_identity(18));
    CHECK(stabilizer_of_identity(pc).size() == 2);

    FiniteGroup M = group_from_perm_closure(pc);
    CHECK(M.order == 36);
    CHECK(M.mul(0, 5) == 5);

    // Any loop's left translations act sharply transitively on points.
    CHECK(is_sharply_transitive_on_points(left_translations(L), L.order));
    CHECK(is_sharply_transitive_on_points(left_translations(small5()), 5));
}

TEST_CASE("subloop generation closes under products both ways") {
    FiniteLoop L = small5();
    CHECK(subloop_generated(L, {}).members == std::vector<int>{0});
    CHECK(subloop_generated(L, {1}).members == std::vector<int>{0, 1});
    CHECK(subloop_generated(L, {2}).members == std::vector<int>{0, 1, 2, 3, 4});
    expect_error(errc::size_mismatch, [&L] { subloop_generated(L, {5}); });

    FiniteLoop T = twisted18();
    std::vector<int> n_members{0, 1, 2, 3, 4, 5};
    CHECK(subloop_generated(T, n_members).members == n_members);
}

TEST_CASE("two-generated subloops detect diassociativity failures") {
    CHECK(two_generated_subloops_associative(as_loop(symmetric(3))));
    CHECK(two_generated_subloops_associative(as_loop(quaternion8())));
    CHECK_FALSE(two_generated_subloops_associative(small5()));
    CHECK_FALSE(two_generated_subloops_associative(twisted18()));
}

TEST_CASE("normality of subloops follows the three set equations") {
    FiniteLoop s3 = as_loop(symmetric(3));
    CHECK(is_normal_subloop(s3, Subloop{{0, 3, 4}}));
    CHECK_FALSE(is_normal_subloop(s3, Subloop{{0, 1}}));

    FiniteLoop T = twisted18();
    CHECK(is_normal_subloop(T, Subloop{{0, 1, 2, 3, 4, 5}}));
}

TEST_CASE("factor loops reproduce the quotient table exactly") {
    FiniteLoop T = twisted18();
    FactorLoop F = factor_loop(T, Subloop{{0, 1, 2, 3, 4, 5}});
    CHECK(F.loop.order == 3);
    CHECK(F.loop.table == std::vector<int>{0, 1, 2, 1, 2, 0, 2, 0, 1});
    REQUIRE(F.blocks.size() == 3);
    CHECK(F.blocks[0] == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(F.blocks[1] == std::vector<int>{6, 7, 8, 9, 10, 11});
    CHECK(F.blocks[2] == std::vector<int>{12, 13, 14, 15, 16, 17});
    for (int x = 0; x < 18; ++x) CHECK(F.block_of[static_cast<std::size_t>(x)] == x / 6);

    // Non-normal subgroup of a group: blocks partition but the induced
    // product is representative-dependent.
    auto m1 = expect_error(errc::not_normal, [] {
        factor_loop(as_loop(symmetric(3)), Subloop{{0, 1}});
    });
    CHECK(contains(m1, "depends on representatives"));

    // In a loop the translates x*N need not even partition.
    auto m2 = expect_error(errc::not_normal, [] {
        factor_loop(small5(), Subloop{{0, 1}});
    });
    CHECK(contains(m2, "overlap without coinciding"));
}

TEST_CASE("loop centre collects commuting associating elements") {
    CHECK(centre_of_loop(twisted18()).members == std::vector<int>{0});
    CHECK(centre_of_loop(as_loop(quaternion8())).members == std::vector<int>{0, 1});
    CHECK(centre_of_loop(as_loop(cyclic(6))).members.size() == 6);
    CHECK(centre_of_loop(small5()).members == std::vector<int>{0});
}

TEST_CASE("isomorphism testing distinguishes loops and honors the cap") {
    CHECK(is_isomorphic(as_loop(direct_product({cyclic(2), cyclic(3)})), as_loop(cyclic(6))));
    CHECK_FALSE(is_isomorphic(as_loop(cyclic(4)), as_loop(direct_product({cyclic(2), cyclic(2)}))));
    CHECK_FALSE(is_isomorphic(small5(), as_loop(cyclic(5))));
    CHECK(is_isomorphic(small5(), small5()));
    CHECK_FALSE(is_isomorphic(small5(), as_loop(cyclic(4))));
    auto msg = expect_error(errc::size_cap_exceeded, [] {
        is_isomorphic(as_loop(cyclic(70)), as_loop(cyclic(70)));
    });
    CHECK(contains(msg, "capped at order 64"));
    CHECK(is_isomorphic(as_loop(cyclic(70)), as_loop(cyclic(70)), 128));
}

TEST_CASE("restriction to a closed member set keeps the induced table") {
    FiniteLoop T = twisted18();
    FiniteLoop P = restrict_to_members(T, {0, 1, 2, 3, 4, 5});
    CHECK(P.table == symmetric(3).table);
    expect_error(errc::not_latin, [&T] { restrict_to_members(T, {0, 1, 2}); });
}

TEST_CASE("permutation helpers follow the right-factor-first convention") {
    CHECK(perm_identity(4) == Perm{0, 1, 2, 3});
    CHECK(perm_compose({1, 0, 2}, {0, 2, 1}) == Perm{1, 2, 0});
    CHECK(perm_inverse({1, 2, 0}) == Perm{2, 0, 1});
    CHECK(perm_cycle_type({1, 0, 3, 4, 2}) == std::vector<int>{2, 3});
    CHECK(perm_cycle_type({0, 1, 2, 3}) == std::vector<int>{1, 1, 1, 1});
    CHECK(perm_cycle_type({1, 2, 3, 0}) == std::vector<int>{4});
}

TEST_CASE("permutation closure sorts elements and honors the cap") {
    std::vector<Perm> gens{{0, 2, 1}, {1, 0, 2}};
    PermClosure pc = perm_closure(3, gens);
    REQUIRE(pc.elements.size() == 6);
    std::vector<int> p{0, 1, 2};
    std::size_t i = 0;
    do {
        CHECK(pc.elements[i++] == p);
    } while (std::next_permutation(p.begin(), p.end()));

    CHECK(group_from_perm_closure(pc).table == symmetric(3).table);
    CHECK(stabilizer_of_identity(pc) == std::vector<int>{0, 1});
    CHECK_FALSE(is_sharply_transitive_on_points(pc.elements, 3));

    auto msg = expect_error(errc::order_cap_exceeded, [&gens] { perm_closure(3, gens, 4); });
    CHECK(contains(msg, "cap of 4"));
    CHECK(default_perm_cap() > 0);
}
